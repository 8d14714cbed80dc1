"""Build script: compiles the Cython kernel when possible.

The package works without the extension (pure-Python kernels are selected
at import time), so a failed extension build degrades to a warning.
"""

import sys

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qkron/_kernels/_speedups.pyx"],
        language_level=3,
    )
except Exception as exc:  # noqa: BLE001
    print(f"warning: building without compiled kernels ({exc})", file=sys.stderr)
    ext_modules = []

setup(ext_modules=ext_modules)
