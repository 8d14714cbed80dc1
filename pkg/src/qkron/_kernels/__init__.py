"""Kernel selection: compiled extension if available, pure Python otherwise.

Set QKRON_PURE=1 to force the pure implementation (useful for testing the
fallback and for the benchmark harness).
"""

import os

if os.environ.get("QKRON_PURE") == "1":
    from . import pure as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import pure as _impl

IMPLEMENTATION = _impl.implementation()
DenseEchelon = _impl.DenseEchelon
SparseEchelon = _impl.SparseEchelon
spmv_csr = _impl.spmv_csr
gemm_mod = _impl.gemm_mod


def load(name):
    """Load a specific implementation by name ("cython" or "pure")."""
    if name == "pure":
        from . import pure
        return pure
    from . import _speedups
    return _speedups
