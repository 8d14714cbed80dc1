"""Exact computer algebra for Hecke algebras, their tensor-square
commutant, and the nonstandard quantum matrix bialgebra of a tensor
product space, with modular verification and a CLI front end.

Modules: coeffs (the field Q(q^(1/2)) and modular reconstruction), hecke,
bralgebra, ncreduce (free-algebra rewriting and graded linear algebra),
qmatrix, cgc, cli.  Compiled kernels live in qkron._kernels with a pure
fallback; see benchmarks/.
"""

__version__ = "0.1.0"
