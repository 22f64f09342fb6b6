# pylint: disable=wildcard-import
"""Sequential sparse and dense linear algebra shared by every solver component."""
from .csr import *
from .solvers import *

__all__ = [
    "CsrMatrix",
    "spmv",
    "norm2",
    "CholeskyFactor",
    "NotSPDError",
    "IterationLimitError",
    "cholesky_factorize",
    "cholesky_solve",
    "cg_solve",
]
