# pylint: disable=wildcard-import
"""Benchmark systems and their on-disk formats."""
from .laplace import *
from .io_matrix_market import *

__all__ = [
    "GridSpec",
    "LinearSystem",
    "laplace_2d",
    "random_rhs",
    "laplace_system",
    "FormatError",
    "read_matrix_market",
    "write_matrix_market",
]
