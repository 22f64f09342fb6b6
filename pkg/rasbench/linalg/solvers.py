"""Local solvers: banded Cholesky factorization and unpreconditioned CG."""
import logging

import numpy as np
from scipy import linalg

from .csr import spmv, norm2

_log = logging.getLogger(__name__)

__all__ = [
    "CholeskyFactor",
    "NotSPDError",
    "IterationLimitError",
    "cholesky_factorize",
    "cholesky_solve",
    "cg_solve",
]


class NotSPDError(np.linalg.LinAlgError):
    """Raised when a factorization meets a non-positive pivot.

    Attributes
    ----------
    subdomain : int or None
        Subdomain whose local matrix failed, when raised during solver setup.
    """

    def __init__(self, message, subdomain=None):
        super().__init__(message)
        self.subdomain = subdomain


class IterationLimitError(RuntimeError):
    """Raised when an iterative solve exhausts its iteration budget.

    Attributes
    ----------
    x : numpy.ndarray
        Last iterate.
    iterations : int
    residual_norm : float
        Norm of the residual of the last iterate.
    """

    def __init__(self, message, x, iterations, residual_norm):
        super().__init__(message)
        self.x = x
        self.iterations = iterations
        self.residual_norm = residual_norm


class CholeskyFactor:
    """Lower Cholesky factor ``L`` of an SPD matrix, ``A = L L^T``.

    The factor is kept in LAPACK lower band storage: ``lower_band[k, j] = L[j + k, j]``.
    A dense factor is the special case ``bandwidth = dimension - 1``.
    """

    def __init__(self, lower_band):
        self.lower_band = lower_band
        self.bandwidth = lower_band.shape[0] - 1
        self.dimension = lower_band.shape[1]

    def dense_lower(self):
        """Expand the factor to a dense lower-triangular matrix."""
        dense = np.zeros((self.dimension, self.dimension))
        cols = np.arange(self.dimension)
        for k in range(self.bandwidth + 1):
            dense[cols[: self.dimension - k] + k, cols[: self.dimension - k]] = self.lower_band[
                k, : self.dimension - k
            ]
        return dense

    def __repr__(self):
        """Make string representation of object."""
        return "CholeskyFactor(dimension={}, bandwidth={})".format(
            self.dimension, self.bandwidth
        )


def _lower_band(m):
    """Pack the lower triangle of ``m`` in LAPACK band storage."""
    rows, cols, values = m.row_idxs, m.col_idxs, m.values
    lower = rows >= cols
    offsets = rows[lower] - cols[lower]
    bandwidth = int(offsets.max()) if offsets.size else 0
    band = np.zeros((bandwidth + 1, m.num_rows))
    band[offsets, cols[lower]] = values[lower]
    return band


def cholesky_factorize(m):
    """Compute the Cholesky factor of a symmetric positive definite matrix.

    Parameters
    ----------
    m : CsrMatrix
        Square symmetric matrix.

    Returns
    -------
    CholeskyFactor

    Raises
    ------
    ValueError
        If ``m`` is not square or not symmetric.
    NotSPDError
        If a non-positive pivot appears during the factorization.
    """
    if m.num_rows != m.num_cols:
        raise ValueError("Cholesky needs a square matrix, got shape {}".format(m.shape))
    if not m.is_symmetric():
        raise ValueError("Cholesky needs a symmetric matrix")
    if m.num_rows == 0:
        return CholeskyFactor(np.zeros((1, 0)))
    band = _lower_band(m)
    try:
        factor = linalg.cholesky_banded(band, lower=True)
    except np.linalg.LinAlgError as err:
        raise NotSPDError("Matrix is not positive definite: {}".format(err)) from err
    return CholeskyFactor(factor)


def cholesky_solve(f, b):
    """Solve ``A x = b`` given the Cholesky factor of ``A``.

    Parameters
    ----------
    f : CholeskyFactor
    b : array_like
        Right hand side of length ``f.dimension``.

    Returns
    -------
    numpy.ndarray
    """
    b = np.asarray(b, dtype=np.float64)
    if b.ndim != 1 or len(b) != f.dimension:
        raise ValueError(
            "Dimension mismatch: factor has dimension {}, rhs has shape {}".format(
                f.dimension, b.shape
            )
        )
    if f.dimension == 0:
        return np.zeros(0)
    return linalg.cho_solve_banded((f.lower_band, True), b, check_finite=False)


def cg_solve(m, b, rel_tol, max_iters, x0=None, callback=None):
    """Solve an SPD system with the unpreconditioned conjugate gradient method.

    Parameters
    ----------
    m : CsrMatrix
        Symmetric positive definite matrix.
    b : array_like
        Right hand side.
    rel_tol : float
        Stop once ``||m x - b|| <= rel_tol * ||b||``.
    max_iters : int
        Iteration budget.
    x0 : array_like, optional
        Initial guess, zeros by default.
    callback : callable, optional
        Called as ``callback(xk)`` after every iteration.

    Returns
    -------
    numpy.ndarray

    Raises
    ------
    IterationLimitError
        When ``max_iters`` iterations did not reach the tolerance; carries the last iterate.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive, got {}".format(rel_tol))
    b = np.asarray(b, dtype=np.float64)
    if b.ndim != 1 or len(b) != m.num_rows or m.num_rows != m.num_cols:
        raise ValueError("Dimension mismatch: matrix {} and rhs {}".format(m.shape, b.shape))
    x = np.zeros_like(b) if x0 is None else np.array(x0, dtype=np.float64)
    threshold = rel_tol * norm2(b)
    if threshold == 0:
        return np.zeros_like(b)

    residual = b - spmv(m, x)
    rr = residual.dot(residual)
    if np.sqrt(rr) <= threshold:
        return x
    direction = residual.copy()
    for iteration in range(1, max_iters + 1):
        m_direction = spmv(m, direction)
        alpha = rr / direction.dot(m_direction)
        x += alpha * direction
        residual -= alpha * m_direction
        rr_new = residual.dot(residual)
        if callback is not None:
            callback(x)
        if np.sqrt(rr_new) <= threshold:
            # the recurrence drifts from the true residual, so confirm before returning
            residual = b - spmv(m, x)
            rr_new = residual.dot(residual)
            if np.sqrt(rr_new) <= threshold:
                return x
            _log.debug("CG restart at iteration %d, true residual %g", iteration, rr_new ** 0.5)
            direction = residual.copy()
            rr = rr_new
            continue
        direction = residual + (rr_new / rr) * direction
        rr = rr_new

    raise IterationLimitError(
        "CG did not reach rel_tol={} within {} iterations".format(rel_tol, max_iters),
        x=x,
        iterations=max_iters,
        residual_norm=float(np.sqrt(rr)),
    )
