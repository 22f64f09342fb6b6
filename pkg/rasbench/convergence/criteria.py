"""Local convergence test and post-termination verification."""
from collections import namedtuple

import numpy as np

from ..linalg import norm2, spmv

__all__ = ["LocalConvergenceState", "GlobalVerification", "check_local", "verify_global"]


class LocalConvergenceState(
    namedtuple(
        "LocalConvergenceState",
        ["locally_converged", "local_residual_norm_sq", "local_rhs_norm_sq", "tolerance"],
    )
):
    """Outcome of the local test ``||r_p||^2 < tau^2 ||b_p||^2``.

    With ``||b_p|| = 0`` a subdomain is converged only if its residual is exactly zero.
    """

    __slots__ = ()

    @classmethod
    def from_norms(cls, residual_norm_sq, rhs_norm_sq, tolerance):
        """Evaluate the criterion for the given squared norms."""
        if rhs_norm_sq == 0:
            converged = residual_norm_sq == 0
        else:
            converged = residual_norm_sq < tolerance ** 2 * rhs_norm_sq
        return cls(bool(converged), float(residual_norm_sq), float(rhs_norm_sq), tolerance)

    @classmethod
    def scripted(cls, converged, tolerance=1e-7):
        """State with the given verdict, for driving detectors without a solver."""
        return cls.from_norms(0.0 if converged else 1.0, 1.0, tolerance)


GlobalVerification = namedtuple("GlobalVerification", ["verified", "residual_norm"])


def check_local(local_matrix, interface_matrix, x_local, ghost_values, local_rhs, tau):
    """Test local convergence of one subdomain, overlap rows included.

    Parameters
    ----------
    local_matrix, interface_matrix : CsrMatrix
    x_local, ghost_values, local_rhs : numpy.ndarray
    tau : float

    Returns
    -------
    LocalConvergenceState
    """
    residual = local_rhs - spmv(local_matrix, x_local) - spmv(interface_matrix, ghost_values)
    return LocalConvergenceState.from_norms(
        float(residual.dot(residual)), float(np.dot(local_rhs, local_rhs)), tau
    )


def verify_global(A, x_global, b, tau):  # pylint: disable=invalid-name
    """Check the global criterion ``||b - A x|| < tau ||b||``.

    Returns
    -------
    GlobalVerification
        ``(verified, residual_norm)``.
    """
    residual_norm = norm2(b - spmv(A, x_global))
    rhs_norm = norm2(b)
    if rhs_norm == 0:
        verified = residual_norm == 0
    else:
        verified = residual_norm < tau * rhs_norm
    return GlobalVerification(bool(verified), residual_norm)
