# pylint: disable=wildcard-import
"""Synchronous and asynchronous Restricted Additive Schwarz solvers."""
from .config import *
from .metrics import *
from .runtime import *
from .synchronous import *
from .asynchronous import *
from .reference import *

__all__ = [
    "SolverConfig",
    "RunMetrics",
    "SubdomainRuntime",
    "GlobalSolution",
    "NoConvergenceError",
    "VerificationFailedError",
    "setup",
    "local_iterate",
    "gather",
    "run_sync",
    "run_async",
    "ReferenceResult",
    "run_reference",
]
