# pylint: disable=wildcard-import
"""Local convergence criteria and distributed termination detection."""
from .criteria import *
from .detectors import *
from .scheduler import *

__all__ = [
    "LocalConvergenceState",
    "GlobalVerification",
    "check_local",
    "verify_global",
    "CONTINUE",
    "TERMINATE",
    "DetectorConfig",
    "CentralizedDetector",
    "DecentralizedDetector",
    "centralized_step",
    "decentralized_step",
    "make_detector",
    "tree_parent",
    "tree_children",
    "tree_levels",
    "DeterministicScheduler",
    "SchedulerTrace",
]
