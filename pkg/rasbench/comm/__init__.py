# pylint: disable=wildcard-import
"""Lock-step two-sided and one-sided put/flush communication between subdomains."""
from .base import *
from .window import *
from .mailbox import *
from .transport import *

__all__ = [
    "BrokenRendezvousError",
    "DeadlockSuspectedError",
    "TagMismatchError",
    "FlagState",
    "OneSidedWindow",
    "TwoSidedExchange",
    "FlagBoardBase",
    "Transport",
    "Window",
    "FlagBoard",
    "LockstepFlagBoard",
    "put",
    "flush",
    "read_latest",
    "Mailbox",
    "exchange_sync",
    "InProcessTransport",
]
