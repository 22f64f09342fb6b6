"""Transport interfaces shared by the in-process backend and any network backend."""
from abc import ABC, abstractmethod
from collections import namedtuple

__all__ = [
    "BrokenRendezvousError",
    "DeadlockSuspectedError",
    "TagMismatchError",
    "FlagState",
    "OneSidedWindow",
    "TwoSidedExchange",
    "FlagBoardBase",
    "Transport",
]


class BrokenRendezvousError(RuntimeError):
    """A participant of a lock-step exchange aborted."""


class DeadlockSuspectedError(TimeoutError):
    """A rendezvous did not complete within the transport timeout."""


class TagMismatchError(RuntimeError):
    """A lock-step message carries a different iteration than the one being exchanged."""


FlagState = namedtuple("FlagState", ["level", "terminate", "epoch"])
FlagState.__doc__ = """Published detector state of one subdomain.

``level`` is the detector-specific convergence level (0 means not converged), ``terminate``
the irreversible global-termination flag and ``epoch`` the number of posts so far.
"""


class OneSidedWindow(ABC):
    """Remotely writable buffer owned by one subdomain, one slot per writer."""

    @abstractmethod
    def put(self, writer, payload):
        """Publish ``payload`` in the ``writer`` slot without waiting on the owner."""

    @abstractmethod
    def flush(self, writer):
        """Complete every put issued by ``writer``."""

    @abstractmethod
    def read_latest(self, writer):
        """Return the latest complete ``(payload, epoch)`` of the ``writer`` slot."""


class TwoSidedExchange(ABC):
    """Lock-step tagged exchange between neighboring subdomains."""

    @abstractmethod
    def exchange_sync(self, me, iteration, outgoing):
        """Send ``outgoing`` and return the payloads every sender tagged with ``iteration``."""

    @abstractmethod
    def round_barrier(self, me):
        """Wait until every participant finished the current round."""

    @abstractmethod
    def abort(self):
        """Release every participant blocked in the exchange."""


class FlagBoardBase(ABC):
    """Per-subdomain convergence and termination flags."""

    @abstractmethod
    def post(self, me, level, terminate=False):
        """Publish the state of subdomain ``me``."""

    @abstractmethod
    def read(self, p):
        """Return the visible `FlagState` of subdomain ``p``."""

    @property
    @abstractmethod
    def num_subdomains(self):
        """Number of subdomains on the board."""

    def all_terminated(self):
        """Whether every subdomain has a visible termination flag."""
        return all(self.read(p).terminate for p in range(self.num_subdomains))

    def any_terminated(self):
        """Whether some subdomain has a visible termination flag."""
        return any(self.read(p).terminate for p in range(self.num_subdomains))


class Transport(ABC):
    """Factory for the communication objects of one solver run.

    A backend creates fresh objects for every run so no state leaks between runs.
    """

    @abstractmethod
    def create_windows(self, plan):
        """Return one `OneSidedWindow` per subdomain sized after ``plan``."""

    @abstractmethod
    def create_exchange(self, plan, flag_board=None):
        """Return a `TwoSidedExchange`; ``flag_board`` is committed at every round barrier."""

    @abstractmethod
    def create_flag_board(self, num_subdomains, lockstep):
        """Return a `FlagBoardBase`, lock-step boards only publish at round barriers."""
