"""One-sided windows and flag boards.

Each slot holds an immutable snapshot that is replaced with a single reference assignment,
so readers always see a complete payload together with its epoch.
"""
import numpy as np

from .base import FlagBoardBase, FlagState, OneSidedWindow

__all__ = ["Window", "FlagBoard", "LockstepFlagBoard", "put", "flush", "read_latest"]


class Window(OneSidedWindow):
    """Epoch-tagged buffer owned by one subdomain.

    Parameters
    ----------
    owner_subdomain : int
    slot_lengths : dict
        Fixed payload length per writer id.
    """

    def __init__(self, owner_subdomain, slot_lengths):
        self.owner_subdomain = owner_subdomain
        self.slot_lengths = dict(slot_lengths)
        self._slots = {}
        for writer, length in self.slot_lengths.items():
            initial = np.zeros(length)
            initial.setflags(write=False)
            self._slots[writer] = (initial, 0)
        self.puts = {writer: 0 for writer in self.slot_lengths}
        self.flushes = {writer: 0 for writer in self.slot_lengths}
        self._unflushed = {writer: 0 for writer in self.slot_lengths}

    def _check_writer(self, writer):
        if writer not in self.slot_lengths:
            raise ValueError(
                "Subdomain {} has no slot in the window of subdomain {}".format(
                    writer, self.owner_subdomain
                )
            )

    def put(self, writer, payload):
        """Publish a copy of ``payload`` with the next epoch of ``writer``.

        Only ``writer`` itself may put into its slot.
        """
        self._check_writer(writer)
        payload = np.array(payload, dtype=np.float64, copy=True).ravel()
        if len(payload) != self.slot_lengths[writer]:
            raise ValueError(
                "Slot of subdomain {} holds {} values, got {}".format(
                    writer, self.slot_lengths[writer], len(payload)
                )
            )
        payload.setflags(write=False)
        epoch = self._slots[writer][1] + 1
        self._slots[writer] = (payload, epoch)
        self.puts[writer] += 1
        self._unflushed[writer] += 1

    def flush(self, writer):
        """Complete the outstanding puts of ``writer``.

        Puts are visible as soon as they return in-process, so this only closes the epoch
        bookkeeping; a flush without outstanding puts changes nothing.
        """
        self._check_writer(writer)
        if self._unflushed[writer]:
            self._unflushed[writer] = 0
            self.flushes[writer] += 1

    def read_latest(self, writer):
        """Return the latest ``(payload, epoch)`` of ``writer``, ``(zeros, 0)`` before any put.

        The payload is read-only and never modified afterwards.
        """
        self._check_writer(writer)
        return self._slots[writer]

    def __repr__(self):
        """Make string representation of object."""
        return "Window(owner={}, writers={})".format(
            self.owner_subdomain, sorted(self.slot_lengths)
        )


def put(w, writer, payload):
    """Put ``payload`` into the ``writer`` slot of window ``w``."""
    w.put(writer, payload)


def flush(w, writer):
    """Flush the puts ``writer`` issued to window ``w``."""
    w.flush(writer)


def read_latest(w, writer):
    """Read the latest complete payload of ``writer`` from window ``w``."""
    return w.read_latest(writer)


class FlagBoard(FlagBoardBase):
    """Flags that become visible as soon as they are posted.

    The termination flag of a subdomain is irreversible once posted.
    """

    def __init__(self, num_subdomains):
        self._num_subdomains = num_subdomains
        self._visible = [FlagState(0, False, 0) for _ in range(num_subdomains)]

    @property
    def num_subdomains(self):
        """Number of subdomains on the board."""
        return self._num_subdomains

    def _next_state(self, current, level, terminate):
        return FlagState(int(level), bool(terminate or current.terminate), current.epoch + 1)

    def post(self, me, level, terminate=False):
        """Publish ``level`` and ``terminate`` for subdomain ``me``."""
        self._visible[me] = self._next_state(self._visible[me], level, terminate)

    def read(self, p):
        """Return the visible `FlagState` of ``p``."""
        return self._visible[p]

    def __repr__(self):
        """Make string representation of object."""
        return "{}(P={})".format(self.__class__.__name__, self.num_subdomains)


class LockstepFlagBoard(FlagBoard):
    """Flags posted during a round become visible together at the round boundary.

    `commit` is called once per round while every participant waits at the barrier.
    """

    def __init__(self, num_subdomains):
        super().__init__(num_subdomains)
        self._staged = list(self._visible)
        self.rounds = 0

    def post(self, me, level, terminate=False):
        """Stage the state of ``me`` for the next round boundary."""
        self._staged[me] = self._next_state(self._staged[me], level, terminate)

    def commit(self):
        """Make every staged state visible."""
        self._visible = list(self._staged)
        self.rounds += 1
