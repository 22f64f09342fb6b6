"""In-process transport: every subdomain is a thread sharing windows and queues."""
from ..utils import rc_default
from .base import Transport
from .mailbox import Mailbox
from .window import FlagBoard, LockstepFlagBoard, Window

__all__ = ["InProcessTransport"]


class InProcessTransport(Transport):
    """Communication objects for worker threads of one process.

    Parameters
    ----------
    timeout : float, optional
        Rendezvous timeout in seconds, ``rcParams["transport.timeout"]`` by default.
    """

    def __init__(self, timeout=None):
        self.timeout = rc_default(timeout, "transport.timeout")

    def create_windows(self, plan):
        """One window per subdomain with a slot for each of its senders."""
        return [
            Window(p, {q: plan.payload_length(q, p) for q in plan.senders(p)})
            for p in range(plan.num_subdomains)
        ]

    def create_exchange(self, plan, flag_board=None):
        """Mailbox over the pairs of ``plan``."""
        return Mailbox.from_plan(plan, self.timeout, flag_board)

    def create_flag_board(self, num_subdomains, lockstep):
        """Immediate flag board, or lock-step board published at round barriers."""
        if lockstep:
            return LockstepFlagBoard(num_subdomains)
        return FlagBoard(num_subdomains)

    def __repr__(self):
        """Make string representation of object."""
        return "InProcessTransport(timeout={})".format(self.timeout)
