"""Two-sided lock-step exchange over per-pair message queues."""
import logging
import queue
import threading
import time

import numpy as np

from .base import (
    BrokenRendezvousError,
    DeadlockSuspectedError,
    TagMismatchError,
    TwoSidedExchange,
)

_log = logging.getLogger(__name__)

__all__ = ["Mailbox", "exchange_sync"]

_ABORT = object()


class Mailbox(TwoSidedExchange):
    """Tagged FIFO queues for every ordered pair of communicating subdomains.

    Parameters
    ----------
    senders : list of sequence
        ``senders[p]``: subdomains ``p`` receives from in every round.
    receivers : list of sequence
        ``receivers[p]``: subdomains ``p`` sends to in every round.
    timeout : float
        Seconds a rendezvous may take before a deadlock is suspected.
    flag_board : LockstepFlagBoard, optional
        Committed once per round by `round_barrier`.
    """

    def __init__(self, senders, receivers, timeout, flag_board=None):
        self.senders = [sorted(int(q) for q in group) for group in senders]
        self.receivers = [sorted(int(q) for q in group) for group in receivers]
        self.timeout = timeout
        self._queues = {
            (q, p): queue.Queue() for p, group in enumerate(self.senders) for q in group
        }
        for p, group in enumerate(self.receivers):
            for q in group:
                if (p, q) not in self._queues:
                    raise ValueError("Subdomain {} sends to {} which does not expect it".format(p, q))
        action = flag_board.commit if flag_board is not None else None
        self._barrier = threading.Barrier(len(self.senders), action=action, timeout=timeout)
        self._aborted = threading.Event()

    @classmethod
    def from_plan(cls, plan, timeout, flag_board=None):
        """Build the mailbox of an `ExchangePlan`."""
        return cls(
            [plan.senders(p) for p in range(plan.num_subdomains)],
            [plan.receivers(p) for p in range(plan.num_subdomains)],
            timeout,
            flag_board,
        )

    @property
    def aborted(self):
        """Whether `abort` was called."""
        return self._aborted.is_set()

    def exchange_sync(self, me, iteration, outgoing):
        """Send ``outgoing`` to every receiver and wait for every sender's message.

        Parameters
        ----------
        me : int
        iteration : int
            Tag every participant uses for this round.
        outgoing : dict
            Payload per receiver; the keys must be exactly the receivers of ``me``.

        Returns
        -------
        dict
            Payload per sender, all tagged ``iteration``.

        Raises
        ------
        BrokenRendezvousError
            If a participant aborted.
        DeadlockSuspectedError
            If a message did not arrive within the timeout.
        TagMismatchError
            If a message carries another iteration.
        """
        if self.aborted:
            raise BrokenRendezvousError("Exchange aborted before iteration {}".format(iteration))
        if sorted(outgoing) != self.receivers[me]:
            raise ValueError(
                "Subdomain {} must send to {}, got payloads for {}".format(
                    me, self.receivers[me], sorted(outgoing)
                )
            )
        for receiver in self.receivers[me]:
            payload = np.array(outgoing[receiver], dtype=np.float64, copy=True)
            self._queues[(me, receiver)].put((iteration, payload))

        deadline = time.monotonic() + self.timeout
        incoming = {}
        for sender in self.senders[me]:
            try:
                message = self._queues[(sender, me)].get(
                    timeout=max(deadline - time.monotonic(), 0.0)
                )
            except queue.Empty:
                raise DeadlockSuspectedError(
                    "Subdomain {} waited {}s for subdomain {} in iteration {}".format(
                        me, self.timeout, sender, iteration
                    )
                )
            if message is _ABORT:
                raise BrokenRendezvousError(
                    "Subdomain {} aborted during iteration {}".format(sender, iteration)
                )
            tag, payload = message
            if tag != iteration:
                raise TagMismatchError(
                    "Subdomain {} expected iteration {} from {}, got {}".format(
                        me, iteration, sender, tag
                    )
                )
            incoming[sender] = payload
        return incoming

    def round_barrier(self, me):
        """Wait for every participant, committing the flag board once all arrived."""
        try:
            self._barrier.wait()
        except threading.BrokenBarrierError:
            if self.aborted:
                raise BrokenRendezvousError("Round barrier aborted")
            raise DeadlockSuspectedError(
                "Subdomain {} waited more than {}s at the round barrier".format(me, self.timeout)
            )

    def abort(self):
        """Wake every blocked participant with a broken-rendezvous error."""
        if self.aborted:
            return
        _log.debug("Aborting lock-step exchange")
        self._aborted.set()
        for channel in self._queues.values():
            channel.put(_ABORT)
        self._barrier.abort()


def exchange_sync(mb, me, iteration, outgoing):
    """Lock-step exchange of subdomain ``me`` through mailbox ``mb``."""
    return mb.exchange_sync(me, iteration, outgoing)
