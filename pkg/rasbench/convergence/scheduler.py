"""Deterministic single-threaded driver for the termination detectors."""
import numpy as np

from ..comm import FlagBoard, LockstepFlagBoard
from .criteria import LocalConvergenceState
from .detectors import TERMINATE

__all__ = ["DeterministicScheduler", "SchedulerTrace"]


class SchedulerTrace:
    """Record of a scheduled detector run.

    Attributes
    ----------
    rounds : int
        Rounds executed.
    terminated_at : dict
        Round in which each subdomain decided to terminate.
    premature : list of tuple
        ``(round, subdomain)`` pairs where termination was decided while some subdomain
        was not converged in that round.
    """

    def __init__(self, num_subdomains):
        self.num_subdomains = num_subdomains
        self.rounds = 0
        self.terminated_at = {}
        self.premature = []

    @property
    def all_terminated(self):
        """Whether every scheduled subdomain terminated."""
        return self.num_subdomains == len(self.terminated_at)

    @property
    def last_termination(self):
        """Round of the last termination decision, None if some subdomain never terminated."""
        if not self.all_terminated:
            return None
        return max(self.terminated_at.values())

    def __repr__(self):
        """Make string representation of object."""
        return "SchedulerTrace(rounds={}, terminated={})".format(
            self.rounds, sorted(self.terminated_at)
        )


class DeterministicScheduler:
    """Drive a detector over scripted local convergence states.

    In lock-step mode every subdomain steps once per round against a `LockstepFlagBoard`
    that is committed at the end of the round. Otherwise steps interleave against an
    immediate `FlagBoard` in a per-round order drawn from ``seed``.

    Parameters
    ----------
    detector_factory : callable
        ``detector_factory(flag_board)`` returns the detector to drive.
    num_subdomains : int
    lockstep : bool, optional
    seed : int, optional
        Seed of the interleaving order when not in lock-step mode.
    """

    def __init__(self, detector_factory, num_subdomains, lockstep=True, seed=0):
        self.num_subdomains = num_subdomains
        self.lockstep = lockstep
        if lockstep:
            self.flag_board = LockstepFlagBoard(num_subdomains)
        else:
            self.flag_board = FlagBoard(num_subdomains)
        self.detector = detector_factory(self.flag_board)
        self._rng = np.random.default_rng(seed)

    def _order(self):
        if self.lockstep:
            return range(self.num_subdomains)
        return self._rng.permutation(self.num_subdomains)

    def run(self, schedule, max_rounds):
        """Step the detector until every subdomain terminated or ``max_rounds`` elapsed.

        Parameters
        ----------
        schedule : callable
            ``schedule(round, subdomain)`` returns whether ``subdomain`` is locally
            converged in ``round`` (rounds start at 1).
        max_rounds : int

        Returns
        -------
        SchedulerTrace
        """
        trace = SchedulerTrace(self.num_subdomains)
        for round_ in range(1, max_rounds + 1):
            converged = [bool(schedule(round_, p)) for p in range(self.num_subdomains)]
            for p in self._order():
                p = int(p)
                if p in trace.terminated_at:
                    continue
                decision = self.detector.step(p, LocalConvergenceState.scripted(converged[p]))
                if decision == TERMINATE:
                    trace.terminated_at[p] = round_
                    if not all(converged):
                        trace.premature.append((round_, p))
            if self.lockstep:
                self.flag_board.commit()
            trace.rounds = round_
            if trace.all_terminated:
                break
        return trace
