"""Sequential reference of the lock-step iteration, one subdomain after the other."""
import logging

from ..comm import LockstepFlagBoard
from ..convergence import make_detector
from ..partition import exchange_plan
from .config import SolverConfig
from .runtime import gather, local_iterate

_log = logging.getLogger(__name__)

__all__ = ["ReferenceResult", "run_reference"]


class ReferenceResult:
    """Outcome of `run_reference`.

    Attributes
    ----------
    solution : GlobalSolution
    iterations : int
    terminated : bool
    """

    def __init__(self, solution, iterations, terminated):
        self.solution = solution
        self.iterations = iterations
        self.terminated = terminated

    def __repr__(self):
        """Make string representation of object."""
        return "ReferenceResult(iterations={}, terminated={})".format(
            self.iterations, self.terminated
        )


def run_reference(runtimes, detector=None, config=None):
    """Run the lock-step RAS iteration in a single thread.

    Performs the same local solves, iteration-tagged exchanges, convergence tests and
    detector rounds as `run_sync`, round-robin over the subdomains, and serves as its
    oracle: with ``config.record_history`` both produce the same iterates.

    Parameters
    ----------
    runtimes : list of SubdomainRuntime
    detector : DetectorConfig, optional
    config : SolverConfig, optional

    Returns
    -------
    ReferenceResult
    """
    config = SolverConfig(mode="sync") if config is None else config
    detector = config.detector if detector is None else detector
    plan = exchange_plan([rt.problem for rt in runtimes])
    flag_board = LockstepFlagBoard(len(runtimes))
    protocol = make_detector(detector, flag_board, plan.pattern)

    for iteration in range(1, config.max_iter + 1):
        for rt in runtimes:
            local_iterate(rt, config)
        outgoing = [plan.pack(rt.subdomain_id, rt.x_local) for rt in runtimes]
        for rt in runtimes:
            p = rt.subdomain_id
            for sender in plan.senders(p):
                plan.unpack(p, rt.ghost_values, sender, outgoing[sender][p], rt.owner_values)
        for rt in runtimes:
            protocol.step(rt.subdomain_id, rt.check(config.tau))
        flag_board.commit()
        if flag_board.all_terminated():
            _log.debug("Reference run terminated after %d iterations", iteration)
            return ReferenceResult(gather(runtimes, runtimes[0].partition), iteration, True)
    return ReferenceResult(gather(runtimes, runtimes[0].partition), config.max_iter, False)
