"""Lock-step RAS: every iteration ends with a tagged two-sided exchange."""
import logging
import time

from ..comm import InProcessTransport
from ..convergence import make_detector
from ..partition import exchange_plan
from .config import SolverConfig
from .runtime import WorkerGroup, finish_run, local_iterate

_log = logging.getLogger(__name__)

__all__ = ["run_sync"]


def _sync_worker(rt, plan, exchange, detector, flag_board, config):
    p = rt.subdomain_id
    for iteration in range(1, config.max_iter + 1):
        local_iterate(rt, config)
        with rt.timer.phase("boundary_exchange"):
            incoming = exchange.exchange_sync(p, iteration, plan.pack(p, rt.x_local))
            for sender, payload in incoming.items():
                plan.unpack(p, rt.ghost_values, sender, payload, rt.owner_values)
        with rt.timer.phase("convergence_check"):
            detector.step(p, rt.check(config.tau))
            exchange.round_barrier(p)
        # the board only changes inside the barrier, so every worker decides alike
        if flag_board.all_terminated():
            return iteration
    return None


def run_sync(runtimes, transport=None, detector=None, config=None, run_index=0):
    """Run lock-step RAS with one worker thread per subdomain.

    Each iteration solves locally, exchanges owned boundary values with every neighbor,
    tests local convergence against the fresh ghosts and steps the detector. Detector
    flags become visible at the round barrier, so all subdomains stop after the same
    iteration and the iterate sequence is reproducible.

    Parameters
    ----------
    runtimes : list of SubdomainRuntime
        Fresh runtimes from `setup`.
    transport : Transport, optional
        Defaults to an `InProcessTransport`.
    detector : DetectorConfig, optional
        Defaults to ``config.detector``.
    config : SolverConfig, optional
    run_index : int, optional
        Echoed into the metrics.

    Returns
    -------
    (GlobalSolution, RunMetrics)

    Raises
    ------
    NoConvergenceError
        When ``max_iter`` iterations pass without termination.
    VerificationFailedError
        When the gathered solution fails the global check.
    """
    config = SolverConfig(mode="sync") if config is None else config
    detector = config.detector if detector is None else detector
    transport = InProcessTransport() if transport is None else transport

    plan = exchange_plan([rt.problem for rt in runtimes])
    flag_board = transport.create_flag_board(len(runtimes), lockstep=True)
    exchange = transport.create_exchange(plan, flag_board)
    protocol = make_detector(detector, flag_board, plan.pattern)
    _log.info(
        "Starting sync run %d: P=%d, %s detector", run_index, len(runtimes), detector.mode
    )

    start = time.perf_counter()
    results = WorkerGroup(on_failure=exchange.abort).run(
        runtimes, lambda rt: _sync_worker(rt, plan, exchange, protocol, flag_board, config)
    )
    terminated = results[0] is not None
    iterations = results[0] if terminated else config.max_iter
    return finish_run(runtimes, config, "sync", start, iterations, terminated, run_index)
