"""Asynchronous RAS: workers put boundary values into one-sided windows and never wait."""
import logging
import threading
import time
import warnings

from ..comm import InProcessTransport
from ..convergence import TERMINATE, make_detector
from ..partition import exchange_plan
from .config import SolverConfig
from .runtime import WorkerGroup, finish_run, local_iterate

_log = logging.getLogger(__name__)

__all__ = ["SenderFreshness", "run_async"]


class SenderFreshness:
    """Decide whether the values received from every sender may back a convergence claim.

    A sender's values are usable once its epoch reached ``required``: 1 at start, so the
    initial zeros never count, and one past the epoch held when the sender's flag was seen
    dropping back to 0, so values from before a retraction never count.

    Parameters
    ----------
    senders : iterable of int
    """

    def __init__(self, senders):
        self.epochs = {int(q): 0 for q in senders}
        self.required = {q: 1 for q in self.epochs}
        self._levels = {q: 0 for q in self.epochs}

    def received(self, sender, epoch):
        """Record the epoch just read from ``sender``; True if it is new."""
        if epoch == self.epochs[sender]:
            return False
        self.epochs[sender] = epoch
        return True

    def observe_flag(self, sender, level):
        """Record the flag level ``sender`` currently shows."""
        if self._levels[sender] >= 1 and level == 0:
            self.required[sender] = self.epochs[sender] + 1
        self._levels[sender] = level

    @property
    def ready(self):
        """Whether every sender delivered values newer than its last retraction."""
        return all(self.epochs[q] >= self.required[q] for q in self.epochs)

    def __repr__(self):
        """Make string representation of object."""
        return "SenderFreshness(epochs={}, required={})".format(self.epochs, self.required)


def _async_worker(rt, plan, windows, detector, stop, config):
    p = rt.subdomain_id
    freshness = SenderFreshness(plan.senders(p))
    receivers = plan.receivers(p)
    flag_board = detector.flag_board
    fresh = True
    while not stop.is_set():
        if rt.update_count >= config.max_iter:
            _log.debug("Subdomain %d reached max_iter=%d", p, config.max_iter)
            stop.set()
            return False
        converged = rt.last_state is not None and rt.last_state.locally_converged
        if config.skip_unchanged and converged and not fresh:
            time.sleep(0)
        else:
            local_iterate(rt, config)
            with rt.timer.phase("boundary_exchange"):
                for receiver, payload in plan.pack(p, rt.x_local).items():
                    windows[receiver].put(p, payload)
                for receiver in receivers:
                    windows[receiver].flush(p)
        with rt.timer.phase("boundary_exchange"):
            fresh = False
            for sender in freshness.epochs:
                payload, epoch = windows[p].read_latest(sender)
                if freshness.received(sender, epoch):
                    plan.unpack(p, rt.ghost_values, sender, payload, rt.owner_values)
                    fresh = True
        with rt.timer.phase("convergence_check"):
            for sender in freshness.epochs:
                freshness.observe_flag(sender, flag_board.read(sender).level)
            state = rt.check(config.tau)
            if state.locally_converged and not freshness.ready:
                state = state._replace(locally_converged=False)
                rt.last_state = state
            if detector.step(p, state) == TERMINATE:
                return True
    return False

def run_async(runtimes, transport=None, detector=None, config=None, run_index=0):
    """Run asynchronous RAS with one free-running worker thread per subdomain.

    Every worker loops over local solve, put and flush of its owned boundary values into
    each neighbor's window, a read of the latest values in its own window and a detector
    step, until it observes termination. Update counts may differ between subdomains.

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

    Returns
    -------
    (GlobalSolution, RunMetrics)

    Raises
    ------
    NoConvergenceError
        When a worker performs ``max_iter`` local solves without termination.
    VerificationFailedError
        When the gathered solution fails the global check after termination.
    """
    config = SolverConfig(mode="async") if config is None else config
    detector = config.detector if detector is None else detector
    transport = InProcessTransport() if transport is None else transport
    if detector.mode == "centralized" and detector.arity > len(runtimes) > 1:
        warnings.warn(
            "Tree arity {} exceeds the {} subdomains, the tree is a star".format(
                detector.arity, len(runtimes)
            )
        )

    plan = exchange_plan([rt.problem for rt in runtimes])
    windows = transport.create_windows(plan)
    flag_board = transport.create_flag_board(len(runtimes), lockstep=False)
    protocol = make_detector(detector, flag_board, plan.pattern)
    stop = threading.Event()
    _log.info(
        "Starting async run %d: P=%d, %s detector", run_index, len(runtimes), detector.mode
    )

    start = time.perf_counter()
    results = WorkerGroup(on_failure=stop.set).run(
        runtimes, lambda rt: _async_worker(rt, plan, windows, protocol, stop, config)
    )
    terminated = all(results)
    iterations = max(rt.update_count for rt in runtimes)
    return finish_run(runtimes, config, "async", start, iterations, terminated, run_index)
