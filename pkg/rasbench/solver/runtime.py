"""Per-subdomain solver state and the pieces shared by every execution mode."""
import logging
import threading
import time

import numpy as np

from ..convergence import check_local, verify_global
from ..linalg import (
    IterationLimitError,
    NotSPDError,
    cg_solve,
    cholesky_factorize,
    cholesky_solve,
    spmv,
)
from ..partition import decompose, exchange_plan
from ..utils import PhaseTimer
from .metrics import RunMetrics

_log = logging.getLogger(__name__)

__all__ = [
    "SubdomainRuntime",
    "GlobalSolution",
    "NoConvergenceError",
    "VerificationFailedError",
    "setup",
    "local_iterate",
    "gather",
]


class NoConvergenceError(RuntimeError):
    """The run hit ``max_iter`` before the detector terminated it.

    Attributes
    ----------
    solution : GlobalSolution
        Gathered iterate at the time the run stopped.
    metrics : RunMetrics
    """

    def __init__(self, message, solution, metrics):
        super().__init__(message)
        self.solution = solution
        self.metrics = metrics


class VerificationFailedError(RuntimeError):
    """The gathered solution failed the global check after termination.

    Attributes
    ----------
    solution : GlobalSolution
    metrics : RunMetrics
    residual_norm : float
    """

    def __init__(self, message, solution, metrics, residual_norm):
        super().__init__(message)
        self.solution = solution
        self.metrics = metrics
        self.residual_norm = residual_norm


class SubdomainRuntime:
    """Mutable state of one subdomain's worker.

    Attributes
    ----------
    problem : SubdomainProblem
    factor : CholeskyFactor or None
        Computed once at setup for direct local solves.
    x_local, ghost_values : numpy.ndarray
    owner_values : numpy.ndarray
        Latest values the owners sent for the local unknowns; only overlap entries are
        read, owned entries always come from ``x_local``.
    update_count : int
        Local solves performed.
    timer : PhaseTimer
    cg_failures : int
    history : list of numpy.ndarray
        Every local iterate when history recording is on.
    last_state : LocalConvergenceState or None
    system : LinearSystem
    partition : PartitionMap
    """

    def __init__(self, problem, system, partition, factor=None, x_local=None, ghost_values=None):
        self.problem = problem
        self.system = system
        self.partition = partition
        self.factor = factor
        self.x_local = np.zeros(problem.num_local) if x_local is None else x_local
        self.ghost_values = np.zeros(problem.num_ghosts) if ghost_values is None else ghost_values
        self.owner_values = self.x_local.copy()
        self.update_count = 0
        self.timer = PhaseTimer()
        self.cg_failures = 0
        self.history = []
        self.last_state = None

    @property
    def subdomain_id(self):
        """Id of the subdomain."""
        return self.problem.subdomain_id

    def check(self, tau):
        """Local convergence state of the owners' values on the local rows.

        Overlap entries are replaced by the values their owners sent, so the residual is
        the one the gathered solution has on these rows.
        """
        problem = self.problem
        self.last_state = check_local(
            problem.local_matrix,
            problem.interface_matrix,
            self.consistent_local(),
            self.ghost_values,
            problem.local_rhs,
            tau,
        )
        return self.last_state

    def consistent_local(self):
        """``x_local`` with its overlap entries taken from ``owner_values``."""
        return np.where(self.problem.owned_mask, self.x_local, self.owner_values)

    def __repr__(self):
        """Make string representation of object."""
        return "SubdomainRuntime(id={}, local={}, updates={})".format(
            self.subdomain_id, self.problem.num_local, self.update_count
        )


def setup(system, pm, gamma, config, initial_guess=None):
    """Decompose ``system`` and prepare one runtime per subdomain.

    Parameters
    ----------
    system : LinearSystem
    pm : PartitionMap
    gamma : int or OverlapSpec
    config : SolverConfig
    initial_guess : numpy.ndarray, optional
        Global vector the local iterates and ghost values start from, zeros by default.

    Returns
    -------
    list of SubdomainRuntime

    Raises
    ------
    NotSPDError
        If a local matrix cannot be factored; ``subdomain`` names it.
    """
    problems = decompose(system.matrix, system.rhs, pm, gamma)
    runtimes = []
    for problem in problems:
        factor = None
        if config.local_solver == "direct":
            try:
                factor = cholesky_factorize(problem.local_matrix)
            except NotSPDError as err:
                raise NotSPDError(
                    "Local matrix of subdomain {} is not SPD: {}".format(problem.subdomain_id, err),
                    subdomain=problem.subdomain_id,
                ) from err
        x_local = ghost_values = None
        if initial_guess is not None:
            x_local = np.array(initial_guess, dtype=np.float64)[problem.local_to_global]
            ghost_values = np.array(initial_guess, dtype=np.float64)[problem.ghost_to_global]
        runtimes.append(SubdomainRuntime(problem, system, pm, factor, x_local, ghost_values))
    _log.debug(
        "Set up %d subdomains, local dimensions %s",
        len(runtimes),
        [problem.num_local for problem in problems],
    )
    return runtimes


def local_iterate(rt, config):
    """Solve the local problem with the current ghost values folded into the rhs.

    A local CG solve that hits its iteration limit keeps its last iterate and is counted
    in ``rt.cg_failures``.

    Returns
    -------
    numpy.ndarray
        The new ``x_local``.
    """
    problem = rt.problem
    with rt.timer.phase("local_solve"):
        rhs = problem.local_rhs - spmv(problem.interface_matrix, rt.ghost_values)
        if config.local_solver == "direct":
            x_local = cholesky_solve(rt.factor, rhs)
        else:
            try:
                x_local = cg_solve(
                    problem.local_matrix,
                    rhs,
                    config.cg_rel_tol,
                    10 * problem.num_local,
                    x0=rt.x_local,
                )
            except IterationLimitError as err:
                _log.warning(
                    "Local CG of subdomain %d stopped at residual %g",
                    rt.subdomain_id,
                    err.residual_norm,
                )
                x_local = err.x
                rt.cg_failures += 1
        rt.x_local = x_local
        rt.update_count += 1
        if config.record_history:
            rt.history.append(x_local.copy())
    return x_local


class GlobalSolution:
    """Global iterate assembled from the owners' local values.

    Attributes
    ----------
    x : numpy.ndarray
    contributor : numpy.ndarray of int
        Subdomain that wrote every entry.
    """

    def __init__(self, x, contributor):
        self.x = x
        self.contributor = contributor

    def __repr__(self):
        """Make string representation of object."""
        return "GlobalSolution(n={})".format(len(self.x))


def gather(runtimes, pm):
    """Restrict every local iterate to its owned indices and assemble the global vector.

    Overlap values are discarded, so ``contributor`` equals the partition's owner array.
    """
    x = np.zeros(pm.n)
    contributor = np.full(pm.n, -1, dtype=np.int64)
    for rt in runtimes:
        problem = rt.problem
        owned = problem.local_to_global[problem.owned_mask]
        x[owned] = rt.x_local[problem.owned_mask]
        contributor[owned] = rt.subdomain_id
    if np.any(contributor < 0):
        raise ValueError("Runtimes do not cover every global index")
    return GlobalSolution(x, contributor)


class WorkerGroup:
    """One thread per subdomain; the first failure releases every other worker.

    Parameters
    ----------
    on_failure : callable
        Called once a worker raised, to wake up the ones still blocked.
    """

    def __init__(self, on_failure):
        self.on_failure = on_failure
        self.errors = []
        self._lock = threading.Lock()

    def run(self, runtimes, target):
        """Run ``target(rt)`` for every runtime concurrently and return the results.

        Time a worker spends outside the named phases is booked as ``other``.
        """
        results = [None] * len(runtimes)

        def work(index, rt):
            start = time.perf_counter()
            try:
                results[index] = target(rt)
            except Exception as err:  # pylint: disable=broad-except
                with self._lock:
                    self.errors.append(err)
                self.on_failure()
            finally:
                elapsed = time.perf_counter() - start
                rt.timer.add("other", max(elapsed - sum(rt.timer.totals.values()), 0.0))

        threads = [
            threading.Thread(
                target=work, args=(index, rt), name="rasbench-subdomain-{}".format(rt.subdomain_id)
            )
            for index, rt in enumerate(runtimes)
        ]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        if self.errors:
            raise self.errors[0]
        return results


def finish_run(runtimes, config, mode, start, iterations, terminated, run_index=0):
    """Gather, verify and measure a finished ``mode`` run.

    Returns
    -------
    (GlobalSolution, RunMetrics)

    Raises
    ------
    NoConvergenceError
        If the run was not terminated by the detector.
    VerificationFailedError
        If the gathered solution fails the global check.
    """
    system = runtimes[0].system
    solution = gather(runtimes, runtimes[0].partition)
    verification = verify_global(system.matrix, solution.x, system.rhs, config.tau)
    elapsed = time.perf_counter() - start
    plan = exchange_plan([rt.problem for rt in runtimes])
    failure = None
    if not terminated:
        failure = "no_convergence"
    elif not verification.verified:
        failure = "verification_failed"
    metrics = RunMetrics(
        mode=mode,
        time_to_solution=elapsed,
        update_counts=[rt.update_count for rt in runtimes],
        phase_times=[list(rt.timer.totals.values()) for rt in runtimes],
        cg_failures=[rt.cg_failures for rt in runtimes],
        iterations=iterations,
        terminated=terminated,
        verified=verification.verified,
        residual_norm=verification.residual_norm,
        config=config.to_dict(),
        local_dims=[rt.problem.num_local for rt in runtimes],
        ghost_counts=[rt.problem.num_ghosts for rt in runtimes],
        diameter=plan.pattern.diameter(),
        run_index=run_index,
        failure=failure,
    )
    if not terminated:
        raise NoConvergenceError(
            "{} run did not terminate within max_iter={}".format(mode, config.max_iter),
            solution,
            metrics,
        )
    if not verification.verified:
        _log.warning(
            "%s run terminated but failed verification, residual %g",
            mode,
            verification.residual_norm,
        )
        raise VerificationFailedError(
            "Gathered solution has residual {:g}, above tau * ||b||".format(
                verification.residual_norm
            ),
            solution,
            metrics,
            verification.residual_norm,
        )
    _log.info(
        "%s run verified after %d iterations in %.4gs",
        mode,
        iterations,
        metrics.time_to_solution,
    )
    return solution, metrics
