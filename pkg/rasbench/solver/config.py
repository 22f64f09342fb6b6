"""Solver configuration."""
from ..convergence import DetectorConfig
from ..utils import rc_default

__all__ = ["SolverConfig"]


class SolverConfig:
    """Parameters of one RAS solve.

    Every argument left as None takes its value from `rasbench.rcParams`.

    Parameters
    ----------
    mode : {"sync", "async"}, optional
    local_solver : {"direct", "cg"}, optional
    cg_rel_tol : float, optional
        Relative tolerance of local CG solves.
    tau : float, optional
        Global tolerance of the relative residual.
    max_iter : int, optional
        Lock-step iterations (sync) or local solves per subdomain (async).
    detector : DetectorConfig, optional
    seed : int, optional
        Seed of the right hand side, echoed into the metrics.
    skip_unchanged : bool, optional
        Let converged async workers skip local solves while no new ghost data arrived.
    record_history : bool, optional
        Keep a copy of every local iterate.
    """

    flush_policy = "per_neighbor_per_solve"
    poll_policy = "once_per_solve"

    def __init__(
        self,
        mode=None,
        local_solver=None,
        cg_rel_tol=None,
        tau=None,
        max_iter=None,
        detector=None,
        seed=None,
        skip_unchanged=None,
        record_history=False,
    ):
        self.mode = rc_default(mode, "solver.mode")
        self.local_solver = rc_default(local_solver, "solver.local_solver")
        self.cg_rel_tol = rc_default(cg_rel_tol, "solver.cg_rel_tol")
        self.tau = rc_default(tau, "solver.tolerance")
        self.max_iter = rc_default(max_iter, "solver.max_iter")
        self.detector = detector if detector is not None else DetectorConfig()
        self.seed = rc_default(seed, "problem.rhs_seed")
        self.skip_unchanged = rc_default(skip_unchanged, "solver.skip_unchanged")
        self.record_history = bool(record_history)

    def to_dict(self):
        """Plain representation for metrics and exports."""
        return {
            "mode": self.mode,
            "local_solver": self.local_solver,
            "cg_rel_tol": self.cg_rel_tol,
            "tau": self.tau,
            "max_iter": self.max_iter,
            "detector": self.detector.to_dict(),
            "seed": self.seed,
            "skip_unchanged": self.skip_unchanged,
            "flush_policy": self.flush_policy,
            "poll_policy": self.poll_policy,
        }

    def __repr__(self):
        """Make string representation of object."""
        return "SolverConfig({})".format(
            ", ".join("{}={}".format(key, value) for key, value in self.to_dict().items())
        )
