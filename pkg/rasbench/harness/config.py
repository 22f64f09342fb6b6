"""Experiment configuration."""
import os

from ..convergence import DetectorConfig
from ..partition import make_partition
from ..problem import LinearSystem, laplace_system, random_rhs, read_matrix_market
from ..solver import SolverConfig
from ..utils import rc_default

__all__ = ["ExperimentConfig"]


class ExperimentConfig:
    """Everything needed to reproduce a set of solver runs.

    Arguments left as None take their value from `rasbench.rcParams`. Exactly one of
    ``grid_n`` and ``matrix_file`` describes the problem; with neither, the generated
    Laplace problem of size ``rcParams["problem.grid_n"]`` is used.

    Parameters
    ----------
    grid_n : int, optional
    matrix_file : str, optional
        Matrix Market file of a generic SPD system.
    rhs_seed : int, optional
    subdomains : int, optional
    partitioner : str, optional
    partition_file : str, optional
    overlap : int, optional
    mode : {"sync", "async"}, optional
    local_solver : {"direct", "cg"}, optional
    cg_rel_tol, tolerance : float, optional
    max_iter : int, optional
    detector : {"centralized", "decentralized"}, optional
    arity : int, optional
    skip_unchanged : bool, optional
    timeout : float, optional
        Rendezvous timeout of the lock-step exchange.
    runs : int, optional
        Defaults to ``experiment.runs_sync`` or ``experiment.runs_async`` by mode.
    out_dir : str, optional
        Output directory; ``""`` disables file output.
    netcdf : bool, optional
        Also archive the runs as netCDF.
    """

    def __init__(
        self,
        grid_n=None,
        matrix_file=None,
        rhs_seed=None,
        subdomains=None,
        partitioner=None,
        partition_file=None,
        overlap=None,
        mode=None,
        local_solver=None,
        cg_rel_tol=None,
        tolerance=None,
        max_iter=None,
        detector=None,
        arity=None,
        skip_unchanged=None,
        timeout=None,
        runs=None,
        out_dir=None,
        netcdf=False,
    ):
        if grid_n is not None and matrix_file is not None:
            raise ValueError("grid_n and matrix_file are mutually exclusive")
        self.matrix_file = matrix_file
        self.grid_n = None if matrix_file is not None else rc_default(grid_n, "problem.grid_n")
        self.rhs_seed = rc_default(rhs_seed, "problem.rhs_seed")
        self.subdomains = rc_default(subdomains, "partition.subdomains")
        self.partitioner = rc_default(partitioner, "partition.scheme")
        if (self.partitioner == "external") != (partition_file is not None):
            raise ValueError("A partition file goes together with the external partitioner")
        self.partition_file = partition_file
        self.overlap = rc_default(overlap, "partition.overlap")
        self.timeout = rc_default(timeout, "transport.timeout")
        self.solver = SolverConfig(
            mode=mode,
            local_solver=local_solver,
            cg_rel_tol=cg_rel_tol,
            tau=tolerance,
            max_iter=max_iter,
            detector=DetectorConfig(detector, arity),
            seed=self.rhs_seed,
            skip_unchanged=skip_unchanged,
        )
        runs_key = "experiment.runs_{}".format(self.solver.mode)
        self.runs = rc_default(runs, runs_key)
        self.out_dir = out_dir if out_dir is not None else rc_default(None, "experiment.out_dir")
        self.netcdf = bool(netcdf)

    @property
    def mode(self):
        """Execution mode of the solver."""
        return self.solver.mode

    def build_system(self):
        """Generate or load the linear system."""
        if self.matrix_file is None:
            return laplace_system(self.grid_n, self.rhs_seed)
        matrix = read_matrix_market(self.matrix_file)
        return LinearSystem(
            matrix, random_rhs(matrix.num_rows, self.rhs_seed), rhs_seed=self.rhs_seed
        )

    def build_partition(self, system):
        """Partition ``system`` with the configured scheme."""
        return make_partition(system, self.partitioner, self.subdomains, self.partition_file)

    def replace(self, **changes):
        """Return a copy with some arguments changed."""
        kwargs = self.to_kwargs()
        if "matrix_file" in changes:
            kwargs.pop("grid_n")
        if "grid_n" in changes:
            kwargs.pop("matrix_file")
        if changes.get("partitioner", "external") != "external":
            kwargs.pop("partition_file")
        kwargs.update(changes)
        return ExperimentConfig(**kwargs)

    def to_kwargs(self):
        """Constructor arguments reproducing this configuration."""
        return {
            "grid_n": self.grid_n,
            "matrix_file": self.matrix_file,
            "rhs_seed": self.rhs_seed,
            "subdomains": self.subdomains,
            "partitioner": self.partitioner,
            "partition_file": self.partition_file,
            "overlap": self.overlap,
            "mode": self.solver.mode,
            "local_solver": self.solver.local_solver,
            "cg_rel_tol": self.solver.cg_rel_tol,
            "tolerance": self.solver.tau,
            "max_iter": self.solver.max_iter,
            "detector": self.solver.detector.mode,
            "arity": self.solver.detector.arity,
            "skip_unchanged": self.solver.skip_unchanged,
            "timeout": self.timeout,
            "runs": self.runs,
            "out_dir": self.out_dir,
            "netcdf": self.netcdf,
        }

    def to_dict(self):
        """Fully resolved configuration, embedded in every output."""
        config = self.to_kwargs()
        config["matrix_file"] = (
            os.path.abspath(self.matrix_file) if self.matrix_file is not None else None
        )
        config["solver"] = self.solver.to_dict()
        return config

    def __repr__(self):
        """Make string representation of object."""
        problem = (
            "grid_n={}".format(self.grid_n)
            if self.matrix_file is None
            else "matrix_file={}".format(self.matrix_file)
        )
        return "ExperimentConfig({}, P={}, {}, gamma={}, {}, runs={})".format(
            problem, self.subdomains, self.partitioner, self.overlap, self.mode, self.runs
        )
