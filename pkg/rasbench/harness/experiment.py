"""Repeated solver runs and their outputs."""
import logging
import os

from ..comm import InProcessTransport
from ..partition import decompose, comm_pattern
from ..solver import NoConvergenceError, VerificationFailedError, run_async, run_sync, setup
from .export import ExperimentData, export_comm_heatmap, export_metrics
from .metrics import AggregateStats

_log = logging.getLogger(__name__)

__all__ = ["run_experiment", "run_once"]


def run_once(cfg, system, pm, run_index=0):
    """Execute one solver run with fresh runtimes and transport state.

    Failed runs are not raised: their metrics carry the failure.

    Returns
    -------
    RunMetrics
    """
    runtimes = setup(system, pm, cfg.overlap, cfg.solver)
    transport = InProcessTransport(cfg.timeout)
    solve = run_sync if cfg.mode == "sync" else run_async
    try:
        _, metrics = solve(runtimes, transport, cfg.solver.detector, cfg.solver, run_index)
    except (NoConvergenceError, VerificationFailedError) as err:
        _log.warning("Run %d failed: %s", run_index, err)
        metrics = err.metrics
    metrics.config = cfg.to_dict()
    return metrics


def run_experiment(cfg):
    """Run ``cfg.runs`` independent solves of the same system and partition.

    Runs share the problem and right hand side; asynchronous runs differ only in thread
    scheduling. A failed run is recorded and the remaining runs still execute. With a
    non-empty ``cfg.out_dir`` the per-run documents, aggregate, flat CSV and
    communication heatmap are written there.

    Parameters
    ----------
    cfg : ExperimentConfig

    Returns
    -------
    AggregateStats
    """
    system = cfg.build_system()
    pm = cfg.build_partition(system)
    _log.info("Experiment %s on %s", cfg, system)
    records = [run_once(cfg, system, pm, run_index) for run_index in range(cfg.runs)]
    aggregate = AggregateStats(records, cfg.to_dict())
    if aggregate.failures:
        _log.warning("%d of %d runs failed", aggregate.failures, aggregate.runs)

    if cfg.out_dir:
        export_metrics(records, cfg.out_dir, cfg.to_dict())
        pattern = comm_pattern(decompose(system.matrix, system.rhs, pm, cfg.overlap))
        export_comm_heatmap(pattern, os.path.join(cfg.out_dir, "comm_pattern.csv"))
        if cfg.netcdf:
            ExperimentData.from_records(records, cfg.to_dict()).to_netcdf(
                os.path.join(cfg.out_dir, "experiment.nc")
            )
    return aggregate
