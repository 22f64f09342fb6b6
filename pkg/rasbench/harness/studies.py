"""Experiment studies: partitioners, overlap, detectors and async speedup."""
import logging
import os

import numpy as np
import pandas as pd

from ..partition import SCHEMES
from ..utils import PHASES
from .experiment import run_experiment

_log = logging.getLogger(__name__)

__all__ = ["compare_partitioners", "sweep_overlap", "compare_detectors", "speedup", "STUDIES"]


def _measure(cfg):
    """Means over the verified runs of ``cfg``, NaN when every run failed."""
    aggregate = run_experiment(cfg.replace(out_dir=""))
    row = {"runs": aggregate.runs, "failures": aggregate.failures}
    succeeded = aggregate.succeeded
    table = aggregate.per_run()
    table = table[table["failure"].isnull()]
    row["time_to_solution"] = table["time_to_solution"].mean() if succeeded else np.nan
    row["iterations"] = table["iterations"].mean() if succeeded else np.nan
    for phase in PHASES:
        column = "{}_avg".format(phase)
        row[column] = table[column].mean() if succeeded else np.nan
    spread = aggregate.spread()
    row["spread_ratio_max"] = spread["ratio"].max()
    row["local_dim_mean"] = float(np.mean([record.local_dims.mean() for record in aggregate.records]))
    row["ghost_count_mean"] = float(
        np.mean([record.ghost_counts.mean() for record in aggregate.records])
    )
    return row


def _write(frame, cfg, name):
    if cfg.out_dir:
        os.makedirs(cfg.out_dir, exist_ok=True)
        filename = os.path.join(cfg.out_dir, "study_{}.csv".format(name))
        frame.to_csv(filename)
        _log.info("Wrote %s", filename)
    return frame


def _sync_async(cfg, sync_runs, async_runs):
    sync = _measure(cfg.replace(mode="sync", runs=sync_runs))
    asynchronous = _measure(cfg.replace(mode="async", runs=async_runs))
    return sync, asynchronous


def compare_partitioners(cfg, partitioners=None, sync_runs=1, async_runs=None):
    """Sync and async time-to-solution, iterations and phases per partitioner.

    Parameters
    ----------
    cfg : ExperimentConfig
        Base configuration.
    partitioners : list of str, optional
        Defaults to every scheme except ``external``; schemes that reject the number of
        subdomains are skipped with a warning.
    sync_runs, async_runs : int, optional
        ``async_runs`` defaults to ``cfg.runs``.

    Returns
    -------
    pandas.DataFrame
        One row per (partitioner, mode) with the async-over-sync speedup.
    """
    if partitioners is None:
        partitioners = [scheme for scheme in SCHEMES if scheme != "external"]
    async_runs = cfg.runs if async_runs is None else async_runs
    rows = []
    for scheme in partitioners:
        try:
            sync, asynchronous = _sync_async(cfg.replace(partitioner=scheme), sync_runs, async_runs)
        except ValueError as err:
            _log.warning("Skipping partitioner %s: %s", scheme, err)
            continue
        ratio = sync["time_to_solution"] / asynchronous["time_to_solution"]
        for mode, row in (("sync", sync), ("async", asynchronous)):
            row.update({"partitioner": scheme, "mode": mode, "speedup": ratio})
            rows.append(row)
    frame = pd.DataFrame(rows).set_index(["partitioner", "mode"])
    return _write(frame, cfg, "partitioners")


def sweep_overlap(cfg, overlaps=(2, 4, 8), sync_runs=1, async_runs=None, with_async=True):
    """Iterations, local problem sizes and phases for every overlap.

    Returns
    -------
    pandas.DataFrame
        One row per (overlap, mode).
    """
    async_runs = cfg.runs if async_runs is None else async_runs
    rows = []
    for gamma in overlaps:
        sync = _measure(cfg.replace(overlap=gamma, mode="sync", runs=sync_runs))
        sync.update({"overlap": gamma, "mode": "sync", "speedup": 1.0})
        rows.append(sync)
        if with_async:
            asynchronous = _measure(cfg.replace(overlap=gamma, mode="async", runs=async_runs))
            asynchronous.update(
                {
                    "overlap": gamma,
                    "mode": "async",
                    "speedup": sync["time_to_solution"] / asynchronous["time_to_solution"],
                }
            )
            rows.append(asynchronous)
    frame = pd.DataFrame(rows).set_index(["overlap", "mode"])
    return _write(frame, cfg, "overlap")


def compare_detectors(cfg, runs=None):
    """Async centralized against decentralized detection.

    Returns
    -------
    pandas.DataFrame
        One row per detector with the decentralized-over-centralized speedup.
    """
    runs = cfg.runs if runs is None else runs
    rows = {}
    for detector in ("centralized", "decentralized"):
        rows[detector] = _measure(cfg.replace(mode="async", detector=detector, runs=runs))
    ratio = rows["centralized"]["time_to_solution"] / rows["decentralized"]["time_to_solution"]
    for row in rows.values():
        row["speedup"] = ratio
    frame = pd.DataFrame.from_dict(rows, orient="index")
    frame.index.name = "detector"
    return _write(frame, cfg, "detectors")


def speedup(cfg, sync_runs=1, async_runs=None):
    """Async-over-sync time ratio at one configuration.

    Returns
    -------
    pandas.DataFrame
        One row per mode; ``speedup`` is the sync time divided by the async time.
    """
    async_runs = cfg.runs if async_runs is None else async_runs
    sync, asynchronous = _sync_async(cfg, sync_runs, async_runs)
    ratio = sync["time_to_solution"] / asynchronous["time_to_solution"]
    sync["speedup"], asynchronous["speedup"] = 1.0, ratio
    frame = pd.DataFrame.from_dict({"sync": sync, "async": asynchronous}, orient="index")
    frame.index.name = "mode"
    return _write(frame, cfg, "speedup")


STUDIES = {
    "partitioners": compare_partitioners,
    "overlap": sweep_overlap,
    "detectors": compare_detectors,
    "speedup": speedup,
}
