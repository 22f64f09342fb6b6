"""Per-run solver metrics."""
import json

import numpy as np
import pandas as pd
import xarray as xr

from ..utils import PHASES, make_attrs

__all__ = ["RunMetrics"]

_SCALARS = (
    "run_index",
    "timestamp",
    "mode",
    "time_to_solution",
    "iterations",
    "terminated",
    "verified",
    "residual_norm",
    "diameter",
    "failure",
)


class RunMetrics:
    """Measurements of one solver run.

    Parameters
    ----------
    mode : {"sync", "async"}
    time_to_solution : float
        Wall-clock seconds from launching the workers to a verified solution.
    update_counts : array_like of int
        Local solves performed by every subdomain.
    phase_times : array_like
        Seconds per subdomain (rows) and phase (columns, ordered as ``PHASES``).
    cg_failures : array_like of int
        Local CG solves per subdomain that hit their iteration limit.
    iterations : int
        Lock-step iterations (sync) or the largest update count (async).
    terminated : bool
        Whether the detector terminated the run before ``max_iter``.
    verified : bool
        Outcome of the post-termination global check.
    residual_norm : float
        ``||b - A x||`` of the gathered solution.
    config : dict
        Resolved solver and experiment configuration.
    local_dims, ghost_counts : array_like of int
        Local problem size and number of ghosts per subdomain.
    diameter : int
        Largest hop distance of the communication graph.
    run_index : int, optional
    timestamp : str, optional
        ISO time the run finished.
    failure : str, optional
        Name of the failure the run ended with.
    """

    def __init__(
        self,
        mode,
        time_to_solution,
        update_counts,
        phase_times,
        cg_failures,
        iterations,
        terminated,
        verified,
        residual_norm,
        config,
        local_dims,
        ghost_counts,
        diameter,
        run_index=0,
        timestamp=None,
        failure=None,
    ):
        self.mode = mode
        self.time_to_solution = float(time_to_solution)
        self.update_counts = np.asarray(update_counts, dtype=np.int64)
        self.phase_times = np.asarray(phase_times, dtype=np.float64).reshape(-1, len(PHASES))
        self.cg_failures = np.asarray(cg_failures, dtype=np.int64)
        self.iterations = int(iterations)
        self.terminated = bool(terminated)
        self.verified = bool(verified)
        self.residual_norm = float(residual_norm)
        self.config = dict(config)
        self.local_dims = np.asarray(local_dims, dtype=np.int64)
        self.ghost_counts = np.asarray(ghost_counts, dtype=np.int64)
        self.diameter = int(diameter)
        self.run_index = int(run_index)
        self.timestamp = timestamp if timestamp is not None else make_attrs()["created_at"]
        self.failure = failure

    @property
    def num_subdomains(self):
        """Number of subdomains ``P``."""
        return len(self.update_counts)

    def update_spread(self):
        """Min, median and max update count over subdomains, with the max/min ratio."""
        low, high = int(self.update_counts.min()), int(self.update_counts.max())
        return {
            "min": low,
            "median": float(np.median(self.update_counts)),
            "max": high,
            "ratio": high / low if low > 0 else None,
        }

    def phase_average(self):
        """Phase times averaged over subdomains."""
        return dict(zip(PHASES, self.phase_times.mean(axis=0).tolist()))

    def phase_total(self):
        """Phase times summed over subdomains."""
        return dict(zip(PHASES, self.phase_times.sum(axis=0).tolist()))

    def to_dict(self):
        """JSON-ready record with stable field names."""
        record = {key: getattr(self, key) for key in _SCALARS}
        record["num_subdomains"] = self.num_subdomains
        record["update_spread"] = self.update_spread()
        record["phase_average"] = self.phase_average()
        record["phase_total"] = self.phase_total()
        record["config"] = self.config
        record["subdomains"] = [
            {
                "subdomain": p,
                "update_count": int(self.update_counts[p]),
                "local_dim": int(self.local_dims[p]),
                "ghost_count": int(self.ghost_counts[p]),
                "cg_failures": int(self.cg_failures[p]),
                "phase_times": dict(zip(PHASES, self.phase_times[p].tolist())),
            }
            for p in range(self.num_subdomains)
        ]
        return record

    def to_dataframe(self):
        """One row per subdomain, run identification included."""
        frame = pd.DataFrame(
            {
                "run": self.run_index,
                "subdomain": np.arange(self.num_subdomains),
                "mode": self.mode,
                "update_count": self.update_counts,
                "local_dim": self.local_dims,
                "ghost_count": self.ghost_counts,
                "cg_failures": self.cg_failures,
            }
        )
        for column, phase in enumerate(PHASES):
            frame[phase] = self.phase_times[:, column]
        frame["verified"] = self.verified
        return frame

    def to_dataset(self):
        """Return the metrics as an `xarray.Dataset` over ``subdomain`` and ``phase``."""
        attrs = {key: getattr(self, key) for key in _SCALARS}
        # netCDF attributes cannot hold None or bool
        attrs["failure"] = self.failure or "none"
        attrs["terminated"] = int(self.terminated)
        attrs["verified"] = int(self.verified)
        attrs["config"] = json.dumps(self.config, sort_keys=True)
        return xr.Dataset(
            {
                "update_count": (["subdomain"], self.update_counts),
                "local_dim": (["subdomain"], self.local_dims),
                "ghost_count": (["subdomain"], self.ghost_counts),
                "cg_failures": (["subdomain"], self.cg_failures),
                "phase_time": (["subdomain", "phase"], self.phase_times),
            },
            coords={"subdomain": np.arange(self.num_subdomains), "phase": list(PHASES)},
            attrs=make_attrs(attrs),
        )

    @classmethod
    def from_dataset(cls, dataset):
        """Rebuild metrics written by `to_dataset`."""
        attrs = dataset.attrs
        return cls(
            mode=attrs["mode"],
            time_to_solution=attrs["time_to_solution"],
            update_counts=dataset["update_count"].values,
            phase_times=dataset["phase_time"].values,
            cg_failures=dataset["cg_failures"].values,
            iterations=attrs["iterations"],
            terminated=bool(attrs["terminated"]),
            verified=bool(attrs["verified"]),
            residual_norm=attrs["residual_norm"],
            config=json.loads(attrs["config"]),
            local_dims=dataset["local_dim"].values,
            ghost_counts=dataset["ghost_count"].values,
            diameter=attrs["diameter"],
            run_index=attrs["run_index"],
            timestamp=attrs["timestamp"],
            failure=None if attrs["failure"] == "none" else attrs["failure"],
        )

    def __repr__(self):
        """Make string representation of object."""
        return (
            "RunMetrics(run={}, mode={}, P={}, iterations={}, verified={}, "
            "time_to_solution={:.4g}s)".format(
                self.run_index,
                self.mode,
                self.num_subdomains,
                self.iterations,
                self.verified,
                self.time_to_solution,
            )
        )
