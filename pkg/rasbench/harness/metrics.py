"""Statistics over repeated runs."""
import numpy as np
import pandas as pd

from ..utils import PHASES

__all__ = ["AggregateStats", "SUMMARY_METRICS"]

SUMMARY_METRICS = ("time_to_solution", "iterations", "residual_norm") + tuple(
    "{}_avg".format(phase) for phase in PHASES
)


class AggregateStats:
    """Mean, min, max and median of the run metrics plus the update-count spread.

    Parameters
    ----------
    records : list of RunMetrics
    config : dict, optional
        Resolved experiment configuration.
    """

    def __init__(self, records, config=None):
        if not records:
            raise ValueError("Aggregate statistics need at least one run")
        self.records = list(records)
        self.config = {} if config is None else config

    @property
    def runs(self):
        """Number of runs."""
        return len(self.records)

    @property
    def failures(self):
        """Number of runs that did not terminate or failed verification."""
        return sum(record.failure is not None for record in self.records)

    @property
    def succeeded(self):
        """Records of the verified runs."""
        return [record for record in self.records if record.failure is None]

    def per_run(self):
        """One row of scalar metrics per run, phase times averaged over subdomains."""
        rows = []
        for record in self.records:
            row = {
                "run": record.run_index,
                "time_to_solution": record.time_to_solution,
                "iterations": record.iterations,
                "residual_norm": record.residual_norm,
                "verified": record.verified,
                "failure": record.failure,
            }
            for phase, seconds in record.phase_average().items():
                row["{}_avg".format(phase)] = seconds
            rows.append(row)
        return pd.DataFrame(rows).set_index("run")

    def summary(self):
        """Mean, min, max and median of every summary metric; rows are metrics."""
        table = self.per_run()[list(SUMMARY_METRICS)].astype(float)
        return pd.DataFrame(
            {
                "mean": table.mean(),
                "min": table.min(),
                "max": table.max(),
                "median": table.median(),
            }
        )

    def spread(self):
        """Per-run min, median and max of the per-subdomain update counts."""
        rows = []
        for record in self.records:
            spread = record.update_spread()
            spread["ratio"] = np.nan if spread["ratio"] is None else spread["ratio"]
            spread["run"] = record.run_index
            rows.append(spread)
        return pd.DataFrame(rows, columns=["run", "min", "median", "max", "ratio"]).set_index(
            "run"
        )

    def to_dict(self):
        """JSON-ready representation."""
        summary = self.summary()
        spread = self.spread()
        return {
            "runs": self.runs,
            "failures": self.failures,
            "summary": {
                metric: {stat: _finite(value) for stat, value in row.items()}
                for metric, row in summary.iterrows()
            },
            "update_spread": [
                {
                    "run": int(run),
                    "min": int(row["min"]),
                    "median": float(row["median"]),
                    "max": int(row["max"]),
                    "ratio": _finite(row["ratio"]),
                }
                for run, row in spread.iterrows()
            ],
            "config": self.config,
        }

    def __repr__(self):
        """Make string representation of object."""
        return "AggregateStats(runs={}, failures={})\n{}".format(
            self.runs, self.failures, self.summary()
        )


def _finite(value):
    value = float(value)
    return value if np.isfinite(value) else None
