"""Metrics files: JSON documents, flat CSV, communication heatmaps and netCDF archives."""
import json
import logging
import os

import netCDF4 as nc
import pandas as pd
import xarray as xr

from ..solver import RunMetrics
from ..utils import make_attrs
from .metrics import AggregateStats

_log = logging.getLogger(__name__)

__all__ = ["export_metrics", "export_comm_heatmap", "ExperimentData"]


def _dump(document, filename):
    with open(filename, "w") as outfile:
        outfile.write(json.dumps(document, sort_keys=True, indent=2))
        outfile.write("\n")


def export_metrics(records, path, config=None):
    """Write one JSON document per run, an aggregate document and a flat CSV.

    Per-run documents and the CSV only depend on ``records``; the export time is written
    in the aggregate document alone.

    Parameters
    ----------
    records : list of RunMetrics
    path : str
        Output directory, created if missing.
    config : dict, optional
        Resolved experiment configuration for the aggregate document.

    Returns
    -------
    list of str
        Written files.
    """
    os.makedirs(path, exist_ok=True)
    written = []
    for record in records:
        filename = os.path.join(path, "run_{:03d}.json".format(record.run_index))
        _dump(record.to_dict(), filename)
        written.append(filename)

    aggregate = AggregateStats(records, config).to_dict()
    aggregate["exported_at"] = make_attrs()["created_at"]
    filename = os.path.join(path, "aggregate.json")
    _dump(aggregate, filename)
    written.append(filename)

    filename = os.path.join(path, "subdomains.csv")
    pd.concat([record.to_dataframe() for record in records], ignore_index=True).to_csv(
        filename, index=False
    )
    written.append(filename)
    _log.info("Wrote metrics of %d runs to %s", len(records), path)
    return written


def export_comm_heatmap(pattern, path):
    """Write the ``P x P`` receive counts of ``pattern`` as CSV, one row per receiver."""
    pattern.to_csv(path)
    return path


class ExperimentData:
    """netCDF archive of an experiment, one group per run plus the aggregate.

    Parameters
    ----------
    kwargs :
        Keyword xarray datasets; run groups are named ``run_000``, ``run_001``, ...
    """

    def __init__(self, **kwargs):
        self._groups = []
        for key, dataset in kwargs.items():
            if dataset is None:
                continue
            elif not isinstance(dataset, xr.Dataset):
                raise ValueError(
                    "Arguments to ExperimentData must be xarray Datasets "
                    '(argument "{}" was type "{}")'.format(key, type(dataset))
                )
            setattr(self, key, dataset)
            self._groups.append(key)

    @classmethod
    def from_records(cls, records, config=None):
        """Collect the datasets of ``records`` and their aggregate."""
        aggregate = AggregateStats(records, config)
        summary = aggregate.summary()
        summary.index.name = "metric"
        spread = aggregate.spread().add_prefix("spread_")
        dataset = xr.merge([xr.Dataset.from_dataframe(summary), xr.Dataset.from_dataframe(spread)])
        dataset.attrs = make_attrs(
            {"runs": aggregate.runs, "failures": aggregate.failures, "config": json.dumps(config)}
        )
        groups = {"run_{:03d}".format(record.run_index): record.to_dataset() for record in records}
        groups["aggregate"] = dataset
        return cls(**groups)

    @property
    def groups(self):
        """Names of the stored groups."""
        return list(self._groups)

    def records(self):
        """Rebuild the `RunMetrics` of every run group."""
        return [
            RunMetrics.from_dataset(getattr(self, group))
            for group in self._groups
            if group.startswith("run_")
        ]

    def __repr__(self):
        """Make string representation of object."""
        return "Experiment data with groups:\n\t> {options}".format(
            options="\n\t> ".join(self._groups)
        )

    @staticmethod
    def from_netcdf(filename):
        """Initialize object from a netcdf file.

        Parameters
        ----------
        filename : str
            location of netcdf file

        Returns
        -------
        ExperimentData
        """
        groups = {}
        with nc.Dataset(filename, mode="r") as data:
            data_groups = list(data.groups)

        for group in data_groups:
            with xr.open_dataset(filename, group=group) as data:
                groups[group] = data.load()
        return ExperimentData(**groups)

    def to_netcdf(self, filename, compress=True):
        """Write every group to ``filename`` using netcdf4.

        Parameters
        ----------
        filename : str
        compress : bool, optional
            zlib-compress the variables (default: True).

        Returns
        -------
        str
            Location of netcdf file
        """
        mode = "w"  # overwrite first, then append
        for group in self._groups:
            data = getattr(self, group)
            kwargs = {}
            if compress:
                kwargs["encoding"] = {
                    var_name: {"zlib": True}
                    for var_name, var in data.variables.items()
                    if var.dtype.kind in "iuf"
                }
            data.to_netcdf(filename, mode=mode, group=group, engine="netcdf4", **kwargs)
            mode = "a"
        return filename
