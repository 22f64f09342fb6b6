# pylint: disable=wildcard-import
"""Experiment configuration, repeated runs, statistics and output files."""
from .config import *
from .metrics import *
from .export import *
from .experiment import *
from .studies import *
from .cli import *

__all__ = [
    "ExperimentConfig",
    "AggregateStats",
    "SUMMARY_METRICS",
    "export_metrics",
    "export_comm_heatmap",
    "ExperimentData",
    "run_experiment",
    "run_once",
    "compare_partitioners",
    "sweep_overlap",
    "compare_detectors",
    "speedup",
    "STUDIES",
    "build_parser",
    "parse_cli",
    "main",
]
