# pylint: disable=redefined-outer-name
"""Test helper functions."""
import logging

import numpy as np
import pytest

from ..convergence import DetectorConfig
from ..partition import make_partition
from ..problem import laplace_system
from ..solver import SolverConfig, setup

_log = logging.getLogger(__name__)


@pytest.fixture(scope="module")
def small_system():
    """Share the 8 x 8 Laplace system."""
    return laplace_system(8, rhs_seed=0)


@pytest.fixture(scope="module")
def system16():
    """Share the 16 x 16 Laplace system."""
    return laplace_system(16, rhs_seed=0)


def exact_solution(system):
    """Dense direct solve of the whole system."""
    return np.linalg.solve(system.matrix.to_dense(), system.rhs)


def solver_config(mode="sync", detector="decentralized", arity=2, **kwargs):
    """Solver configuration with the test defaults."""
    kwargs.setdefault("tau", 1e-7)
    kwargs.setdefault("max_iter", 5000)
    kwargs.setdefault("local_solver", "direct")
    return SolverConfig(mode=mode, detector=DetectorConfig(detector, arity), **kwargs)


def make_runtimes(system, scheme="rcb", subdomains=4, overlap=2, config=None, **kwargs):
    """Partition ``system`` and set up fresh runtimes."""
    config = solver_config(**kwargs) if config is None else config
    pm = make_partition(system, scheme, subdomains)
    return setup(system, pm, overlap, config), config


def scripted(converged_from):
    """Schedule where subdomain ``p`` is converged from round ``converged_from[p]`` on."""

    def schedule(round_, p):
        return round_ >= converged_from[p]

    return schedule
