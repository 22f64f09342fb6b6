"""Configuration for test suite."""
# pylint: disable=redefined-outer-name
import logging
import pytest
import numpy as np

_log = logging.getLogger(__name__)


@pytest.fixture(autouse=True)
def random_seed():
    """Reset numpy random seed generator."""
    np.random.seed(0)


def pytest_addoption(parser):
    """Definition for command line option to keep the outputs of experiment tests."""
    parser.addoption("--keep-output", nargs="?", const="test_output", help="Keep run outputs")


@pytest.fixture
def out_dir(request, tmp_path):
    """Output directory of experiment tests, under ``--keep-output`` when given."""
    keep = request.config.getoption("--keep-output")
    if keep is None:
        return str(tmp_path)
    path = "{}/{}".format(keep, request.node.name)
    _log.info("Keeping outputs in %s", path)
    return path
