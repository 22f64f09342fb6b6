"""
Tests for rasbench.utils.
"""
# pylint: disable=redefined-outer-name
from unittest.mock import Mock
import time

import pytest

from .. import __version__
from ..rcparams import rc_context
from ..utils import PHASES, PhaseTimer, lazy_property, make_attrs, rc_default


def test_phase_timer():
    timer = PhaseTimer()
    assert list(timer.totals) == list(PHASES)
    with timer.phase("local_solve"):
        time.sleep(0.01)
    timer.add("other", 0.5)
    assert timer.totals["local_solve"] >= 0.01
    assert timer.totals["other"] == 0.5
    assert timer.totals["boundary_exchange"] == 0.0


def test_phase_timer_accumulates():
    timer = PhaseTimer()
    for _ in range(3):
        with timer.phase("convergence_check"):
            pass
    timer.add("convergence_check", 1.0)
    assert timer.totals["convergence_check"] >= 1.0


def test_phase_timer_unknown_phase():
    with pytest.raises(KeyError, match="Unknown phase"):
        PhaseTimer().phase("plotting")


def test_phase_timer_error_still_timed():
    timer = PhaseTimer()
    with pytest.raises(RuntimeError):
        with timer.phase("local_solve"):
            raise RuntimeError("boom")
    assert timer.totals["local_solve"] > 0


def test_rc_default():
    with rc_context(rc={"partition.overlap": 3}):
        assert rc_default(None, "partition.overlap") == 3
    assert rc_default(5, "partition.overlap") == 5


def test_rc_default_validates():
    with pytest.raises(ValueError):
        rc_default(-1, "partition.overlap")


def test_make_attrs():
    attrs = make_attrs({"runs": 2})
    assert attrs["rasbench_version"] == __version__
    assert attrs["runs"] == 2
    assert "created_at" in attrs


def test_lazy_property():
    getter = Mock(return_value=42)

    class Holder:
        @lazy_property
        def value(self):
            """Expensive value."""
            return getter()

    holder = Holder()
    assert holder.value == 42
    assert holder.value == 42
    assert getter.call_count == 1
    assert Holder.value.__doc__ == "Expensive value."
