# pylint: disable=redefined-outer-name
import os

import pytest

from ..convergence import DetectorConfig
from ..rcparams import (
    rcParams,
    rc_context,
    _make_validate_choice,
    _make_validate_int_at_least,
    _validate_boolean,
    _validate_positive_float,
    _validate_positive_int,
    read_rcfile,
)
from ..solver import SolverConfig

RC_DIR = os.path.dirname(os.path.abspath(__file__))


def test_rc_context_restores_dict_values():
    rcParams["detector.mode"] = "decentralized"
    with rc_context(rc={"detector.mode": "centralized"}):
        assert rcParams["detector.mode"] == "centralized"
    assert rcParams["detector.mode"] == "decentralized"


def test_rc_context_restores_file_values():
    rcParams["detector.mode"] = "decentralized"
    with rc_context(fname=os.path.join(RC_DIR, "test.rcparams")):
        assert rcParams["detector.mode"] == "centralized"
        assert rcParams["solver.mode"] == "sync"
    assert rcParams["detector.mode"] == "decentralized"


def test_rcfile_bad_value():
    with pytest.raises(ValueError, match="Bad val -1"):
        read_rcfile(os.path.join(RC_DIR, "bad.rcparams"))


def test_rcfile_duplicate_key_warns(caplog):
    read_rcfile(os.path.join(RC_DIR, "test.rcparams"))
    assert [record.levelname for record in caplog.records] == ["WARNING"]
    assert "Duplicate key" in caplog.text


def test_rcfile_skips_malformed_lines(tmp_path, caplog):
    rcfile = tmp_path / "rasbenchrc"
    rcfile.write_text("solver.mode async\n\n# comment only\nsolver.max_iter: 50\n")
    config = read_rcfile(str(rcfile))
    assert dict(config) == {"solver.max_iter": 50}
    assert "Ignoring line #1" in caplog.text


def test_unknown_key():
    with pytest.raises(KeyError, match="bad_key is not a valid rc"):
        rcParams["bad_key"] = "nothing"


@pytest.mark.parametrize(
    "remove",
    [
        lambda params: params.__delitem__("solver.mode"),
        lambda params: params.clear(),
        lambda params: params.popitem(),
    ],
)
def test_keys_cannot_be_removed(remove):
    with pytest.raises(TypeError, match="keys cannot be deleted"):
        remove(rcParams)


def test_pop_points_to_get():
    with pytest.raises(TypeError, match=r"keys cannot be deleted.*get\(key\)"):
        rcParams.pop("solver.mode")


def test_setdefault_refused():
    with pytest.raises(TypeError, match="Use rasbenchrc"):
        rcParams.setdefault("solver.mode", "async")


def test_repr_lists_every_key():
    text = repr(rcParams)
    assert text.startswith("RcParams(")
    assert all(key in text for key in rcParams)


def test_template_matches_defaults():
    fname = os.path.join(RC_DIR, "..", "..", "rasbenchrc.template")
    template = read_rcfile(fname)
    assert set(template) >= set(rcParams)
    assert all(template[key] == value for key, value in rcParams.items())


@pytest.mark.parametrize(
    "param", ["solver.mode", "solver.local_solver", "detector.mode", "partition.scheme"]
)
def test_choice_bad_values(param):
    msg = "{}: bad_value is not one of".format(param.replace(".", r"\."))
    with pytest.raises(ValueError, match=msg):
        rcParams[param] = "bad_value"


@pytest.mark.parametrize("allow_none", (True, False))
@pytest.mark.parametrize("args", [("not one", "star"), (False, None), (False, "SYNC")])
def test_make_validate_choice(args, allow_none):
    validate_choice = _make_validate_choice({"sync", "async"}, allow_none=allow_none)
    raise_error, value = args
    if value is None and not allow_none:
        raise_error = "not one of"
    if raise_error:
        with pytest.raises(ValueError, match=raise_error):
            validate_choice(value)
    else:
        value = validate_choice(value)
        assert value in {"sync", "async"} or value is None


@pytest.mark.parametrize(
    "args", [("Only positive", 0), ("Only positive", -3), ("Could not convert", "1.5"), (False, "2")]
)
def test_validate_positive_int(args):
    raise_error, value = args
    if raise_error:
        with pytest.raises(ValueError, match=raise_error):
            _validate_positive_int(value)
    else:
        assert _validate_positive_int(value) == 2


@pytest.mark.parametrize("args", [("Only values >= 2", 1), (False, 2), (False, "7")])
def test_validate_int_at_least(args):
    raise_error, value = args
    validate = _make_validate_int_at_least(2)
    if raise_error:
        with pytest.raises(ValueError, match=raise_error):
            validate(value)
    else:
        assert validate(value) >= 2


@pytest.mark.parametrize(
    "args",
    [
        ("Only positive", 0),
        ("Only positive", "-1e-7"),
        ("Could not convert", "tight"),
        (False, "1e-10"),
        (False, 3),
    ],
)
def test_validate_positive_float(args):
    raise_error, value = args
    if raise_error:
        with pytest.raises(ValueError, match=raise_error):
            _validate_positive_float(value)
    else:
        assert isinstance(_validate_positive_float(value), float)


@pytest.mark.parametrize(
    "value, expected",
    [("true", True), ("No", False), ("on", True), (0, False), (True, True), ("off", False)],
)
def test_validate_boolean(value, expected):
    assert _validate_boolean(value) is expected


@pytest.mark.parametrize("value", ["maybe", 2, None])
def test_validate_boolean_error(value):
    with pytest.raises(ValueError, match="Could not convert"):
        _validate_boolean(value)


### Test integration of rcParams in rasbench ###
def test_solver_config_defaults():
    with rc_context(rc={"solver.tolerance": 1e-9, "solver.local_solver": "cg"}):
        config = SolverConfig()
    assert config.tau == 1e-9
    assert config.local_solver == "cg"
    assert SolverConfig(tau=1e-5).tau == 1e-5


def test_detector_config_defaults():
    with rc_context(rc={"detector.mode": "centralized", "detector.arity": 4}):
        config = DetectorConfig()
    assert config.to_dict() == {"mode": "centralized", "arity": 4}


def test_solver_config_validates():
    with pytest.raises(ValueError, match="Only positive"):
        SolverConfig(tau=0)
