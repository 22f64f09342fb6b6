"""rasbench rcparams. Based on matplotlib's implementation."""
import sys
import os
from pathlib import Path
import pprint
import logging
import locale
from collections.abc import MutableMapping

_log = logging.getLogger(__name__)


def _make_validate_choice(accepted_values, allow_none=False, typeof=str):
    """Build a validator accepting only members of ``accepted_values``.

    Parameters
    ----------
    accepted_values : set
        Allowed values, compared after lowercasing strings.
    allow_none : bool, optional
        Also accept ``None`` or the string ``"none"``.
    typeof : type, optional
        Conversion applied before the membership check.
    """

    def validate_choice(value):
        if allow_none and (value is None or isinstance(value, str) and value.lower() == "none"):
            return None
        try:
            value = typeof(value)
        except (ValueError, TypeError):
            raise ValueError("Could not convert to {}".format(typeof.__name__))
        if isinstance(value, str):
            value = value.lower()
        if value in accepted_values:
            return value
        raise ValueError(
            "{} is not one of {}{}".format(
                value, accepted_values, " nor None" if allow_none else ""
            )
        )

    return validate_choice


def _validate_int(value):
    """Validate value is an integer."""
    try:
        return int(value)
    except (ValueError, TypeError):
        raise ValueError("Could not convert to int")


def _make_validate_int_at_least(minimum):
    """Validate value is an integer not smaller than ``minimum``."""

    def validate_int_at_least(value):
        value = _validate_int(value)
        if value < minimum:
            raise ValueError("Only values >= {} are valid".format(minimum))
        return value

    return validate_int_at_least


def _validate_positive_int(value):
    """Validate value is a natural number."""
    value = _validate_int(value)
    if value > 0:
        return value
    raise ValueError("Only positive values are valid")


def _validate_float(value):
    """Validate value is a float."""
    try:
        value = float(value)
    except (ValueError, TypeError):
        raise ValueError("Could not convert to float")
    return value


def _validate_positive_float(value):
    """Validate value is a strictly positive float."""
    value = _validate_float(value)
    if value > 0:
        return value
    raise ValueError("Only positive values are valid")


def _validate_boolean(value):
    """Validate value is a boolean or one of its usual string spellings."""
    if isinstance(value, str):
        lowered = value.strip().lower()
        if lowered in ("true", "yes", "on", "1"):
            return True
        if lowered in ("false", "no", "off", "0"):
            return False
        raise ValueError("Could not convert {} to boolean".format(value))
    if isinstance(value, (bool, int)) and value in (0, 1):
        return bool(value)
    raise ValueError("Could not convert {} to boolean".format(value))


def _validate_string(value):
    """Validate value is a non empty string."""
    value = str(value).strip()
    if not value:
        raise ValueError("Empty strings are not valid")
    return value


defaultParams = {  # pylint: disable=invalid-name
    "problem.grid_n": (64, _make_validate_int_at_least(2)),
    "problem.rhs_seed": (0, _validate_int),
    "partition.scheme": (
        "rcb",
        _make_validate_choice({"regular1d", "regular2d", "rcb", "external"}),
    ),
    "partition.subdomains": (4, _validate_positive_int),
    "partition.overlap": (2, _make_validate_int_at_least(0)),
    "solver.mode": ("sync", _make_validate_choice({"sync", "async"})),
    "solver.local_solver": ("direct", _make_validate_choice({"direct", "cg"})),
    "solver.cg_rel_tol": (1e-10, _validate_positive_float),
    "solver.tolerance": (1e-7, _validate_positive_float),
    "solver.max_iter": (10000, _validate_positive_int),
    "solver.skip_unchanged": (False, _validate_boolean),
    "detector.mode": (
        "decentralized",
        _make_validate_choice({"centralized", "decentralized"}),
    ),
    "detector.arity": (2, _make_validate_int_at_least(2)),
    "transport.timeout": (60.0, _validate_positive_float),
    "experiment.runs_sync": (1, _validate_positive_int),
    "experiment.runs_async": (10, _validate_positive_int),
    "experiment.out_dir": ("ras_output", _validate_string),
}


_NO_DELETE = "RcParams keys cannot be deleted"


class RcParams(MutableMapping, dict):  # pylint: disable=too-many-ancestors
    """Validated mapping holding the rasbench defaults.

    Every assignment goes through the validator registered for its key in
    ``defaultParams``; keys can be overwritten but never removed.
    """

    validate = {key: validator for key, (_, validator) in defaultParams.items()}

    def __init__(self, *args, **kwargs):  # pylint: disable=super-init-not-called
        self.update(*args, **kwargs)

    def __setitem__(self, key, val):
        """Validate ``val`` with the validator of ``key`` before storing it."""
        validator = self.validate.get(key)
        if validator is None:
            raise KeyError(
                "{} is not a valid rc parameter, valid keys are listed by "
                "rcParams.keys()".format(key)
            )
        try:
            checked = validator(val)
        except ValueError as err:
            raise ValueError("Key {}: {}".format(key, err))
        dict.__setitem__(self, key, checked)

    def __getitem__(self, key):
        """Look the key up in the underlying dict."""
        return dict.__getitem__(self, key)

    def __delitem__(self, key):
        """Refuse key removal."""
        raise TypeError(_NO_DELETE)

    def clear(self):
        """Refuse key removal."""
        raise TypeError(_NO_DELETE)

    def pop(self, key, default=None):
        """Refuse key removal."""
        raise TypeError("{}, read values with get(key) or rcParams[key]".format(_NO_DELETE))

    def popitem(self):
        """Refuse key removal."""
        raise TypeError("{}, read values with get(key) or rcParams[key]".format(_NO_DELETE))

    def setdefault(self, key, default=None):
        """Refuse setdefault, defaults come from ``defaultParams`` or a rasbenchrc file."""
        raise TypeError(
            "RcParams defaults are fixed when rasbench is imported. Use rasbenchrc to change them."
        )

    def items(self):
        """Sorted items, through MutableMapping."""
        return MutableMapping.items(self)

    def keys(self):
        """Sorted keys, through MutableMapping."""
        return MutableMapping.keys(self)

    def values(self):
        """Values in key order, through MutableMapping."""
        return MutableMapping.values(self)

    def __repr__(self):
        """Make string representation of object."""
        name = type(self).__name__
        body = pprint.pformat(dict(self), indent=1, width=80 - len(name) - 1)
        return "{}({})".format(name, body.replace("\n", "\n" + " " * (len(name) + 1)))

    def __iter__(self):
        """Iterate over keys in sorted order."""
        return iter(sorted(dict.__iter__(self)))

    def __len__(self):
        """Number of parameters set."""
        return dict.__len__(self)

    def copy(self):
        """Plain dict snapshot of the current values."""
        return {key: dict.__getitem__(self, key) for key in self}


def _rcfile_candidates():
    yield Path.cwd() / "rasbenchrc"
    if os.environ.get("RASBENCH_DATA"):
        yield Path(os.environ["RASBENCH_DATA"]) / "rasbenchrc"
    if sys.platform.startswith(("linux", "freebsd")):
        config_home = os.environ.get("XDG_CONFIG_HOME") or str(Path.home() / ".config")
        yield Path(config_home) / "rasbench" / "rasbenchrc"
    else:
        yield Path.home() / ".rasbench" / "rasbenchrc"


def get_rasbench_rcfile():
    """Locate the rasbenchrc file to load at import time.

    Searched in order: the working directory, ``$RASBENCH_DATA``, then
    ``$XDG_CONFIG_HOME/rasbench`` (``~/.config/rasbench`` when unset) on Linux
    or ``~/.rasbench`` elsewhere. Returns ``None`` when no file exists.
    """
    for candidate in _rcfile_candidates():
        if candidate.is_file():
            return str(candidate)
    return None


def read_rcfile(fname):
    """Parse a rasbenchrc file into an :class:`RcParams`.

    Only the keys present in the file are set, defaults are not filled in.
    Lines without a ``key: value`` pair are skipped with a warning and
    invalid values raise ``ValueError``.
    """
    config = RcParams()
    try:
        with open(fname, "r") as rcfile:
            lines = list(rcfile)
    except UnicodeDecodeError:
        _log.warning(
            "Could not decode %s as %s, check the LANG and LC_* variables",
            fname,
            locale.getpreferredencoding(do_setlocale=False) or "utf-8",
        )
        raise
    for line_no, line in enumerate(lines, 1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        key, sep, val = content.partition(":")
        if not sep:
            _log.warning('Ignoring line #%d "%s" in %s', line_no, line.rstrip(), fname)
            continue
        key, val = key.strip(), val.strip()
        if key in config:
            _log.warning("Duplicate key in file %r line #%d.", fname, line_no)
        try:
            config[key] = val
        except ValueError as err:
            raise ValueError(
                'Bad val {} on line #{} "{}" of {}: {}'.format(
                    val, line_no, line.rstrip(), fname, err
                )
            )
    return config


def rc_params():
    """Build the defaults, overridden by the rasbenchrc file if one is found."""
    params = RcParams((key, default) for key, (default, _) in defaultParams.items())
    fname = get_rasbench_rcfile()
    if fname is not None:
        params.update(read_rcfile(fname))
    return params


rcParams = rc_params()  # pylint: disable=invalid-name


class rc_context:  # pylint: disable=invalid-name
    """
    Temporarily change rcParams inside a ``with`` block.

    Parameters
    ----------
    rc : dict, optional
        Parameters to set for the duration of the block.
    fname : str, optional
        rasbenchrc file whose parameters are applied first.

    Examples
    --------
    Run async experiments with a tighter tolerance::

        with rasbench.rc_context(rc={'solver.tolerance': 1e-9}, fname='async.rc'):
            rasbench.run_experiment(rasbench.ExperimentConfig(mode="async"))

    Values in ``rc`` win over those read from ``fname``.
    """

    def __init__(self, rc=None, fname=None):
        self._saved = rcParams.copy()
        if fname:
            rcParams.update(read_rcfile(fname))
        if rc:
            rcParams.update(rc)

    def __enter__(self):
        """Return the context manager."""
        return self

    def __exit__(self, exc_type, exc_value, exc_tb):
        """Restore the saved rcParams."""
        rcParams.update(self._saved)
