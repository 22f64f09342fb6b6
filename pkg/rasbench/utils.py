"""General utilities."""
import datetime
import functools
import time
from collections import OrderedDict

from .rcparams import rcParams

PHASES = ("local_solve", "boundary_exchange", "convergence_check", "other")


class lazy_property:  # pylint: disable=invalid-name
    """Used to build derived objects the first time they are needed."""

    def __init__(self, fget):
        """Lazy load a property with `fget`."""
        self.fget = fget

        # copy the getter function's docstring and other attributes
        functools.update_wrapper(self, fget)

    def __get__(self, obj, cls):
        """Call the function, set the attribute."""
        if obj is None:
            return self

        value = self.fget(obj)
        setattr(obj, self.fget.__name__, value)
        return value


def rc_default(value, key):
    """Return ``value`` or, when it is None, the validated ``rcParams[key]``."""
    if value is None:
        return rcParams[key]
    return rcParams.validate[key](value)


class PhaseTimer:
    """Accumulate wall-clock time per solver phase using a monotonic clock.

    Examples
    --------
    .. code::

        timer = PhaseTimer()
        with timer.phase("local_solve"):
            solve()
        timer.totals["local_solve"]
    """

    def __init__(self, phases=PHASES):
        self.totals = OrderedDict((name, 0.0) for name in phases)

    def phase(self, name):
        """Return a context manager adding the elapsed time to ``name``."""
        if name not in self.totals:
            raise KeyError("Unknown phase {}, valid phases are {}".format(name, list(self.totals)))
        return _PhaseContext(self, name)

    def add(self, name, seconds):
        """Add ``seconds`` to the ``name`` total."""
        self.totals[name] += seconds


class _PhaseContext:
    def __init__(self, timer, name):
        self.timer = timer
        self.name = name
        self.start = None

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_value, exc_tb):
        self.timer.add(self.name, time.perf_counter() - self.start)


def make_attrs(attrs=None):
    """Make standard attributes to attach to xarray datasets.

    Parameters
    ----------
    attrs : dict (optional)
        Additional attributes to add or overwrite

    Returns
    -------
    dict
        attrs
    """
    from . import __version__

    default_attrs = {
        "created_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "rasbench_version": __version__,
    }
    if attrs is not None:
        default_attrs.update(attrs)
    return default_attrs
