"""Distributed termination detection.

Both protocols exchange state only through a flag board, so the same objects run under
lock-step rounds, free-running threads or the deterministic scheduler.
"""
import logging

from ..utils import rc_default

_log = logging.getLogger(__name__)

__all__ = [
    "CONTINUE",
    "TERMINATE",
    "DetectorConfig",
    "CentralizedDetector",
    "DecentralizedDetector",
    "centralized_step",
    "decentralized_step",
    "make_detector",
    "tree_parent",
    "tree_children",
    "tree_levels",
]

CONTINUE = "continue"
TERMINATE = "terminate"

_MODE_ALIASES = {"centralized_tree": "centralized"}


class DetectorConfig:
    """Termination detector selection.

    Parameters
    ----------
    mode : {"centralized", "decentralized"}, optional
        Defaults to ``rcParams["detector.mode"]``.
    arity : int, optional
        Arity of the centralized tree, ``rcParams["detector.arity"]`` by default.
    """

    def __init__(self, mode=None, arity=None):
        if isinstance(mode, str):
            mode = _MODE_ALIASES.get(mode.lower(), mode)
        self.mode = rc_default(mode, "detector.mode")
        self.arity = rc_default(arity, "detector.arity")

    def to_dict(self):
        """Plain representation for metrics and exports."""
        return {"mode": self.mode, "arity": self.arity}

    def __repr__(self):
        """Make string representation of object."""
        return "DetectorConfig(mode={}, arity={})".format(self.mode, self.arity)


def tree_parent(i, arity):
    """Parent of ``i`` in the heap-ordered tree rooted at 0, None for the root."""
    return None if i == 0 else (i - 1) // arity


def tree_children(i, arity, num_subdomains):
    """Children of ``i`` in the heap-ordered tree."""
    first = arity * i + 1
    return range(min(first, num_subdomains), min(first + arity, num_subdomains))


def tree_levels(num_subdomains, arity):
    """Number of levels of the tree, 1 for a lone root."""
    levels, node = 1, num_subdomains - 1
    while node > 0:
        node = (node - 1) // arity
        levels += 1
    return levels


def centralized_step(me, state, flag_board, arity=2):
    """One protocol step of the tree detector at subdomain ``me``.

    A node reports its subtree converged when it is locally converged and every child
    currently reports the same; a retraction clears the report. The root turns a converged
    tree into termination, which every node forwards once it sees its parent's.

    Returns
    -------
    str
        `CONTINUE` or `TERMINATE`.
    """
    own = flag_board.read(me)
    if own.terminate:
        return TERMINATE
    parent = tree_parent(me, arity)
    if parent is not None and flag_board.read(parent).terminate:
        flag_board.post(me, own.level, terminate=True)
        return TERMINATE
    subtree_converged = state.locally_converged and all(
        flag_board.read(child).level >= 1
        for child in tree_children(me, arity, flag_board.num_subdomains)
    )
    if parent is None and subtree_converged:
        _log.debug("Root observed a converged tree")
        flag_board.post(me, 1, terminate=True)
        return TERMINATE
    flag_board.post(me, int(subtree_converged))
    return CONTINUE


def decentralized_step(me, state, neighbors, flag_board, diameter):
    """One protocol step of the neighbor-flag detector at subdomain ``me``.

    The posted level is a confirmation depth: 0 when not converged, otherwise one more
    than the smallest level of the neighbors (capped at ``diameter + 1``). Depth ``d``
    means every subdomain within ``d - 1`` hops reported convergence, so reaching
    ``diameter + 1`` posts the global flag. Seeing a neighbor's global flag forwards it.

    Parameters
    ----------
    me : int
    state : LocalConvergenceState
    neighbors : sequence of int
    flag_board : FlagBoardBase
    diameter : int
        Largest hop distance between subdomains.

    Returns
    -------
    str
        `CONTINUE` or `TERMINATE`.
    """
    own = flag_board.read(me)
    if own.terminate:
        return TERMINATE
    neighbor_states = [flag_board.read(q) for q in neighbors]
    if any(neighbor.terminate for neighbor in neighbor_states):
        flag_board.post(me, own.level, terminate=True)
        return TERMINATE
    if not state.locally_converged:
        depth = 0
    elif not neighbor_states:
        depth = diameter + 1
    else:
        depth = min(1 + min(neighbor.level for neighbor in neighbor_states), diameter + 1)
    if depth >= diameter + 1:
        flag_board.post(me, depth, terminate=True)
        return TERMINATE
    flag_board.post(me, depth)
    return CONTINUE


class CentralizedDetector:
    """Tree detector over subdomains ``0..P-1`` with subdomain 0 as root."""

    def __init__(self, flag_board, arity=2):
        if arity < 2:
            raise ValueError("Tree arity must be at least 2, got {}".format(arity))
        self.flag_board = flag_board
        self.arity = arity

    @property
    def round_bound(self):
        """Rounds needed to terminate once every subdomain stays converged."""
        return 2 * tree_levels(self.flag_board.num_subdomains, self.arity)

    def step(self, me, state):
        """Run `centralized_step` for ``me``."""
        return centralized_step(me, state, self.flag_board, self.arity)


class DecentralizedDetector:
    """Neighbor-flag detector over the subdomain communication graph."""

    def __init__(self, flag_board, neighbors, diameter):
        self.flag_board = flag_board
        self.neighbors = [tuple(int(q) for q in group) for group in neighbors]
        self.diameter = int(diameter)

    @property
    def round_bound(self):
        """Rounds needed to terminate once every subdomain stays converged."""
        return self.diameter + 1

    def step(self, me, state):
        """Run `decentralized_step` for ``me``."""
        return decentralized_step(me, state, self.neighbors[me], self.flag_board, self.diameter)


def make_detector(config, flag_board, pattern):
    """Create the detector selected by ``config``.

    Parameters
    ----------
    config : DetectorConfig
    flag_board : FlagBoardBase
    pattern : CommPattern
        Supplies neighbors and diameter of the decentralized detector.
    """
    if config.mode == "centralized":
        return CentralizedDetector(flag_board, config.arity)
    return DecentralizedDetector(
        flag_board,
        [pattern.neighbors(p) for p in range(pattern.num_subdomains)],
        pattern.diameter(),
    )
