"""Non-overlapping decompositions of the global index set."""
import logging

import numpy as np

from ..problem import FormatError

_log = logging.getLogger(__name__)

__all__ = [
    "PartitionMap",
    "SCHEMES",
    "partition_regular1d",
    "partition_regular2d",
    "partition_rcb",
    "partition_external",
    "write_partition",
    "make_partition",
]

SCHEMES = ("regular1d", "regular2d", "rcb", "external")


class PartitionMap:
    """Assignment of every global index to exactly one owning subdomain.

    Parameters
    ----------
    owner : array_like of int
        Owner of every global index.
    num_subdomains : int
        Number of subdomains ``P``; every id in ``[0, P)`` must own at least one index.
    scheme : str
        One of ``SCHEMES``.
    """

    def __init__(self, owner, num_subdomains, scheme):
        owner = np.array(owner, dtype=np.int64).ravel()
        num_subdomains = int(num_subdomains)
        if scheme not in SCHEMES:
            raise ValueError("Unknown scheme {}, valid schemes are {}".format(scheme, SCHEMES))
        if num_subdomains < 1:
            raise ValueError("At least one subdomain is needed, got {}".format(num_subdomains))
        if owner.size == 0:
            raise ValueError("Cannot partition an empty index set")
        if owner.min() < 0 or owner.max() >= num_subdomains:
            raise ValueError("Subdomain ids must lie in [0, {})".format(num_subdomains))
        sizes = np.bincount(owner, minlength=num_subdomains)
        if np.any(sizes == 0):
            raise ValueError(
                "Subdomains {} own no index".format(np.flatnonzero(sizes == 0).tolist())
            )
        owner.setflags(write=False)
        self.owner = owner
        self.num_subdomains = num_subdomains
        self.scheme = scheme
        self._sizes = sizes

    @property
    def n(self):
        """Number of global indices."""
        return len(self.owner)

    def sizes(self):
        """Return the number of owned indices per subdomain."""
        return self._sizes.copy()

    def owned(self, p):
        """Return the ascending global indices owned by subdomain ``p``."""
        return np.flatnonzero(self.owner == p)

    def __repr__(self):
        """Make string representation of object."""
        return "PartitionMap(scheme={}, n={}, P={})".format(
            self.scheme, self.n, self.num_subdomains
        )


def _check_grid(n, grid, scheme):
    if grid is None:
        raise ValueError("The {} partitioner needs grid coordinates".format(scheme))
    if grid.n != n:
        raise ValueError("{} does not describe {} unknowns".format(grid, n))


def partition_regular1d(n, grid, p):
    """Split the grid into ``p`` contiguous blocks of whole grid rows.

    Block sizes differ by at most one grid row, earlier blocks take the extra rows.
    Without a grid the index range itself is split into contiguous blocks, which is how
    generic systems are handled.

    Parameters
    ----------
    n : int
        Number of unknowns.
    grid : GridSpec or None
    p : int
        Number of subdomains, at most the number of grid rows.

    Returns
    -------
    PartitionMap
    """
    if p < 1:
        raise ValueError("Number of subdomains must be positive, got {}".format(p))
    if grid is None:
        if p > n:
            raise ValueError("Cannot split {} unknowns into {} blocks".format(n, p))
        owner = np.empty(n, dtype=np.int64)
        for block, indices in enumerate(np.array_split(np.arange(n), p)):
            owner[indices] = block
        return PartitionMap(owner, p, "regular1d")

    _check_grid(n, grid, "regular1d")
    if p > grid.points_per_side:
        raise ValueError(
            "regular1d needs P <= N, got P={} for N={}".format(p, grid.points_per_side)
        )
    block_of_row = np.empty(grid.points_per_side, dtype=np.int64)
    for block, rows in enumerate(np.array_split(np.arange(grid.points_per_side), p)):
        block_of_row[rows] = block
    rows, _ = grid.coordinates()
    return PartitionMap(block_of_row[rows], p, "regular1d")


def _factor_pair(p, limit):
    """Closest-to-square ``(px, py)`` with ``px <= py``, ``px * py = p`` and both ``<= limit``."""
    for px in range(int(np.sqrt(p)), 0, -1):
        if p % px == 0:
            py = p // px
            if py <= limit:
                return px, py
            # smaller px only makes py larger
            break
    return None


def partition_regular2d(n, grid, p):
    """Tile the grid into ``px x py`` rectangles.

    ``(px, py)`` is the factor pair of ``p`` closest to square; ``px`` tiles the grid
    columns and ``py`` the grid rows, and tile ``(ty, tx)`` gets id ``ty * px + tx``.

    Parameters
    ----------
    n : int
    grid : GridSpec
    p : int

    Returns
    -------
    PartitionMap
    """
    _check_grid(n, grid, "regular2d")
    if p < 1:
        raise ValueError("Number of subdomains must be positive, got {}".format(p))
    pair = _factor_pair(p, grid.points_per_side)
    if pair is None:
        raise ValueError(
            "P={} has no factorization px * py with px, py <= N={}".format(
                p, grid.points_per_side
            )
        )
    px, py = pair
    side = np.arange(grid.points_per_side)
    tile_of_col = np.empty(grid.points_per_side, dtype=np.int64)
    tile_of_row = np.empty(grid.points_per_side, dtype=np.int64)
    for tile, cols in enumerate(np.array_split(side, px)):
        tile_of_col[cols] = tile
    for tile, rows in enumerate(np.array_split(side, py)):
        tile_of_row[rows] = tile
    rows, cols = grid.coordinates()
    _log.debug("regular2d tiling %dx%d for P=%d", px, py, p)
    return PartitionMap(tile_of_row[rows] * px + tile_of_col[cols], p, "regular2d")


def _bisect(indices, rows, cols, parts, first_id, owner):
    if parts == 1:
        owner[indices] = first_id
        return
    sub_rows, sub_cols = rows[indices], cols[indices]
    if np.ptp(sub_rows) >= np.ptp(sub_cols):
        order = np.lexsort((sub_cols, sub_rows))
    else:
        order = np.lexsort((sub_rows, sub_cols))
    half = (len(indices) + 1) // 2
    _bisect(indices[order[:half]], rows, cols, parts // 2, first_id, owner)
    _bisect(indices[order[half:]], rows, cols, parts // 2, first_id + parts // 2, owner)


def partition_rcb(m, grid, p):
    """Recursive coordinate bisection of the grid points.

    Each cut splits the current point set at the median of its longer grid axis (grid
    rows on ties); the first half receives ``ceil(m / 2)`` points and the lower ids.

    Parameters
    ----------
    m : CsrMatrix
        System matrix, used to check the grid size.
    grid : GridSpec
    p : int
        Number of subdomains, a power of two.

    Returns
    -------
    PartitionMap
    """
    _check_grid(m.num_rows, grid, "rcb")
    if p < 1 or p & (p - 1):
        raise ValueError("rcb needs a power-of-two number of subdomains, got {}".format(p))
    if p > grid.n:
        raise ValueError("Cannot bisect {} points into {} parts".format(grid.n, p))
    rows, cols = grid.coordinates()
    owner = np.empty(grid.n, dtype=np.int64)
    _bisect(np.arange(grid.n), rows, cols, p, 0, owner)
    return PartitionMap(owner, p, "rcb")


def partition_external(path, p, n):
    """Read a partition file with one owner id per line (METIS output layout).

    Parameters
    ----------
    path : str or pathlib.Path
    p : int
        Number of subdomains.
    n : int
        Number of unknowns; the file must have exactly ``n`` lines.

    Returns
    -------
    PartitionMap

    Raises
    ------
    FormatError
        Malformed line, id out of range or wrong line count.
    ValueError
        If a subdomain owns no index.
    """
    path = str(path)
    with open(path, "r") as partition_file:
        lines = partition_file.read().splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    owner = np.empty(len(lines), dtype=np.int64)
    for lineno, line in enumerate(lines, 1):
        if lineno > n:
            raise FormatError("Expected {} lines".format(n), path, lineno)
        try:
            owner[lineno - 1] = int(line.strip())
        except ValueError:
            raise FormatError("Bad subdomain id {!r}".format(line), path, lineno)
        if not 0 <= owner[lineno - 1] < p:
            raise FormatError(
                "Subdomain id {} outside [0, {})".format(owner[lineno - 1], p), path, lineno
            )
    if len(owner) != n:
        raise FormatError(
            "Expected {} lines, found {}".format(n, len(owner)), path, len(lines) + 1
        )
    return PartitionMap(owner, p, "external")


def write_partition(pm, path):
    """Write the owner array in the partition file layout read by `partition_external`."""
    np.savetxt(str(path), pm.owner, fmt="%d")


def make_partition(system, scheme, p, partition_file=None):
    """Partition ``system`` with the named scheme.

    Parameters
    ----------
    system : LinearSystem
    scheme : str
        One of ``SCHEMES``.
    p : int
    partition_file : str, optional
        Required by the external scheme.

    Returns
    -------
    PartitionMap
    """
    if scheme == "regular1d":
        return partition_regular1d(system.n, system.grid, p)
    if scheme == "regular2d":
        return partition_regular2d(system.n, system.grid, p)
    if scheme == "rcb":
        return partition_rcb(system.matrix, system.grid, p)
    if scheme == "external":
        if partition_file is None:
            raise ValueError("The external scheme needs a partition file")
        return partition_external(partition_file, p, system.n)
    raise ValueError("Unknown scheme {}, valid schemes are {}".format(scheme, SCHEMES))
