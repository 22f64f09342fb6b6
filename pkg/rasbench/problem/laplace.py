"""Benchmark problem generation: the 5-point 2D Laplace operator and random right hand sides."""
import numpy as np
from scipy import sparse

from ..linalg import CsrMatrix

__all__ = ["GridSpec", "LinearSystem", "laplace_2d", "random_rhs", "laplace_system"]


class GridSpec:
    """Square ``N x N`` grid with row-major numbering, point ``(r, c) -> r * N + c``.

    Parameters
    ----------
    points_per_side : int
        ``N``, at least 2.
    """

    def __init__(self, points_per_side):
        points_per_side = int(points_per_side)
        if points_per_side < 2:
            raise ValueError("A grid needs at least 2 points per side, got {}".format(points_per_side))
        self.points_per_side = points_per_side

    @property
    def n(self):
        """Total number of unknowns ``N**2``."""
        return self.points_per_side ** 2

    def coordinates(self, indices=None):
        """Return ``(rows, cols)`` grid coordinates of ``indices`` (all points by default)."""
        if indices is None:
            indices = np.arange(self.n)
        return np.divmod(np.asarray(indices, dtype=np.int64), self.points_per_side)

    def __eq__(self, other):
        """Grids are equal when they have the same size."""
        return isinstance(other, GridSpec) and other.points_per_side == self.points_per_side

    def __hash__(self):
        """Hash on the grid size."""
        return hash(self.points_per_side)

    def __repr__(self):
        """Make string representation of object."""
        return "GridSpec(N={})".format(self.points_per_side)


class LinearSystem:
    """The system ``A x = b``.

    Parameters
    ----------
    matrix : CsrMatrix
        Square ``n x n`` matrix.
    rhs : array_like
        Right hand side of length ``n``.
    rhs_seed : int, optional
        Seed the right hand side was drawn with, if any.
    grid : GridSpec, optional
        Grid the matrix was discretized on; needed by the geometric partitioners.
    """

    def __init__(self, matrix, rhs, rhs_seed=None, grid=None):
        if matrix.num_rows != matrix.num_cols:
            raise ValueError("System matrix must be square, got shape {}".format(matrix.shape))
        rhs = np.asarray(rhs, dtype=np.float64)
        if rhs.shape != (matrix.num_rows,):
            raise ValueError(
                "rhs has shape {}, expected ({},)".format(rhs.shape, matrix.num_rows)
            )
        if grid is not None and grid.n != matrix.num_rows:
            raise ValueError("{} does not match a system with {} rows".format(grid, matrix.num_rows))
        self.matrix = matrix
        self.rhs = rhs
        self.rhs_seed = rhs_seed
        self.grid = grid

    @property
    def n(self):
        """Number of unknowns."""
        return self.matrix.num_rows

    def __repr__(self):
        """Make string representation of object."""
        return "LinearSystem(n={}, nnz={}, grid={}, rhs_seed={})".format(
            self.n, self.matrix.nnz, self.grid, self.rhs_seed
        )


def laplace_2d(spec):
    """Assemble the 5-point Laplace stencil ``{-1, -1, 4, -1, -1}`` on a square grid.

    The stencil is truncated at the grid edges (offsets ``-N, -1, 0, 1, N``, with no wrap
    across grid rows), which yields a symmetric positive definite matrix with
    ``5 N**2 - 4 N`` nonzeros.

    Parameters
    ----------
    spec : GridSpec or int

    Returns
    -------
    CsrMatrix
    """
    if not isinstance(spec, GridSpec):
        spec = GridSpec(spec)
    size = spec.points_per_side
    second_difference = sparse.diags([-1.0, 2.0, -1.0], [-1, 0, 1], shape=(size, size))
    eye = sparse.identity(size)
    matrix = sparse.kron(eye, second_difference, format="csr") + sparse.kron(
        second_difference, eye, format="csr"
    )
    return CsrMatrix.from_scipy(matrix)


def random_rhs(n, seed):
    """Draw a right hand side uniformly from ``[-1, 1]``, deterministic for a fixed seed."""
    if n < 1:
        raise ValueError("rhs length must be at least 1, got {}".format(n))
    rng = np.random.default_rng(seed)
    return rng.uniform(-1.0, 1.0, size=n)


def laplace_system(points_per_side, rhs_seed=0):
    """Generate the Laplace benchmark system with a random right hand side."""
    grid = GridSpec(points_per_side)
    return LinearSystem(
        laplace_2d(grid), random_rhs(grid.n, rhs_seed), rhs_seed=rhs_seed, grid=grid
    )
