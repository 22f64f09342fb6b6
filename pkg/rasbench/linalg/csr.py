"""Compressed sparse row storage and the kernels every other module builds on."""
import numpy as np
from scipy import sparse

from ..utils import lazy_property

__all__ = ["CsrMatrix", "spmv", "norm2"]


def _frozen(ary, dtype):
    ary = np.array(ary, dtype=dtype, copy=True).ravel()
    ary.setflags(write=False)
    return ary


class CsrMatrix:
    """Sparse matrix in compressed sparse row form.

    Instances are immutable: the index and value arrays are read-only copies, so a
    matrix can be shared between solver workers without locking.

    Parameters
    ----------
    num_rows, num_cols : int
    row_ptrs : array_like of int
        Length ``num_rows + 1``, starts at 0, monotone, ends at the number of nonzeros.
    col_idxs : array_like of int
        Column of every stored entry, strictly increasing within each row.
    values : array_like of float
        Value of every stored entry.
    check : bool, optional
        Validate the structural invariants (default True).
    """

    def __init__(self, num_rows, num_cols, row_ptrs, col_idxs, values, check=True):
        self.num_rows = int(num_rows)
        self.num_cols = int(num_cols)
        self.row_ptrs = _frozen(row_ptrs, np.int64)
        self.col_idxs = _frozen(col_idxs, np.int64)
        self.values = _frozen(values, np.float64)
        if check:
            self._check_structure()

    def _check_structure(self):
        if self.num_rows < 0 or self.num_cols < 0:
            raise ValueError("Matrix dimensions must be non-negative")
        if len(self.row_ptrs) != self.num_rows + 1:
            raise ValueError(
                "row_ptrs has length {}, expected {}".format(len(self.row_ptrs), self.num_rows + 1)
            )
        if self.row_ptrs[0] != 0:
            raise ValueError("row_ptrs must start at 0")
        if np.any(np.diff(self.row_ptrs) < 0):
            raise ValueError("row_ptrs must be monotone")
        nnz = self.row_ptrs[-1]
        if not nnz == len(self.col_idxs) == len(self.values):
            raise ValueError(
                "row_ptrs announces {} entries but col_idxs has {} and values has {}".format(
                    nnz, len(self.col_idxs), len(self.values)
                )
            )
        if nnz == 0:
            return
        if self.col_idxs.min() < 0 or self.col_idxs.max() >= self.num_cols:
            raise ValueError("Column indices must lie in [0, {})".format(self.num_cols))
        # a new row starts wherever the entry index is a row pointer
        row_start = np.zeros(nnz, dtype=bool)
        row_start[self.row_ptrs[:-1][self.row_ptrs[:-1] < nnz]] = True
        increasing = np.diff(self.col_idxs) > 0
        if np.any(~increasing & ~row_start[1:]):
            raise ValueError("Column indices must be strictly increasing within each row")

    @classmethod
    def from_scipy(cls, matrix):
        """Build from any scipy sparse matrix, summing duplicates and dropping stored zeros."""
        matrix = sparse.csr_matrix(matrix, dtype=np.float64, copy=True)
        matrix.sum_duplicates()
        matrix.eliminate_zeros()
        matrix.sort_indices()
        return cls(
            matrix.shape[0], matrix.shape[1], matrix.indptr, matrix.indices, matrix.data
        )

    @classmethod
    def from_dense(cls, ary):
        """Build from a dense 2D array, dropping exact zeros."""
        ary = np.atleast_2d(np.asarray(ary, dtype=np.float64))
        return cls.from_scipy(sparse.csr_matrix(ary))

    @classmethod
    def identity(cls, n):
        """Return the ``n`` x ``n`` identity."""
        return cls(n, n, np.arange(n + 1), np.arange(n), np.ones(n))

    @property
    def shape(self):
        """Return ``(num_rows, num_cols)``."""
        return (self.num_rows, self.num_cols)

    @property
    def nnz(self):
        """Return the number of stored entries."""
        return int(self.row_ptrs[-1])

    @lazy_property
    def scipy(self):
        """Scipy view sharing the same arrays."""
        return sparse.csr_matrix(
            (self.values, self.col_idxs, self.row_ptrs), shape=self.shape, copy=False
        )

    @lazy_property
    def row_idxs(self):
        """Row of every stored entry (COO expansion of ``row_ptrs``)."""
        rows = np.repeat(np.arange(self.num_rows, dtype=np.int64), np.diff(self.row_ptrs))
        rows.setflags(write=False)
        return rows

    def to_dense(self):
        """Return a dense copy."""
        return self.scipy.toarray()

    def transpose(self):
        """Return the transposed matrix."""
        return CsrMatrix.from_scipy(self.scipy.transpose())

    def diagonal(self):
        """Return the main diagonal as a dense vector."""
        return self.scipy.diagonal()

    def row(self, i):
        """Return ``(col_idxs, values)`` of row ``i``."""
        start, stop = self.row_ptrs[i], self.row_ptrs[i + 1]
        return self.col_idxs[start:stop], self.values[start:stop]

    def is_symmetric(self, rtol=1e-12):
        """Check ``A == A^T`` up to ``rtol`` relative to the largest entry."""
        if self.num_rows != self.num_cols:
            return False
        if self.nnz == 0:
            return True
        diff = self.scipy - self.scipy.transpose()
        if diff.nnz == 0:
            return True
        return np.abs(diff.data).max() <= rtol * np.abs(self.values).max()

    def submatrix(self, rows, cols):
        """Extract the block ``A[rows][:, cols]``; row and column order follow the arguments."""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        block = self.scipy[rows, :][:, cols]
        return CsrMatrix.from_scipy(sparse.csr_matrix(block, shape=(len(rows), len(cols))))

    def adjacency(self):
        """Return the boolean off-diagonal sparsity pattern as a scipy matrix."""
        off_diagonal = self.row_idxs != self.col_idxs
        return sparse.csr_matrix(
            (
                np.ones(int(off_diagonal.sum()), dtype=bool),
                (self.row_idxs[off_diagonal], self.col_idxs[off_diagonal]),
            ),
            shape=self.shape,
        )

    def equals(self, other):
        """Exact equality of structure and values."""
        return (
            self.shape == other.shape
            and np.array_equal(self.row_ptrs, other.row_ptrs)
            and np.array_equal(self.col_idxs, other.col_idxs)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        """Make string representation of object."""
        return "CsrMatrix({}x{}, nnz={})".format(self.num_rows, self.num_cols, self.nnz)


def spmv(m, x):
    """Sparse matrix-vector product ``m @ x``.

    Parameters
    ----------
    m : CsrMatrix
    x : array_like
        Vector of length ``m.num_cols``.

    Returns
    -------
    numpy.ndarray
        Vector of length ``m.num_rows``.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or len(x) != m.num_cols:
        raise ValueError(
            "Dimension mismatch: matrix has {} columns, vector has shape {}".format(
                m.num_cols, x.shape
            )
        )
    if m.num_rows == 0 or m.nnz == 0:
        return np.zeros(m.num_rows)
    return m.scipy.dot(x)


def norm2(x):
    """Euclidean norm; 0 for an empty vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0:
        return 0.0
    return float(np.linalg.norm(x))
