"""Tests for the sparse kernels and local solvers."""
# pylint: disable=redefined-outer-name, no-self-use
import numpy as np
from numpy.testing import assert_allclose, assert_array_equal
import pytest
from scipy import sparse

from ..linalg import (
    CsrMatrix,
    IterationLimitError,
    NotSPDError,
    cg_solve,
    cholesky_factorize,
    cholesky_solve,
    norm2,
    spmv,
)
from ..problem import laplace_2d, random_rhs

BLOCK = [[4.0, -1.0], [-1.0, 4.0]]


def random_spd(dim, seed):
    rng = np.random.default_rng(seed)
    base = rng.normal(size=(dim, dim))
    return base @ base.T + dim * np.eye(dim)


class TestCsrMatrix:
    def test_from_dense(self):
        m = CsrMatrix.from_dense([[1.0, 0.0], [2.0, 3.0]])
        assert m.shape == (2, 2)
        assert m.nnz == 3
        assert_array_equal(m.row_ptrs, [0, 1, 3])
        assert_array_equal(m.col_idxs, [0, 0, 1])
        assert_array_equal(m.to_dense(), [[1.0, 0.0], [2.0, 3.0]])

    def test_from_scipy_drops_stored_zeros(self):
        blocked = sparse.bsr_matrix(np.array([[1.0, 0.0], [0.0, 2.0]]), blocksize=(2, 2))
        assert blocked.nnz == 4
        m = CsrMatrix.from_scipy(blocked)
        assert m.nnz == 2
        assert_array_equal(m.col_idxs, [0, 1])
        assert not m.adjacency().toarray().any()

    def test_readonly(self):
        m = CsrMatrix.identity(3)
        with pytest.raises(ValueError):
            m.values[0] = 2.0

    @pytest.mark.parametrize(
        "row_ptrs, col_idxs, values, msg",
        [
            ([0, 1], [0], [1.0], "row_ptrs has length"),
            ([1, 1, 2], [0, 1], [1.0, 1.0], "start at 0"),
            ([0, 2, 1], [0, 1], [1.0, 1.0], "monotone"),
            ([0, 1, 2], [0], [1.0], "announces"),
            ([0, 1, 2], [0, 2], [1.0, 1.0], "Column indices must lie"),
            ([0, 2, 2], [1, 0], [1.0, 1.0], "strictly increasing"),
            ([0, 2, 2], [1, 1], [1.0, 1.0], "strictly increasing"),
        ],
    )
    def test_structure_errors(self, row_ptrs, col_idxs, values, msg):
        with pytest.raises(ValueError, match=msg):
            CsrMatrix(2, 2, row_ptrs, col_idxs, values)

    def test_column_may_restart_on_new_row(self):
        m = CsrMatrix(2, 2, [0, 2, 4], [0, 1, 0, 1], [4.0, -1.0, -1.0, 4.0])
        assert_array_equal(m.to_dense(), BLOCK)

    def test_empty_rows(self):
        m = CsrMatrix(3, 3, [0, 0, 1, 1], [2], [5.0])
        assert_array_equal(m.row_idxs, [1])
        assert_array_equal(spmv(m, [1.0, 1.0, 2.0]), [0.0, 10.0, 0.0])

    def test_submatrix_keeps_order(self):
        m = laplace_2d(3)
        rows = [4, 1]
        cols = [1, 3, 4]
        sub = m.submatrix(rows, cols)
        assert_array_equal(sub.to_dense(), m.to_dense()[np.ix_(rows, cols)])
        sub._check_structure()  # pylint: disable=protected-access

    def test_symmetry(self):
        assert laplace_2d(4).is_symmetric()
        assert not CsrMatrix.from_dense([[1.0, 2.0], [0.0, 1.0]]).is_symmetric()
        assert not CsrMatrix.from_dense([[1.0, 2.0, 3.0]]).is_symmetric()

    def test_adjacency(self):
        adjacency = CsrMatrix.from_dense(BLOCK).adjacency().toarray()
        assert_array_equal(adjacency, [[False, True], [True, False]])

    def test_transpose(self):
        m = CsrMatrix.from_dense([[1.0, 2.0], [0.0, 3.0]])
        assert_array_equal(m.transpose().to_dense(), [[1.0, 0.0], [2.0, 3.0]])

    def test_equals(self):
        assert laplace_2d(3).equals(laplace_2d(3))
        assert not laplace_2d(3).equals(CsrMatrix.identity(9))


class TestSpmv:
    def test_identity(self):
        assert_array_equal(spmv(CsrMatrix.identity(3), [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])

    def test_block(self):
        assert_array_equal(spmv(CsrMatrix.from_dense(BLOCK), [1.0, 1.0]), [3.0, 3.0])

    def test_unit_vector(self):
        assert_array_equal(spmv(laplace_2d(2), [1.0, 0.0, 0.0, 0.0]), [4.0, -1.0, -1.0, 0.0])

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="Dimension mismatch"):
            spmv(CsrMatrix.identity(3), [1.0, 2.0])

    def test_linearity(self):
        m = laplace_2d(5)
        x, y = np.random.randn(25), np.random.randn(25)
        alpha, beta = 0.7, -2.3
        assert_allclose(
            spmv(m, alpha * x + beta * y), alpha * spmv(m, x) + beta * spmv(m, y), atol=1e-12
        )


@pytest.mark.parametrize(
    "vector, expected", [([3.0, 4.0], 5.0), ([], 0.0), ([0.0, 0.0], 0.0), ([1.0] * 4, 2.0)]
)
def test_norm2(vector, expected):
    assert norm2(vector) == expected


class TestCholesky:
    def test_block_factor(self):
        factor = cholesky_factorize(CsrMatrix.from_dense(BLOCK))
        assert_allclose(factor.dense_lower(), [[2.0, 0.0], [-0.5, np.sqrt(3.75)]])

    def test_identity(self):
        factor = cholesky_factorize(CsrMatrix.identity(4))
        assert_allclose(factor.dense_lower(), np.eye(4))
        factor = cholesky_factorize(CsrMatrix.identity(2))
        assert_allclose(cholesky_solve(factor, [5.0, 6.0]), [5, 6])

    def test_not_spd(self):
        with pytest.raises(NotSPDError):
            cholesky_factorize(CsrMatrix.from_dense([[1.0, 2.0], [2.0, 1.0]]))

    def test_not_symmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            cholesky_factorize(CsrMatrix.from_dense([[4.0, 1.0], [0.0, 4.0]]))

    def test_not_square(self):
        with pytest.raises(ValueError, match="square"):
            cholesky_factorize(CsrMatrix.from_dense([[4.0, 1.0]]))

    def test_solve_block(self):
        factor = cholesky_factorize(CsrMatrix.from_dense(BLOCK))
        assert_allclose(cholesky_solve(factor, [3.0, 3.0]), [1.0, 1.0])
        assert_array_equal(cholesky_solve(factor, [0.0, 0.0]), [0.0, 0.0])

    def test_solve_dimension_mismatch(self):
        factor = cholesky_factorize(CsrMatrix.identity(2))
        with pytest.raises(ValueError, match="Dimension mismatch"):
            cholesky_solve(factor, [1.0, 2.0, 3.0])

    def test_laplace_factor_reproduces_matrix(self):
        m = laplace_2d(6)
        lower = cholesky_factorize(m).dense_lower()
        dense = m.to_dense()
        error = np.linalg.norm(lower @ lower.T - dense) / np.linalg.norm(dense)
        assert error <= 1e-12
        assert np.all(np.diag(lower) > 0)

    @pytest.mark.parametrize("dim", [2, 7, 33, 64])
    def test_roundtrip_random(self, dim):
        dense = random_spd(dim, dim)
        b = np.random.randn(dim)
        x = cholesky_solve(cholesky_factorize(CsrMatrix.from_dense(dense)), b)
        assert np.linalg.norm(dense @ x - b) / np.linalg.norm(b) <= 1e-10

    def test_large_laplace_is_spd(self):
        factor = cholesky_factorize(laplace_2d(64))
        assert factor.dimension == 64 ** 2
        assert factor.bandwidth == 64


class TestCg:
    def test_identity(self):
        iterates = []
        x = cg_solve(CsrMatrix.identity(2), [1.0, 2.0], 1e-12, 10, callback=iterates.append)
        assert_allclose(x, [1.0, 2.0])
        assert len(iterates) == 1

    def test_matches_cholesky(self):
        m = laplace_2d(8)
        b = random_rhs(m.num_rows, 3)
        x_cg = cg_solve(m, b, 1e-10, 1000)
        x_direct = cholesky_solve(cholesky_factorize(m), b)
        assert_allclose(x_cg, x_direct, atol=1e-8)
        assert norm2(spmv(m, x_cg) - b) <= 1e-10 * norm2(b)

    def test_iteration_limit(self):
        m = laplace_2d(4)
        b = np.ones(16)
        with pytest.raises(IterationLimitError) as err:
            cg_solve(m, b, 1e-10, 0)
        assert_array_equal(err.value.x, np.zeros(16))
        assert err.value.iterations == 0

    def test_iteration_limit_keeps_iterate(self):
        m = laplace_2d(8)
        b = random_rhs(64, 0)
        with pytest.raises(IterationLimitError) as err:
            cg_solve(m, b, 1e-14, 2)
        assert err.value.iterations == 2
        assert err.value.residual_norm > 0
        assert np.all(np.isfinite(err.value.x))
        assert np.any(err.value.x != 0)

    def test_zero_rhs(self):
        assert_array_equal(cg_solve(laplace_2d(3), np.zeros(9), 1e-8, 5), np.zeros(9))

    def test_initial_guess(self):
        m = laplace_2d(4)
        b = random_rhs(16, 1)
        exact = cholesky_solve(cholesky_factorize(m), b)
        assert_allclose(cg_solve(m, b, 1e-8, 0, x0=exact), exact)

    def test_bad_tolerance(self):
        with pytest.raises(ValueError, match="rel_tol"):
            cg_solve(CsrMatrix.identity(2), [1.0, 1.0], 0, 5)
