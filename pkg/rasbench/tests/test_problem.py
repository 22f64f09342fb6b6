"""Tests for the benchmark systems and Matrix Market input/output."""
# pylint: disable=redefined-outer-name, no-self-use
import numpy as np
from numpy.testing import assert_array_equal
import pytest

from ..linalg import CsrMatrix, cholesky_factorize
from ..problem import (
    FormatError,
    GridSpec,
    LinearSystem,
    laplace_2d,
    laplace_system,
    random_rhs,
    read_matrix_market,
    write_matrix_market,
)


class TestLaplace:
    def test_two_by_two_grid(self):
        expected = [[4, -1, -1, 0], [-1, 4, 0, -1], [-1, 0, 4, -1], [0, -1, -1, 4]]
        assert_array_equal(laplace_2d(GridSpec(2)).to_dense(), expected)

    def test_center_row(self):
        cols, values = laplace_2d(3).row(4)
        assert_array_equal(cols, [1, 3, 4, 5, 7])
        assert_array_equal(values, [-1, -1, 4, -1, -1])

    def test_no_wrap_across_grid_rows(self):
        dense = laplace_2d(4).to_dense()
        assert dense[3, 4] == 0
        assert dense[4, 3] == 0
        assert dense[7, 8] == 0

    @pytest.mark.parametrize("size", [2, 3, 5, 16])
    def test_nnz_and_symmetry(self, size):
        m = laplace_2d(size)
        assert m.nnz == 5 * size ** 2 - 4 * size
        dense = m.to_dense()
        assert_array_equal(dense, dense.T)

    def test_row_sums(self):
        sums = laplace_2d(5).to_dense().sum(axis=1)
        assert np.all(sums >= 0)
        rows, cols = GridSpec(5).coordinates()
        interior = (rows > 0) & (rows < 4) & (cols > 0) & (cols < 4)
        assert_array_equal(sums[interior], 0)
        assert np.all(sums[~interior] >= 1)

    def test_spd(self):
        assert cholesky_factorize(laplace_2d(64)).dimension == 4096

    def test_grid_too_small(self):
        with pytest.raises(ValueError, match="at least 2"):
            GridSpec(1)

    def test_grid_coordinates(self):
        rows, cols = GridSpec(3).coordinates([0, 4, 8, 5])
        assert_array_equal(rows, [0, 1, 2, 1])
        assert_array_equal(cols, [0, 1, 2, 2])


class TestRandomRhs:
    def test_deterministic(self):
        assert_array_equal(random_rhs(4, 42), random_rhs(4, 42))

    def test_range(self):
        rhs = random_rhs(1000, 7)
        assert rhs.min() >= -1
        assert rhs.max() <= 1

    def test_seeds_differ(self):
        assert not np.array_equal(random_rhs(4, 1), random_rhs(4, 2))

    def test_empty(self):
        with pytest.raises(ValueError):
            random_rhs(0, 1)


class TestLinearSystem:
    def test_laplace_system(self):
        system = laplace_system(4, rhs_seed=3)
        assert system.n == 16
        assert system.grid == GridSpec(4)
        assert system.rhs_seed == 3
        assert_array_equal(system.rhs, random_rhs(16, 3))

    def test_rhs_length(self):
        with pytest.raises(ValueError, match="rhs has shape"):
            LinearSystem(CsrMatrix.identity(3), np.zeros(2))

    def test_not_square(self):
        with pytest.raises(ValueError, match="square"):
            LinearSystem(CsrMatrix.from_dense([[1.0, 2.0]]), np.zeros(1))

    def test_grid_mismatch(self):
        with pytest.raises(ValueError, match="does not match"):
            LinearSystem(CsrMatrix.identity(4), np.zeros(4), grid=GridSpec(3))


class TestMatrixMarket:
    def write(self, tmp_path, text, name="matrix.mtx"):
        path = tmp_path / name
        path.write_text(text)
        return path

    def test_identity(self, tmp_path):
        path = self.write(
            tmp_path, "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n2 2 1.0\n"
        )
        m = read_matrix_market(path)
        assert m.nnz == 2
        assert_array_equal(m.diagonal(), [1.0, 1.0])

    def test_general_count(self, tmp_path):
        path = self.write(
            tmp_path,
            "%%MatrixMarket matrix coordinate real general\n"
            "% a comment\n"
            "\n"
            "3 3 5\n"
            "3 1 -1\n1 1 4\n2 2 4\n3 3 4\n1 3 -1\n",
        )
        m = read_matrix_market(path)
        assert m.nnz == 5
        assert_array_equal(m.col_idxs, [0, 2, 1, 0, 2])

    def test_symmetric_expanded(self, tmp_path):
        path = self.write(
            tmp_path,
            "%%MatrixMarket matrix coordinate real symmetric\n2 2 3\n1 1 4\n2 1 -1\n2 2 4\n",
        )
        assert_array_equal(read_matrix_market(path).to_dense(), [[4, -1], [-1, 4]])

    def test_roundtrip(self, tmp_path):
        m = laplace_2d(4)
        path = tmp_path / "laplace.mtx"
        write_matrix_market(m, path)
        assert read_matrix_market(path).equals(m)

    def test_roundtrip_exact_values(self, tmp_path):
        m = CsrMatrix.from_dense([[np.pi, 0.1], [0.1, 1 / 3]])
        path = tmp_path / "values.mtx"
        write_matrix_market(m, path)
        assert read_matrix_market(path).equals(m)

    def test_single_entry(self, tmp_path):
        path = tmp_path / "single.mtx"
        write_matrix_market(CsrMatrix.from_dense([[4.0]]), path)
        entries = [
            line
            for line in path.read_text().splitlines()[1:]
            if line.strip() and not line.startswith("%")
        ]
        assert len(entries) == 2
        assert read_matrix_market(path).to_dense()[0, 0] == 4.0

    def test_empty_matrix(self, tmp_path):
        path = tmp_path / "empty.mtx"
        write_matrix_market(CsrMatrix(3, 3, [0, 0, 0, 0], [], []), path)
        m = read_matrix_market(path)
        assert m.shape == (3, 3)
        assert m.nnz == 0

    @pytest.mark.parametrize(
        "text, lineno",
        [
            ("%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n", 1),
            ("%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1 0\n", 1),
            ("not a header\n", 1),
            ("%%MatrixMarket matrix coordinate real general\n2 2\n", 2),
            ("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 x 1.0\n", 3),
            ("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 3 1.0\n", 3),
            ("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 1.0\n2 2 1.0\n", 4),
            ("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n", 3),
        ],
    )
    def test_format_errors(self, tmp_path, text, lineno):
        path = self.write(tmp_path, text)
        with pytest.raises(FormatError) as err:
            read_matrix_market(path)
        assert err.value.lineno == lineno
        assert "line {}".format(lineno) in str(err.value)

    def test_not_square(self, tmp_path):
        path = self.write(
            tmp_path, "%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1.0\n"
        )
        with pytest.raises(ValueError, match="square"):
            read_matrix_market(path)
