"""Matrix Market coordinate format input and output."""
import logging

import numpy as np
from scipy import io as spio
from scipy import sparse

from ..linalg import CsrMatrix

_log = logging.getLogger(__name__)

__all__ = ["FormatError", "read_matrix_market", "write_matrix_market"]

_FIELDS = ("real", "double", "integer")
_SYMMETRIES = ("general", "symmetric")


class FormatError(ValueError):
    """Malformed input file.

    Attributes
    ----------
    path : str
    lineno : int
        1-based line number of the offending line.
    """

    def __init__(self, message, path, lineno):
        super().__init__("{} (line {} of {})".format(message, lineno, path))
        self.path = path
        self.lineno = lineno


def _parse_header(line, path):
    tokens = line.strip().lower().split()
    if len(tokens) != 5 or tokens[0] != "%%matrixmarket" or tokens[1] != "matrix":
        raise FormatError("Missing '%%MatrixMarket matrix' header", path, 1)
    _, _, layout, field, symmetry = tokens
    if layout != "coordinate":
        raise FormatError("Only the coordinate layout is supported, got {}".format(layout), path, 1)
    if field not in _FIELDS:
        raise FormatError("Unsupported field {}".format(field), path, 1)
    if symmetry not in _SYMMETRIES:
        raise FormatError("Unsupported symmetry {}".format(symmetry), path, 1)
    return symmetry


def read_matrix_market(path):
    """Read a coordinate Matrix Market file into a CSR matrix.

    Symmetric storage is expanded to the full matrix, entries are sorted per row and
    indices are converted from 1-based (disk) to 0-based (memory).

    Parameters
    ----------
    path : str or pathlib.Path

    Returns
    -------
    CsrMatrix

    Raises
    ------
    FormatError
        On any parse failure, with the offending line number.
    ValueError
        If the matrix is not square.
    """
    path = str(path)
    with open(path, "r") as mtx:
        lines = mtx.readlines()
    if not lines:
        raise FormatError("Empty file", path, 1)
    symmetry = _parse_header(lines[0], path)

    size = None
    rows, cols, values = [], [], []
    for lineno, line in enumerate(lines[1:], 2):
        stripped = line.strip()
        if not stripped or stripped.startswith("%"):
            continue
        tokens = stripped.split()
        if size is None:
            try:
                size = tuple(int(token) for token in tokens)
            except ValueError:
                raise FormatError("Bad size line {!r}".format(stripped), path, lineno)
            if len(size) != 3 or min(size) < 0:
                raise FormatError("Size line needs 'rows cols nnz'", path, lineno)
            continue
        if len(rows) == size[2]:
            raise FormatError("More entries than the announced {}".format(size[2]), path, lineno)
        if len(tokens) != 3:
            raise FormatError("Entry needs 'row col value'", path, lineno)
        try:
            row, col, value = int(tokens[0]) - 1, int(tokens[1]) - 1, float(tokens[2])
        except ValueError:
            raise FormatError("Bad entry {!r}".format(stripped), path, lineno)
        if not (0 <= row < size[0] and 0 <= col < size[1]):
            raise FormatError("Entry ({}, {}) out of bounds".format(row + 1, col + 1), path, lineno)
        rows.append(row)
        cols.append(col)
        values.append(value)

    if size is None:
        raise FormatError("Missing size line", path, len(lines))
    if len(rows) != size[2]:
        raise FormatError(
            "Announced {} entries, found {}".format(size[2], len(rows)), path, len(lines)
        )
    num_rows, num_cols, _ = size
    if num_rows != num_cols:
        raise ValueError("Only square matrices are supported, got {}x{}".format(num_rows, num_cols))

    rows = np.asarray(rows, dtype=np.int64)
    cols = np.asarray(cols, dtype=np.int64)
    values = np.asarray(values, dtype=np.float64)
    if symmetry == "symmetric":
        mirrored = rows != cols
        rows, cols, values = (
            np.concatenate([rows, cols[mirrored]]),
            np.concatenate([cols, rows[mirrored]]),
            np.concatenate([values, values[mirrored]]),
        )
    matrix = sparse.coo_matrix((values, (rows, cols)), shape=(num_rows, num_cols))
    _log.debug("Read %dx%d matrix with %d entries from %s", num_rows, num_cols, matrix.nnz, path)
    return CsrMatrix.from_scipy(matrix)


def write_matrix_market(m, path):
    """Write a CSR matrix as a general coordinate Matrix Market file.

    Values are written with enough digits to read back bit-exactly.

    Parameters
    ----------
    m : CsrMatrix
    path : str or pathlib.Path
    """
    spio.mmwrite(str(path), m.scipy, field="real", precision=17, symmetry="general")
