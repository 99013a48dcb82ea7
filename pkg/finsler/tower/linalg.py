"""
Small dense linear algebra generic over the numeric tower.
Float matrices go straight to numpy.linalg, matrices holding jets are eliminated by hand with partial
pivoting on the values.
"""
import logging
import numbers

import numpy as np

from finsler.errors import ContractError, DegeneracyError
from finsler.tower.jet import Jet
from finsler.tower.functions import value_of

logger = logging.getLogger(__name__)


def _as_matrix(a):
    a = np.asarray(a, dtype=object) if _has_jets(a) else np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractError("Expected a square matrix, got shape {0}.".format(a.shape))
    return a


def _has_jets(a):
    return any(isinstance(v, Jet) for v in np.asarray(a, dtype=object).flat)


def is_float_array(a):
    return all(isinstance(v, numbers.Real) for v in np.asarray(a, dtype=object).flat)


def values(a):
    """
    Strip a tower array down to its float values.
    """
    a = np.asarray(a, dtype=object)
    return np.vectorize(value_of, otypes=[float])(a) if a.size else np.zeros(a.shape)


def _eliminate(a, b):
    """
    Gaussian elimination with partial pivoting, on copies.
    :return: (upper triangular rows, transformed right hand side, permutation sign).
    """
    n = a.shape[0]
    rows = [list(a[i]) for i in range(n)]
    rhs = [list(np.atleast_1d(b[i])) for i in range(n)] if b is not None else None
    sign = 1.0
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(value_of(rows[r][col])))
        if value_of(rows[pivot][col]) == 0.0:
            raise DegeneracyError("Matrix is singular, no pivot in column {0}.".format(col))
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            if rhs is not None:
                rhs[col], rhs[pivot] = rhs[pivot], rhs[col]
            sign = -sign
        for r in range(col + 1, n):
            factor = rows[r][col] / rows[col][col]
            rows[r] = [rows[r][c] - factor * rows[col][c] if c > col else 0.0 for c in range(n)]
            if rhs is not None:
                rhs[r] = [rhs[r][c] - factor * rhs[col][c] for c in range(len(rhs[r]))]
    return rows, rhs, sign


def solve(a, b):
    """
    Solve a x = b.
    :param a: Square matrix of floats or jets.
    :param b: Vector (n,) or matrix (n, m) of floats or jets.
    :return: x with the shape of b, a float array when everything is a float, else an object array.
    :raises DegeneracyError: When a is singular.
    """
    if not _has_jets(a) and not _has_jets(b):
        try:
            return np.linalg.solve(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
        except np.linalg.LinAlgError as e:
            raise DegeneracyError("Matrix is singular: {0}".format(e))
    a = _as_matrix(a)
    b = np.asarray(b, dtype=object)
    vector = b.ndim == 1
    n = a.shape[0]
    if b.shape[0] != n:
        raise ContractError("Right hand side has {0} rows, expected {1}.".format(b.shape[0], n))
    rows, rhs, _ = _eliminate(a, b)
    width = len(rhs[0])
    x = [[0.0] * width for _ in range(n)]
    for i in reversed(range(n)):
        for c in range(width):
            acc = rhs[i][c]
            for j in range(i + 1, n):
                acc = acc - rows[i][j] * x[j][c]
            x[i][c] = acc / rows[i][i]
    result = np.empty((n, width), dtype=object)
    for i in range(n):
        for c in range(width):
            result[i, c] = x[i][c]
    return result[:, 0] if vector else result


def inverse(a):
    """
    Inverse of a square matrix over the tower.
    :raises DegeneracyError: When a is singular.
    """
    n = np.asarray(a, dtype=object).shape[0]
    return solve(a, np.eye(n))


def det(a):
    """
    Determinant of a square matrix over the tower.
    """
    if not _has_jets(a):
        return float(np.linalg.det(np.asarray(a, dtype=float)))
    a = _as_matrix(a)
    try:
        rows, _, sign = _eliminate(a, None)
    except DegeneracyError:
        return 0.0
    result = sign
    for i in range(a.shape[0]):
        result = rows[i][i] * result
    return result
