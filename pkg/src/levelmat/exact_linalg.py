"""Exact integer and rational linear algebra.

Matrices are plain nested sequences (row-major). Entries are Python ``int``
or :class:`fractions.Fraction`, so every result is exact. Nothing here touches
floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence, Tuple, Union

from .errors import DimensionError, SingularMatrixError

Rat = Fraction
Scalar = Union[int, Fraction]
Mat = Sequence[Sequence[Scalar]]
IntVector = Tuple[int, ...]
RatVector = Tuple[Fraction, ...]


def _shape(M: Mat) -> Tuple[int, int]:
    m = len(M)
    if m == 0:
        raise DimensionError("matrix has no rows")
    n = len(M[0])
    if n == 0:
        raise DimensionError("matrix has no columns")
    for row in M:
        if len(row) != n:
            raise DimensionError("ragged matrix")
    return m, n


def _as_fraction_rows(M: Mat):
    return [[Fraction(v) for v in row] for row in M]


def det(M: Mat) -> Scalar:
    """Determinant by fraction-free (Bareiss) elimination.

    Integer input gives an ``int``; any rational entry switches to exact
    ``Fraction`` division.
    """
    m, n = _shape(M)
    if m != n:
        raise DimensionError(f"determinant of a non-square {m}x{n} matrix")
    integral = all(isinstance(v, int) for row in M for v in row)
    a = [list(row) for row in M] if integral else _as_fraction_rows(M)
    sign = 1
    prev = 1
    for p in range(n - 1):
        if a[p][p] == 0:
            for r in range(p + 1, n):
                if a[r][p] != 0:
                    a[p], a[r] = a[r], a[p]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[p][p]
        for i in range(p + 1, n):
            ai = a[i]
            aip = ai[p]
            for j in range(p + 1, n):
                num = ai[j] * piv - aip * a[p][j]
                ai[j] = num // prev if integral else num / prev
            ai[p] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def det_cofactor(M: Mat) -> Scalar:
    """Determinant by Laplace expansion along the first row (small sizes only)."""
    m, n = _shape(M)
    if m != n:
        raise DimensionError(f"determinant of a non-square {m}x{n} matrix")
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j] == 0:
            continue
        minor = [list(row[:j]) + list(row[j + 1:]) for row in M[1:]]
        term = M[0][j] * det_cofactor(minor)
        total += term if j % 2 == 0 else -term
    return total


def row_echelon(M: Mat):
    """Reduced row echelon form over Q.

    Returns ``(R, pivots)`` where ``R`` is a list of Fraction rows and
    ``pivots`` the pivot column of each nonzero row.
    """
    m, n = _shape(M)
    a = _as_fraction_rows(M)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(M: Mat) -> int:
    """Rank over the rationals."""
    return len(row_echelon(M)[1])


def nullspace(M: Mat):
    """Basis of ``{z : M z = 0}`` as a list of Fraction tuples."""
    _, n = _shape(M)
    R, pivots = row_echelon(M)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        z = [Fraction(0)] * n
        z[f] = Fraction(1)
        for row, p in zip(R, pivots):
            z[p] = -row[f]
        basis.append(tuple(z))
    return basis


def solve(M: Mat, b: Sequence[Scalar]) -> RatVector:
    """Exact solution of the square system ``M x = b``.

    Raises :class:`SingularMatrixError` when ``M`` is not invertible.
    """
    m, n = _shape(M)
    if m != n:
        raise DimensionError(f"solve needs a square matrix, got {m}x{n}")
    if len(b) != m:
        raise DimensionError("right-hand side length does not match")
    aug = [list(row) + [b_i] for row, b_i in zip(M, b)]
    R, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularMatrixError("matrix is singular")
    return tuple(R[i][n] for i in range(n))


def transpose(M: Mat):
    return tuple(zip(*M))


def mat_vec(M: Mat, x: Sequence[Scalar]):
    """``M x`` for a row-major matrix."""
    return tuple(sum(a * b for a, b in zip(row, x)) for row in M)


def scale_to_integer(x: Sequence[Scalar]) -> Tuple[int, IntVector]:
    """Smallest positive ``r`` with ``r * x`` integral, and that vector."""
    fx = [Fraction(v) for v in x]
    r = 1
    for v in fx:
        r = lcm(r, v.denominator)
    return r, tuple(int(v * r) for v in fx)


def vec_ge(x: Sequence[Scalar], y: Sequence[Scalar]) -> bool:
    """Componentwise ``x >= y``."""
    if len(x) != len(y):
        raise DimensionError("vector lengths differ")
    return all(a >= b for a, b in zip(x, y))


def vec_gt(x: Sequence[Scalar], y: Sequence[Scalar]) -> bool:
    """``x >= y`` and ``x != y`` (the partial order on Q^m)."""
    return vec_ge(x, y) and tuple(x) != tuple(y)
