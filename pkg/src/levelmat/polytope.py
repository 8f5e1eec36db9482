"""The polytope ``F(A) = {x in Q^m : A^T x = 1, x >= 0, x != 0}``.

Vertices of ``F(A)`` are its basic feasible solutions: points supported on
an index set ``I`` of ``n`` rows whose submatrix ``C`` is invertible, with the
values on ``I`` given by ``(C^T)^{-1} 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Sequence, Tuple

from .errors import ContractViolation, InfeasibleError, RankDeficiencyError, SingularMatrixError
from .exact_linalg import RatVector, det, nullspace, rank, scale_to_integer, solve, transpose
from .level_core import KMatrix


@dataclass(frozen=True)
class BasicFeasibleSolution:
    index_set: Tuple[int, ...]
    point: RatVector
    r: int

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, v in enumerate(self.point) if v != 0)


@dataclass(frozen=True)
class ConvexDecomposition:
    target: RatVector
    terms: Tuple[Tuple[Fraction, BasicFeasibleSolution], ...]

    def recombine(self) -> RatVector:
        m = len(self.target)
        out = [Fraction(0)] * m
        for lam, bfs in self.terms:
            for i, v in enumerate(bfs.point):
                out[i] += lam * v
        return tuple(out)


def in_polytope(A: KMatrix, x: Sequence) -> bool:
    """Membership test for ``F(A)``, exact."""
    if len(x) != A.m:
        return False
    if any(v < 0 for v in x) or all(v == 0 for v in x):
        return False
    return all(
        sum(Fraction(xi) * row[j] for xi, row in zip(x, A.rows)) == 1 for j in range(A.n)
    )


def _bfs_for(A: KMatrix, index_set: Tuple[int, ...]):
    C = [A.rows[i] for i in index_set]
    try:
        y = solve(transpose(C), [1] * A.n)
    except SingularMatrixError:
        return None
    if any(v < 0 for v in y):
        return None
    point = [Fraction(0)] * A.m
    for i, v in zip(index_set, y):
        point[i] = v
    point = tuple(point)
    r, _ = scale_to_integer(point)
    return BasicFeasibleSolution(tuple(index_set), point, r)


def enumerate_bfs(A: KMatrix) -> List[BasicFeasibleSolution]:
    """All basic feasible solutions of ``F(A)``, one per distinct point.

    Degenerate points reachable from several index sets keep the
    lexicographically first index set. Output is sorted by point, descending,
    which makes the first coordinate's support come first.
    """
    if A.m < A.n:
        raise ContractViolation(f"need m >= n, got {A.m}x{A.n}")
    if rank(A.rows) < A.n:
        raise RankDeficiencyError("A must have rank n")
    seen = {}
    for I in itertools.combinations(range(A.m), A.n):
        bfs = _bfs_for(A, I)
        if bfs is not None and bfs.point not in seen:
            seen[bfs.point] = bfs
    return [seen[p] for p in sorted(seen, reverse=True)]


def polytope_dimension(points: Iterable) -> int:
    """Dimension of the affine hull of a nonempty point set."""
    pts = [tuple(p.point) if isinstance(p, BasicFeasibleSolution) else tuple(p) for p in points]
    if not pts:
        raise ContractViolation("dimension of an empty set")
    base = pts[0]
    diffs = [[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in pts[1:]]
    diffs = [d for d in diffs if any(d)]
    return rank(diffs) if diffs else 0


def _vertex_below(A: KMatrix, x: RatVector) -> RatVector:
    """A vertex of ``F(A)`` whose support lies inside ``supp(x)``.

    Walks along kernel directions of the supported rows until those rows
    become linearly independent.
    """
    x = list(x)
    while True:
        supp = [i for i, v in enumerate(x) if v != 0]
        cols = [[A.rows[i][j] for i in supp] for j in range(A.n)]
        kernel = nullspace(cols)
        if not kernel:
            return tuple(x)
        z = kernel[0]
        if not any(v < 0 for v in z):
            z = tuple(-v for v in z)
        step = None
        hit = None
        for i, zi in zip(supp, z):
            if zi < 0:
                s = x[i] / -zi
                if step is None or s < step:
                    step, hit = s, i
        for i, zi in zip(supp, z):
            x[i] += step * zi
        x[hit] = Fraction(0)


def _as_bfs(A: KMatrix, v: RatVector) -> BasicFeasibleSolution:
    supp = [i for i, val in enumerate(v) if val != 0]
    # Extend the independent support rows to a full basis, lowest indices first.
    basis = list(supp)
    for i in range(A.m):
        if len(basis) == A.n:
            break
        if i in basis:
            continue
        if rank([A.rows[j] for j in basis + [i]]) == len(basis) + 1:
            basis.append(i)
    r, _ = scale_to_integer(v)
    return BasicFeasibleSolution(tuple(sorted(basis)), tuple(v), r)


def caratheodory_decompose(A: KMatrix, h: Sequence) -> ConvexDecomposition:
    """Write ``h`` in ``F(A)`` as a convex combination of at most ``d + 1`` vertices.

    Each round picks a vertex ``v`` on the smallest face containing the
    current point, then pushes the point away from ``v`` until a coordinate
    vanishes. The face dimension drops every round, so the number of terms is
    bounded by the dimension of that face plus one.
    """
    h = tuple(Fraction(v) for v in h)
    if not in_polytope(A, h):
        raise InfeasibleError("point is not in F(A)")
    if rank(A.rows) < A.n:
        raise RankDeficiencyError("A must have rank n")
    terms = []
    weight = Fraction(1)  # mass still carried by the current point
    cur = h
    while True:
        v = _vertex_below(A, cur)
        if v == cur:
            terms.append((weight, v))
            break
        mu = None
        for c, vi in zip(cur, v):
            d = c - vi
            if d < 0:
                s = c / -d
                if mu is None or s < mu:
                    mu = s
        if mu is None:
            raise ContractViolation("F(A) is unbounded; A must have no zero rows")
        # cur = (nxt + mu v) / (1 + mu)
        nxt = tuple(c + mu * (c - vi) for c, vi in zip(cur, v))
        terms.append((weight * mu / (1 + mu), v))
        weight = weight / (1 + mu)
        cur = nxt
    merged = {}
    for lam, v in terms:
        merged[v] = merged.get(v, Fraction(0)) + lam
    out = tuple((lam, _as_bfs(A, v)) for v, lam in merged.items())
    return ConvexDecomposition(h, out)


def cramer_bound_holds(A: KMatrix, bfs: BasicFeasibleSolution) -> bool:
    """``r <= |det(C^T)|`` for the submatrix ``C`` defining ``bfs``."""
    C = [A.rows[i] for i in bfs.index_set]
    return bfs.r <= abs(det(transpose(C)))
