import random
from fractions import Fraction

import pytest

from levelmat.constructions import identity, universal_matrix
from levelmat.errors import ContractViolation, InfeasibleError, RankDeficiencyError
from levelmat.exact_linalg import rank
from levelmat.level_core import KMatrix
from levelmat.polytope import (
    caratheodory_decompose,
    cramer_bound_holds,
    enumerate_bfs,
    in_polytope,
    polytope_dimension,
)

from oracles import convex_check

half = Fraction(1, 2)
J3 = KMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
U21 = universal_matrix(2, 1)


def points(bfs_list):
    return {b.point for b in bfs_list}


def test_enumerate_bfs_examples():
    assert points(enumerate_bfs(U21)) == {(1, 1, 0), (0, 0, 1)}
    assert points(enumerate_bfs(identity(4))) == {(1, 1, 1, 1)}
    assert points(enumerate_bfs(J3)) == {(half, half, half)}


def test_enumerate_bfs_rank_deficient():
    with pytest.raises(RankDeficiencyError):
        enumerate_bfs(KMatrix([[1, 1], [2, 2], [1, 1]]))
    with pytest.raises(ContractViolation):
        enumerate_bfs(KMatrix([[1, 0, 1]]))


@pytest.mark.parametrize("n,k", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_bfs_invariants(n, k):
    A = universal_matrix(n, k)
    bfs = enumerate_bfs(A)
    assert bfs
    for b in bfs:
        assert in_polytope(A, b.point)
        assert all(b.point[i] == 0 for i in range(A.m) if i not in b.index_set)
        assert rank([A.rows[i] for i in b.index_set]) == n
        assert cramer_bound_holds(A, b)
    assert len(points(bfs)) == len(bfs)


def test_polytope_dimension_examples():
    assert polytope_dimension([(1, 1, 0)]) == 0
    assert polytope_dimension([(1, 1, 0), (0, 0, 1)]) == 1
    U31 = universal_matrix(3, 1)
    bfs = enumerate_bfs(U31)
    pts = [b.point for b in bfs]
    diffs = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    d = polytope_dimension(bfs)
    assert d >= 1 and d == rank(diffs)
    with pytest.raises(ContractViolation):
        polytope_dimension([])


def test_caratheodory_examples():
    dec = caratheodory_decompose(U21, (half, half, half))
    got = sorted((lam, b.point) for lam, b in dec.terms)
    assert got == [(half, (0, 0, 1)), (half, (1, 1, 0))]

    dec = caratheodory_decompose(U21, (1, 1, 0))
    assert [(lam, b.point) for lam, b in dec.terms] == [(1, (1, 1, 0))]

    dec = caratheodory_decompose(J3, (half, half, half))
    assert len(dec.terms) == 1 and dec.terms[0][0] == 1


def test_caratheodory_infeasible():
    with pytest.raises(InfeasibleError):
        caratheodory_decompose(U21, (1, 1, 1))
    with pytest.raises(InfeasibleError):
        caratheodory_decompose(U21, (0, 0, 0))


def random_feasible_point(bfs, rng):
    chosen = rng.sample(bfs, rng.randint(1, min(len(bfs), 5)))
    weights = [Fraction(rng.randint(1, 9)) for _ in chosen]
    total = sum(weights)
    m = len(chosen[0].point)
    return tuple(sum(w / total * b.point[i] for w, b in zip(weights, chosen)) for i in range(m))


@pytest.mark.parametrize("n,k", [(2, 2), (3, 1), (3, 2)])
def test_caratheodory_random(n, k):
    rng = random.Random(n * 10 + k)
    A = universal_matrix(n, k)
    bfs = enumerate_bfs(A)
    d = polytope_dimension(bfs)
    vertex_points = points(bfs)
    for _ in range(20):
        h = random_feasible_point(bfs, rng)
        dec = caratheodory_decompose(A, h)
        assert len(dec.terms) <= d + 1
        assert dec.recombine() == h
        lams = [lam for lam, _ in dec.terms]
        assert all(lam > 0 for lam in lams)
        assert convex_check([b.point for _, b in dec.terms], lams, h)
        assert all(b.point in vertex_points for _, b in dec.terms)
