import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levelmat.bounds import ell_budget, ub_ub2
from levelmat.constructions import identity, prime_block, universal_matrix
from levelmat.errors import ContractViolation, SearchBudgetExceeded
from levelmat.irreducibility import (
    decompose_into_irreducibles,
    ell_search,
    hilbert_basis,
    is_irreducible_leveler,
    is_reducible,
)
from levelmat.level_core import KMatrix, canonical_form, column_sums, is_level, leveler_check, stack

from oracles import brute_force_irreducible_levelers, rows_level, subset_reducible

J3 = KMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
U21 = universal_matrix(2, 1)


def test_is_reducible_examples():
    assert is_reducible(J3) is None
    w = is_reducible(KMatrix([[1, 1], [0, 1], [1, 0]]))
    assert w is not None
    I2x2 = KMatrix([[1, 0], [0, 1], [1, 0], [0, 1]])
    assert is_reducible(I2x2) is not None
    assert is_reducible(KMatrix([[2, 0], [1, 2], [0, 1]])) is None


def test_is_reducible_single_row_witness():
    w = is_reducible(KMatrix([[1, 1], [0, 1], [1, 0]]))
    # smallest level value first: the row (1,1) alone with sum 1
    assert w.s == 1
    assert w.subset in (frozenset({0}), frozenset({1, 2}))


def test_is_reducible_rejects_non_level():
    with pytest.raises(ContractViolation):
        is_reducible(KMatrix([[1, 2]]))


def test_zero_row_makes_reducible():
    w = is_reducible(KMatrix([[1, 1], [0, 0]]))
    assert w.subset == frozenset({1}) and w.s == 0
    assert is_reducible(KMatrix([[0, 0]])) is None


level_rows = st.integers(2, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 3), min_size=n, max_size=n), min_size=1, max_size=8)
)


@given(level_rows)
@settings(max_examples=300, deadline=None)
def test_is_reducible_agrees_with_subset_oracle(rows):
    # force levelness by appending a balancing row when possible
    sums = [sum(c) for c in zip(*rows)]
    top = max(sums)
    fix = [top - s for s in sums]
    if max(fix) > 3:
        return
    if any(fix):
        rows = rows + [fix]
    M = KMatrix(rows)
    assert is_level(M)[0]
    w = is_reducible(M)
    assert (w is not None) == subset_reducible(M.rows)
    if w is not None:
        assert 0 < len(w.subset) < M.m
        sub = [M.rows[i] for i in sorted(w.subset)]
        assert rows_level(sub)
        assert column_sums(KMatrix(sub)) == (w.s,) * M.n


def test_block_structure_is_handled():
    # two disjoint-column blocks whose level values only meet at the total
    A = KMatrix([[1, 0, 0, 0], [0, 1, 0, 0],
                 [0, 0, 1, 0], [0, 0, 0, 1]] + [[1, 0, 0, 0], [0, 1, 0, 0]])
    assert not is_level(A)[0]
    _, B = prime_block(3)
    assert is_reducible(B) is None
    doubled = KMatrix(B.rows + B.rows)
    w = is_reducible(doubled)
    assert w is not None and rows_level([doubled.rows[i] for i in w.subset])


def test_decompose_examples():
    assert decompose_into_irreducibles(J3) == [J3]
    parts = decompose_into_irreducibles(KMatrix([[1, 1], [0, 1], [1, 0]]))
    assert sorted(p.rows for p in parts) == sorted([((1, 1),), ((0, 1), (1, 0))])
    I2 = identity(2)
    parts = decompose_into_irreducibles(KMatrix(I2.rows + I2.rows))
    assert [p.rows for p in parts] == [I2.rows, I2.rows]


def test_decompose_random_level_matrices():
    rng = random.Random(5)
    U = universal_matrix(3, 2)
    for _ in range(40):
        gens = hilbert_basis(U, 6).generators
        picks = [gens[rng.randrange(len(gens))] for _ in range(rng.randint(1, 4))]
        rows = [r for g in picks for r in stack(U, 1, g.x).rows]
        rng.shuffle(rows)
        M = KMatrix(rows, k=2)
        parts = decompose_into_irreducibles(M)
        assert sorted(r for p in parts for r in p.rows) == sorted(M.rows)
        for p in parts:
            assert is_level(p)[0]
            assert is_reducible(p) is None


def test_is_irreducible_leveler_examples():
    assert is_irreducible_leveler(U21, (1, 1, 0))
    assert not is_irreducible_leveler(U21, (2, 2, 0))
    assert not is_irreducible_leveler(U21, (1, 1, 1))
    with pytest.raises(ContractViolation):
        is_irreducible_leveler(U21, (1, 0, 0))


def _dominates(x, y):
    return x != y and all(a >= b for a, b in zip(x, y))


def test_is_irreducible_leveler_matches_domination_oracle():
    for n, k, B in [(2, 2, 4), (3, 1, 4)]:
        U = universal_matrix(n, k)
        minimal = brute_force_irreducible_levelers(U.rows, B)
        from oracles import compositions_up_to
        for x in compositions_up_to(U.m, B):
            if not any(x) or leveler_check(U, x) is None:
                continue
            assert is_irreducible_leveler(U, x) == (x in minimal)


def test_hilbert_basis_examples():
    hb = hilbert_basis(U21, 4)
    assert {(g.x, g.alpha) for g in hb} == {((1, 1, 0), 1), ((0, 0, 1), 1)}
    for n in (2, 3, 4):
        hb = hilbert_basis(identity(n), n + 2)
        assert [g.x for g in hb] == [(1,) * n]
    assert hilbert_basis(universal_matrix(2, 2), 8).max_row_count == 3


@pytest.mark.parametrize("n,k,B", [(2, 1, 5), (2, 2, 5), (2, 3, 6), (3, 1, 7)])
def test_hilbert_basis_equals_brute_force(n, k, B):
    U = universal_matrix(n, k)
    hb = hilbert_basis(U, B)
    assert {g.x for g in hb} == brute_force_irreducible_levelers(U.rows, B)


def test_hilbert_basis_generators_are_levelers_and_antichain():
    U = universal_matrix(2, 3)
    gens = hilbert_basis(U, 6).generators
    for g in gens:
        assert leveler_check(U, g.x) == g.alpha
    xs = [g.x for g in gens]
    assert not any(_dominates(a, b) for a in xs for b in xs)
    assert list(gens) == sorted(gens, key=lambda g: (g.row_count, g.x))


def test_hilbert_basis_agrees_with_stack_check():
    U = universal_matrix(3, 1)
    for g in hilbert_basis(U, 7):
        assert is_irreducible_leveler(U, g.x)
        assert not subset_reducible(stack(U, 1, g.x).rows)


def test_hilbert_basis_budget_contract():
    with pytest.raises(ContractViolation):
        hilbert_basis(U21, 0)


def test_ell_search_examples():
    r = ell_search(2, 2)
    assert r.value == 3
    assert ell_search(2, 3).value == 5
    assert ell_search(2, 1).value == 2


def test_ell_search_extremal_classes_two_columns():
    # Exhaustive: k+1 classes under row/column permutations.
    r = ell_search(2, 2)
    keys = {c.key for c in r.extremal_classes}
    expected = {
        canonical_form(KMatrix(m)).key
        for m in ([[2, 0], [0, 1], [0, 1]], [[2, 0], [1, 2], [0, 1]], [[2, 0], [1, 2], [1, 2]])
    }
    assert keys == expected
    assert len(ell_search(2, 3).extremal_classes) == 4


def test_ell_search_classes_match_exhaustive_enumeration():
    from itertools import combinations_with_replacement
    from oracles import canonical_brute

    for k in (2, 3):
        U = universal_matrix(2, k)
        found = set()
        for rows in combinations_with_replacement(U.rows, 2 * k - 1):
            if rows_level(rows) and not subset_reducible(rows):
                found.add(canonical_brute(rows))
        assert {c.key for c in ell_search(2, k).extremal_classes} == found


def test_ell_search_three_columns():
    r = ell_search(3, 1)
    assert r.value == 3
    assert r.value <= ub_ub2(3, 1)
    for c in r.extremal_classes:
        assert is_reducible(c.matrix) is None


def test_ell_search_budget_error_reports_lower_bound():
    with pytest.raises(SearchBudgetExceeded) as info:
        ell_search(2, 5, max_nodes=200)
    assert info.value.lower_bound is not None


def test_ell_search_contract():
    with pytest.raises(ContractViolation):
        ell_search(1, 2)
    assert ell_search(2, 2).budget == ell_budget(2, 2)


def test_five_columns_more_distinct_rows_than_columns():
    # found by hilbert_basis(universal_matrix(5, 1), 6); frozen here
    M = KMatrix([[0, 1, 1, 1, 0], [0, 1, 1, 1, 1], [1, 0, 0, 1, 1],
                 [1, 0, 1, 0, 1], [1, 1, 0, 0, 1], [1, 1, 1, 1, 0]])
    assert is_level(M) == (True, 4)
    assert len(set(M.rows)) > M.n
    assert is_reducible(M) is None
    assert not subset_reducible(M.rows)
