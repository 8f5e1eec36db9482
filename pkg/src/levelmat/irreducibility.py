"""Reducibility of level matrices, irreducible levelers and the search for l(n, k).

A row subset is level exactly when its column sums agree, i.e. when its
*difference vectors* ``(a_1 - a_n, ..., a_{n-1} - a_n)`` sum to zero. Irreducible
levelers are therefore the minimal zero-sum multisets of difference vectors,
and that is how :func:`hilbert_basis` enumerates them.
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import ContractViolation, SearchBudgetExceeded
from .level_core import CanonicalForm, KMatrix, Leveler, canonical_form, is_level, leveler_check, stack

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReducibilityWitness:
    """Rows ``subset`` (0-based) form a proper level submatrix with column sum ``s``."""

    subset: FrozenSet[int]
    s: int


@dataclass(frozen=True)
class HilbertBasis:
    generators: Tuple[Leveler, ...]
    budget: int

    @property
    def max_row_count(self) -> int:
        return max((g.row_count for g in self.generators), default=0)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


@dataclass(frozen=True)
class EllResult:
    n: int
    k: int
    value: int
    extremal_classes: Tuple[CanonicalForm, ...]
    budget: int
    generator_count: int


# -- reducibility -------------------------------------------------------------

def _column_components(rows: Sequence[Tuple[int, ...]], n: int) -> List[List[int]]:
    """Group columns that share a row's support (union-find)."""
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for row in rows:
        supp = [j for j, v in enumerate(row) if v]
        for j in supp[1:]:
            ra, rb = find(supp[0]), find(j)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups = defaultdict(list)
    for j in range(n):
        groups[find(j)].append(j)
    return [groups[r] for r in sorted(groups)]


def _level_values(rows: List[Tuple[int, ...]], row_ids: List[int]):
    """Subset-sum DP over one column block.

    Returns ``{s: subset}`` for every level value ``s`` reached by a nonempty
    subset of ``rows``; the subset stored is the first one discovered.
    """
    n = len(rows[0])
    origin = (0,) * n
    remaining = [sum(col) for col in zip(*rows)]
    # state -> (previous state, row position); kept whole for reconstruction
    pred: Dict[Tuple[int, ...], Optional[Tuple]] = {origin: None}
    active = [origin]
    found: Dict[int, Tuple[int, ...]] = {}
    for pos, row in enumerate(rows):
        remaining = [r - v for r, v in zip(remaining, row)]
        grown = []
        for state in active:
            nxt = tuple(a + b for a, b in zip(state, row))
            if nxt in pred:
                continue
            pred[nxt] = (state, pos)
            if nxt[0] not in found and all(v == nxt[0] for v in nxt):
                found[nxt[0]] = nxt
            grown.append(nxt)
        # drop states that no choice of later rows can level out
        active = [
            st for st in active + grown
            if max(st) <= min(a + r for a, r in zip(st, remaining))
        ]
    out = {}
    for s, state in found.items():
        subset = []
        cur = state
        while pred[cur] is not None:
            prev, pos = pred[cur]
            subset.append(row_ids[pos])
            cur = prev
        out[s] = tuple(sorted(subset))
    return out


def is_reducible(M: KMatrix) -> Optional[ReducibilityWitness]:
    """A proper level row subset of the level matrix ``M``, or ``None``.

    Columns are split into blocks that no row straddles; within each block a
    pruned subset-sum DP collects every reachable level value. ``M`` is
    reducible exactly when some value ``0 < s < t`` is reachable in every
    block at once.
    """
    ok, t = is_level(M)
    if not ok:
        raise ContractViolation("is_reducible needs a level matrix")
    if M.m == 1:
        return None
    zero_rows = [i for i, r in enumerate(M.rows) if not any(r)]
    if zero_rows:
        return ReducibilityWitness(frozenset([zero_rows[0]]), 0)
    per_block = []
    for cols in _column_components(M.rows, M.n):
        ids = [i for i, r in enumerate(M.rows) if any(r[j] for j in cols)]
        sub = [tuple(M.rows[i][j] for j in cols) for i in ids]
        per_block.append(_level_values(sub, ids))
    common = set.intersection(*(set(b) for b in per_block))
    candidates = sorted(s for s in common if 0 < s < t)
    if not candidates:
        return None
    s = candidates[0]
    subset = frozenset(i for b in per_block for i in b[s])
    return ReducibilityWitness(subset, s)


def is_irreducible_matrix(M: KMatrix) -> bool:
    return is_reducible(M) is None


def decompose_into_irreducibles(M: KMatrix) -> List[KMatrix]:
    """Split ``M`` into irreducible level blocks by repeated witness splitting."""
    ok, _ = is_level(M)
    if not ok:
        raise ContractViolation("decompose needs a level matrix")
    w = is_reducible(M)
    if w is None:
        return [M]
    inside = [M.rows[i] for i in sorted(w.subset)]
    outside = [r for i, r in enumerate(M.rows) if i not in w.subset]
    return (decompose_into_irreducibles(KMatrix(inside, k=M.k))
            + decompose_into_irreducibles(KMatrix(outside, k=M.k)))


def is_irreducible_leveler(A: KMatrix, x: Sequence[int]) -> bool:
    """True when no leveler ``y`` of ``A`` satisfies ``0 < y < x``."""
    if leveler_check(A, x) is None:
        raise ContractViolation("x is not a leveler of A")
    if not any(x):
        return False
    return is_reducible(stack(A, 1, x)) is None


# -- Hilbert basis --------------------------------------------------------------

def _diff(row):
    last = row[-1]
    return tuple(v - last for v in row[:-1])


def _minimal_zero_sum(vectors, budget, max_nodes):
    """Minimal zero-sum multisets over ``vectors`` with at most ``budget`` terms.

    Multisets are grown in nondecreasing index order while they stay
    zero-sum free; a zero-sum-free ``S`` plus one element ``v`` with
    ``sum(S) + v == 0`` is always minimal. Yields index-count tuples.

    The subset sums of the current multiset live in one big-integer bitset:
    a vector ``s`` maps to bit ``base + sum_j s_j W^j``, so adding ``v`` to
    every subset sum is a single shift.
    """
    p = len(vectors)
    dim = len(vectors[0]) if vectors else 0
    # max positive / negative step per coordinate among vectors[i:]
    up = [[0] * dim for _ in range(p + 1)]
    down = [[0] * dim for _ in range(p + 1)]
    for i in range(p - 1, -1, -1):
        for j in range(dim):
            up[i][j] = max(up[i + 1][j], vectors[i][j])
            down[i][j] = max(down[i + 1][j], -vectors[i][j])
    reach = budget * max((abs(c) for v in vectors for c in v), default=0)
    width = 2 * reach + 1
    base = sum(reach * width ** j for j in range(dim))
    offsets = [sum(c * width ** j for j, c in enumerate(v)) for v in vectors]
    nodes = 0
    counts = [0] * p

    def feasible(total, start, room):
        for j in range(dim):
            t = total[j]
            if t > 0 and t > room * down[start][j]:
                return False
            if t < 0 and -t > room * up[start][j]:
                return False
        return True

    def rec(start, size, total, sums):
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise SearchBudgetExceeded(f"node budget {max_nodes} exhausted")
        for i in range(start, p):
            v = vectors[i]
            nt = tuple(a + b for a, b in zip(total, v))
            counts[i] += 1
            if not any(nt):
                yield tuple(counts)
            elif size + 1 < budget and feasible(nt, i, budget - size - 1):
                off = offsets[i]
                if not (sums >> (base - off)) & 1:  # no subset sums to -v
                    shifted = sums << off if off >= 0 else sums >> -off
                    yield from rec(i, size + 1, nt, sums | shifted | (1 << (base + off)))
            counts[i] -= 1

    yield from rec(0, 0, (0,) * dim, 0)


def hilbert_basis(A: KMatrix, budget: int, max_nodes: int = 20_000_000) -> HilbertBasis:
    """All irreducible levelers ``x`` of ``A`` with ``sum(x) <= budget``.

    With a valid row bound this is the Hilbert basis of the leveler cone.
    Generators come out sorted by row count, then lexicographically by ``x``.
    """
    if budget < 1:
        raise ContractViolation("row budget must be at least 1")
    groups: Dict[Tuple[int, ...], List[int]] = defaultdict(list)
    for i, row in enumerate(A.rows):
        groups[_diff(row)].append(i)
    zero = (0,) * (A.n - 1)
    gens = []
    for i in groups.get(zero, []):
        x = [0] * A.m
        x[i] = 1
        gens.append(Leveler(tuple(x), A.rows[i][0]))
    vectors = sorted(v for v in groups if v != zero)
    try:
        for counts in _minimal_zero_sum(vectors, budget, max_nodes):
            parts = [(vectors[j], c) for j, c in enumerate(counts) if c]
            # every choice of concrete rows with these difference vectors
            pools = [list(combinations_with_replacement(groups[v], c)) for v, c in parts]
            for choice in itertools.product(*pools):
                x = [0] * A.m
                for combo in choice:
                    for i in combo:
                        x[i] += 1
                gens.append(Leveler(tuple(x), leveler_check(A, x)))
    except SearchBudgetExceeded as exc:
        best = max((g.row_count for g in gens), default=0)
        raise SearchBudgetExceeded(
            f"{exc}; largest irreducible leveler found so far has {best} rows", lower_bound=best
        ) from None
    gens.sort(key=lambda g: (g.row_count, g.x))
    return HilbertBasis(tuple(gens), budget)


# -- l(n, k) ---------------------------------------------------------------------

def ell_search(n: int, k: int, budget: Optional[int] = None, max_nodes: int = 20_000_000) -> EllResult:
    """Largest row count of an irreducible k-matrix with ``n`` columns.

    Every such matrix stacks rows of ``U(n, k)``, so the answer is the largest
    generator of the Hilbert basis of ``U(n, k)``'s leveler cone. ``budget``
    defaults to the tightest proven row bound (see :func:`levelmat.bounds.ell_budget`).
    If ``max_nodes`` runs out, :class:`SearchBudgetExceeded` is raised with
    ``lower_bound`` set to the largest generator seen before stopping.
    """
    from .bounds import ell_budget
    from .constructions import universal_matrix

    if n < 2 or k < 1:
        raise ContractViolation("ell_search needs n >= 2 and k >= 1")
    if budget is None:
        budget = ell_budget(n, k)
    U = universal_matrix(n, k)
    basis = hilbert_basis(U, budget, max_nodes=max_nodes)
    value = basis.max_row_count
    classes = {}
    for g in basis:
        if g.row_count == value:
            cf = canonical_form(stack(U, 1, g.x))
            classes.setdefault(cf.key, cf)
    log.debug("ell(%d,%d)=%d from %d generators", n, k, value, len(basis))
    extremal = tuple(classes[key] for key in sorted(classes))
    return EllResult(n, k, value, extremal, budget, len(basis))
