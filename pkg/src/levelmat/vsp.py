"""Multipartitions of V(n, q) over prime fields, and level families of finite sets.

A subspace is identified by the set of lines (1-dimensional subspaces) it
contains. A nonzero vector lies in a subspace iff its line does, so covering
every nonzero vector exactly ``lam`` times is the same as the line-incidence
matrix being level with column sum ``lam``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from .bounds import floor_sqrt_power
from .constructions import is_prime
from .errors import ContractViolation, ParseError
from .irreducibility import is_reducible
from .level_core import KMatrix, is_level

Vector = Tuple[int, ...]


def _check_field(q: int):
    if not is_prime(q):
        raise ContractViolation(f"q={q} is not prime (prime fields only)")


def normalize_vector(v: Sequence[int], q: int) -> Vector:
    """Scale so the first nonzero coordinate is 1."""
    v = tuple(c % q for c in v)
    lead = next((c for c in v if c), None)
    if lead is None:
        raise ContractViolation("zero vector has no line")
    inv = pow(lead, -1, q)
    return tuple(c * inv % q for c in v)


@lru_cache(maxsize=None)
def line_generators(n: int, q: int) -> Tuple[Vector, ...]:
    """Normalized generators of all ``(q^n - 1)/(q - 1)`` lines, lexicographic."""
    _check_field(q)
    if n < 1:
        raise ContractViolation("n must be positive")
    gens = {normalize_vector(v, q) for v in itertools.product(range(q), repeat=n) if any(v)}
    return tuple(sorted(gens))


@lru_cache(maxsize=None)
def _line_index(n: int, q: int) -> Dict[Vector, int]:
    return {g: i for i, g in enumerate(line_generators(n, q))}


def _rref_mod(vectors: List[Vector], q: int) -> Tuple[Vector, ...]:
    rows = [list(v) for v in vectors]
    n = len(rows[0])
    out = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % q), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [x * inv % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        r += 1
    out = [tuple(row) for row in rows[:r]]
    return tuple(out)


@dataclass(frozen=True)
class Subspace:
    """Nonzero subspace of ``V(n, q)``; equality is by contained lines."""

    q: int
    n: int
    basis: Tuple[Vector, ...]
    line_set: FrozenSet[int]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.q, self.n, self.line_set) == (other.q, other.n, other.line_set)

    def __hash__(self):
        return hash((self.q, self.n, self.line_set))

    def __lt__(self, other):
        return (self.dim, sorted(self.line_set)) < (other.dim, sorted(other.line_set))

    def contains(self, v: Sequence[int]) -> bool:
        if not any(c % self.q for c in v):
            return True
        return _line_index(self.n, self.q)[normalize_vector(v, self.q)] in self.line_set

    def vectors(self) -> List[Vector]:
        """All ``q^dim`` vectors of the subspace."""
        out = set()
        for coeffs in itertools.product(range(self.q), repeat=self.dim):
            out.add(tuple(
                sum(c * b[j] for c, b in zip(coeffs, self.basis)) % self.q for j in range(self.n)
            ))
        return sorted(out)


def span(q: int, vectors: Iterable[Sequence[int]]) -> Subspace:
    """Smallest subspace of ``V(n, q)`` containing ``vectors``."""
    _check_field(q)
    vecs = [tuple(int(c) % q for c in v) for v in vectors]
    if not vecs:
        raise ContractViolation("span of no vectors is the zero subspace")
    n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise ContractViolation("vectors have inconsistent dimensions")
    basis = _rref_mod(vecs, q)
    if not basis:
        raise ContractViolation("span is the zero subspace")
    index = _line_index(n, q)
    sub = Subspace(q, n, basis, frozenset())
    lines = frozenset(index[normalize_vector(v, q)] for v in sub.vectors() if any(v))
    expected = (q ** len(basis) - 1) // (q - 1)
    assert len(lines) == expected
    return Subspace(q, n, basis, lines)


def one_dim_subspaces(n: int, q: int) -> List[Subspace]:
    return [span(q, [g]) for g in line_generators(n, q)]


def whole_space(n: int, q: int) -> Subspace:
    return span(q, [tuple(int(i == j) for j in range(n)) for i in range(n)])


def all_subspaces(n: int, q: int) -> List[Subspace]:
    """Every nonzero subspace of ``V(n, q)``, sorted by dimension then lines."""
    found = set()
    gens = line_generators(n, q)
    for d in range(1, n + 1):
        for combo in itertools.combinations(gens, d):
            s = span(q, combo)
            if s.dim == d:
                found.add(s)
    return sorted(found)


@dataclass(frozen=True)
class Multipartition:
    """Multiset of nonzero subspaces of ``V(n, q)`` (terms repeat for multiplicity)."""

    q: int
    n: int
    terms: Tuple[Subspace, ...]

    def __post_init__(self):
        if not self.terms:
            raise ContractViolation("a multipartition needs at least one term")
        for s in self.terms:
            if (s.q, s.n) != (self.q, self.n):
                raise ContractViolation("terms live in different spaces")

    def __add__(self, other: "Multipartition") -> "Multipartition":
        if (self.q, self.n) != (other.q, other.n):
            raise ContractViolation("cannot add multipartitions of different spaces")
        return Multipartition(self.q, self.n, self.terms + other.terms)

    def canonical(self) -> Tuple:
        return tuple(sorted((s.dim, tuple(sorted(s.line_set))) for s in self.terms))


@dataclass(frozen=True)
class LevelFamily:
    """Multiset of nonempty subsets of a finite ground set."""

    ground: Tuple[Hashable, ...]
    members: Tuple[FrozenSet, ...]

    def __post_init__(self):
        ground = set(self.ground)
        for mem in self.members:
            if not mem:
                raise ContractViolation("members must be nonempty")
            if not mem <= ground:
                raise ContractViolation("member leaves the ground set")


def incidence_matrix(P) -> KMatrix:
    """0/1 matrix with a row per term and a column per line (or ground element)."""
    if isinstance(P, Multipartition):
        t = len(line_generators(P.n, P.q))
        rows = [[int(j in s.line_set) for j in range(t)] for s in P.terms]
    elif isinstance(P, LevelFamily):
        rows = [[int(e in mem) for e in P.ground] for mem in P.members]
    else:
        raise ContractViolation(f"unsupported object {type(P).__name__}")
    return KMatrix(rows, k=1)


def is_lambda_partition(P) -> Optional[int]:
    """Cover multiplicity ``lam > 0`` if every nonzero vector (or element) is covered equally."""
    ok, lam = is_level(incidence_matrix(P))
    return lam if ok and lam > 0 else None


height = is_lambda_partition


def is_irreducible_partition(P):
    """``(True, None)`` if irreducible, else ``(False, (Q1, Q2))`` with ``P = Q1 + Q2``."""
    if is_lambda_partition(P) is None:
        raise ContractViolation("not a lambda-partition")
    B = incidence_matrix(P)
    w = is_reducible(B)
    if w is None:
        return True, None
    inside = sorted(w.subset)
    outside = [i for i in range(B.m) if i not in w.subset]
    if isinstance(P, Multipartition):
        q1 = Multipartition(P.q, P.n, tuple(P.terms[i] for i in inside))
        q2 = Multipartition(P.q, P.n, tuple(P.terms[i] for i in outside))
    else:
        q1 = LevelFamily(P.ground, tuple(P.members[i] for i in inside))
        q2 = LevelFamily(P.ground, tuple(P.members[i] for i in outside))
    return False, (q1, q2)


def enumerate_lambda_partitions(n: int, q: int, lam: int = 1) -> List[Multipartition]:
    """Every ``lam``-partition of ``V(n, q)``, each once, in canonical order.

    Exhaustive: repeatedly take the smallest line covered fewer than ``lam``
    times and branch on every subspace through it that still fits.
    """
    if lam < 1:
        raise ContractViolation("lam must be positive")
    subs = all_subspaces(n, q)
    t = len(line_generators(n, q))
    found = {}

    def rec(cover, chosen):
        short = next((j for j in range(t) if cover[j] < lam), None)
        if short is None:
            P = Multipartition(q, n, tuple(sorted(chosen)))
            found.setdefault(P.canonical(), P)
            return
        for s in subs:
            if short in s.line_set and all(cover[j] < lam for j in s.line_set):
                for j in s.line_set:
                    cover[j] += 1
                chosen.append(s)
                rec(cover, chosen)
                chosen.pop()
                for j in s.line_set:
                    cover[j] -= 1

    rec([0] * t, [])
    return [found[key] for key in sorted(found)]


def family_bound(n: int) -> int:
    """``floor((n+1)^((n+1)/2))``: most members of an irreducible level family on n points."""
    if n < 2:
        raise ContractViolation("family_bound needs n >= 2")
    return floor_sqrt_power(1, n + 1, n + 1)


def line_count(n: int, q: int) -> int:
    return (q ** n - 1) // (q - 1)


def partition_bound(n: int, q: int) -> int:
    """``floor((t+1)^((t+1)/2))`` with ``t`` the number of lines of ``V(n, q)``."""
    _check_field(q)
    if n < 2:
        raise ContractViolation("partition_bound needs n >= 2")
    t = line_count(n, q)
    return floor_sqrt_power(1, t + 1, t + 1)


def partition_bound_closed_form(n: int, q: int) -> int:
    """``floor(q^((n-1) q^(n-1) / 2))``; reported only, it differs from :func:`partition_bound`."""
    _check_field(q)
    e = (n - 1) * q ** (n - 1)
    return floor_sqrt_power(1, q, e)


# -- partition file format ---------------------------------------------------

def parse_partition(text: str, q: int) -> Multipartition:
    """Parse ``[<c>x ]v1;v2;...`` lines, each ``v`` a comma-separated coordinate list."""
    terms = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        count = 1
        head, sep, rest = line.partition("x ")
        if sep and head.strip().isdigit():
            count = int(head)
            line = rest.strip()
        try:
            vecs = [tuple(int(c) for c in part.split(",")) for part in line.split(";") if part.strip()]
        except ValueError:
            raise ParseError(f"line {lineno}: bad coordinates in {raw!r}") from None
        if not vecs:
            raise ParseError(f"line {lineno}: empty term")
        if n is None:
            n = len(vecs[0])
        if any(len(v) != n for v in vecs):
            raise ParseError(f"line {lineno}: inconsistent vector length")
        try:
            s = span(q, vecs)
        except ContractViolation as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        terms.extend([s] * count)
    if not terms:
        raise ParseError("no terms found")
    return Multipartition(q, n, tuple(terms))


def format_partition(P: Multipartition) -> str:
    lines = []
    for s in P.terms:
        lines.append(";".join(",".join(str(c) for c in v) for v in s.basis))
    return "\n".join(lines) + "\n"
