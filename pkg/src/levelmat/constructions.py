"""Explicit matrix families: identity, universal rows, prime blocks, A(H), extremals."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .bounds import ah_row_count
from .errors import ContractViolation
from .exact_linalg import rank
from .level_core import CanonicalForm, KMatrix, is_level


def identity(n: int) -> KMatrix:
    if n < 1:
        raise ContractViolation("identity needs n >= 1")
    return KMatrix([[int(i == j) for j in range(n)] for i in range(n)], k=1)


def all_ones_off_diagonal(r: int) -> KMatrix:
    """``J_r``: zeros on the diagonal, ones elsewhere."""
    return KMatrix([[int(i != j) for j in range(r)] for i in range(r)], k=1)


def universal_matrix(n: int, k: int) -> KMatrix:
    """``U(n, k)``: every nonzero row of ``{0..k}^n`` in lexicographic order."""
    if n < 1 or k < 1:
        raise ContractViolation("universal_matrix needs n >= 1, k >= 1")
    rows = [r for r in itertools.product(range(k + 1), repeat=n) if any(r)]
    return KMatrix(rows, k=k)


def primes_up_to(x: int) -> List[int]:
    """Sieve of Eratosthenes."""
    if x < 2:
        return []
    sieve = bytearray([1]) * (x + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(x) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(sieve[p * p::p]))
    return [i for i, flag in enumerate(sieve) if flag]


def is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, math.isqrt(q) + 1))


@dataclass(frozen=True)
class PrimeBlockSpec:
    x: int
    primes: Tuple[int, ...]
    block_sizes: Tuple[int, ...]
    repetitions: Tuple[int, ...]
    n: int
    P: int
    m: int

    @property
    def t(self) -> int:
        return len(self.primes)


def prime_block(x: int) -> Tuple[PrimeBlockSpec, KMatrix]:
    """Block diagonal ``J_{p+1}`` over primes ``p <= x``, rows of block ``p`` repeated ``P/p`` times.

    The result is level with column sum ``P`` (the primorial) and has
    ``sum_p (P/p)(p+1)`` rows.
    """
    if x < 2:
        raise ContractViolation("prime_block needs x >= 2")
    primes = tuple(primes_up_to(x))
    sizes = tuple(p + 1 for p in primes)
    n = sum(sizes)
    P = math.prod(primes)
    reps = tuple(P // p for p in primes)
    rows = []
    offset = 0
    for size, rep in zip(sizes, reps):
        J = all_ones_off_diagonal(size)
        for jrow in J.rows:
            row = [0] * offset + list(jrow) + [0] * (n - offset - size)
            rows.extend([row] * rep)
        offset += size
    m = sum(rep * size for rep, size in zip(reps, sizes))
    spec = PrimeBlockSpec(x, primes, sizes, reps, n, P, m)
    return spec, KMatrix(rows, k=1)


def row_normalize(H: KMatrix) -> KMatrix:
    """Subtract each row's minimum so every row contains a zero."""
    if not is_level(H)[0]:
        raise ContractViolation("row_normalize expects a level matrix")
    return KMatrix([[v - min(r) for v in r] for r in H.rows], k=H.k)


def row_complement(row: Tuple[int, ...]) -> Tuple[int, ...]:
    t = max(row)
    return tuple(t - v for v in row)


@dataclass(frozen=True)
class AofHSpec:
    source: KMatrix
    result: KMatrix
    expected_m: int

    def multiplicities(self) -> Tuple[int, ...]:
        """How often each row of ``result`` occurs in ``source``."""
        index = {row: i for i, row in enumerate(self.result.rows)}
        v = [0] * self.result.m
        for row in self.source.rows:
            v[index[row]] += 1
        return tuple(v)

    def feasible_point(self) -> Tuple[int, Tuple[Fraction, ...]]:
        """``(r_h, h)`` with ``H = L(A, r_h, h)`` and ``A^T h = 1``."""
        v = self.multiplicities()
        t = sum(row[0] for row in self.source.rows)
        h = tuple(Fraction(c, t) for c in v)
        return t, h


def a_of_h(H: KMatrix) -> AofHSpec:
    """Extend ``H``'s distinct rows to a complement-free row set of full rank.

    Eligible rows contain a zero and are nonzero; from each pair
    ``{R, R^c}`` exactly one is kept, the one in ``H`` if any, otherwise the
    lexicographically smaller.
    """
    from .irreducibility import is_reducible

    ok, _ = is_level(H)
    if not ok:
        raise ContractViolation("H must be level")
    if H.m < 3:
        raise ContractViolation("H must have at least 3 rows")
    bad = [r for r in H.rows if 0 not in r]
    if bad:
        raise ContractViolation(f"condition C1 fails: row {bad[0]} has no zero entry")
    if any(not any(r) for r in H.rows):
        raise ContractViolation("condition C2 fails: H has a zero row")
    distinct = sorted(set(H.rows))
    members = set(distinct)
    for r in distinct:
        if row_complement(r) in members:
            raise ContractViolation(f"condition C3 fails: {r} and its complement are both rows")
    if is_reducible(H) is not None:
        raise ContractViolation("H must be irreducible")
    k, n = H.k, H.n
    chosen = set(distinct)
    for r in itertools.product(range(k + 1), repeat=n):
        if 0 not in r or not any(r):
            continue
        c = row_complement(r)
        if r in chosen or c in chosen:
            continue
        chosen.add(min(r, c))
    rows = sorted(chosen)
    A = KMatrix(rows, k=k)
    expected = ah_row_count(n, k)
    if A.m != expected:
        raise AssertionError(f"A(H) has {A.m} rows, expected {expected}")
    if rank(A.rows) != n:
        raise AssertionError("A(H) is rank deficient")
    return AofHSpec(H, A, expected)


def lambert_extremals(k: int) -> Tuple[CanonicalForm, ...]:
    """Canonical classes of irreducible two-column k-matrices with ``2k - 1`` rows."""
    from .irreducibility import ell_search

    if k < 2:
        raise ContractViolation("lambert_extremals needs k >= 2")
    return ell_search(2, k).extremal_classes
