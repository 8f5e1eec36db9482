"""k-matrices, levelness, complements, row stacking and canonical forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .errors import ContractViolation, DimensionError, ParseError

Row = Tuple[int, ...]

# Brute force over n! column orders; 9! is already ~3.6e5 sorts.
MAX_CANONICAL_COLUMNS = 9


@dataclass(frozen=True, init=False, repr=False)
class KMatrix:
    """A dense matrix with entries in ``{0, ..., k}``.

    ``k`` is a declared bound and may exceed the largest entry. When omitted
    it defaults to the largest entry.
    """

    rows: Tuple[Row, ...]
    k: int = field(default=None)

    def __init__(self, rows, k: Optional[int] = None):
        if isinstance(rows, np.ndarray):
            rows = rows.tolist()
        data = tuple(tuple(int(v) for v in row) for row in rows)
        if not data:
            raise DimensionError("a k-matrix needs at least one row")
        n = len(data[0])
        if n == 0:
            raise DimensionError("a k-matrix needs at least one column")
        if any(len(r) != n for r in data):
            raise DimensionError("rows have unequal lengths")
        top = max(max(r) for r in data)
        if min(min(r) for r in data) < 0:
            raise ContractViolation("k-matrix entries must be nonnegative")
        if k is None:
            k = top
        if k < top:
            raise ContractViolation(f"entry {top} exceeds declared bound k={k}")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "k", int(k))

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    @property
    def max_entry(self) -> int:
        return max(max(r) for r in self.rows)

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def __iter__(self):
        return iter(self.rows)

    def __len__(self):
        return self.m

    def __getitem__(self, i):
        return self.rows[i]

    def __repr__(self):
        return f"KMatrix({[list(r) for r in self.rows]}, k={self.k})"


@dataclass(frozen=True)
class Leveler:
    """Nonnegative integer row multiplicities ``x`` with ``A^T x = alpha * 1``."""

    x: Tuple[int, ...]
    alpha: int

    @property
    def row_count(self) -> int:
        return sum(self.x)


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical representative of a matrix under row and column permutations.

    ``column_order[j]`` is the source column placed at position ``j``;
    ``row_order[i]`` is the source row placed at position ``i``. Equality and
    hashing use only the canonical entries, not the declared bound.
    """

    matrix: KMatrix = field(compare=False)
    column_order: Tuple[int, ...] = field(compare=False, default=())
    row_order: Tuple[int, ...] = field(compare=False, default=())
    key: Tuple[Row, ...] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "key", self.matrix.rows)


def column_sums(M: KMatrix) -> Tuple[int, ...]:
    return tuple(sum(col) for col in zip(*M.rows))


def is_level(M: KMatrix) -> Tuple[bool, Optional[int]]:
    """``(True, t)`` when every column sums to ``t``, else ``(False, None)``."""
    sums = column_sums(M)
    if all(s == sums[0] for s in sums):
        return True, sums[0]
    return False, None


def complement(M: KMatrix) -> KMatrix:
    """Replace every entry ``b`` by ``t - b`` where ``t`` is the largest entry."""
    t = M.max_entry
    return KMatrix([[t - b for b in row] for row in M.rows], k=t)


def stack(A: KMatrix, r: int, x: Sequence) -> KMatrix:
    """``L(A, r, x)``: ``r * x_i`` copies of row ``A_i``, in row order."""
    if r <= 0:
        raise ContractViolation("stack multiplier must be positive")
    if len(x) != A.m:
        raise DimensionError(f"vector of length {len(x)} for a {A.m}-row matrix")
    counts = []
    for v in x:
        c = Fraction(v) * r
        if c.denominator != 1:
            raise ContractViolation(f"r*x has non-integral entry {c}")
        if c < 0:
            raise ContractViolation("r*x has a negative entry")
        counts.append(int(c))
    rows = [row for row, c in zip(A.rows, counts) for _ in range(c)]
    if not rows:
        raise ContractViolation("stack would be empty")
    return KMatrix(rows, k=A.k)


def leveler_check(A: KMatrix, x: Sequence[int]) -> Optional[int]:
    """Level value ``alpha`` if ``A^T x = alpha * 1``, otherwise ``None``."""
    if len(x) != A.m:
        raise DimensionError(f"vector of length {len(x)} for a {A.m}-row matrix")
    if any(v < 0 for v in x):
        raise ContractViolation("levelers are nonnegative")
    sums = [sum(c * row[j] for c, row in zip(x, A.rows)) for j in range(A.n)]
    return sums[0] if all(s == sums[0] for s in sums) else None


@lru_cache(maxsize=4096)
def _canonical(rows: Tuple[Row, ...]):
    n = len(rows[0])
    if n > MAX_CANONICAL_COLUMNS:
        raise ContractViolation(
            f"canonical form is brute force and limited to {MAX_CANONICAL_COLUMNS} columns"
        )
    best = None
    best_perm = None
    for perm in itertools.permutations(range(n)):
        cand = tuple(sorted(tuple(r[j] for j in perm) for r in rows))
        if best is None or cand < best:
            best, best_perm = cand, perm
    permuted = [tuple(r[j] for j in best_perm) for r in rows]
    row_order = tuple(sorted(range(len(rows)), key=lambda i: (permuted[i], i)))
    return best, best_perm, row_order


def canonical_form(M: KMatrix) -> CanonicalForm:
    """Lexicographically least row-sorted matrix over all column permutations."""
    best, perm, row_order = _canonical(M.rows)
    return CanonicalForm(KMatrix(best, k=M.k), tuple(perm), row_order)


def permute(M: KMatrix, row_order: Iterable[int] = None, column_order: Iterable[int] = None) -> KMatrix:
    rows = M.rows if row_order is None else [M.rows[i] for i in row_order]
    if column_order is not None:
        cols = list(column_order)
        rows = [[r[j] for j in cols] for r in rows]
    return KMatrix(rows, k=M.k)


# -- text format -------------------------------------------------------------

def parse_matrix(text: str) -> KMatrix:
    """Parse the whitespace matrix format.

    Lines starting with ``#`` are comments; an optional ``k=<int>`` line sets
    the declared bound; every other nonblank line is one row.
    """
    rows = []
    k = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("k="):
            try:
                k = int(line[2:])
            except ValueError:
                raise ParseError(f"line {lineno}: bad header {line!r}") from None
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer entry in {line!r}") from None
        if any(v < 0 for v in row):
            raise ParseError(f"line {lineno}: negative entry")
        rows.append(row)
    if not rows:
        raise ParseError("no matrix rows found")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("rows have unequal lengths")
    try:
        return KMatrix(rows, k=k)
    except ContractViolation as exc:
        raise ParseError(str(exc)) from None


def format_matrix(M: KMatrix, header: bool = True) -> str:
    lines = [f"k={M.k}"] if header else []
    lines.extend(" ".join(str(v) for v in row) for row in M.rows)
    return "\n".join(lines) + "\n"
