"""Upper and lower bounds on l(n, k), evaluated exactly.

Every bound of the shape ``Q * (n+1)^((n+1)/2)`` with rational ``Q`` is
floored through an integer square root, so no rounding error can leak into a
search budget. Only :func:`lb_exponent` returns a float, and nothing consumes
it except display code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .errors import ContractViolation


def floor_sqrt_power(coeff: Fraction, base: int, exponent: int) -> int:
    """``floor(coeff * base^(exponent/2))`` for ``coeff >= 0``, exactly."""
    coeff = Fraction(coeff)
    if coeff < 0:
        raise ContractViolation("coefficient must be nonnegative")
    num, den = coeff.numerator, coeff.denominator
    # floor(sqrt(num^2 * base^e) / den) == floor(isqrt(num^2 * base^e) / den)
    return math.isqrt(num * num * base ** exponent) // den


def hadamard_bound(n: int, k: int) -> int:
    """``floor((k/2)^n (n+1)^((n+1)/2))``, a bound on ``|det|`` of n x n k-matrices."""
    if n < 1 or k < 1:
        raise ContractViolation("hadamard_bound needs n >= 1, k >= 1")
    return floor_sqrt_power(Fraction(k, 2) ** n, n + 1, n + 1)


def ub_lg(n: int, k: int) -> int:
    """Row bound for a stack ``L(A, r_y, y)`` over an invertible n x n k-matrix."""
    if n < 2 or k < 1:
        raise ContractViolation("ub_lg needs n >= 2, k >= 1")
    return floor_sqrt_power(Fraction(k, 2) ** (n - 1), n + 1, n + 1)


def ah_row_count(n: int, k: int) -> int:
    """Rows of the complement-free matrix ``A(H)``: ``((k+1)^n - k^n - 1) / 2``."""
    if n < 2 or k < 1:
        raise ContractViolation("ah_row_count needs n >= 2, k >= 1")
    total = (k + 1) ** n - k ** n - 1
    assert total % 2 == 0
    return total // 2


def ub_polytope(n: int, k: int) -> int:
    """``floor(k^(n-1) 2^-n (n+1)^((n+1)/2) ((k+1)^n - k^n + 1))``.

    Valid for every ``n >= 2`` and ``k >= 1``; it is the n > 3 branch of
    :func:`ub_main`.
    """
    if n < 2 or k < 1:
        raise ContractViolation("ub_polytope needs n >= 2, k >= 1")
    coeff = Fraction(k ** (n - 1) * ((k + 1) ** n - k ** n + 1), 2 ** n)
    return floor_sqrt_power(coeff, n + 1, n + 1)


def ub_main(n: int, k: int) -> int:
    """The headline upper bound: ``(2k)^3`` for n = 3, :func:`ub_polytope` for n > 3."""
    if n < 3:
        raise ContractViolation("ub_main covers n >= 3; use ub_lambert for n = 2")
    if k < 1:
        raise ContractViolation("k must be positive")
    if n == 3:
        return (2 * k) ** 3
    return ub_polytope(n, k)


def ub_lambert(k: int) -> int:
    """Exact value ``l(2, k) = 2k - 1`` for ``k >= 2``."""
    if k < 2:
        raise ContractViolation("the two-column formula needs k >= 2")
    return 2 * k - 1


def doubling_exponent(n: int) -> int:
    """``2^(n-1) - 1``; satisfies ``e(2) = 1`` and ``e(n+1) = 2 e(n) + 1``."""
    return 2 ** (n - 1) - 1


# Largest exact integer (in bits) the doubling bound may produce; past this it
# would take gigabytes and minutes, so callers get a ContractViolation instead.
MAX_EXACT_BITS = 1 << 22


def ub_ub2_bits(n: int, k: int) -> int:
    """Approximate bit length of :func:`ub_ub2` without computing it."""
    return doubling_exponent(n) * (2 * k).bit_length()


def ub_ub2(n: int, k: int) -> int:
    """Inclusive form of the strict bound ``l < (2k)^(2^(n-1) - 1)``."""
    if n < 2 or k < 1:
        raise ContractViolation("ub_ub2 needs n >= 2, k >= 1")
    if ub_ub2_bits(n, k) > MAX_EXACT_BITS:
        raise ContractViolation(f"ub_ub2({n},{k}) has about {ub_ub2_bits(n, k)} bits; too large to evaluate")
    return (2 * k) ** doubling_exponent(n) - 1


def lb_exponent(n: int, eps: float) -> float:
    """``exp((1 - eps) sqrt(n ln n))`` as a float, for display only."""
    if n < 2 or not 0 < eps < 1:
        raise ContractViolation("lb_exponent needs n >= 2 and 0 < eps < 1")
    return math.exp((1 - eps) * math.sqrt(n * math.log(n)))


def ell_budget(n: int, k: int) -> int:
    """Tightest proven row bound used to size exhaustive searches.

    Two columns use the exact value ``2k - 1`` when ``k >= 2``. For ``k = 1``
    the doubling bound claims ``l(2, 1) <= 1``, which the identity matrix
    refutes, so the polytope bound is used instead.
    """
    if n == 2:
        return ub_lambert(k) if k >= 2 else ub_polytope(2, 1)
    if ub_ub2_bits(n, k) > MAX_EXACT_BITS:
        return ub_main(n, k)
    return min(ub_main(n, k), ub_ub2(n, k))


@dataclass(frozen=True)
class BoundReport:
    n: int
    k: int
    ub_main: int
    ub_ub2: Optional[int]
    ub_lg: int
    ub_polytope: int
    hadamard: int
    ah_rows: int
    lb_value: float
    formulas_used: Tuple[str, ...]

    def as_dict(self):
        return {
            "n": self.n, "k": self.k, "ub_main": self.ub_main, "ub_ub2": self.ub_ub2,
            "ub_lg": self.ub_lg, "ub_polytope": self.ub_polytope, "hadamard": self.hadamard,
            "ah_rows": self.ah_rows, "lb_value": self.lb_value,
            "formulas_used": list(self.formulas_used),
        }


def bound_report(n: int, k: int, eps: float = 0.5) -> BoundReport:
    """Every bound for ``(n, k)``; ``ub_main`` is the two-column exact value when n = 2."""
    if n < 2 or k < 1:
        raise ContractViolation("bound_report needs n >= 2, k >= 1")
    labels = []
    if n == 2:
        main = ub_lambert(k) if k >= 2 else ub_polytope(2, k)
        labels.append("l(2,k)=2k-1" if k >= 2 else "polytope bound (k=1)")
    elif n == 3:
        main = ub_main(n, k)
        labels.append("(2k)^3")
    else:
        main = ub_main(n, k)
        labels.append("k^(n-1) 2^-n (n+1)^((n+1)/2) ((k+1)^n-k^n+1)")
    labels.append(f"(2k)^r_n - 1 with r_n = 2^(n-1)-1 = {doubling_exponent(n)}")
    if ub_ub2_bits(n, k) > MAX_EXACT_BITS:
        ub2 = None
        labels.append(f"ub_ub2 omitted: about {ub_ub2_bits(n, k)} bits")
    else:
        ub2 = ub_ub2(n, k)
    labels.append("(k/2)^(n-1) (n+1)^((n+1)/2)")
    return BoundReport(
        n=n, k=k, ub_main=main, ub_ub2=ub2, ub_lg=ub_lg(n, k),
        ub_polytope=ub_polytope(n, k), hadamard=hadamard_bound(n, k),
        ah_rows=ah_row_count(n, k), lb_value=lb_exponent(n, eps),
        formulas_used=tuple(labels),
    )
