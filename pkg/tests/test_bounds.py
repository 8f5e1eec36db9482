import itertools
import math
import random

import mpmath
import pytest

from levelmat.bounds import (
    ah_row_count,
    bound_report,
    doubling_exponent,
    ell_budget,
    floor_sqrt_power,
    hadamard_bound,
    lb_exponent,
    ub_lambert,
    ub_lg,
    ub_main,
    ub_polytope,
    ub_ub2,
)
from levelmat.errors import ContractViolation
from levelmat.exact_linalg import det


def test_ub_main_examples():
    assert ub_main(3, 1) == 8
    assert ub_main(3, 2) == 64
    assert ub_main(4, 1) == 55
    with pytest.raises(ContractViolation):
        ub_main(2, 3)


def test_ub_lambert_examples():
    assert [ub_lambert(k) for k in (2, 3, 5)] == [3, 5, 9]
    with pytest.raises(ContractViolation):
        ub_lambert(1)


def test_ub_ub2_examples():
    for k in range(1, 8):
        assert ub_ub2(2, k) == 2 * k - 1
    assert ub_ub2(3, 2) == 63
    assert ub_ub2(4, 1) == 127


def test_doubling_exponent_recurrence():
    assert doubling_exponent(2) == 1
    for n in range(2, 12):
        assert doubling_exponent(n + 1) == 2 * doubling_exponent(n) + 1


def test_ub_lg_examples():
    assert ub_lg(2, 2) == 5
    assert ub_lg(3, 1) == 4
    assert ub_lg(3, 2) == 16


def test_hadamard_bound_examples():
    assert hadamard_bound(3, 1) == 2
    assert hadamard_bound(2, 1) == 1
    assert hadamard_bound(3, 2) == 16


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hadamard_bound_dominates_binary_determinants(n):
    best = max(
        abs(det([bits[i * n:(i + 1) * n] for i in range(n)]))
        for bits in itertools.product((0, 1), repeat=n * n)
    )
    assert best <= hadamard_bound(n, 1)
    if n in (2, 3):
        assert best == hadamard_bound(n, 1)


def test_lb_exponent_examples():
    assert lb_exponent(7, 1e-12) == pytest.approx(40.1, abs=0.05)
    assert lb_exponent(2, 0.5) == pytest.approx(1.80, abs=0.005)
    vals = [lb_exponent(n, 0.3) for n in range(2, 40)]
    assert vals == sorted(vals)
    with pytest.raises(ContractViolation):
        lb_exponent(3, 1.0)


def test_ah_row_count_examples_and_parity():
    assert ah_row_count(2, 2) == 2
    assert ah_row_count(3, 1) == 3
    assert ah_row_count(2, 1) == 1
    for n in range(2, 11):
        for k in range(1, 11):
            assert ((k + 1) ** n - k ** n - 1) % 2 == 0


def test_strict_and_inclusive_agree_at_three_columns():
    for k in range(1, 10):
        assert ub_ub2(3, k) == ub_main(3, k) - 1


def test_flooring_matches_high_precision():
    rng = random.Random(2024)
    mpmath.mp.dps = 200
    for _ in range(1000):
        n = rng.randint(2, 14)
        k = rng.randint(1, 12)
        exact = [ub_lg(n, k), hadamard_bound(n, k), ub_polytope(n, k)]
        root = mpmath.power(n + 1, mpmath.mpf(n + 1) / 2)
        ref = [
            mpmath.floor(mpmath.power(mpmath.mpf(k) / 2, n - 1) * root),
            mpmath.floor(mpmath.power(mpmath.mpf(k) / 2, n) * root),
            mpmath.floor(mpmath.mpf(k) ** (n - 1) * mpmath.power(2, -n) * root
                         * ((k + 1) ** n - k ** n + 1)),
        ]
        assert exact == [int(r) for r in ref]


def test_floor_sqrt_power_perfect_squares():
    assert floor_sqrt_power(1, 4, 2) == 4
    assert floor_sqrt_power(1, 5, 5) == math.isqrt(5 ** 5)
    assert floor_sqrt_power(1, 3, 3) == 5


def test_ell_budget():
    assert ell_budget(2, 3) == 5
    assert ell_budget(2, 1) == ub_polytope(2, 1) == 5
    assert ell_budget(3, 1) == 7


def test_bound_report():
    rep = bound_report(3, 2)
    assert rep.ub_main == 64 and rep.ub_ub2 == 63 and rep.ub_lg == 16
    assert any("r_n" in f for f in rep.formulas_used)
    assert bound_report(2, 3).ub_main == 5
    assert set(rep.as_dict()) >= {"ub_main", "ub_ub2", "ub_lg", "lb_value"}


def test_ub_ub2_size_guard():
    assert ub_ub2(20, 1) == 2 ** (2 ** 19 - 1) - 1
    with pytest.raises(ContractViolation, match="too large"):
        ub_ub2(40, 1)
    rep = bound_report(40, 1)
    assert rep.ub_ub2 is None and any("omitted" in f for f in rep.formulas_used)
    assert ell_budget(40, 1) == ub_main(40, 1)
