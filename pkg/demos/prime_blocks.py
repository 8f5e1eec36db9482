"""Block matrices built from primes: long irreducible 0/1 matrices.

Each prime p <= x contributes the (p+1)x(p+1) matrix with zero diagonal and
ones elsewhere, its rows repeated P/p times where P is the product of the
primes. The result is level with column sum P and irreducible.
"""
import time

from levelmat import bound_report, is_level, is_reducible, prime_block

for x in (2, 3, 5):
    spec, A = prime_block(x)
    start = time.perf_counter()
    irreducible = is_reducible(A) is None
    took = time.perf_counter() - start
    rep = bound_report(spec.n, 1)
    print(f"x={x}: primes {spec.primes}  n={spec.n}  m={A.m}  level sum {is_level(A)[1]}  "
          f"irreducible {irreducible} ({took:.2f}s)  upper bound {rep.ub_main}")

# x=7 gives 21 columns and 1087 rows; only its shape is cheap to check here
spec, A = prime_block(7)
print(f"x=7: n={spec.n}  m={A.m}  level sum {is_level(A)[1]}  rows per column {A.m / A.n:.1f}")
