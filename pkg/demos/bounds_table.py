"""Row-count bounds for irreducible k-matrices, evaluated exactly.

Every bound with a square root is floored with integer arithmetic only.
"""
import math

from levelmat import bound_report

print(f"{'n':>2} {'k':>2} {'ub_main':>14} {'ub_ub2':>22} {'ub_lg':>10} {'ah_rows':>8}")
for n in range(2, 7):
    for k in (1, 2, 3):
        r = bound_report(n, k)
        print(f"{n:>2} {k:>2} {r.ub_main:>14} {r.ub_ub2:>22} {r.ub_lg:>10} {r.ah_rows:>8}")

# 0/1 matrices: the lower bound exp(0.9 sqrt(n ln n)) against the upper bound,
# both on a log scale. The gap widens quickly.
for n in (5, 10, 20, 40):
    r = bound_report(n, 1, eps=0.1)
    print(f"n={n:>2}: log lower {math.log(r.lb_value):8.2f}   log upper {math.log(r.ub_main):8.2f}")
