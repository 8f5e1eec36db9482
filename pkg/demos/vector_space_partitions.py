"""Subspace partitions of small vector spaces over prime fields.

A lambda-partition covers every nonzero vector exactly lambda times. Its
term-by-line incidence matrix is level, so reducibility carries over.
"""
from levelmat.vsp import (
    enumerate_lambda_partitions,
    format_partition,
    incidence_matrix,
    is_irreducible_partition,
    partition_bound,
)

for n, q, lam in ((2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 2, 2)):
    parts = enumerate_lambda_partitions(n, q, lam)
    irreducible = sum(is_irreducible_partition(P)[0] for P in parts)
    print(f"V({n},{q}) lambda={lam}: {len(parts)} partitions, {irreducible} irreducible, "
          f"term bound {partition_bound(n, q)}")

# the lambda=2 partition with six lines splits into two copies of all lines
P = enumerate_lambda_partitions(2, 2, 2)[0]
print(incidence_matrix(P).to_array())
ok, (q1, q2) = is_irreducible_partition(P)
print("irreducible:", ok)
print(format_partition(q1), format_partition(q2), sep="--\n")
