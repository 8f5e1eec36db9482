"""Vertices of {x >= 0 : A^T x = 1} and exact convex decompositions.

A is the matrix of all nonzero rows in {0,1,2}^2. Every vertex is a basic
feasible solution, and any feasible point splits into at most dim+1 of them.
"""
from fractions import Fraction

from levelmat import caratheodory_decompose, enumerate_bfs, polytope_dimension, universal_matrix

A = universal_matrix(2, 2)
print("rows of A:", A.rows)

bfs = enumerate_bfs(A)
d = polytope_dimension(bfs)
print(f"{len(bfs)} vertices, dimension {d}")
for b in bfs:
    print("  rows", [i + 1 for i in b.index_set], "point", [str(v) for v in b.point], "r", b.r)

# the barycenter of all vertices is feasible; decompose it again
h = tuple(sum(b.point[i] for b in bfs) / len(bfs) for i in range(A.m))
dec = caratheodory_decompose(A, h)
print("barycenter", [str(v) for v in h])
for lam, b in dec.terms:
    print(f"  {lam} x {[str(v) for v in b.point]}")
print("terms", len(dec.terms), "<=", d + 1, "and exact:", dec.recombine() == h)
print("weights sum to", sum(lam for lam, _ in dec.terms) == Fraction(1))
