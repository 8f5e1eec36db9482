"""Largest irreducible k-matrices with two columns.

Runs the exhaustive search for k = 1..5 and prints every extremal class.
"""
import time

import numpy as np

from levelmat import ell_search, is_reducible

for k in range(1, 6):
    start = time.perf_counter()
    res = ell_search(2, k)
    took = time.perf_counter() - start
    print(f"ell(2,{k}) = {res.value}   budget {res.budget}   "
          f"{len(res.extremal_classes)} classes   {took:.2f}s")

# the k = 3 classes, as numpy arrays; column sums show each one is level
for c in ell_search(2, 3).extremal_classes:
    M = c.matrix.to_array()
    print(M.T, "column sums", M.sum(axis=0))
    assert is_reducible(c.matrix) is None

# the classes differ in their common column sum, so no permutation maps one to another
sums = sorted(int(c.matrix.to_array().sum(axis=0)[0]) for c in ell_search(2, 3).extremal_classes)
print("common sums of the k=3 classes:", sums)
print("distinct:", len(set(sums)) == len(sums), np.diff(sums))
