"""
Random Latin squares from the Jacobson-Matthews chain
======================================================

There are 12 Latin squares of order 3.  A well-mixed chain should hit each
about equally often.
"""

import random
from collections import Counter

from plratop import compute_atop, gen_set_a, gen_set_b, jacobson_matthews

rng = random.Random(2024)
counts = Counter(str(jacobson_matthews(3, 500, rng)) for _ in range(3000))
print(len(counts), "distinct squares")
for sq, c in sorted(counts.items(), key=lambda kv: -kv[1]):
    print(f"{c:5d}  {sq.replace(chr(10), ' / ')}")

# the two benchmark suites
print("\nset A, 10 attempts on 5x6x7:")
print(gen_set_a(5, 6, 7, 10, 1))
print("\nset B, 10 entries kept from a 7x7 square:")
L = gen_set_b(5, 6, 7, 10, 1)
print(L)
print("order of its group:", compute_atop(L, "alphabeta+square").total_order)
