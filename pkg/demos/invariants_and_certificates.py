"""
Entry invariants and when they settle the group outright
=========================================================
"""

from plratop import (
    column_vectors,
    compute_entry_invariant,
    from_grid,
    line_invariants,
    reduce,
    triviality_certificate,
)

# 5x5 Latin square; the square invariant splits its entries into 3 classes
sq = from_grid(5, 5, 5, [
    [1, 2, 3, 4, 5],
    [2, 1, 4, 5, 3],
    [3, 4, 5, 1, 2],
    [4, 5, 2, 3, 1],
    [5, 3, 1, 2, 4],
])
print(sq)
for kind in ("sei", "square", "combined"):
    table = compute_entry_invariant(sq, kind)
    print(f"\n{kind}: {table.class_count} classes")
    print(table.format_matrix(sq))

lines = line_invariants(sq, compute_entry_invariant(sq, "square"))
print("\nrow partition   ", [tuple(i + 1 for i in c) for c in lines.row_partition])
print("column partition", [tuple(j + 1 for j in c) for c in lines.col_partition])
print("symbol partition", [tuple(k + 1 for k in c) for c in lines.sym_partition])

# A sparse rectangle.  Certificates only make sense after reduction.
L = from_grid(4, 5, 6, [
    [1, None, 2, None, None],
    [None, 3, None, None, None],
    [2, None, None, 4, None],
    [None, None, None, None, None],
])
R = reduce(L).reduced
print("\nreduced:")
print(R)
for kind in ("none", "sei", "square"):
    cert = triviality_certificate(R, compute_entry_invariant(R, kind))
    print(f"{kind:>7}: certificate {cert or '-'}")

cv = column_vectors(R, compute_entry_invariant(R, "sei"))
for j, (vec, sup) in enumerate(zip(cv.vecs, cv.supports)):
    print(f"column {j + 1}: classes {vec}  support {sorted(i + 1 for i in sup)}")
