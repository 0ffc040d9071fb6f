"""
A worked example, start to finish
==================================

Load a 6x9 partial Latin rectangle on 7 symbols, check an autotopism by
hand, then let a few methods compute the whole group.
"""

from plratop import Isotopism, apply_isotopism, compute_atop, is_autotopism, reduce
from plratop.cli import format_group, parse_plr_file

TEXT = """\
PLR 6 9 7
1 . 2 . . . 3 . .
2 . . 4 1 5 6 . 7
. 1 5 3 . 4 . . .
. 2 . 5 . 3 . 4 .
4 3 . . 5 . 1 . 2
. . . . 2 . . 1 3
"""

L = parse_plr_file(TEXT)
print(L)
print(len(L.entries), "entries")

# cycles are written 1-based, like the file format
theta = Isotopism.from_cycles("(1 6)(3 4)", "(1 5)(3 8)(4 6)(7 9)", "(1 2)(4 5)(6 7)", 6, 9, 7)
print("\nimage of L under theta:")
print(apply_isotopism(L, theta))
print("theta is an autotopism:", is_autotopism(L, theta))

# nothing to strip here, every line and symbol is used
red = reduce(L)
print("\nreduced shape", red.reduced.shape, "multipliers", red.row_factor, red.col_factor, red.sym_factor)

for method in ("alphabeta", "alphabeta-cv+sei", "entrywise+square", "rook-expanded+square"):
    g = compute_atop(L, method)
    print(f"\n{method}: order {g.total_order}")

print()
print(format_group(compute_atop(L, "plr-expanded+square")))
