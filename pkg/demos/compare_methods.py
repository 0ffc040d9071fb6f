"""
Timing every method on a few random rectangles
===============================================

All 44 method/invariant combinations must agree; the timings show how
much the invariants buy on denser inputs.
"""

import time

from plratop import ALL_METHODS, brute_force_atop, compute_atop, gen_set_b

samples = [gen_set_b(4, 4, 5, x, seed) for x, seed in [(4, 1), (8, 2), (12, 3), (16, 4)]]

for L in samples:
    expected = brute_force_atop(L)
    print(f"\n{len(L.entries)} entries, |Atop| = {expected.total_order}")
    rows = []
    for method in ALL_METHODS:
        t0 = time.perf_counter()
        g = compute_atop(L, method, shortcut=False)
        dt = time.perf_counter() - t0
        assert g.key_set() == expected.key_set(), method
        rows.append((dt, str(method)))
    rows.sort()
    for dt, name in rows[:3] + rows[-3:]:
        print(f"  {name:<28} {dt * 1e3:8.2f} ms")
