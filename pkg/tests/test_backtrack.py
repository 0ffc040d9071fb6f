import itertools
import random
import time

import pytest

from plratop.autengine import orbits
from plratop.backtrack import SearchOptions, alphabeta_atop, brute_force_atop, entrywise_atop
from plratop.errors import CapExceeded, SearchTimeout, TooLargeForOracle
from plratop.generators import gen_set_a, gen_set_b, jacobson_matthews
from plratop.graphs import build_graph
from plratop.invariants import InvariantKind, compute_entry_invariant
from plratop.plr import Isotopism, from_grid, reduce

from conftest import all_plrs, naive_autotopisms

WORKED_AUTO = Isotopism.from_cycles("(1 6)(3 4)", "(1 5)(3 8)(4 6)(7 9)", "(1 2)(4 5)(6 7)", 6, 9, 7)


def orbit_options(R, kind):
    table = None if kind is InvariantKind.NONE else compute_entry_invariant(R, kind)
    cells = orbits(build_graph(R, "bipartite", table).graph)
    rows = [c for c in cells if c[0] < R.r]
    cols = [tuple(v - R.r for v in c) for c in cells if c[0] >= R.r]
    return SearchOptions(invariant=kind, orbit_constraints=(rows, cols))


def solver_variants(R, with_orbits=True):
    """Every backtracking configuration, as (name, callable) pairs; expects a reduced PLR."""
    out = []
    for kind in InvariantKind:
        out.append((f"alphabeta+{kind.value}", lambda L, k=kind: alphabeta_atop(L, SearchOptions(invariant=k))))
        out.append((f"cv+{kind.value}", lambda L, k=kind: alphabeta_atop(L, SearchOptions(invariant=k, use_cv=True))))
        out.append((f"entrywise+{kind.value}", lambda L, k=kind: entrywise_atop(L, SearchOptions(invariant=k))))
        if with_orbits:
            out.append((f"orbits-ab+{kind.value}", lambda L, k=kind: alphabeta_atop(L, orbit_options(L, k))))
            out.append((f"orbits-ew+{kind.value}", lambda L, k=kind: entrywise_atop(L, orbit_options(L, k))))
    return out


def is_group(keys):
    keys = set(keys)
    for (a1, b1, c1), (a2, b2, c2) in itertools.product(keys, repeat=2):
        comp = tuple(tuple(p[q[x]] for x in range(len(q))) for p, q in ((a1, a2), (b1, b2), (c1, c2)))
        if comp not in keys:
            return False
    return True


def latin_squares_of_order_3():
    return [L for L in all_plrs(3, 3, 3) if len(L.entries) == 9]


# ---------------------------------------------------------------- examples

@pytest.mark.parametrize("solver", [alphabeta_atop, entrywise_atop])
def test_worked(solver, worked):
    for kind in InvariantKind:
        g = solver(worked, SearchOptions(invariant=kind))
        assert g.total_order == 2
        assert g.nontrivial() == [WORKED_AUTO]


@pytest.mark.parametrize("solver", [alphabeta_atop, entrywise_atop, brute_force_atop])
def test_latin_2x2(solver, latin2):
    assert solver(latin2).total_order == 4


def test_empty_plr():
    L = from_grid(2, 3, 4, [[None] * 3] * 2)
    for solver in (alphabeta_atop, entrywise_atop, brute_force_atop):
        g = solver(L)
        assert g.total_order == 288
        assert [t.degrees() for t in g.reduced_autotopisms] == [(0, 0, 0)]
    assert brute_force_atop(from_grid(1, 1, 1, [[None]])).total_order == 1


def test_single_entry():
    L = from_grid(1, 1, 1, [[1]])
    assert entrywise_atop(L).total_order == 1


def test_all_order_3_latin_squares_have_order_18():
    squares = latin_squares_of_order_3()
    assert len(squares) == 12
    for L in squares:
        assert brute_force_atop(L).total_order == 18
        assert len(naive_autotopisms(L)) == 18


def test_oracle_refuses_large_inputs():
    L = jacobson_matthews(7, rng=1)
    with pytest.raises(TooLargeForOracle):
        brute_force_atop(L, max_pairs=1000)


# ---------------------------------------------------------------- agreement

def test_exhaustive_up_to_3():
    """All reduced forms of PLRs with r, s, n <= 3 against the oracle."""
    reduced = set()
    for r, s, n in itertools.product(range(1, 4), repeat=3):
        for L in all_plrs(r, s, n):
            reduced.add(reduce(L).reduced)
    assert len(reduced) > 500
    for R in reduced:
        expected = brute_force_atop(R)
        assert is_group(expected.key_set())
        for name, solve in solver_variants(R, with_orbits=False):
            g = solve(R)
            assert g.key_set() == expected.key_set(), (name, R)
            assert g.total_order == expected.total_order


def test_random_444_against_oracle():
    rng = random.Random(444)
    for idx in range(500):
        if idx % 2:
            L = gen_set_a(4, 4, 4, rng.randint(0, 24), rng.getrandbits(64))
        else:
            L = gen_set_b(4, 4, 4, rng.randint(0, 16), rng.getrandbits(64))
        expected = brute_force_atop(L)
        assert alphabeta_atop(L).total_order == entrywise_atop(L).total_order == expected.total_order
        R = reduce(L).reduced
        plain = alphabeta_atop(R).key_set()
        assert plain == expected.key_set()
        for name, solve in solver_variants(R):
            g = solve(R)
            # pruning may only cut dead branches
            assert plain <= g.key_set(), (name, L)
            assert g.key_set() == expected.key_set(), (name, L)


def test_results_are_groups_with_lifts(square5):
    g = alphabeta_atop(square5, SearchOptions(invariant="square", use_cv=True))
    assert is_group(g.key_set())
    L = from_grid(3, 4, 5, [[1, None, 2, None], [None] * 4, [2, None, 1, None]])
    g = entrywise_atop(L, SearchOptions(invariant="sei"))
    assert g.total_order == len(naive_autotopisms(L))
    assert {t.key for t in g.lifted()} <= set(naive_autotopisms(L))


# ---------------------------------------------------------------- limits

def test_cap_exceeded():
    L = latin_squares_of_order_3()[0]
    for solver in (alphabeta_atop, entrywise_atop):
        with pytest.raises(CapExceeded):
            solver(L, SearchOptions(cap=5))


def test_deadline():
    L = jacobson_matthews(7, rng=3)
    with pytest.raises(SearchTimeout):
        alphabeta_atop(L, SearchOptions(deadline=time.monotonic() - 1))
