import itertools
from pathlib import Path

import pytest

from plratop.cli import parse_plr_file
from plratop.plr import PartialLatinRectangle

DATA = Path(__file__).parent / "data"

ACCEPTANCE_LINES: list[str] = []


def load(name: str) -> PartialLatinRectangle:
    return parse_plr_file((DATA / name).read_text())


@pytest.fixture(scope="session")
def worked():
    return load("worked.plr")


@pytest.fixture(scope="session")
def square5():
    return load("square5.plr")


@pytest.fixture
def latin2():
    return parse_plr_file("PLR 2 2 2\n1 2\n2 1\n")


def all_plrs(r, s, n):
    """Every PLR(r, s, n), by filling cells in row-major order."""
    cells = [(i, j) for i in range(r) for j in range(s)]
    grid = [[None] * s for _ in range(r)]

    def rec(pos):
        if pos == len(cells):
            yield PartialLatinRectangle(r, s, n, grid)
            return
        i, j = cells[pos]
        grid[i][j] = None
        yield from rec(pos + 1)
        for k in range(n):
            if k in grid[i] or any(grid[a][j] == k for a in range(r)):
                continue
            grid[i][j] = k
            yield from rec(pos + 1)
            grid[i][j] = None

    yield from rec(0)


def naive_autotopisms(L):
    """Every (alpha, beta, gamma) in S_r x S_s x S_n that fixes L, checked entry by entry.

    Deliberately shares nothing with the library's searches: no reduction,
    no forced symbol map.
    """
    out = []
    cells = L.cells
    for a in itertools.permutations(range(L.r)):
        for b in itertools.permutations(range(L.s)):
            for c in itertools.permutations(range(L.n)):
                if all(cells[a[i]][b[j]] == c[k] for i, j, k in L.entries):
                    out.append((a, b, c))
    return out


def brute_automorphisms(g):
    return sorted(p for p in itertools.permutations(range(g.n)) if g.is_automorphism(p))


def record_acceptance(number: int, passed: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def _cycle(n):
    return [(v, (v + 1) % n) for v in range(n)]


def graph_corpus():
    """Named small graphs, all with at most 8 vertices."""
    from plratop.autengine import ColoredGraph

    cube = [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)]
    return {
        "path3": ColoredGraph([0] * 3, [(0, 1), (1, 2)]),
        "cycle4": ColoredGraph([0] * 4, _cycle(4)),
        "cycle8": ColoredGraph([0] * 8, _cycle(8)),
        "k4": ColoredGraph([0] * 4, itertools.combinations(range(4), 2)),
        "k4_two_colours": ColoredGraph([1, 1, 2, 2], itertools.combinations(range(4), 2)),
        "star3": ColoredGraph([0] * 4, [(0, 1), (0, 2), (0, 3)]),
        "star3_centre_coloured": ColoredGraph([1, 0, 0, 0], [(0, 1), (0, 2), (0, 3)]),
        "k33": ColoredGraph([0] * 6, [(u, v) for u in range(3) for v in range(3, 6)]),
        "two_triangles": ColoredGraph([0] * 6, _cycle(3) + [(u + 3, v + 3) for u, v in _cycle(3)]),
        "empty5": ColoredGraph([0] * 5, []),
        "cube": ColoredGraph([0] * 8, cube),
        "cube_one_red": ColoredGraph([1] + [0] * 7, cube),
        "prism3": ColoredGraph([0] * 6, _cycle(3) + [(u + 3, v + 3) for u, v in _cycle(3)] + [(v, v + 3) for v in range(3)]),
        "asym6": ColoredGraph([0] * 6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (4, 5), (1, 4)]),
        "single": ColoredGraph([0], []),
        "wheel7": ColoredGraph([0] * 8, _cycle(7) + [(7, v) for v in range(7)]),
    }


def random_graph(rng, max_vertices=7):
    from plratop.autengine import ColoredGraph

    n = rng.randint(1, max_vertices)
    p = rng.random()
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    colors = [rng.randrange(rng.randint(1, 3)) for _ in range(n)]
    return ColoredGraph(colors, edges)


def orbits_from_group(n, perms):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for p in perms:
        for v in range(n):
            a, b = find(v), find(p[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    cells = {}
    for v in range(n):
        cells.setdefault(find(v), []).append(v)
    return sorted(tuple(c) for c in cells.values())
