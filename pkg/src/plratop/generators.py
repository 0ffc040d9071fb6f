"""Random partial Latin rectangles for the two test suites.

Set A adds uniformly random triples, skipping those that clash.  Set B
truncates a random Latin square to r x s and deletes random entries.  Random
Latin squares come from the Jacobson-Matthews chain on 0/1 incidence cubes.

Every function takes a seed or a :class:`random.Random` so that results are
reproducible bit for bit.
"""

from __future__ import annotations

import random

from .errors import BadParameters
from .plr import PartialLatinRectangle


def make_rng(seed: int | random.Random | None) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def gen_set_a(r: int, s: int, n: int, x: int, rng: int | random.Random | None = None) -> PartialLatinRectangle:
    """Attempt ``x`` uniform additions from [r] x [s] x [n]; clashing attempts do nothing."""
    if x < 0:
        raise BadParameters("attempt count must be nonnegative")
    rng = make_rng(rng)
    grid: list[list[int | None]] = [[None] * s for _ in range(r)]
    row_syms = [set() for _ in range(r)]
    col_syms = [set() for _ in range(s)]
    for _ in range(x):
        i, j, k = rng.randrange(r), rng.randrange(s), rng.randrange(n)
        if grid[i][j] is not None or k in row_syms[i] or k in col_syms[j]:
            continue
        grid[i][j] = k
        row_syms[i].add(k)
        col_syms[j].add(k)
    return PartialLatinRectangle(r, s, n, grid)


class IncidenceCube:
    """State of the Jacobson-Matthews chain.

    ``cube[(i * n + j) * n + k]`` is the 0/1 (or a single -1) value at row
    ``i``, column ``j``, symbol ``k``.  ``improper`` holds the -1 cell or None.
    """

    def __init__(self, n: int):
        self.n = n
        self.cube = [0] * (n**3)
        for i in range(n):
            for j in range(n):
                self.cube[self._idx(i, j, (i + j) % n)] = 1
        self.improper: tuple[int, int, int] | None = None

    def _idx(self, i, j, k):
        return (i * self.n + j) * self.n + k

    def _ones(self, base: int, stride: int) -> list[int]:
        cube = self.cube
        return [t for t in range(self.n) if cube[base + t * stride] == 1]

    def step(self, rng: random.Random) -> None:
        n, cube = self.n, self.cube
        n2 = n * n
        rand = rng.random
        if self.improper is None:
            # a uniform zero of a proper cube: any cell, any symbol but its own
            i, j = int(rand() * n), int(rand() * n)
            k2 = self._ones(i * n2 + j * n, 1)[0]
            k = int(rand() * (n - 1))
            if k >= k2:
                k += 1
            i2 = self._ones(j * n + k, n2)[0]
            j2 = self._ones(i * n2 + k, n)[0]
        else:
            i, j, k = self.improper
            pick = lambda xs: xs[int(rand() * len(xs))]
            k2 = pick(self._ones(i * n2 + j * n, 1))
            i2 = pick(self._ones(j * n + k, n2))
            j2 = pick(self._ones(i * n2 + k, n))
        a, b, c, d = i * n2, i2 * n2, j * n, j2 * n
        cube[a + c + k] += 1
        cube[a + d + k2] += 1
        cube[b + c + k2] += 1
        cube[b + d + k] += 1
        cube[a + c + k2] -= 1
        cube[a + d + k] -= 1
        cube[b + c + k] -= 1
        cube[b + d + k2] -= 1
        self.improper = (i2, j2, k2) if cube[b + d + k2] < 0 else None

    def line_sums_ok(self) -> bool:
        n, cube, idx = self.n, self.cube, self._idx
        for a in range(n):
            for b in range(n):
                if sum(cube[idx(a, b, t)] for t in range(n)) != 1:
                    return False
                if sum(cube[idx(a, t, b)] for t in range(n)) != 1:
                    return False
                if sum(cube[idx(t, a, b)] for t in range(n)) != 1:
                    return False
        return True

    def to_grid(self) -> list[list[int]]:
        if self.improper is not None:
            raise ValueError("cube is improper")
        n = self.n
        grid = [[-1] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.cube[self._idx(i, j, k)] == 1:
                        grid[i][j] = k
        return grid


def default_moves(n: int) -> int:
    return 10 * n**3


def jacobson_matthews(n: int, moves: int | None = None, rng: int | random.Random | None = None) -> PartialLatinRectangle:
    """Latin square of order ``n`` after ``moves`` chain steps from the cyclic square.

    If the chain is improper once the budget is spent it keeps stepping until
    it is proper again.
    """
    if n < 1:
        raise BadParameters("order must be positive")
    rng = make_rng(rng)
    moves = default_moves(n) if moves is None else moves
    cube = IncidenceCube(n)
    done = 0
    if n == 1:
        moves = 0
    while done < moves or cube.improper is not None:
        cube.step(rng)
        done += 1
    return PartialLatinRectangle(n, n, n, cube.to_grid())


def gen_set_b(
    r: int, s: int, n: int, x: int, rng: int | random.Random | None = None, moves: int | None = None
) -> PartialLatinRectangle:
    """Random Latin square of order ``n`` cut to r x s, thinned to exactly ``x`` entries."""
    if n < max(r, s) or not 0 <= x <= r * s:
        raise BadParameters(f"need n >= max(r, s) and 0 <= x <= rs, got r={r} s={s} n={n} x={x}")
    rng = make_rng(rng)
    square = jacobson_matthews(n, moves, rng)
    cells = [(i, j) for i in range(r) for j in range(s)]
    rng.shuffle(cells)
    grid: list[list[int | None]] = [list(square.cells[i][:s]) for i in range(r)]
    for i, j in cells[: r * s - x]:
        grid[i][j] = None
    return PartialLatinRectangle(r, s, n, grid)
