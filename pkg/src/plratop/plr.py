"""Partial Latin rectangles, isotopisms and autotopism groups.

Internally every index is 0-based: rows ``range(r)``, columns ``range(s)``
and symbols ``range(n)``.  Grids handed to :func:`from_grid` and returned by
:meth:`PartialLatinRectangle.to_grid` use 1-based symbols with ``None`` for
an empty cell, which is how such arrays are usually written down.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Iterable, NamedTuple, Sequence

from .errors import BadShape, ColClash, DegreeMismatch, RowClash, SymbolOutOfRange
from .perm import Permutation

EMPTY_TOKENS = (None, ".", "·")


class Entry(NamedTuple):
    row: int
    col: int
    sym: int


class PartialLatinRectangle:
    """An r x s array over ``range(n)`` with no symbol repeated in a line.

    Instances are immutable; construct them through :func:`from_grid` or
    :func:`from_entries`.
    """

    __slots__ = ("r", "s", "n", "cells", "entries", "_entry_set")

    def __init__(self, r: int, s: int, n: int, cells: Sequence[Sequence[int | None]]):
        if min(r, s, n) < 0:
            raise BadShape(f"negative dimension in ({r}, {s}, {n})")
        if len(cells) != r or any(len(row) != s for row in cells):
            raise BadShape(f"grid is not {r}x{s}")
        cells = tuple(tuple(row) for row in cells)
        entries = []
        col_seen = [set() for _ in range(s)]
        for i, row in enumerate(cells):
            row_seen = set()
            for j, k in enumerate(row):
                if k is None:
                    continue
                if not (isinstance(k, int) and 0 <= k < n):
                    raise SymbolOutOfRange(f"cell ({i + 1},{j + 1}): symbol {k!r} not in [{n}]")
                if k in row_seen:
                    raise RowClash(f"symbol {k + 1} repeated in row {i + 1}")
                if k in col_seen[j]:
                    raise ColClash(f"symbol {k + 1} repeated in column {j + 1}")
                row_seen.add(k)
                col_seen[j].add(k)
                entries.append(Entry(i, j, k))
        self.r, self.s, self.n = r, s, n
        self.cells = cells
        self.entries = tuple(entries)
        self._entry_set = frozenset(self.entries)

    def __getitem__(self, cell: tuple[int, int]) -> int | None:
        i, j = cell
        return self.cells[i][j]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int, int]:
        return self.r, self.s, self.n

    @property
    def entry_set(self) -> frozenset:
        return self._entry_set

    def is_latin_rectangle(self) -> bool:
        return len(self.entries) == self.r * self.s

    def to_grid(self) -> list[list[int | None]]:
        return [[None if k is None else k + 1 for k in row] for row in self.cells]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PartialLatinRectangle)
            and self.shape == other.shape
            and self.cells == other.cells
        )

    def __hash__(self) -> int:
        return hash((self.shape, self.cells))

    def __repr__(self) -> str:
        return f"<PLR {self.r}x{self.s} on {self.n} symbols, {len(self.entries)} entries>"

    def __str__(self) -> str:
        return "\n".join(
            " ".join("." if k is None else str(k + 1) for k in row) for row in self.cells
        )


def from_grid(r: int, s: int, n: int, cells: Sequence[Sequence]) -> PartialLatinRectangle:
    """Validate a grid of 1-based symbols (``None`` or ``"."`` for empty)."""
    if len(cells) != r or any(len(row) != s for row in cells):
        raise BadShape(f"grid is not {r}x{s}")
    grid = []
    for i, row in enumerate(cells):
        out = []
        for j, tok in enumerate(row):
            if tok in EMPTY_TOKENS:
                out.append(None)
                continue
            k = int(tok)
            if not 1 <= k <= n:
                raise SymbolOutOfRange(f"cell ({i + 1},{j + 1}): symbol {k} not in [{n}]")
            out.append(k - 1)
        grid.append(out)
    return PartialLatinRectangle(r, s, n, grid)


def from_entries(r: int, s: int, n: int, entries: Iterable[tuple[int, int, int]]) -> PartialLatinRectangle:
    """Build from 0-based ``(row, col, sym)`` triples."""
    grid: list[list[int | None]] = [[None] * s for _ in range(r)]
    for i, j, k in entries:
        if not (0 <= i < r and 0 <= j < s):
            raise BadShape(f"cell ({i},{j}) outside {r}x{s}")
        if grid[i][j] is not None:
            raise BadShape(f"cell ({i},{j}) filled twice")
        grid[i][j] = k
    return PartialLatinRectangle(r, s, n, grid)


@dataclass(frozen=True, order=True)
class Isotopism:
    alpha: Permutation
    beta: Permutation
    gamma: Permutation

    @classmethod
    def identity(cls, r: int, s: int, n: int) -> Isotopism:
        return cls(Permutation.identity(r), Permutation.identity(s), Permutation.identity(n))

    @classmethod
    def from_cycles(cls, alpha: str, beta: str, gamma: str, r: int, s: int, n: int) -> Isotopism:
        return cls(
            Permutation.from_cycles(alpha, r),
            Permutation.from_cycles(beta, s),
            Permutation.from_cycles(gamma, n),
        )

    @property
    def key(self) -> tuple:
        return self.alpha.image, self.beta.image, self.gamma.image

    def __mul__(self, other: Isotopism) -> Isotopism:
        return Isotopism(self.alpha * other.alpha, self.beta * other.beta, self.gamma * other.gamma)

    def inverse(self) -> Isotopism:
        return Isotopism(self.alpha.inverse(), self.beta.inverse(), self.gamma.inverse())

    def is_identity(self) -> bool:
        return self.alpha.is_identity() and self.beta.is_identity() and self.gamma.is_identity()

    def degrees(self) -> tuple[int, int, int]:
        return self.alpha.degree, self.beta.degree, self.gamma.degree

    def cycle_string(self) -> str:
        return " | ".join(p.cycle_string() for p in (self.alpha, self.beta, self.gamma))


def _check_degrees(L: PartialLatinRectangle, t: Isotopism) -> None:
    if t.degrees() != L.shape:
        raise DegreeMismatch(f"isotopism degrees {t.degrees()} do not match PLR shape {L.shape}")


def apply_isotopism(L: PartialLatinRectangle, t: Isotopism) -> PartialLatinRectangle:
    _check_degrees(L, t)
    a, b, c = t.key
    grid: list[list[int | None]] = [[None] * L.s for _ in range(L.r)]
    for i, j, k in L.entries:
        grid[a[i]][b[j]] = c[k]
    return PartialLatinRectangle(L.r, L.s, L.n, grid)


def is_autotopism(L: PartialLatinRectangle, t: Isotopism) -> bool:
    _check_degrees(L, t)
    a, b, c = t.key
    cells = L.cells
    return all(cells[a[i]][b[j]] == c[k] for i, j, k in L.entries)


@dataclass
class SymbolCompletion:
    """Outcome of forcing the symbol map from a row and column permutation.

    On success ``forced`` maps every used symbol to its forced image and
    ``completion_count`` is the number of ways to extend it to all of
    ``range(n)``.  On failure ``clash`` is ``"undefined"``, ``"forward"`` or
    ``"backward"`` and ``clash_entry`` is the entry where it arose.
    """

    forced: dict[int, int] | None
    completion_count: int = 0
    clash: str | None = None
    clash_entry: Entry | None = None

    @property
    def ok(self) -> bool:
        return self.clash is None

    def __bool__(self) -> bool:
        return self.ok

    def gamma(self, n: int) -> Permutation:
        """Complete the forced map to a permutation, sending unused symbols in order."""
        if not self.ok:
            raise ValueError("no symbol permutation exists")
        image = [-1] * n
        for k, v in self.forced.items():
            image[k] = v
        free_targets = iter(sorted(set(range(n)) - set(self.forced.values())))
        for k in range(n):
            if image[k] < 0:
                image[k] = next(free_targets)
        return Permutation(image)


def complete_symbol_permutation(
    L: PartialLatinRectangle, alpha: Permutation, beta: Permutation
) -> SymbolCompletion:
    if alpha.degree != L.r or beta.degree != L.s:
        raise DegreeMismatch("alpha/beta degrees do not match PLR")
    a, b = alpha.image, beta.image
    cells = L.cells
    fwd: dict[int, int] = {}
    back: dict[int, int] = {}
    for e in L.entries:
        i, j, k = e
        t = cells[a[i]][b[j]]
        if t is None:
            return SymbolCompletion(None, clash="undefined", clash_entry=e)
        prev = fwd.get(k)
        if prev is not None and prev != t:
            return SymbolCompletion(None, clash="forward", clash_entry=e)
        prev = back.get(t)
        if prev is not None and prev != k:
            return SymbolCompletion(None, clash="backward", clash_entry=e)
        fwd[k] = t
        back[t] = k
    return SymbolCompletion(fwd, factorial(L.n - len(fwd)))


@dataclass(frozen=True)
class Reduction:
    """A PLR with empty lines and unused symbols removed.

    ``row_map[i]`` is the original row of reduced row ``i``; likewise for
    columns and symbols.
    """

    original: PartialLatinRectangle
    reduced: PartialLatinRectangle
    row_map: tuple[int, ...]
    col_map: tuple[int, ...]
    sym_map: tuple[int, ...]

    @property
    def row_factor(self) -> int:
        return factorial(self.original.r - self.reduced.r)

    @property
    def col_factor(self) -> int:
        return factorial(self.original.s - self.reduced.s)

    @property
    def sym_factor(self) -> int:
        return factorial(self.original.n - self.reduced.n)

    def lift(self, t: Isotopism) -> Isotopism:
        """Extend a reduced autotopism to the original PLR, fixing dropped lines."""
        o = self.original
        maps = []
        for perm, m, size in ((t.alpha, self.row_map, o.r), (t.beta, self.col_map, o.s), (t.gamma, self.sym_map, o.n)):
            image = list(range(size))
            for x, y in enumerate(perm.image):
                image[m[x]] = m[y]
            maps.append(Permutation(image))
        return Isotopism(*maps)


def reduce(L: PartialLatinRectangle) -> Reduction:
    rows = tuple(i for i in range(L.r) if any(k is not None for k in L.cells[i]))
    cols = tuple(j for j in range(L.s) if any(L.cells[i][j] is not None for i in range(L.r)))
    syms = tuple(sorted({k for _, _, k in L.entries}))
    relabel = {k: x for x, k in enumerate(syms)}
    grid = [[None if L.cells[i][j] is None else relabel[L.cells[i][j]] for j in cols] for i in rows]
    reduced = PartialLatinRectangle(len(rows), len(cols), len(syms), grid)
    return Reduction(L, reduced, rows, cols, syms)


@dataclass(frozen=True)
class AutotopismGroup:
    """Autotopisms of the reduced PLR plus the factorial factors for dropped lines."""

    reduced_autotopisms: tuple[Isotopism, ...]
    row_factor: int = 1
    col_factor: int = 1
    sym_factor: int = 1
    reduction: Reduction | None = field(default=None, compare=False, repr=False)

    @property
    def reduced_order(self) -> int:
        return len(self.reduced_autotopisms)

    @property
    def total_order(self) -> int:
        return self.row_factor * self.col_factor * self.sym_factor * len(self.reduced_autotopisms)

    def key_set(self) -> frozenset:
        return frozenset(t.key for t in self.reduced_autotopisms)

    def lifted(self) -> list[Isotopism]:
        if self.reduction is None:
            return list(self.reduced_autotopisms)
        return [self.reduction.lift(t) for t in self.reduced_autotopisms]

    def nontrivial(self) -> list[Isotopism]:
        return [t for t in self.lifted() if not t.is_identity()]


def make_group(red: Reduction, autotopisms: Iterable[Isotopism]) -> AutotopismGroup:
    unique = {t.key: t for t in autotopisms}
    ordered = tuple(unique[k] for k in sorted(unique))
    return AutotopismGroup(ordered, red.row_factor, red.col_factor, red.sym_factor, red)


def trivial_group(red: Reduction) -> AutotopismGroup:
    R = red.reduced
    return make_group(red, [Isotopism.identity(R.r, R.s, R.n)])
