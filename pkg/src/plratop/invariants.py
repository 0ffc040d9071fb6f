"""Entry invariants and the row/column/symbol invariants they induce.

Every invariant here is unchanged by symbol permutations, so the class ids
can also be compared across columns when pruning column maps.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .plr import Entry, PartialLatinRectangle

# bit positions of the five 2x2 submatrix properties
SQ_X_UNDEF = 1
SQ_Y_UNDEF = 2
SQ_Z_UNDEF = 4
SQ_K_EQ_Z = 8
SQ_X_EQ_Y = 16


class InvariantKind(str, Enum):
    NONE = "none"
    SEI = "sei"
    SQUARE = "square"
    COMBINED = "combined"


@dataclass(frozen=True)
class InvariantTable:
    kind: InvariantKind
    entries: tuple[Entry, ...]
    values: tuple
    class_ids: tuple[int, ...]
    class_count: int

    def class_grid(self, L: PartialLatinRectangle) -> list[list[int | None]]:
        grid: list[list[int | None]] = [[None] * L.s for _ in range(L.r)]
        for (i, j, _), c in zip(self.entries, self.class_ids):
            grid[i][j] = c
        return grid

    def format_matrix(self, L: PartialLatinRectangle) -> str:
        grid = self.class_grid(L)
        width = len(str(self.class_count))
        return "\n".join(
            " ".join(("." if c is None else str(c)).rjust(width) for c in row) for row in grid
        )


def strong_entry_invariants(L: PartialLatinRectangle) -> list[tuple[int, int, int]]:
    """(entries in row, entries in column, occurrences of symbol) per entry."""
    row_count = Counter(i for i, _, _ in L.entries)
    col_count = Counter(j for _, j, _ in L.entries)
    sym_count = Counter(k for _, _, k in L.entries)
    return [(row_count[i], col_count[j], sym_count[k]) for i, j, k in L.entries]


def square_invariants_naive(L: PartialLatinRectangle) -> list[tuple[int, ...]]:
    """Count 2x2 submatrices through each entry by their 5-bit property mask.

    For entry ``(i, j, k)`` and every ``i' != i``, ``j' != j`` the submatrix has
    ``x = L[i, j']``, ``y = L[i', j]`` and ``z = L[i', j']``.
    """
    cells = L.cells
    out = []
    for i, j, k in L.entries:
        counts = [0] * 32
        for i2 in range(L.r):
            if i2 == i:
                continue
            y = cells[i2][j]
            for j2 in range(L.s):
                if j2 == j:
                    continue
                x = cells[i][j2]
                z = cells[i2][j2]
                mask = 0
                if x is None:
                    mask |= SQ_X_UNDEF
                if y is None:
                    mask |= SQ_Y_UNDEF
                if z is None:
                    mask |= SQ_Z_UNDEF
                elif z == k:
                    mask |= SQ_K_EQ_Z
                if x is not None and x == y:
                    mask |= SQ_X_EQ_Y
                counts[mask] += 1
        out.append(tuple(counts))
    return out


def square_invariants(L: PartialLatinRectangle) -> list[tuple[int, ...]]:
    """Vectorised form of :func:`square_invariants_naive` over all entries at once."""
    if not L.entries:
        return []
    G = np.array([[-1 if k is None else k for k in row] for row in L.cells], dtype=np.int64)
    ent = np.array(L.entries, dtype=np.int64)
    I, J, K = ent[:, 0], ent[:, 1], ent[:, 2]
    X = G[I, :][:, None, :]  # x depends on j'
    Y = G[:, J].T[:, :, None]  # y depends on i'
    Z = G[None, :, :]
    mask = (
        (X < 0) * SQ_X_UNDEF
        + (Y < 0) * SQ_Y_UNDEF
        + (Z < 0) * SQ_Z_UNDEF
        + (Z == K[:, None, None]) * SQ_K_EQ_Z
        + ((X == Y) & (X >= 0)) * SQ_X_EQ_Y
    )
    keep = np.ones((len(I), L.r, L.s), dtype=bool)
    keep[np.arange(len(I)), I, :] = False
    keep[np.arange(len(I)), :, J] = False
    mask = np.where(keep, mask, 32)
    counts = np.zeros((len(I), 33), dtype=np.int64)
    np.add.at(counts, (np.arange(len(I))[:, None], mask.reshape(len(I), -1)), 1)
    return [tuple(int(c) for c in row[:32]) for row in counts]


def _relabel(values) -> tuple[tuple[int, ...], int]:
    ids: dict = {}
    out = []
    for v in values:
        if v not in ids:
            ids[v] = len(ids) + 1
        out.append(ids[v])
    return tuple(out), len(ids)


def compute_entry_invariant(L: PartialLatinRectangle, kind: InvariantKind | str) -> InvariantTable:
    """Per-entry invariant values and their dense class ids.

    Class ids are assigned by first occurrence in row-major order.  ``NONE``
    gives every entry the same class.
    """
    kind = InvariantKind(kind)
    if kind is InvariantKind.NONE:
        values = [()] * len(L.entries)
    elif kind is InvariantKind.SEI:
        values = strong_entry_invariants(L)
    elif kind is InvariantKind.SQUARE:
        values = square_invariants(L)
    else:
        values = list(zip(strong_entry_invariants(L), square_invariants(L)))
    ids, count = _relabel(values)
    return InvariantTable(kind, L.entries, tuple(values), ids, count)


@dataclass(frozen=True)
class LineInvariants:
    row_multisets: tuple[tuple[int, ...] | None, ...]
    col_multisets: tuple[tuple[int, ...] | None, ...]
    sym_multisets: tuple[tuple[int, ...] | None, ...]
    row_partition: tuple[tuple[int, ...], ...]
    col_partition: tuple[tuple[int, ...], ...]
    sym_partition: tuple[tuple[int, ...], ...]

    def row_class(self) -> list[int]:
        return _cell_index(self.row_partition, len(self.row_multisets))

    def col_class(self) -> list[int]:
        return _cell_index(self.col_partition, len(self.col_multisets))

    def sym_class(self) -> list[int]:
        return _cell_index(self.sym_partition, len(self.sym_multisets))


def _cell_index(partition, size) -> list[int]:
    out = [-1] * size
    for c, cell in enumerate(partition):
        for x in cell:
            out[x] = c
    return out


def _partition(multisets) -> tuple[tuple[int, ...], ...]:
    cells: dict = {}
    for x, m in enumerate(multisets):
        if m is not None:
            cells.setdefault(m, []).append(x)
    return tuple(tuple(c) for c in cells.values())


def line_invariants(L: PartialLatinRectangle, table: InvariantTable) -> LineInvariants:
    """Multisets of entry classes per row, column and symbol.

    Empty lines and unused symbols get ``None`` and sit in no partition cell.
    """
    rows: list[list[int]] = [[] for _ in range(L.r)]
    cols: list[list[int]] = [[] for _ in range(L.s)]
    syms: list[list[int]] = [[] for _ in range(L.n)]
    for (i, j, k), c in zip(table.entries, table.class_ids):
        rows[i].append(c)
        cols[j].append(c)
        syms[k].append(c)
    rm, cm, sm = (tuple(tuple(sorted(x)) if x else None for x in lines) for lines in (rows, cols, syms))
    return LineInvariants(rm, cm, sm, _partition(rm), _partition(cm), _partition(sm))


def triviality_certificate(
    L: PartialLatinRectangle, table: InvariantTable, lines: LineInvariants | None = None
) -> str | None:
    """Return ``"a"`` or ``"b"`` if the invariant proves Atop(L) trivial, else None.

    ``L`` must already be reduced: empty lines would share a multiset and
    block condition (b), while unused symbols would be silently ignored.
    """
    if len(set(table.class_ids)) == len(table.class_ids):
        return "a"
    if lines is None:
        lines = line_invariants(L, table)
    discrete = sum(
        all(len(cell) == 1 for cell in part)
        for part in (lines.row_partition, lines.col_partition, lines.sym_partition)
    )
    return "b" if discrete >= 2 else None


@dataclass(frozen=True)
class ColumnVectors:
    vecs: tuple[tuple[int | None, ...], ...]
    supports: tuple[frozenset[int], ...]


def column_vectors(L: PartialLatinRectangle, table: InvariantTable | None = None) -> ColumnVectors:
    """Class id of each cell, column by column; ``table=None`` uses fill only."""
    vecs = [[None] * L.r for _ in range(L.s)]
    if table is None:
        for i, j, _ in L.entries:
            vecs[j][i] = 1
    else:
        for (i, j, _), c in zip(table.entries, table.class_ids):
            vecs[j][i] = c
    supports = tuple(frozenset(i for i, c in enumerate(v) if c is not None) for v in vecs)
    return ColumnVectors(tuple(tuple(v) for v in vecs), supports)
