"""Graph encodings of a partial Latin rectangle and decoding of their automorphisms.

All builders expect a reduced PLR (no empty lines, every symbol used).
Vertices are numbered entries first, in row-major order, followed by the
row/column/symbol or shadow vertices in index order.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

from .autengine import ColoredGraph
from .invariants import InvariantTable, line_invariants
from .perm import Permutation
from .plr import Entry, Isotopism, PartialLatinRectangle, complete_symbol_permutation, is_autotopism


class GraphKind(str, Enum):
    MMM = "mmm"
    BIPARTITE = "bipartite"
    PLR_FLAT = "plr-flat"
    PLR_EXPANDED = "plr-expanded"
    ROOK_FLAT = "rook-flat"
    ROOK_EXPANDED = "rook-expanded"


class Tag(NamedTuple):
    """What a vertex stands for: ``kind`` is one of
    ``entry``, ``row``, ``col``, ``sym``, ``row-shadow``, ``col-shadow``, ``sym-shadow``;
    ``ref`` is an :class:`Entry` for entries and shadows, else a line index."""

    kind: str
    ref: object


@dataclass(frozen=True)
class EncodedGraph:
    kind: GraphKind
    graph: ColoredGraph
    tags: tuple[Tag, ...]


def incidence_matrix(L: PartialLatinRectangle) -> list[list[int]]:
    return [[0 if k is None else 1 for k in row] for row in L.cells]


def plr_graph_relations(L: PartialLatinRectangle) -> dict[str, set[tuple[int, int]]]:
    """Same-row, same-column and same-symbol pairs of entry indices (i < j)."""
    rel = {"row": set(), "col": set(), "sym": set()}
    E = L.entries
    for a in range(len(E)):
        for b in range(a + 1, len(E)):
            if E[a].row == E[b].row:
                rel["row"].add((a, b))
            if E[a].col == E[b].col:
                rel["col"].add((a, b))
            if E[a].sym == E[b].sym:
                rel["sym"].add((a, b))
    return rel


def _groups(E: Sequence[Entry], attr: str) -> dict[int, list[int]]:
    out: dict[int, list[int]] = {}
    for x, e in enumerate(E):
        out.setdefault(getattr(e, attr), []).append(x)
    return out


def _clique_edges(groups: dict[int, list[int]], offset: int = 0):
    for members in groups.values():
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                yield members[a] + offset, members[b] + offset


def build_graph(
    L: PartialLatinRectangle, kind: GraphKind | str, coloring: InvariantTable | None = None
) -> EncodedGraph:
    """Encode ``L`` as a vertex-coloured graph of the given kind.

    ``coloring`` splits the entry vertices by invariant class.  The bipartite
    graph has no entry vertices, so there the induced row and column
    partitions colour the row and column vertices instead.
    """
    kind = GraphKind(kind)
    E = L.entries
    m = len(E)
    entry_colors = list(coloring.class_ids) if coloring is not None else [1] * m
    top = max(entry_colors, default=0)
    tags = [Tag("entry", e) for e in E]
    edges: list[tuple[int, int]] = []

    if kind is GraphKind.MMM:
        colors = entry_colors + [top + 1] * L.r + [top + 2] * L.s + [top + 3] * L.n
        tags += [Tag("row", i) for i in range(L.r)]
        tags += [Tag("col", j) for j in range(L.s)]
        tags += [Tag("sym", k) for k in range(L.n)]
        for x, (i, j, k) in enumerate(E):
            edges += [(x, m + i), (x, m + L.r + j), (x, m + L.r + L.s + k)]

    elif kind is GraphKind.BIPARTITE:
        if coloring is not None:
            lines = line_invariants(L, coloring)
            row_cls, col_cls = lines.row_class(), lines.col_class()
            colors = [c + 1 for c in row_cls] + [len(lines.row_partition) + c + 1 for c in col_cls]
        else:
            colors = [1] * L.r + [2] * L.s
        tags = [Tag("row", i) for i in range(L.r)] + [Tag("col", j) for j in range(L.s)]
        edges = [(i, L.r + j) for i, j, _ in E]

    elif kind in (GraphKind.PLR_FLAT, GraphKind.ROOK_FLAT):
        colors = entry_colors
        attrs = ("row", "col", "sym") if kind is GraphKind.PLR_FLAT else ("row", "col")
        seen = set()
        for attr in attrs:
            for ab in _clique_edges(_groups(E, attr)):
                if ab not in seen:
                    seen.add(ab)
                    edges.append(ab)

    elif kind is GraphKind.PLR_EXPANDED:
        colors = entry_colors + [top + 1] * m + [top + 2] * m + [top + 3] * m
        for shadow in ("row-shadow", "col-shadow", "sym-shadow"):
            tags += [Tag(shadow, e) for e in E]
        for x in range(m):
            edges += [(x, m + x), (x, 2 * m + x), (x, 3 * m + x)]
        for block, attr in ((1, "row"), (2, "col"), (3, "sym")):
            edges += _clique_edges(_groups(E, attr), block * m)

    else:  # ROOK_EXPANDED
        colors = entry_colors + [top + 1] * m + [top + 2] * m + [top + 3] * L.n
        tags += [Tag("row-shadow", e) for e in E] + [Tag("col-shadow", e) for e in E]
        tags += [Tag("sym", k) for k in range(L.n)]
        for x, e in enumerate(E):
            edges += [(x, m + x), (x, 2 * m + x), (m + x, 3 * m + e.sym), (2 * m + x, 3 * m + e.sym)]
        edges += _clique_edges(_groups(E, "row"), m)
        edges += _clique_edges(_groups(E, "col"), 2 * m)

    return EncodedGraph(kind, ColoredGraph(colors, edges), tuple(tags))


def _isotopism_from_entry_map(L: PartialLatinRectangle, image: Sequence[int]) -> Isotopism | None:
    """Read (alpha, beta, gamma) off a permutation of entry indices, or None on a clash."""
    E = L.entries
    maps = [[-1] * L.r, [-1] * L.s, [-1] * L.n]
    inverse = [[-1] * L.r, [-1] * L.s, [-1] * L.n]
    for x, y in enumerate(image):
        for fwd, inv, a, b in zip(maps, inverse, E[x], E[y]):
            if fwd[a] == -1 and inv[b] == -1:
                fwd[a], inv[b] = b, a
            elif fwd[a] != b or inv[b] != a:
                return None
    if any(-1 in fwd for fwd in maps):
        return None
    return Isotopism(*(Permutation(fwd) for fwd in maps))


@dataclass
class DecodeResult:
    autotopisms: list[Isotopism]
    rejected: int


def decode_automorphisms(
    L: PartialLatinRectangle, enc: EncodedGraph, autos: Sequence[Sequence[int]]
) -> DecodeResult:
    """Turn graph automorphisms into autotopisms of ``L``, dropping those that are not."""
    kind = enc.kind
    m = len(L.entries)
    found: dict[tuple, Isotopism] = {}
    rejected = 0
    for p in autos:
        t: Isotopism | None
        if kind is GraphKind.MMM:
            off = m
            alpha = Permutation(p[off + i] - off for i in range(L.r))
            off += L.r
            beta = Permutation(p[off + j] - off for j in range(L.s))
            off += L.s
            gamma = Permutation(p[off + k] - off for k in range(L.n))
            t = Isotopism(alpha, beta, gamma)
        elif kind is GraphKind.BIPARTITE:
            alpha = Permutation(p[i] for i in range(L.r))
            beta = Permutation(p[L.r + j] - L.r for j in range(L.s))
            comp = complete_symbol_permutation(L, alpha, beta)
            t = Isotopism(alpha, beta, comp.gamma(L.n)) if comp.ok else None
        elif kind is GraphKind.ROOK_EXPANDED:
            t = _isotopism_from_entry_map(L, p[:m])
            if t is not None:
                off = 3 * m
                gamma = Permutation(p[off + k] - off for k in range(L.n))
                if gamma != t.gamma:
                    t = None
        else:
            t = _isotopism_from_entry_map(L, p[:m])
        if t is None or not is_autotopism(L, t):
            rejected += 1
            continue
        found.setdefault(t.key, t)
    return DecodeResult([found[k] for k in sorted(found)], rejected)
