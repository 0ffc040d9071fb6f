"""Automorphisms of vertex-coloured graphs by individualisation and refinement.

The search follows the usual scheme: refine the colour partition to the
coarsest equitable partition, individualise a vertex of the smallest
non-singleton cell, refine again, and so on down to a discrete partition.
The first leaf is kept; every other leaf whose refinement trace matches the
first path gives a candidate vertex map which is checked edge by edge.

Generators found below a first-path node prune that node's children by
orbit, and the stabiliser chain along the first path gives both the group
order and an exact, duplicate-free enumeration of the whole group.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import SearchTimeout

DEFAULT_CAP = 10**6


class ColoredGraph:
    """Simple undirected graph on ``range(n)`` with a colour per vertex."""

    __slots__ = ("n", "colors", "adj", "edges")

    def __init__(self, colors: Sequence[int], edges: Iterable[tuple[int, int]]):
        self.n = len(colors)
        palette = {c: x + 1 for x, c in enumerate(sorted(set(colors)))}
        self.colors = tuple(palette[c] for c in colors)
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.edges = frozenset((u, v) for u in range(self.n) for v in self.adj[u])

    @property
    def edge_count(self) -> int:
        return len(self.edges) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def is_automorphism(self, p: Sequence[int]) -> bool:
        if sorted(p) != list(range(self.n)):
            return False
        if any(self.colors[v] != self.colors[p[v]] for v in range(self.n)):
            return False
        edges = self.edges
        return all((p[u], p[v]) in edges for u, v in edges)

    def to_text(self) -> str:
        """One vertex per line: ``index colour neighbour...`` (0-based)."""
        lines = [f"graph {self.n} {self.edge_count}"]
        for v in range(self.n):
            lines.append(" ".join(map(str, (v, self.colors[v], *self.adj[v]))))
        return "\n".join(lines) + "\n"


class OrderedPartition:
    """Cells are contiguous runs of ``lab``; a cell is named by its start index."""

    __slots__ = ("lab", "cstart", "cend", "ncells")

    def __init__(self, lab, cstart, cend, ncells):
        self.lab = lab
        self.cstart = cstart
        self.cend = cend
        self.ncells = ncells

    @classmethod
    def from_cells(cls, cells: Sequence[Sequence[int]]) -> OrderedPartition:
        n = sum(len(c) for c in cells)
        lab, cstart, cend = [], [0] * n, [0] * n
        for cell in cells:
            st = len(lab)
            for v in cell:
                cstart[v] = st
                lab.append(v)
            cend[st] = len(lab)
        return cls(lab, cstart, cend, len(cells))

    def copy(self) -> OrderedPartition:
        return OrderedPartition(self.lab[:], self.cstart[:], self.cend[:], self.ncells)

    def cell_starts(self) -> list[int]:
        out, st, n = [], 0, len(self.lab)
        while st < n:
            out.append(st)
            st = self.cend[st]
        return out

    def cells(self) -> list[list[int]]:
        return [self.lab[st : self.cend[st]] for st in self.cell_starts()]

    def is_discrete(self) -> bool:
        return self.ncells == len(self.lab)

    def target_cell(self) -> int:
        """Start of the first non-singleton cell of minimum size."""
        best, best_size = -1, len(self.lab) + 1
        for st in self.cell_starts():
            size = self.cend[st] - st
            if 1 < size < best_size:
                best, best_size = st, size
                if size == 2:
                    break
        return best

    def individualize(self, v: int) -> int:
        """Split ``v`` off the front of its cell in place; return the new singleton's start."""
        st = self.cstart[v]
        en = self.cend[st]
        lab = self.lab
        pos = lab.index(v, st, en)
        lab[st], lab[pos] = lab[pos], lab[st]
        for u in lab[st + 1 : en]:
            self.cstart[u] = st + 1
        self.cend[st] = st + 1
        self.cend[st + 1] = en
        self.ncells += 1
        return st


class _TraceMismatch(Exception):
    pass


def _refine(adj, part: OrderedPartition, queue: list[int], ref_trace=None) -> list:
    """Refine ``part`` in place to the coarsest equitable partition.

    Cells are split by neighbour count into the splitter cell; pieces replace
    their parent in place, ordered by ascending count.  Returns the trace of
    splits; raises :class:`_TraceMismatch` as soon as it diverges from
    ``ref_trace``.
    """
    lab, cstart, cend = part.lab, part.cstart, part.cend
    trace = []
    pending = deque(queue)
    in_queue = set(queue)
    while pending:
        w = pending.popleft()
        in_queue.discard(w)
        cnt: dict[int, int] = {}
        for v in lab[w : cend[w]]:
            for u in adj[v]:
                cnt[u] = cnt.get(u, 0) + 1
        touched = {cstart[u] for u in cnt}
        for st in sorted(touched):
            en = cend[st]
            if en - st == 1:
                continue
            groups: dict[int, list[int]] = {}
            for v in lab[st:en]:
                groups.setdefault(cnt.get(v, 0), []).append(v)
            if len(groups) == 1:
                continue
            keys = sorted(groups)
            record = (st, tuple((k, len(groups[k])) for k in keys))
            if ref_trace is not None and (
                len(trace) >= len(ref_trace) or ref_trace[len(trace)] != record
            ):
                raise _TraceMismatch
            trace.append(record)
            pieces = []
            pos = st
            for k in keys:
                grp = groups[k]
                lab[pos : pos + len(grp)] = grp
                for v in grp:
                    cstart[v] = pos
                cend[pos] = pos + len(grp)
                pieces.append((pos, len(grp)))
                pos += len(grp)
            part.ncells += len(pieces) - 1
            if st in in_queue:
                new = [p for p, _ in pieces if p != st]
            else:
                largest = max(range(len(pieces)), key=lambda x: (pieces[x][1], -x))
                new = [p for x, (p, _) in enumerate(pieces) if x != largest]
            for p in new:
                if p not in in_queue:
                    in_queue.add(p)
                    pending.append(p)
    if ref_trace is not None and len(trace) != len(ref_trace):
        raise _TraceMismatch
    return trace


def color_partition(g: ColoredGraph) -> OrderedPartition:
    cells: dict[int, list[int]] = {}
    for v, c in enumerate(g.colors):
        cells.setdefault(c, []).append(v)
    return OrderedPartition.from_cells([cells[c] for c in sorted(cells)])


def equitable_refinement(g: ColoredGraph, p: OrderedPartition | Sequence[Sequence[int]] | None = None) -> OrderedPartition:
    """Coarsest equitable partition refining ``p`` (default: the colour classes)."""
    if p is None:
        part = color_partition(g)
    elif isinstance(p, OrderedPartition):
        part = p.copy()
    else:
        part = OrderedPartition.from_cells(p)
    _refine(g.adj, part, part.cell_starts())
    return part


@dataclass
class AutomorphismList:
    perms: list[tuple[int, ...]]
    complete: bool
    cap_hit: bool
    order: int
    generators: list[tuple[int, ...]] = field(default_factory=list)
    base: list[int] = field(default_factory=list)
    nodes: int = 0

    def __len__(self) -> int:
        return len(self.perms)


@dataclass
class _Level:
    part: OrderedPartition
    members: list[int]
    chosen: int
    child_trace: list


class _Search:
    def __init__(self, g: ColoredGraph, deadline: float | None):
        self.g = g
        self.adj = g.adj
        self.deadline = deadline
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes & 63 == 0 and time.monotonic() > self.deadline:
            raise SearchTimeout("automorphism search exceeded its deadline")

    def _child(self, part: OrderedPartition, v: int, ref_trace=None):
        child = part.copy()
        st = child.individualize(v)
        trace = _refine(self.adj, child, [st], ref_trace)
        return child, trace

    def first_path(self, root: OrderedPartition) -> tuple[list[_Level], list[int]]:
        path = []
        part = root
        while not part.is_discrete():
            self._tick()
            st = part.target_cell()
            members = part.lab[st : part.cend[st]]
            v = members[0]
            child, trace = self._child(part, v)
            path.append(_Level(part, members, v, trace))
            part = child
        return path, part.lab

    def explore(self, path, depth, part, w, leaf0):
        """Look for a leaf below ``part`` with ``w`` individualised that is equivalent to ``leaf0``."""
        self._tick()
        try:
            child, _ = self._child(part, w, path[depth].child_trace)
        except _TraceMismatch:
            return None
        if child.is_discrete():
            p = [0] * len(leaf0)
            for a, b in zip(leaf0, child.lab):
                p[a] = b
            p = tuple(p)
            return p if self.g.is_automorphism(p) else None
        if depth + 1 >= len(path):
            return None
        st = child.target_cell()
        for u in child.lab[st : child.cend[st]]:
            found = self.explore(path, depth + 1, child, u, leaf0)
            if found is not None:
                return found
        return None


def _orbit_find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _orbit_union(parent, gen):
    for x, y in enumerate(gen):
        a, b = _orbit_find(parent, x), _orbit_find(parent, y)
        if a != b:
            parent[max(a, b)] = min(a, b)


def _compose(p, q):
    # (p o q)(x) = p(q(x))
    return tuple(p[x] for x in q)


def _search_generators(g: ColoredGraph, deadline: float | None):
    s = _Search(g, deadline)
    root = equitable_refinement(g)
    path, leaf0 = s.first_path(root)
    gens: list[tuple[int, ...]] = []
    gen_level: list[int] = []
    parent = list(range(g.n))
    for k in reversed(range(len(path))):
        lvl = path[k]
        failed: list[int] = []
        for w in lvl.members:
            if w == lvl.chosen:
                continue
            rw = _orbit_find(parent, w)
            if rw == _orbit_find(parent, lvl.chosen) or any(rw == _orbit_find(parent, f) for f in failed):
                continue
            found = s.explore(path, k, lvl.part, w, leaf0)
            if found is None:
                failed.append(w)
            else:
                gens.append(found)
                gen_level.append(k)
                _orbit_union(parent, found)
    base = [lvl.chosen for lvl in path]
    return gens, gen_level, base, s.nodes


def _transversals(n, gens, gen_level, base):
    out = []
    for k, b in enumerate(base):
        level_gens = [gn for gn, lv in zip(gens, gen_level) if lv >= k]
        trans = {b: tuple(range(n))}
        queue = deque([b])
        while queue:
            pt = queue.popleft()
            for gn in level_gens:
                q = gn[pt]
                if q not in trans:
                    trans[q] = _compose(gn, trans[pt])
                    queue.append(q)
        out.append([trans[q] for q in sorted(trans)])
    return out


def automorphisms(g: ColoredGraph, cap: int = DEFAULT_CAP, deadline: float | None = None) -> AutomorphismList:
    """All colour-preserving automorphisms of ``g``, up to ``cap`` of them.

    If the group is larger than ``cap`` the first ``cap`` elements are
    returned with ``cap_hit`` set; ``order`` is always the exact group order.
    """
    n = g.n
    if n == 0:
        return AutomorphismList([()], True, False, 1)
    gens, gen_level, base, nodes = _search_generators(g, deadline)
    transversals = _transversals(n, gens, gen_level, base)
    order = 1
    for t in transversals:
        order *= len(t)
    perms: list[tuple[int, ...]] = []
    limit = min(order, cap)

    def walk(level, acc):
        if len(perms) >= limit:
            return
        if level == len(transversals):
            perms.append(acc)
            return
        for u in transversals[level]:
            walk(level + 1, _compose(acc, u))
            if len(perms) >= limit:
                return

    walk(0, tuple(range(n)))
    cap_hit = order > cap
    return AutomorphismList(perms, not cap_hit, cap_hit, order, gens, base, nodes)


def orbits(g: ColoredGraph, deadline: float | None = None) -> list[tuple[int, ...]]:
    """Orbit partition of the automorphism group, cells ordered by least vertex."""
    if g.n == 0:
        return []
    gens, _, _, _ = _search_generators(g, deadline)
    parent = list(range(g.n))
    for gn in gens:
        _orbit_union(parent, gn)
    cells: dict[int, list[int]] = {}
    for v in range(g.n):
        cells.setdefault(_orbit_find(parent, v), []).append(v)
    return sorted((tuple(c) for c in cells.values()), key=lambda c: c[0])
