"""Backtracking searches for the autotopism group.

Every solver reduces its input first, searches the reduced PLR, and puts
the factorial factors for empty lines and unused symbols back on the result.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .errors import CapExceeded, SearchTimeout, TooLargeForOracle
from .invariants import InvariantKind, column_vectors, compute_entry_invariant, line_invariants
from .perm import Permutation
from .plr import (
    AutotopismGroup,
    Isotopism,
    PartialLatinRectangle,
    complete_symbol_permutation,
    is_autotopism,
    make_group,
    reduce,
    trivial_group,
)

ORACLE_MAX_PAIRS = 10**8


@dataclass(frozen=True)
class SearchOptions:
    invariant: InvariantKind = InvariantKind.NONE
    use_cv: bool = False
    # (row partition, column partition) of the reduced PLR, e.g. orbits of the bipartite graph
    orbit_constraints: tuple[Sequence[Sequence[int]], Sequence[Sequence[int]]] | None = None
    cap: int = 10**6
    deadline: float | None = None


def _cell_ids(partition, size) -> list[int]:
    out = [0] * size
    for c, cell in enumerate(partition):
        for x in cell:
            out[x] = c
    return out


class _Context:
    """Per-call search state on the reduced PLR."""

    def __init__(self, R: PartialLatinRectangle, opts: SearchOptions):
        self.R = R
        self.opts = opts
        self.nodes = 0
        kind = InvariantKind(opts.invariant)
        self.table = None if kind is InvariantKind.NONE else compute_entry_invariant(R, kind)
        if self.table is not None:
            lines = line_invariants(R, self.table)
            row_key = lines.row_class()
            col_key = lines.col_class()
            self.sym_key = lines.sym_class()
            self.entry_class = list(self.table.class_ids)
        else:
            row_key, col_key = [0] * R.r, [0] * R.s
            self.sym_key = [0] * R.n
            self.entry_class = [0] * len(R.entries)
        if opts.orbit_constraints is not None:
            row_orbits, col_orbits = opts.orbit_constraints
            ro, co = _cell_ids(row_orbits, R.r), _cell_ids(col_orbits, R.s)
            row_key = list(zip(row_key, ro))
            col_key = list(zip(col_key, co))
        self.row_key, self.col_key = row_key, col_key
        self.allowed_rows = [[a for a in range(R.r) if row_key[a] == row_key[i]] for i in range(R.r)]
        self.allowed_cols = [[b for b in range(R.s) if col_key[b] == col_key[j]] for j in range(R.s)]
        self.found: list[Isotopism] = []

    def tick(self):
        self.nodes += 1
        if self.opts.deadline is not None and self.nodes & 255 == 0 and time.monotonic() > self.opts.deadline:
            raise SearchTimeout("backtracking search exceeded its deadline")

    def record(self, t: Isotopism):
        self.found.append(t)
        if len(self.found) > self.opts.cap:
            raise CapExceeded(f"more than {self.opts.cap} autotopisms")


def alphabeta_atop(L: PartialLatinRectangle, opts: SearchOptions | None = None) -> AutotopismGroup:
    """Decide the row map, then the column map; the symbol map is then forced.

    Rows are tried only against rows with the same line invariant (and orbit,
    if given).  With ``use_cv`` every row decision also narrows the admissible
    images of each column to those whose column vector agrees on the rows
    decided so far.
    """
    opts = opts or SearchOptions()
    red = reduce(L)
    R = red.reduced
    if not R.entries:
        return trivial_group(red)
    ctx = _Context(R, opts)
    r, s, n = R.r, R.s, R.n
    cells = R.cells
    col_entries = [[] for _ in range(s)]
    for i, j, k in R.entries:
        col_entries[j].append((i, k))
    cell_size = [len(ctx.allowed_rows[i]) for i in range(r)]
    row_order = sorted(range(r), key=lambda i: (cell_size[i], i))

    vecs = None
    if opts.use_cv:
        vecs = column_vectors(R, ctx.table).vecs

    alpha = [-1] * r
    used_rows = [False] * r
    beta = [-1] * s
    used_cols = [False] * s
    gamma = [-1] * n
    ginv = [-1] * n

    def beta_search(cands, order, depth):
        ctx.tick()
        if depth == s:
            ctx.record(Isotopism(Permutation(alpha), Permutation(beta), Permutation(gamma)))
            return
        j = order[depth]
        for b in cands[j]:
            if used_cols[b]:
                continue
            # symbol-map clashes for the entries of column j
            changed = []
            ok = True
            for i, k in col_entries[j]:
                t = cells[alpha[i]][b]
                if t is None:
                    ok = False
                    break
                if gamma[k] == -1 and ginv[t] == -1:
                    gamma[k], ginv[t] = t, k
                    changed.append(k)
                elif gamma[k] != t or ginv[t] != k:
                    ok = False
                    break
            if ok:
                beta[j], used_cols[b] = b, True
                beta_search(cands, order, depth + 1)
                beta[j], used_cols[b] = -1, False
            for k in changed:
                ginv[gamma[k]] = -1
                gamma[k] = -1

    def alpha_search(depth, cands):
        ctx.tick()
        if depth == r:
            order = sorted(range(s), key=lambda j: (len(cands[j]), -len(col_entries[j]), j))
            beta_search(cands, order, 0)
            return
        i = row_order[depth]
        for a in ctx.allowed_rows[i]:
            if used_rows[a]:
                continue
            if vecs is not None:
                narrowed = []
                for j in range(s):
                    want = vecs[j][i]
                    c = [b for b in cands[j] if vecs[b][a] == want]
                    if not c:
                        break
                    narrowed.append(c)
                else:
                    alpha[i], used_rows[a] = a, True
                    alpha_search(depth + 1, narrowed)
                    alpha[i], used_rows[a] = -1, False
                continue
            alpha[i], used_rows[a] = a, True
            alpha_search(depth + 1, cands)
            alpha[i], used_rows[a] = -1, False

    alpha_search(0, [list(c) for c in ctx.allowed_cols])
    return make_group(red, ctx.found)


def _entry_order(R: PartialLatinRectangle, entry_class: list[int]) -> list[int]:
    """Greedy spanning order: next entry shares the most lines with those already placed."""
    E = R.entries
    class_size: dict[int, int] = {}
    for c in entry_class:
        class_size[c] = class_size.get(c, 0) + 1
    rows, cols, syms = set(), set(), set()
    order: list[int] = []
    left = set(range(len(E)))
    while left:
        best = min(
            left,
            key=lambda x: (
                -((E[x].row in rows) + (E[x].col in cols) + (E[x].sym in syms)),
                class_size[entry_class[x]],
                x,
            ),
        )
        left.remove(best)
        order.append(best)
        rows.add(E[best].row)
        cols.add(E[best].col)
        syms.add(E[best].sym)
    return order


def entrywise_atop(L: PartialLatinRectangle, opts: SearchOptions | None = None) -> AutotopismGroup:
    """Map entries to entries, deciding a row, column and symbol image at once.

    A target is admissible when none of the six forward/backward clashes
    arises, it has the same entry class, and its row, column and symbol carry
    the same line invariants as the source's.
    """
    opts = opts or SearchOptions()
    red = reduce(L)
    R = red.reduced
    if not R.entries:
        return trivial_group(red)
    ctx = _Context(R, opts)
    E = R.entries
    m = len(E)
    index = {(e.row, e.col): x for x, e in enumerate(E)}
    by_row: dict[int, list[int]] = {}
    by_col: dict[int, list[int]] = {}
    by_sym: dict[int, list[int]] = {}
    for x, (i, j, k) in enumerate(E):
        by_row.setdefault(i, []).append(x)
        by_col.setdefault(j, []).append(x)
        by_sym.setdefault(k, []).append(x)
    entry_class, row_key, col_key, sym_key = ctx.entry_class, ctx.row_key, ctx.col_key, ctx.sym_key
    same_class = {}
    for x in range(m):
        same_class.setdefault(entry_class[x], []).append(x)
    order = _entry_order(R, entry_class)

    maps = [[-1] * R.r, [-1] * R.s, [-1] * R.n]
    invs = [[-1] * R.r, [-1] * R.s, [-1] * R.n]
    alpha, beta, gamma = maps

    def candidates(x):
        i, j, k = E[x]
        if alpha[i] >= 0 and beta[j] >= 0:
            y = index.get((alpha[i], beta[j]))
            return () if y is None else (y,)
        if alpha[i] >= 0:
            return by_row[alpha[i]]
        if beta[j] >= 0:
            return by_col[beta[j]]
        if gamma[k] >= 0:
            return by_sym[gamma[k]]
        return same_class[entry_class[x]]

    def rec(depth):
        ctx.tick()
        if depth == m:
            t = Isotopism(Permutation(alpha), Permutation(beta), Permutation(gamma))
            if is_autotopism(R, t):
                ctx.record(t)
            return
        x = order[depth]
        src = E[x]
        for y in candidates(x):
            tgt = E[y]
            if entry_class[y] != entry_class[x]:
                continue
            if (
                row_key[tgt.row] != row_key[src.row]
                or col_key[tgt.col] != col_key[src.col]
                or sym_key[tgt.sym] != sym_key[src.sym]
            ):
                continue
            changed = []
            ok = True
            for d in range(3):
                a, b = src[d], tgt[d]
                fa, ib = maps[d][a], invs[d][b]
                if fa == -1 and ib == -1:
                    maps[d][a], invs[d][b] = b, a
                    changed.append((d, a, b))
                elif fa != b or ib != a:
                    ok = False
                    break
            if ok:
                rec(depth + 1)
            for d, a, b in changed:
                maps[d][a] = invs[d][b] = -1

    rec(0)
    return make_group(red, ctx.found)


def brute_force_atop(L: PartialLatinRectangle, max_pairs: int = ORACLE_MAX_PAIRS) -> AutotopismGroup:
    """Every (alpha, beta) of the reduced PLR, closed by the forced symbol map."""
    red = reduce(L)
    R = red.reduced
    if factorial(R.r) * factorial(R.s) > max_pairs:
        raise TooLargeForOracle(f"{R.r}! * {R.s}! pairs exceeds {max_pairs}")
    found = []
    for a in itertools.permutations(range(R.r)):
        alpha = Permutation(a)
        for b in itertools.permutations(range(R.s)):
            beta = Permutation(b)
            comp = complete_symbol_permutation(R, alpha, beta)
            if comp.ok:
                found.append(Isotopism(alpha, beta, comp.gamma(R.n)))
    return make_group(red, found)
