"""Uniform entry point over all method families and invariant kinds."""

from __future__ import annotations

import time
from dataclasses import dataclass, replace
from enum import Enum

from .autengine import DEFAULT_CAP, automorphisms, orbits
from .backtrack import SearchOptions, alphabeta_atop, entrywise_atop
from .errors import CapExceeded
from .graphs import GraphKind, build_graph, decode_automorphisms
from .invariants import InvariantKind, compute_entry_invariant, triviality_certificate
from .plr import AutotopismGroup, PartialLatinRectangle, make_group, reduce, trivial_group


class Family(str, Enum):
    ALPHA_BETA = "alphabeta"
    ALPHA_BETA_CV = "alphabeta-cv"
    ENTRYWISE = "entrywise"
    MMM = "mmm"
    BIPARTITE = "bipartite"
    BIPARTITE_ORBITS_EW = "bipartite-orbits-ew"
    BIPARTITE_ORBITS_AB = "bipartite-orbits-ab"
    PLR_FLAT = "plr-flat"
    PLR_EXPANDED = "plr-expanded"
    ROOK_FLAT = "rook-flat"
    ROOK_EXPANDED = "rook-expanded"


_GRAPH_FAMILIES = {
    Family.MMM: GraphKind.MMM,
    Family.BIPARTITE: GraphKind.BIPARTITE,
    Family.PLR_FLAT: GraphKind.PLR_FLAT,
    Family.PLR_EXPANDED: GraphKind.PLR_EXPANDED,
    Family.ROOK_FLAT: GraphKind.ROOK_FLAT,
    Family.ROOK_EXPANDED: GraphKind.ROOK_EXPANDED,
}


@dataclass(frozen=True)
class MethodSpec:
    family: Family
    invariant: InvariantKind = InvariantKind.NONE

    @classmethod
    def parse(cls, text: str) -> MethodSpec:
        """``"plr-expanded"`` or ``"plr-expanded+square"``."""
        fam, _, inv = text.partition("+")
        return cls(Family(fam.strip()), InvariantKind(inv.strip() or "none"))

    def __str__(self) -> str:
        return f"{self.family.value}+{self.invariant.value}"


ALL_FAMILIES = tuple(Family)
ALL_METHODS = tuple(MethodSpec(f, k) for f in Family for k in InvariantKind)


def computation_required(L: PartialLatinRectangle, invariant: InvariantKind | str) -> bool:
    """False when reduction plus the triviality certificate already settle the group."""
    R = reduce(L).reduced
    if not R.entries:
        return False
    table = compute_entry_invariant(R, invariant)
    return triviality_certificate(R, table) is None


def compute_atop(
    L: PartialLatinRectangle,
    method: MethodSpec | str,
    *,
    shortcut: bool = True,
    cap: int = DEFAULT_CAP,
    timeout: float | None = None,
) -> AutotopismGroup:
    """Autotopism group of ``L`` by the given method.

    With ``shortcut`` the invariant's triviality certificate is tried first
    and the search or graph work is skipped when it applies.
    """
    if isinstance(method, str):
        method = MethodSpec.parse(method)
    deadline = None if timeout is None else time.monotonic() + timeout
    red = reduce(L)
    R = red.reduced
    if not R.entries:
        return trivial_group(red)
    kind = method.invariant
    table = None if kind is InvariantKind.NONE else compute_entry_invariant(R, kind)
    if shortcut:
        cert_table = table if table is not None else compute_entry_invariant(R, kind)
        if triviality_certificate(R, cert_table) is not None:
            return trivial_group(red)

    opts = SearchOptions(invariant=kind, cap=cap, deadline=deadline)
    fam = method.family
    if fam is Family.ALPHA_BETA:
        return make_group(red, alphabeta_atop(R, opts).reduced_autotopisms)
    if fam is Family.ALPHA_BETA_CV:
        return make_group(red, alphabeta_atop(R, replace(opts, use_cv=True)).reduced_autotopisms)
    if fam is Family.ENTRYWISE:
        return make_group(red, entrywise_atop(R, opts).reduced_autotopisms)
    if fam in (Family.BIPARTITE_ORBITS_EW, Family.BIPARTITE_ORBITS_AB):
        enc = build_graph(R, GraphKind.BIPARTITE, table)
        cells = orbits(enc.graph, deadline)
        row_orbits = [c for c in cells if c[0] < R.r]
        col_orbits = [tuple(v - R.r for v in c) for c in cells if c[0] >= R.r]
        opts = replace(opts, orbit_constraints=(row_orbits, col_orbits))
        solver = entrywise_atop if fam is Family.BIPARTITE_ORBITS_EW else alphabeta_atop
        return make_group(red, solver(R, opts).reduced_autotopisms)

    enc = build_graph(R, _GRAPH_FAMILIES[fam], table)
    auts = automorphisms(enc.graph, cap=cap, deadline=deadline)
    if auts.cap_hit:
        raise CapExceeded(f"graph has {auts.order} automorphisms, cap is {cap}")
    decoded = decode_automorphisms(R, enc, auts.perms)
    return make_group(red, decoded.autotopisms)
