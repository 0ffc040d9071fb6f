"""Autotopism groups of partial Latin rectangles."""

from .autengine import ColoredGraph, automorphisms, equitable_refinement, orbits
from .backtrack import SearchOptions, alphabeta_atop, brute_force_atop, entrywise_atop
from .generators import gen_set_a, gen_set_b, jacobson_matthews
from .graphs import GraphKind, build_graph, decode_automorphisms
from .invariants import (
    InvariantKind,
    column_vectors,
    compute_entry_invariant,
    line_invariants,
    triviality_certificate,
)
from .methods import ALL_METHODS, Family, MethodSpec, compute_atop, computation_required
from .perm import Permutation
from .plr import (
    AutotopismGroup,
    Entry,
    Isotopism,
    PartialLatinRectangle,
    apply_isotopism,
    complete_symbol_permutation,
    from_entries,
    from_grid,
    is_autotopism,
    reduce,
)

__version__ = "0.1.0"
