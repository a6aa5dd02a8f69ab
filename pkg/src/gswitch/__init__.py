"""Gamma-switching of edge-coloured complete graphs and the Ramsey numbers it defines."""

from .core import (
    CliqueWitness,
    EdgeColouring,
    Permutation,
    SwitchingSequence,
    apex,
    apply_sequence,
    find_mono_clique,
    homogenise,
    switch_at,
)
from .groups import ColourGroup, commutator_subgroup, parse_group, single_edge_sequence
from .modsolve import CongruenceSystem, decide_containment_abelian, solve_mod
from .search import BudgetExceeded, count_classes, decide_containment_generic, orbit_enumerate, switch_equivalent
from .ramsey import classical_lookup, derive_bounds, verify_lower_witness, verify_value_exhaustive
from .fileio import emit_colouring, parse_colouring

__version__ = "0.1.0"
