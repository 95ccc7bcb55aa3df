"""Heegaard Floer homology of plumbed integral homology spheres.

Pipeline: plumbing graph -> computation sequence -> tau function ->
graded root -> HF+ as a graded Z[U]-module.
"""

from .engine import ComputationState, TauFunction, compute_tau, next_cycle, reduce_tau
from .errors import ArithmeticOverflowError, NonTerminationError, PlumbingError
from .families import (
    BrieskornTriple,
    CassonHarerFamily,
    Family,
    SeifertInvariants,
    brieskorn_graph,
    mazur_graph,
    mazur_rank,
    rank_casson_harer,
    seifert_invariants,
    tau_casson_harer,
)
from .graph import (
    IntersectionForm,
    PlumbingGraph,
    ValidationReport,
    determinant,
    distinguished_vertex,
    intersection_form,
    is_negative_definite,
    pairing,
    validate,
)
from .root import (
    GradedRoot,
    Grading,
    HFModule,
    build_root,
    casson_check,
    graded_piece_ranks,
    hf_from_root,
    rank_red,
)


def heegaard_floer(graph: PlumbingGraph, grading: Grading = Grading(), v0=None) -> HFModule:
    """HF+ of the boundary (with reversed orientation) of a plumbing graph."""
    return hf_from_root(build_root(compute_tau(graph, v0).reduced), grading)
