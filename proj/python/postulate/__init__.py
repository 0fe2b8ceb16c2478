"""Postulation of general fat points in projective space."""

from ._postulate import (
    DEFAULT_PRIME,
    PostulationReport,
    Verdict,
    boundary_triples,
    check_postulation,
    decompose_beta,
    epsilon,
    fat_point_length,
    lemma_c1_check,
    max_trace_fill,
    oracle_check,
    rank_mod_p,
    run_induction,
    sweep,
    tables,
    trace_text,
)

__all__ = [
    "DEFAULT_PRIME",
    "PostulationReport",
    "Verdict",
    "boundary_triples",
    "check_postulation",
    "decompose_beta",
    "epsilon",
    "fat_point_length",
    "lemma_c1_check",
    "max_trace_fill",
    "oracle_check",
    "rank_mod_p",
    "run_induction",
    "sweep",
    "tables",
    "trace_text",
]
