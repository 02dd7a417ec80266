"""The expression language for basic invariants, canonical data and their spans."""

from .canonical import (
    CanonicalInvariant,
    compile_invariant,
    compile_staged,
    compositions,
    count_canonical,
    enumerate_canonical,
)
from .expr import DSLSyntaxError, Gen, InvariantExpr, MissingCharacterError, Op, ShapeError, evaluate, parse
from .spans import (
    AutomorphismError,
    ContainmentError,
    SaturationReport,
    SpanResult,
    Verdict,
    aut_fixed_space,
    check_automorphism,
    distinguish,
    evaluate_datum,
    evaluate_many,
    gram_rank,
    group_automorphism_matrices,
    k0_generators,
    saturation_check,
    span_basis,
)

__all__ = [
    "CanonicalInvariant", "compile_invariant", "compile_staged", "compositions", "count_canonical",
    "enumerate_canonical", "DSLSyntaxError", "Gen", "InvariantExpr", "MissingCharacterError", "Op",
    "ShapeError", "evaluate", "parse", "AutomorphismError", "ContainmentError", "SaturationReport",
    "SpanResult", "Verdict", "aut_fixed_space", "check_automorphism", "distinguish", "evaluate_datum",
    "evaluate_many", "gram_rank", "group_automorphism_matrices", "k0_generators", "saturation_check",
    "span_basis",
]
