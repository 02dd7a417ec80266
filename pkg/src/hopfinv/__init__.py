"""Exact computations with finite-dimensional semisimple Hopf algebras and their basic invariants."""

from .characters import CharacterTable, Irrep
from .hopf import (
    HopfError,
    HopfStructure,
    RMatrix,
    canonical_elements,
    drinfeld_double,
    dual_hopf,
    exponent,
    group_algebra,
    integrals,
    irrep_dimensions,
    validate,
)
from .scalars import CycScalar, classify, format_scalar, parse_scalar, zeta
from .tensor import TensorElement

__version__ = "0.1.0"

__all__ = [
    "CharacterTable", "Irrep", "HopfError", "HopfStructure", "RMatrix", "canonical_elements",
    "drinfeld_double", "dual_hopf", "exponent", "group_algebra", "integrals", "irrep_dimensions",
    "validate", "CycScalar", "classify", "format_scalar", "parse_scalar", "zeta", "TensorElement",
]
