"""Finite groups, presentations, bundled character tables and the homomorphism-count bridge."""

from .bridge import invariant_to_presentation, presentation_to_invariant
from .core import (
    BUNDLED_GROUPS,
    BudgetExceeded,
    FinGroup,
    FpGroup,
    GroupError,
    IsoVerdict,
    automorphisms,
    cayley_presentation,
    count_homs,
    isomorphic_groups,
    named_group,
    normal_subgroups,
)
from .tables import character_table, class_function_check, dual_character_table, has_character_table

__all__ = [
    "BUNDLED_GROUPS", "BudgetExceeded", "FinGroup", "FpGroup", "GroupError", "IsoVerdict", "automorphisms",
    "cayley_presentation", "count_homs", "isomorphic_groups", "named_group", "normal_subgroups",
    "character_table", "class_function_check", "dual_character_table", "has_character_table",
    "invariant_to_presentation", "presentation_to_invariant",
]
