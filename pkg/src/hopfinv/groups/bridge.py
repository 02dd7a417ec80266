"""Scalar basic invariants of group algebras as homomorphism counts.

On KG every copy of l expands to sum_g g (x) ... (x) g and lam(x_1 ... x_k)
is n times the indicator of x_1 ... x_k = e, so a scalar datum with ``a``
copies of l and ``b`` copies of lam evaluates to n^b times the number of
solutions of ``b`` word equations in ``a`` unknowns.
"""

from __future__ import annotations

from ..invariants.canonical import CanonicalInvariant
from .core import FpGroup, GroupError

__all__ = ["invariant_to_presentation", "presentation_to_invariant"]


def invariant_to_presentation(c: CanonicalInvariant) -> tuple[FpGroup, int]:
    """(P, exponent): one generator per l-copy, one relator per lam-copy."""
    if c.shape != (0, 0):
        raise ValueError(f"datum has shape {c.shape}; only scalar data compile to presentations")
    if any(g != "L" for g in c.gens_H) or any(g != "Lam" for g in c.gens_D):
        raise ValueError("only integral generators have a presentation")
    owner = [copy for copy, _ in c.h_owner()]
    back = {s: t for t, s in enumerate(c.sigma, 1)}
    relators = []
    v = 1
    for k in c.comps_D:
        word = []
        for _ in range(k):
            word.append(owner[back[v] - 1])
            v += 1
        relators.append(tuple(word))
    return FpGroup(c.a, tuple(relators)), c.b


def presentation_to_invariant(P: FpGroup) -> CanonicalInvariant:
    """The scalar datum whose value on KG is n^(#relators) * #Hom(P, G).

    Relators must be positive words (no inverse letters) and every generator
    must occur in some relator.
    """
    if not P.relators:
        raise GroupError("presentation has no relators")
    if any(x < 0 for w in P.relators for x in w):
        raise GroupError("relators must be positive words")
    counts = [0] * P.rank
    for w in P.relators:
        if not w:
            raise GroupError("empty relator")
        for x in w:
            counts[x - 1] += 1
    if 0 in counts:
        raise GroupError("every generator must occur in a relator")
    start = [sum(counts[:g]) for g in range(P.rank)]
    used = [0] * P.rank
    sigma = [0] * sum(counts)
    v = 1
    for w in P.relators:
        for x in w:
            g = x - 1
            sigma[start[g] + used[g]] = v
            used[g] += 1
            v += 1
    return CanonicalInvariant(P.rank, len(P.relators), tuple(counts), tuple(len(w) for w in P.relators), tuple(sigma))
