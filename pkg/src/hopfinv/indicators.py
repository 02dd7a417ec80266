"""Frobenius-Schur indicators, mixed indicators and the Kaplansky integrality check."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .hopf import HopfError, HopfStructure, canonical_elements, dual_hopf, integrals, irrep_dimensions
from .linalg import EchelonBasis, nullspace
from .scalars import Scalar, classify, divide, format_scalar
from .tensor import TensorElement

__all__ = [
    "power_integral_element",
    "fs_indicator",
    "indicator_invariant",
    "mixed_indicator",
    "mixed_indicator_formula",
    "KaplanskyReport",
    "kaplansky_check",
    "default_tables",
]


def power_integral_element(H: HopfStructure, n: int) -> list:
    """l_1 l_2 ... l_n, by comultiplying l (n-1) times and multiplying the legs back."""
    if n < 1:
        raise ValueError("n must be positive")
    ell, _ = integrals(H)
    t = TensorElement.from_vector(H, "H", ell)
    for _ in range(n - 1):
        t = t.comult_at("H", 1)
    for _ in range(n - 1):
        t = t.mult_at("H", 1)
    vec = t.side_vector()
    for k in range(H.dim):
        e = H.basis_vector(k)
        if H.multiply(vec, e) != H.multiply(e, vec):
            raise HopfError(f"l_1...l_{n} is not central (fails against basis {k + 1})")
    return vec


def fs_indicator(H: HopfStructure, chars, n: int, irrep: str) -> Scalar:
    """nu_n(psi) = psi(l_1 ... l_n) / dim H for the character ``irrep`` of ``chars``."""
    psi = chars[irrep].values
    value = divide(H.evaluate(psi, power_integral_element(H, n)), H.dim)
    if not classify(value).algebraic_integer:
        raise ArithmeticError(f"indicator nu_{n}({irrep}) = {format_scalar(value)} is not an algebraic integer")
    return value


def indicator_invariant(H: HopfStructure, n: int) -> Scalar:
    """lam(l_1 ... l_n); character free."""
    _, lam = integrals(H)
    return H.evaluate(lam, power_integral_element(H, n))


def mixed_indicator(H: HopfStructure, m: int, n: int, chars_H=None, chars_dual=None) -> Scalar:
    """(lam_1 ... lam_m)(l_1 ... l_n), computed in H and H* with the tensor engine.

    When both character tables are given the double-sum formula is checked too.
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    lam_power = power_integral_element(dual_hopf(H), m)
    value = H.evaluate(lam_power, power_integral_element(H, n))
    if chars_H is not None and chars_dual is not None:
        expected = mixed_indicator_formula(H, m, n, chars_H, chars_dual)
        if expected != value:
            raise ArithmeticError(
                f"mixed indicator {format_scalar(value)} disagrees with the character formula {format_scalar(expected)}"
            )
    return value


def mixed_indicator_formula(H: HopfStructure, m: int, n: int, chars_H, chars_dual) -> Scalar:
    """dim H * sum_{i,j} nu_n(psi_i) nu_m(phi_j) psi_i(S(phi_j)).

    ``chars_H`` lists the characters psi_i of H (functionals on H) and
    ``chars_dual`` the characters phi_j of H* (elements of H).
    """
    Hd = dual_hopf(H)
    ell_n = power_integral_element(H, n)
    lam_m = power_integral_element(Hd, m)
    total = 0
    for psi in chars_H:
        nu_psi = divide(H.evaluate(psi.values, ell_n), H.dim)
        if not nu_psi:
            continue
        for phi in chars_dual:
            nu_phi = divide(H.evaluate(lam_m, phi.values), H.dim)
            if nu_phi:
                total += nu_psi * nu_phi * H.evaluate(psi.values, H.apply_antipode(list(phi.values)))
    return total * H.dim


def default_tables(H: HopfStructure):
    """(characters of H, characters of H*) for group algebras and their duals, else (None, None)."""
    from .groups.tables import GroupError, character_table, dual_character_table

    origin = H.origin
    try:
        if origin and origin[0] == "group":
            G = origin[1]
            return character_table(G), dual_character_table(G)
        if origin and origin[0] == "dual" and origin[1] and origin[1][0] == "group":
            G = origin[1][1]
            return dual_character_table(G), character_table(G)
    except GroupError:
        pass
    return None, None


@dataclass
class KaplanskyReport:
    dim: int
    minimal_polynomial: list  # low to high, monic
    eigenvalues: list[Fraction]
    irrep_dims: list[int]
    passed: bool
    probes: list[tuple[int, Scalar, bool]] = field(default_factory=list)  # (n, value, is rational integer)

    def format(self) -> str:
        lines = [
            f"dim H = {self.dim}",
            "eigenvalues of c_H1: " + ", ".join(format_scalar(x) for x in self.eigenvalues),
            "irrep dimensions: " + " ".join(map(str, self.irrep_dims)),
            f"divisibility: {'pass' if self.passed else 'fail'}",
        ]
        for n, v, ok in self.probes:
            lines.append(f"lam((c_H1)^{n}) = {format_scalar(v)}: {'integer' if ok else 'NOT an integer'}")
        return "\n".join(lines)


def _minimal_polynomial(H: HopfStructure, x: list) -> list:
    """Monic minimal polynomial of x in the algebra, low degree first."""
    powers = [list(H.unit)]
    ech = EchelonBasis()
    ech.add(dict(enumerate(powers[0])))
    while True:
        nxt = H.multiply(powers[-1], x)
        powers.append(nxt)
        if not ech.add(dict(enumerate(nxt))):
            break
    cols = [[p[r] for p in powers] for r in range(H.dim)]
    (kernel,) = nullspace(cols, len(powers))
    lead = kernel[-1]
    return [divide(c, lead) for c in kernel]


def _poly_eval(poly: list, x: Fraction):
    acc = 0
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def kaplansky_check(H: HopfStructure, n_probe: int = 4) -> KaplanskyReport:
    """Decide whether every irreducible dimension divides dim H, with trace probes."""
    d = H.dim
    _, c1 = canonical_elements(H)
    poly = _minimal_polynomial(H, c1)
    candidates = [Fraction(d, k) ** 2 for k in range(1, d + 1) if k * k <= d]
    roots = [mu for mu in candidates if _poly_eval(poly, mu) == 0]
    if len(roots) != len(poly) - 1:
        raise HopfError("c_H1 has eigenvalues outside (dim H / k)^2: not semisimple")
    dims = irrep_dimensions(H)
    passed = all(d % k == 0 for k in dims)
    _, lam = integrals(H)
    probes = []
    cur = list(c1)
    for n in range(1, n_probe + 1):
        value = H.evaluate(lam, cur)
        probes.append((n, value, classify(value).rational_integer))
        cur = H.multiply(cur, c1)
    return KaplanskyReport(d, poly, sorted(roots, reverse=True), dims, passed, probes)
