"""Finite-dimensional Hopf algebras given by sparse structure constants.

Basis indices are 0-based in memory and 1-based in files and reports.
Conventions:

* ``mult[(i, j)] = {k: c}``   means ``e_i e_j = sum c e_k``;
* ``comult[i] = {(j, k): c}`` means ``Delta(e_i) = sum c e_j (x) e_k``;
* ``antipode[(i, j)] = c``    means ``S(e_j) = sum_i c e_i``;
* an element of H* is stored by its values on the basis, ``f_i = f(e_i)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .linalg import rank, sparse_nullspace
from .scalars import CycScalar, Scalar, conductor_of, divide, format_scalar, parse_scalar
from .tensor import TensorElement

__all__ = [
    "HopfError",
    "HopfStructure",
    "HopfElement",
    "RMatrix",
    "AxiomCheck",
    "ValidationReport",
    "validate",
    "group_algebra",
    "dual_hopf",
    "drinfeld_double",
    "left_integral",
    "integrals",
    "exponent",
    "convolution_power",
    "antipode_from_exponent",
    "central_projection",
    "center_basis",
    "canonical_elements",
    "irrep_dimensions",
    "dimension_selector",
    "ekses_tensor",
]

MAX_EXPONENT = 10_000


class HopfError(ValueError):
    pass


Vec = list  # dense coefficient vector of length dim


@dataclass(frozen=True)
class RMatrix:
    """An element of H (x) H as ``{(i, j): coeff}``."""

    coeffs: Mapping[tuple[int, int], Scalar]


class HopfStructure:
    def __init__(
        self,
        dim: int,
        mult: Mapping,
        unit: Sequence,
        comult: Mapping,
        counit: Sequence,
        antipode: Mapping,
        conductor: int = 1,
        labels: Sequence[str] | None = None,
        rmatrix: RMatrix | None = None,
        name: str = "H",
        origin: tuple = (),
    ):
        if dim < 1:
            raise HopfError("dimension must be positive")
        self.dim = d = int(dim)
        self.conductor = int(conductor)
        self.name = name
        self.origin = origin
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i + 1}" for i in range(d))
        if len(self.labels) != d:
            raise HopfError("labels do not match dimension")

        def idx(x, what):
            if not isinstance(x, int) or not 0 <= x < d:
                raise HopfError(f"{what}: basis index {x} out of range 0..{d - 1}")
            return x

        self.mult = {}
        for (i, j), terms in mult.items():
            row = {idx(k, "mult"): c for k, c in terms.items() if c}
            idx(i, "mult"), idx(j, "mult")
            if row:
                self.mult[(i, j)] = row
        self.comult = {}
        for i, terms in comult.items():
            row = {}
            for (j, k), c in terms.items():
                idx(j, "comult"), idx(k, "comult")
                if c:
                    row[(j, k)] = c
            idx(i, "comult")
            if row:
                self.comult[i] = row
        self.antipode = {}
        for (i, j), c in antipode.items():
            idx(i, "antipode"), idx(j, "antipode")
            if c:
                self.antipode[(i, j)] = c
        if len(unit) != d or len(counit) != d:
            raise HopfError("unit and counit must have length dim")
        self.unit = tuple(unit)
        self.counit = tuple(counit)
        self.rmatrix = rmatrix
        if rmatrix is not None:
            for i, j in rmatrix.coeffs:
                idx(i, "rmatrix"), idx(j, "rmatrix")
        for c in self._all_coeffs():
            if self.conductor % conductor_of(c):
                raise HopfError(f"coefficient {c} needs conductor {conductor_of(c)}, structure has {self.conductor}")

    def _all_coeffs(self) -> Iterable:
        for terms in self.mult.values():
            yield from terms.values()
        for terms in self.comult.values():
            yield from terms.values()
        yield from self.antipode.values()
        yield from self.unit
        yield from self.counit
        if self.rmatrix is not None:
            yield from self.rmatrix.coeffs.values()

    def __repr__(self):
        return f"HopfStructure({self.name}, dim={self.dim})"

    def __getstate__(self):
        state = dict(self.__dict__)
        state.pop("_tensor_tables", None)
        return state

    # -- elementary linear algebra on vectors --------------------------------------
    def zero(self) -> Vec:
        return [0] * self.dim

    def basis_vector(self, i: int) -> Vec:
        v = self.zero()
        v[i] = 1
        return v

    def multiply(self, x: Sequence, y: Sequence) -> Vec:
        out = self.zero()
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                for k, c in self.mult.get((i, j), {}).items():
                    out[k] += a * b * c
        return out

    def comultiply(self, x: Sequence) -> dict[tuple[int, int], Scalar]:
        out: dict = {}
        for i, a in enumerate(x):
            if a:
                for jk, c in self.comult.get(i, {}).items():
                    out[jk] = out.get(jk, 0) + a * c
        return {k: v for k, v in out.items() if v}

    def apply_antipode(self, x: Sequence) -> Vec:
        out = self.zero()
        for (i, j), c in self.antipode.items():
            if x[j]:
                out[i] += c * x[j]
        return out

    def epsilon(self, x: Sequence) -> Scalar:
        return sum((a * e for a, e in zip(x, self.counit) if a and e), 0)

    def evaluate(self, f: Sequence, x: Sequence) -> Scalar:
        """f(x) for f in H* given by its values on the basis."""
        return sum((a * b for a, b in zip(f, x) if a and b), 0)

    def left_mult_matrix(self, x: Sequence) -> list[list]:
        cols = [self.multiply(x, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    @cached_property
    def antipode_matrix(self) -> list[list]:
        m = [[0] * self.dim for _ in range(self.dim)]
        for (i, j), c in self.antipode.items():
            m[i][j] = c
        return m

    def element(self, coeffs: Sequence, side: str = "H") -> "HopfElement":
        return HopfElement(self, side, tuple(coeffs))

    # -- serialization --------------------------------------------------------------
    def to_json(self) -> dict:
        f = format_scalar
        data = {
            "dim": self.dim,
            "conductor": self.conductor,
            "name": self.name,
            "labels": list(self.labels),
            "mult": [[i + 1, j + 1, k + 1, f(c)] for (i, j), t in sorted(self.mult.items()) for k, c in sorted(t.items())],
            "unit": [f(c) for c in self.unit],
            "comult": [[i + 1, j + 1, k + 1, f(c)] for i, t in sorted(self.comult.items()) for (j, k), c in sorted(t.items())],
            "counit": [f(c) for c in self.counit],
            "antipode": [[i + 1, j + 1, f(c)] for (i, j), c in sorted(self.antipode.items())],
        }
        if self.rmatrix is not None:
            data["rmatrix"] = [[i + 1, j + 1, f(c)] for (i, j), c in sorted(self.rmatrix.coeffs.items())]
        if self.origin:
            data["origin"] = _origin_to_json(self.origin)
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: Mapping) -> "HopfStructure":
        try:
            d = int(data["dim"])
            n = int(data.get("conductor", 1))

            def sc(x):
                return _demote(parse_scalar(str(x), n if n > 1 else None))

            mult: dict = {}
            for i, j, k, c in data["mult"]:
                row = mult.setdefault((int(i) - 1, int(j) - 1), {})
                row[int(k) - 1] = row.get(int(k) - 1, 0) + sc(c)
            comult: dict = {}
            for i, j, k, c in data["comult"]:
                row = comult.setdefault(int(i) - 1, {})
                key = (int(j) - 1, int(k) - 1)
                row[key] = row.get(key, 0) + sc(c)
            antipode = {(int(i) - 1, int(j) - 1): sc(c) for i, j, c in data["antipode"]}
            unit = [sc(c) for c in data["unit"]]
            counit = [sc(c) for c in data["counit"]]
            rmatrix = None
            if data.get("rmatrix") is not None:
                rmatrix = RMatrix({(int(i) - 1, int(j) - 1): sc(c) for i, j, c in data["rmatrix"]})
        except (KeyError, TypeError, ValueError) as exc:
            raise HopfError(f"malformed structure file: {exc}") from None
        return cls(
            d, mult, unit, comult, counit, antipode, conductor=n, labels=data.get("labels"),
            rmatrix=rmatrix, name=data.get("name", "H"), origin=_origin_from_json(data.get("origin")),
        )


def _origin_to_json(origin: tuple) -> dict:
    kind, inner = origin
    if kind == "dual":
        return {"kind": "dual", "of": _origin_to_json(inner)}
    return {"kind": kind, "group": inner.to_json()}


def _origin_from_json(data: Mapping | None) -> tuple:
    """Where the structure came from; only used to find automorphisms and character tables."""
    from .groups.core import FinGroup

    if not data:
        return ()
    if data.get("kind") == "dual":
        inner = _origin_from_json(data.get("of"))
        return ("dual", inner) if inner else ()
    if data.get("kind") in ("group", "double"):
        return (data["kind"], FinGroup.from_json(data["group"]))
    return ()


def _demote(x: Scalar) -> Scalar:
    if isinstance(x, CycScalar) and x.is_rational():
        x = x.to_rational()
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass(frozen=True)
class HopfElement:
    owner: HopfStructure = field(repr=False, compare=False)
    side: str
    coeffs: tuple

    def __post_init__(self):
        if self.side not in ("H", "D"):
            raise HopfError("side must be 'H' or 'D'")
        if len(self.coeffs) != self.owner.dim:
            raise HopfError("coefficient vector length must equal the dimension")

    def __add__(self, other: "HopfElement") -> "HopfElement":
        return HopfElement(self.owner, self.side, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HopfElement") -> "HopfElement":
        return HopfElement(self.owner, self.side, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, c) -> "HopfElement":
        return HopfElement(self.owner, self.side, tuple(a * c for a in self.coeffs))

    __rmul__ = __mul__

    def tensor(self) -> TensorElement:
        return TensorElement.from_vector(self.owner, self.side, self.coeffs)

    def format(self) -> str:
        labels = self.owner.labels
        parts = [f"{format_scalar(c)}*{labels[i]}{'*' if self.side == 'D' else ''}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"


# -- validation -------------------------------------------------------------------------


@dataclass
class AxiomCheck:
    name: str
    passed: bool
    witness: tuple[int, ...] | None = None  # 1-based basis indices
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[AxiomCheck]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> AxiomCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def format(self) -> str:
        lines = []
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            extra = f" at {c.witness}" if c.witness else ""
            lines.append(f"{c.name}: {status}{extra}{' ' + c.detail if c.detail else ''}")
        return "\n".join(lines)


def _mul2(H: HopfStructure, x: Mapping, y: Mapping) -> dict:
    """Product in H (x) H of sparse elements."""
    out: dict = {}
    for (a, b), u in x.items():
        for (c, e), v in y.items():
            left = H.mult.get((a, c), {})
            right = H.mult.get((b, e), {})
            for k1, w1 in left.items():
                for k2, w2 in right.items():
                    key = (k1, k2)
                    out[key] = out.get(key, 0) + u * v * w1 * w2
    return {k: v for k, v in out.items() if v}


def validate(H: HopfStructure) -> ValidationReport:
    """Check every Hopf axiom (and the quasitriangular axioms when an R-matrix is present)."""
    d = H.dim
    rng = range(d)
    checks: list[AxiomCheck] = []

    def mul_sparse(x: Mapping[int, Scalar], y: Mapping[int, Scalar]) -> dict:
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in H.mult.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: v for k, v in out.items() if v}

    def check(name, failing):
        witness = next(failing, None)
        checks.append(AxiomCheck(name, witness is None, None if witness is None else tuple(w + 1 for w in witness)))

    unit = {i: c for i, c in enumerate(H.unit) if c}

    check("associativity", (
        (i, j, k) for i in rng for j in rng for k in rng
        if mul_sparse(mul_sparse({i: 1}, {j: 1}), {k: 1}) != mul_sparse({i: 1}, mul_sparse({j: 1}, {k: 1}))
    ))
    check("unitality", (
        (i,) for i in rng if mul_sparse(unit, {i: 1}) != {i: 1} or mul_sparse({i: 1}, unit) != {i: 1}
    ))

    def delta(x: Mapping[int, Scalar]) -> dict:
        out: dict = {}
        for i, a in x.items():
            for jk, c in H.comult.get(i, {}).items():
                out[jk] = out.get(jk, 0) + a * c
        return {k: v for k, v in out.items() if v}

    def coassoc_fail(i):
        left: dict = {}
        right: dict = {}
        for (j, k), c in H.comult.get(i, {}).items():
            for (a, b), u in H.comult.get(j, {}).items():
                left[(a, b, k)] = left.get((a, b, k), 0) + c * u
            for (a, b), u in H.comult.get(k, {}).items():
                right[(j, a, b)] = right.get((j, a, b), 0) + c * u
        return {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}

    check("coassociativity", ((i,) for i in rng if coassoc_fail(i)))

    def counit_fail(i):
        left: dict = {}
        right: dict = {}
        for (j, k), c in H.comult.get(i, {}).items():
            if H.counit[j]:
                left[k] = left.get(k, 0) + H.counit[j] * c
            if H.counit[k]:
                right[j] = right.get(j, 0) + H.counit[k] * c
        clean = lambda m: {k: v for k, v in m.items() if v}  # noqa: E731
        return clean(left) != {i: 1} or clean(right) != {i: 1}

    check("counitality", ((i,) for i in rng if counit_fail(i)))

    def eps(x: Mapping[int, Scalar]):
        return sum((c * H.counit[k] for k, c in x.items()), 0)

    check("counit multiplicative", (
        (i, j) for i in rng for j in rng if eps(mul_sparse({i: 1}, {j: 1})) != H.counit[i] * H.counit[j]
    ))
    check("counit of unit", (() for _ in [0] if eps(unit) != 1))
    check("comultiplication multiplicative", (
        (i, j) for i in rng for j in rng if delta(mul_sparse({i: 1}, {j: 1})) != _mul2(H, delta({i: 1}), delta({j: 1}))
    ))
    check("comultiplication of unit", (() for _ in [0] if delta(unit) != {(a, b): u * v for a, u in unit.items() for b, v in unit.items()}))

    S = {}
    for (i, j), c in H.antipode.items():
        S.setdefault(j, {})[i] = c

    def antipode_fail(i):
        left: dict = {}
        right: dict = {}
        for (j, k), c in H.comult.get(i, {}).items():
            for kk, v in mul_sparse(S.get(j, {}), {k: c}).items():
                left[kk] = left.get(kk, 0) + v
            for kk, v in mul_sparse({j: c}, S.get(k, {})).items():
                right[kk] = right.get(kk, 0) + v
        target = {k: H.counit[i] * c for k, c in unit.items() if H.counit[i] * c}
        clean = lambda m: {k: v for k, v in m.items() if v}  # noqa: E731
        return clean(left) != target or clean(right) != target

    check("antipode", ((i,) for i in rng if antipode_fail(i)))

    def s_squared_fail(i):
        out: dict = {}
        for k, c in S.get(i, {}).items():
            for m, u in S.get(k, {}).items():
                out[m] = out.get(m, 0) + c * u
        return {k: v for k, v in out.items() if v} != {i: 1}

    check("antipode involutive", ((i,) for i in rng if s_squared_fail(i)))

    if H.rmatrix is not None:
        R = {k: v for k, v in H.rmatrix.coeffs.items() if v}

        def qt1_fail(i):
            dx = delta({i: 1})
            dop = {(k, j): c for (j, k), c in dx.items()}
            return _mul2(H, dop, R) != _mul2(H, R, dx)

        check("R intertwines comultiplication", ((i,) for i in rng if qt1_fail(i)))
        checks.extend(_rmatrix_coproduct_checks(H, R, delta))
    return ValidationReport(checks)


def _mul3(H: HopfStructure, x: Mapping, y: Mapping) -> dict:
    out: dict = {}
    for (a, b, c), u in x.items():
        for (p, q, r), v in y.items():
            for k1, w1 in H.mult.get((a, p), {}).items():
                for k2, w2 in H.mult.get((b, q), {}).items():
                    for k3, w3 in H.mult.get((c, r), {}).items():
                        key = (k1, k2, k3)
                        out[key] = out.get(key, 0) + u * v * w1 * w2 * w3
    return {k: v for k, v in out.items() if v}


def _rmatrix_coproduct_checks(H: HopfStructure, R: Mapping, delta) -> list[AxiomCheck]:
    u = {i: c for i, c in enumerate(H.unit) if c}

    def embed(pos):
        out: dict = {}
        for (a, b), c in R.items():
            for k, w in u.items():
                key = [k, k, k]
                key[pos[0]], key[pos[1]] = a, b
                out[tuple(key)] = out.get(tuple(key), 0) + c * w
        return out

    r12, r13, r23 = embed((0, 1)), embed((0, 2)), embed((1, 2))
    d_left: dict = {}
    d_right: dict = {}
    for (a, b), c in R.items():
        for (x, y), w in delta({a: 1}).items():
            d_left[(x, y, b)] = d_left.get((x, y, b), 0) + c * w
        for (x, y), w in delta({b: 1}).items():
            d_right[(a, x, y)] = d_right.get((a, x, y), 0) + c * w
    clean = lambda m: {k: v for k, v in m.items() if v}  # noqa: E731
    out = []
    ok1 = clean(d_left) == _mul3(H, r13, r23)
    out.append(AxiomCheck("(Delta x id)(R) = R13 R23", ok1))
    ok2 = clean(d_right) == _mul3(H, r13, r12)
    out.append(AxiomCheck("(id x Delta)(R) = R13 R12", ok2))
    return out


# -- constructors ----------------------------------------------------------------------------


def group_algebra(G) -> HopfStructure:
    n = G.order
    mult = {(a, b): {G.table[a][b]: 1} for a in range(n) for b in range(n)}
    comult = {g: {(g, g): 1} for g in range(n)}
    antipode = {(G.inverse[g], g): 1 for g in range(n)}
    unit = [1 if g == G.identity else 0 for g in range(n)]
    return HopfStructure(
        n, mult, unit, comult, [1] * n, antipode, conductor=1, labels=G.labels,
        name=f"K{G.name}", origin=("group", G),
    )


def dual_hopf(H: HopfStructure) -> HopfStructure:
    mult: dict = {}
    for c, terms in H.comult.items():
        for (a, b), v in terms.items():
            mult.setdefault((a, b), {})[c] = v
    comult: dict = {}
    for (a, b), terms in H.mult.items():
        for c, v in terms.items():
            comult.setdefault(c, {})[(a, b)] = v
    antipode = {(j, i): c for (i, j), c in H.antipode.items()}
    labels = [lab[:-1] if lab.endswith("*") else lab + "*" for lab in H.labels]
    name = H.name[:-1] if H.name.endswith("*") else H.name + "*"
    if H.origin and H.origin[0] == "dual":
        origin = H.origin[1]
    else:
        origin = ("dual", H.origin)
    return HopfStructure(
        H.dim, mult, list(H.counit), comult, list(H.unit), antipode, conductor=H.conductor,
        labels=labels, name=name, origin=origin,
    )


def drinfeld_double(G) -> tuple[HopfStructure, RMatrix]:
    """D(KG) on the basis e_a (x) x, indexed by a*n + x."""
    n = G.order
    t, inv, e = G.table, G.inverse, G.identity

    def ix(a, x):
        return a * n + x

    mult: dict = {}
    for a in range(n):
        for x in range(n):
            for b in range(n):
                if a != t[t[x][b]][inv[x]]:
                    continue
                for y in range(n):
                    mult[(ix(a, x), ix(b, y))] = {ix(a, t[x][y]): 1}
    comult: dict = {}
    for a in range(n):
        for x in range(n):
            comult[ix(a, x)] = {(ix(b, x), ix(t[inv[b]][a], x)): 1 for b in range(n)}
    counit = [1 if a == e else 0 for a in range(n) for x in range(n)]
    unit = [1 if x == e else 0 for a in range(n) for x in range(n)]
    antipode = {}
    for a in range(n):
        for x in range(n):
            xi = inv[x]
            antipode[(ix(t[t[xi][inv[a]]][x], xi), ix(a, x))] = 1
    R = RMatrix({(ix(g, e), ix(a, g)): 1 for g in range(n) for a in range(n)})
    labels = [f"({G.labels[a]},{G.labels[x]})" for a in range(n) for x in range(n)]
    D = HopfStructure(
        n * n, mult, unit, comult, counit, antipode, conductor=1, labels=labels, rmatrix=R,
        name=f"D({G.name})", origin=("double", G),
    )
    return D, R


# -- integrals, exponent, antipode -------------------------------------------------------------


def left_integral(H: HopfStructure) -> Vec:
    """The left integral normalized by epsilon(l) = dim H; also checked to be a right integral."""
    d = H.dim
    rows = []
    for i in range(d):
        for k in range(d):
            row = {}
            for j in range(d):
                c = H.mult.get((i, j), {}).get(k, 0)
                if j == k:
                    c = c - H.counit[i]
                if c:
                    row[j] = c
            if row:
                rows.append(row)
    null = sparse_nullspace(rows, d)
    if len(null) != 1:
        raise HopfError(f"space of left integrals has dimension {len(null)}, expected 1")
    v = null[0]
    e = H.epsilon(v)
    if not e:
        raise HopfError("counit vanishes on the integral: structure is not semisimple")
    scale = divide(d, e)
    ell = [_demote(c * scale) for c in v]
    for i in range(d):
        if H.multiply(ell, H.basis_vector(i)) != [H.counit[i] * c for c in ell]:
            raise HopfError(f"left integral is not a right integral (fails at basis {i + 1})")
    return ell


def integrals(H: HopfStructure) -> tuple[Vec, Vec]:
    """(l, lam): the normalized integrals of H and of H*; cached on the structure."""
    cached = H.__dict__.get("_integrals")
    if cached is None:
        cached = (left_integral(H), left_integral(dual_hopf(H)))
        H.__dict__["_integrals"] = cached
    return cached


def convolution_power(H: HopfStructure, m: int) -> list[dict]:
    """Columns of x -> x_1 x_2 ... x_m as sparse dicts (m = 0 gives unit o counit)."""
    d = H.dim
    cols = [{k: H.counit[i] * c for k, c in enumerate(H.unit) if H.counit[i] * c} for i in range(d)]
    if m == 0:
        return cols
    cols = [{i: 1} for i in range(d)]
    for _ in range(m - 1):
        cols = _convolve_with_identity(H, cols)
    return cols


def _convolve_with_identity(H: HopfStructure, cols: list[dict]) -> list[dict]:
    out = []
    for i in range(H.dim):
        acc: dict = {}
        for (j, k), c in H.comult.get(i, {}).items():
            for a, u in cols[j].items():
                for m, w in H.mult.get((a, k), {}).items():
                    acc[m] = acc.get(m, 0) + c * u * w
        out.append({k: v for k, v in acc.items() if v})
    return out


def exponent(H: HopfStructure, bound: int = MAX_EXPONENT) -> int:
    d = H.dim
    target = convolution_power(H, 0)
    cols = [{i: 1} for i in range(d)]
    for m in range(1, bound + 1):
        if cols == target:
            return m
        cols = _convolve_with_identity(H, cols)
    raise HopfError(f"exponent exceeds bound {bound}")


def antipode_from_exponent(H: HopfStructure) -> list[list]:
    """Matrix of x -> x_1 ... x_{m-1}; raises if it differs from the stored antipode."""
    m = exponent(H)
    cols = convolution_power(H, m - 1)
    mat = [[cols[j].get(i, 0) for j in range(H.dim)] for i in range(H.dim)]
    if mat != H.antipode_matrix:
        bad = next((i + 1, j + 1) for i in range(H.dim) for j in range(H.dim) if mat[i][j] != H.antipode_matrix[i][j])
        raise HopfError(f"antipode from exponent {m} differs from the stored antipode at {bad}")
    return mat


# -- center and projections -------------------------------------------------------------------------


def _delta_integral(H: HopfStructure) -> dict:
    ell, _ = integrals(H)
    return H.comultiply(ell)


def central_projection(H: HopfStructure, x: Sequence) -> Vec:
    """P(x) = (1/dim H) * l_1 x S(l_2)."""
    out = H.zero()
    for (a, b), c in _delta_integral(H).items():
        left = H.multiply(H.basis_vector(a), x)
        term = H.multiply(left, H.apply_antipode(H.basis_vector(b)))
        for k, v in enumerate(term):
            if v:
                out[k] += c * v
    return [_demote(divide(v, H.dim)) if v else 0 for v in out]


def center_basis(H: HopfStructure) -> list[Vec]:
    """Basis of the center, from the commutant equations x e_i = e_i x."""
    d = H.dim
    rows = []
    for i in range(d):
        for k in range(d):
            row = {}
            for j in range(d):
                c = H.mult.get((j, i), {}).get(k, 0) - H.mult.get((i, j), {}).get(k, 0)
                if c:
                    row[j] = c
            if row:
                rows.append(row)
    return sparse_nullspace(rows, d)


def canonical_elements(H: HopfStructure) -> tuple[dict, Vec]:
    """(c_H, c_H1): c_H = l1_1 (x) l2_1 S(l1_2) S(l2_2) in H (x) H and c_H1 = m(c_H)."""
    cached = H.__dict__.get("_canonical")
    if cached is not None:
        return cached
    dl = _delta_integral(H)
    S = H.apply_antipode
    sb = {b: S(H.basis_vector(b)) for b in {b for _, b in dl}}
    c_h: dict = {}
    for (a, b), u in dl.items():
        for (c, e), v in dl.items():
            right = H.multiply(H.multiply(H.basis_vector(c), sb[b]), sb[e])
            for k, w in enumerate(right):
                if w:
                    c_h[(a, k)] = c_h.get((a, k), 0) + u * v * w
    c_h = {k: v for k, v in c_h.items() if v}
    c1 = H.zero()
    for (a, k), v in c_h.items():
        for m, w in H.mult.get((a, k), {}).items():
            c1[m] += v * w
    result = (c_h, c1)
    H.__dict__["_canonical"] = result
    return result


def irrep_dimensions(H: HopfStructure) -> list[int]:
    """Sorted multiset of irreducible dimensions, read off the eigenvalues of c_H1."""
    cached = H.__dict__.get("_irrep_dims")
    if cached is not None:
        return list(cached)
    d = H.dim
    _, c1 = canonical_elements(H)
    L = H.left_mult_matrix(c1)
    dims: list[int] = []
    total = 0
    k = 1
    while k * k <= d:
        mu = Fraction(d, k) ** 2
        shifted = [[L[i][j] - (mu if i == j else 0) for j in range(d)] for i in range(d)]
        nullity = d - rank(shifted)
        if nullity % (k * k):
            raise HopfError(f"eigenspace for {mu} has dimension {nullity}, not a multiple of {k * k}")
        dims.extend([k] * (nullity // (k * k)))
        total += nullity
        k += 1
    if total != d:
        raise HopfError(f"eigenvalues of c_H1 account for {total} of {d} dimensions: not semisimple")
    dims.sort()
    H.__dict__["_irrep_dims"] = tuple(dims)
    return dims


def _h2_tensor(H: HopfStructure, data: Mapping) -> TensorElement:
    return TensorElement.from_dict(H, (2, 0), data)


def _selector_poly(H: HopfStructure, dim_w: int) -> list[Fraction] | None:
    """Coefficients (low to high) of the interpolating polynomial for dimension dim_w."""
    d = H.dim
    dims = sorted(set(irrep_dimensions(H)))
    if dim_w not in dims:
        return None
    target = Fraction(d, dim_w) ** 2
    nodes = [Fraction(d, k) ** 2 for k in dims if k != dim_w] + [Fraction(0)]
    poly = [Fraction(1)]
    for nu in nodes:
        # multiply by (x - nu) / (target - nu)
        scale = 1 / (target - nu)
        new = [Fraction(0)] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i + 1] += c * scale
            new[i] -= c * nu * scale
        poly = new
    return poly


def _one_tensor(H: HopfStructure, n: int) -> TensorElement:
    unit = [i for i, c in enumerate(H.unit) if c]
    data = {}
    for key in itertools.product(unit, repeat=n):
        c = 1
        for k in key:
            c = c * H.unit[k]
        data[key] = c
    return TensorElement.from_dict(H, (n, 0), data)


def _embed_multiply(t: TensorElement, u: TensorElement, positions: Sequence[int]) -> TensorElement:
    """t * u where the factors of u sit at the given (1-based) H-positions of t."""
    n = t.shape[0]
    w = t.tensor_product(u)
    for pos in positions:
        # the next factor of u sits at position n + 1; bring it right after pos
        order = list(range(1, n + 2))
        sigma = []
        for k in order:
            if k <= pos:
                sigma.append(k)
            elif k <= n:
                sigma.append(k + 1)
            else:
                sigma.append(pos + 1)
        rest = list(range(n + 2, w.shape[0] + 1))
        w = w.permute("H", sigma + rest)
        w = w.mult_at("H", pos)
    return w


def dimension_selector(H: HopfStructure, dim_w: int, n: int) -> TensorElement:
    """c^{n,d} = sum over irreps of dimension dim_w of e_i^{(x)n}."""
    if n < 1:
        raise HopfError("n must be positive")
    poly = _selector_poly(H, dim_w)
    if poly is None:
        return TensorElement.zero(H, (n, 0))
    c_h, _ = canonical_elements(H)
    base = _h2_tensor(H, c_h)
    acc = TensorElement.zero(H, (2, 0))
    power = _one_tensor(H, 2)
    for k, coeff in enumerate(poly):
        if k:
            power = power.multiply(base)
        if coeff:
            acc = acc + power * _demote(coeff)
    c2 = acc
    if n == 1:
        return c2.mult_at("H", 1)
    out = c2
    for k in range(2, n):
        out = _embed_multiply(out.tensor_product(_one_tensor(H, 1)), c2, [k, k + 1])
    return out


def ekses_tensor(H: HopfStructure, dim_w: int, parts: Sequence[int]) -> TensorElement:
    """Sum over tuples of distinct irreps of dimension dim_w of e_{i1}^{(x)a1} (x) ... ."""
    if not parts or any(a < 1 for a in parts):
        raise HopfError("parts must be positive integers")
    c2 = dimension_selector(H, dim_w, 2)
    one2 = _one_tensor(H, 2)
    separate = one2 - c2
    x = dimension_selector(H, dim_w, parts[0])
    starts = [1]
    for a in parts[1:]:
        total = x.shape[0]
        x = x.tensor_product(dimension_selector(H, dim_w, a))
        new_start = total + 1
        for s in starts:
            x = _embed_multiply(x, separate, [s, new_start])
        starts.append(new_start)
    return x
