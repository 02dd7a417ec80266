"""Spans of basic invariants, automorphism-fixed spaces, pairings and the distinguisher."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from ..linalg import EchelonBasis, rank, solve
from ..scalars import Scalar
from ..tensor import TensorElement
from .canonical import CanonicalInvariant, compile_invariant, enumerate_canonical
from .expr import evaluate

__all__ = [
    "AutomorphismError",
    "ContainmentError",
    "SpanResult",
    "SaturationReport",
    "Verdict",
    "evaluate_datum",
    "evaluate_many",
    "span_basis",
    "check_automorphism",
    "group_automorphism_matrices",
    "aut_fixed_space",
    "saturation_check",
    "gram_rank",
    "distinguish",
    "k0_generators",
]

MAX_AUT_GROUP = 5000
BATCH = 256


class AutomorphismError(ValueError):
    pass


# -- evaluation, optionally in worker processes -------------------------------------------


def evaluate_datum(H, c: CanonicalInvariant, h_chars=None, d_chars=None) -> TensorElement:
    return evaluate(H, compile_invariant(c), h_chars, d_chars)


def _eval_chunk(args) -> list[TensorElement]:
    H, chunk, h_chars, d_chars = args
    return [evaluate_datum(H, c, h_chars, d_chars) for c in chunk]


def evaluate_many(
    H, data: Iterable[CanonicalInvariant], h_chars=None, d_chars=None, workers: int = 1
) -> Iterator[tuple[CanonicalInvariant, TensorElement]]:
    """Evaluate data in order; with workers > 1, batches run in a process pool.

    Results are always yielded in input order, so downstream output does not
    depend on the worker count.
    """
    if workers <= 1:
        for c in data:
            yield c, evaluate_datum(H, c, h_chars, d_chars)
        return
    it = iter(data)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        while True:
            block = list(itertools.islice(it, BATCH * workers))
            if not block:
                return
            chunks = [block[k : k + BATCH] for k in range(0, len(block), BATCH)]
            results = pool.map(_eval_chunk, [(H, ch, h_chars, d_chars) for ch in chunks])
            for ch, vals in zip(chunks, results):
                for c, v in zip(ch, vals):
                    v.owner = H
                    yield c, v


# -- spans ----------------------------------------------------------------------------------


@dataclass
class SpanResult:
    shape: tuple[int, int]
    basis: list[TensorElement]
    profile: list[tuple[int, int]]  # (N, dimension after all data of that N)
    generators: list[CanonicalInvariant]  # data that enlarged the span, in order
    evaluated: int
    distinct: int
    stopped_early: bool = False

    @property
    def dim(self) -> int:
        return len(self.basis)

    def format(self) -> str:
        lines = [f"shape {self.shape}: dimension {self.dim}"]
        lines.append("profile: " + ", ".join(f"N={n}:{d}" for n, d in self.profile))
        lines.append(f"evaluated {self.evaluated} data, {self.distinct} distinct values")
        if self.stopped_early:
            lines.append("stopped once the requested dimension was reached")
        for c in self.generators:
            lines.append(f"  generator {c.render()}")
        for k, v in enumerate(self.basis, 1):
            lines.append(f"basis {k}:")
            lines.extend("  " + ln for ln in v.dump().splitlines())
        return "\n".join(lines)


def _basis_tensors(H, shape, ech: EchelonBasis) -> list[TensorElement]:
    return [TensorElement.from_flat(H, shape, v) for v in ech.basis()]


def span_basis(
    H,
    i: int,
    j: int,
    n_max: int,
    h_chars=None,
    d_chars=None,
    gens_H: Sequence[str] = ("L",),
    gens_D: Sequence[str] = ("Lam",),
    stop_at: int | None = None,
    workers: int = 1,
) -> SpanResult:
    """Exact basis of the span of all (i, j) data with N <= n_max."""
    ech = EchelonBasis()
    seen: set[TensorElement] = set()
    profile: list[tuple[int, int]] = []
    gens: list[CanonicalInvariant] = []
    evaluated = 0
    current_n = None
    stopped = False
    data = enumerate_canonical(i, j, n_max, gens_H, gens_D)
    for c, value in evaluate_many(H, data, h_chars, d_chars, workers):
        if current_n is not None and c.N != current_n:
            profile.append((current_n, ech.rank))
        current_n = c.N
        evaluated += 1
        if value in seen:
            continue
        seen.add(value)
        if ech.add(value.flat()):
            gens.append(c)
            if stop_at is not None and ech.rank >= stop_at:
                stopped = True
                break
    if current_n is not None:
        profile.append((current_n, ech.rank))
    return SpanResult((i, j), _basis_tensors(H, (i, j), ech), profile, gens, evaluated, len(seen), stopped)


# -- automorphisms and fixed spaces ----------------------------------------------------------


def _matmul(A: dict, B: dict) -> dict:
    cols: dict = {}
    for (k, j), b in B.items():
        cols.setdefault(k, []).append((j, b))
    out: dict = {}
    for (i, k), a in A.items():
        for j, b in cols.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) + a * b
    return {key: v for key, v in out.items() if v}


def _as_sparse(M) -> dict:
    if isinstance(M, dict):
        return {k: v for k, v in M.items() if v}
    return {(i, j): v for i, row in enumerate(M) for j, v in enumerate(row) if v}


def _inverse(M: dict, d: int) -> dict:
    dense = [[M.get((i, j), 0) for j in range(d)] for i in range(d)]
    cols = []
    for j in range(d):
        e = [1 if r == j else 0 for r in range(d)]
        cols.append(solve(dense, e))
    return {(i, j): cols[j][i] for j in range(d) for i in range(d) if cols[j][i]}


def check_automorphism(H, M) -> None:
    """Raise AutomorphismError unless M (matrix, M[i, j] = coefficient of e_i in M(e_j))
    is a Hopf automorphism of H."""
    d = H.dim
    A = _as_sparse(M)
    try:
        _inverse(A, d)
    except ArithmeticError:
        raise AutomorphismError("matrix is singular") from None
    col = {}
    for (i, j), c in A.items():
        col.setdefault(j, {})[i] = c

    def apply(vec: dict) -> dict:
        out: dict = {}
        for j, a in vec.items():
            for i, c in col.get(j, {}).items():
                out[i] = out.get(i, 0) + a * c
        return {k: v for k, v in out.items() if v}

    def mul(x: dict, y: dict) -> dict:
        out: dict = {}
        for a, u in x.items():
            for b, v in y.items():
                for k, w in H.mult.get((a, b), {}).items():
                    out[k] = out.get(k, 0) + u * v * w
        return {k: v for k, v in out.items() if v}

    unit = {i: c for i, c in enumerate(H.unit) if c}
    if apply(unit) != unit:
        raise AutomorphismError("does not fix the unit")
    for j in range(d):
        img = apply({j: 1})
        if sum((c * H.counit[i] for i, c in img.items()), 0) != H.counit[j]:
            raise AutomorphismError(f"does not preserve the counit at basis {j + 1}")
        lhs: dict = {}
        for (a, b), c in H.comult.get(j, {}).items():
            for x, u in col.get(a, {}).items():
                for y, v in col.get(b, {}).items():
                    lhs[(x, y)] = lhs.get((x, y), 0) + c * u * v
        rhs: dict = {}
        for i, u in img.items():
            for xy, c in H.comult.get(i, {}).items():
                rhs[xy] = rhs.get(xy, 0) + u * c
        if {k: v for k, v in lhs.items() if v} != {k: v for k, v in rhs.items() if v}:
            raise AutomorphismError(f"does not commute with the comultiplication at basis {j + 1}")
    for a in range(d):
        for b in range(d):
            if apply(mul({a: 1}, {b: 1})) != mul(apply({a: 1}), apply({b: 1})):
                raise AutomorphismError(f"does not commute with the multiplication at ({a + 1}, {b + 1})")


def group_automorphism_matrices(H, generators_only: bool = True) -> list[dict]:
    """Hopf automorphisms of KG (or of its dual) induced by group automorphisms.

    The permutation matrix of phi acts on both KG and K^G (on K^G through
    e^g -> e^{phi(g)}, i.e. precomposition with phi^{-1}).
    """
    from ..groups.core import automorphisms

    origin = H.origin
    if origin and origin[0] == "group":
        G = origin[1]
    elif origin and origin[0] == "dual" and origin[1] and origin[1][0] == "group":
        G = origin[1][1]
    else:
        raise AutomorphismError("automorphisms are only built for group algebras and their duals")
    perms = automorphisms(G)
    if generators_only:
        perms = _generating_subset(perms)
    return [{(p[g], g): 1 for g in range(G.order)} for p in perms]


def _generating_subset(perms: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    n = len(perms[0])
    ident = tuple(range(n))
    chosen: list[tuple[int, ...]] = []
    group = {ident}
    for p in perms:
        if p in group:
            continue
        chosen.append(p)
        frontier = list(group)
        group = set(group)
        while frontier:
            nxt = []
            for x in frontier:
                for g in chosen:
                    y = tuple(g[x[k]] for k in range(n))
                    if y not in group:
                        group.add(y)
                        nxt.append(y)
            frontier = nxt
    return chosen or [ident]


def _close_group(gens: list[dict], d: int, limit: int) -> list[dict]:
    ident = {(i, i): 1 for i in range(d)}

    def key(M):
        return tuple(sorted(M.items()))

    elems = {key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for X in frontier:
            for g in gens:
                Y = _matmul(g, X)
                k = key(Y)
                if k not in elems:
                    elems[k] = Y
                    nxt.append(Y)
                    if len(elems) > limit:
                        raise AutomorphismError(f"generated group exceeds {limit} elements")
        frontier = nxt
    return [elems[k] for k in sorted(elems)]


def _act(t: TensorElement, A: dict, A_dual: dict) -> TensorElement:
    i, j = t.shape
    for k in range(1, i + 1):
        t = t.apply_map("H", k, A)
    for k in range(1, j + 1):
        t = t.apply_map("D", k, A_dual)
    return t


def _dual_action(A: dict, d: int) -> dict:
    """Matrix of f -> f o A^{-1} on coordinate vectors of H*: the inverse transpose."""
    inv = _inverse(A, d)
    return {(j, i): c for (i, j), c in inv.items()}


def aut_fixed_space(H, autgens: Sequence, i: int, j: int, limit: int = MAX_AUT_GROUP) -> list[TensorElement]:
    """Basis of the subspace of H^{i,j} fixed by the group generated by ``autgens``."""
    d = H.dim
    gens = [_as_sparse(M) for M in autgens]
    for M in gens:
        check_automorphism(H, M)
    group = _close_group(gens, d, limit) if gens else [{(k, k): 1 for k in range(d)}]
    actions = [(A, _dual_action(A, d)) for A in group]
    ech = EchelonBasis()
    done: set[tuple[int, ...]] = set()
    for key in itertools.product(range(d), repeat=i + j):
        if key in done:
            continue
        e = TensorElement.from_dict(H, (i, j), {key: 1})
        total = TensorElement.zero(H, (i, j))
        for A, Ad in actions:
            total = total + _act(e, A, Ad)
        # the orbit of a basis vector under permutation actions averages to one vector
        if all(len(A) == d for A, _ in actions):
            done.update(k for k, _ in total.items())
        ech.add(total.flat())
    return _basis_tensors(H, (i, j), ech)


@dataclass
class SaturationReport:
    shape: tuple[int, int]
    span_dim: int
    fixed_dim: int
    saturated: bool
    containment_violations: int
    profile: list[tuple[int, int]] = field(default_factory=list)

    def format(self) -> str:
        status = "saturated" if self.saturated else "inconclusive at budget"
        return (
            f"shape {self.shape}: span dimension {self.span_dim}, fixed dimension {self.fixed_dim}: {status}; "
            f"containment violations: {self.containment_violations}; profile "
            + ", ".join(f"N={n}:{d}" for n, d in self.profile)
        )


class ContainmentError(AssertionError):
    pass


def saturation_check(H, autgens: Sequence, i: int, j: int, n_max: int, workers: int = 1) -> SaturationReport:
    """Compare the invariant span with the fixed space of the automorphisms.

    Every invariant must be fixed (a ContainmentError means a bug); equality of
    dimensions is reported, not required.
    """
    d = H.dim
    fixed = aut_fixed_space(H, autgens, i, j)
    fixed_ech = EchelonBasis()
    fixed_ech.extend(v.flat() for v in fixed)
    span = span_basis(H, i, j, n_max, stop_at=len(fixed), workers=workers)
    gens = [_as_sparse(M) for M in autgens]
    actions = [(A, _dual_action(A, d)) for A in gens]
    violations = 0
    for v in span.basis:
        if not fixed_ech.contains(v.flat()) or any(_act(v, A, Ad) != v for A, Ad in actions):
            violations += 1
    if violations:
        raise ContainmentError(f"{violations} invariant basis vectors are not fixed by the automorphisms")
    return SaturationReport((i, j), span.dim, len(fixed), span.dim == len(fixed), violations, span.profile)


# -- pairing ---------------------------------------------------------------------------------


def _pair_full(x: TensorElement, y: TensorElement) -> Scalar:
    """Contract x in H^{i,j} against y in H^{j,i}: H-factor t of x with H*-factor t of y and back."""
    i, j = x.shape
    yd = y.to_dict()
    total = 0
    for key, v in x.items():
        w = yd.get(key[i:] + key[:i])
        if w:
            total += v * w
    return total


def gram_rank(H, i: int, j: int, n_max: int, workers: int = 1) -> tuple[int, int, int]:
    """(rank of the pairing matrix, dim of the (i,j) span, dim of the (j,i) span)."""
    A = span_basis(H, i, j, n_max, workers=workers).basis
    B = span_basis(H, j, i, n_max, workers=workers).basis if (i, j) != (j, i) else A
    gram = [[_pair_full(x, y) for y in B] for x in A]
    return (rank(gram) if gram and gram[0] else 0), len(A), len(B)


# -- distinguishing and the field of invariant values -------------------------------------------------


@dataclass
class Verdict:
    distinguished: bool
    datum: CanonicalInvariant | None
    values: tuple | None
    checked: int
    budget: int

    def format(self) -> str:
        from ..scalars import format_scalar

        if not self.distinguished:
            return f"indistinguishable at budget N={self.budget} ({self.checked} invariants compared)"
        v1, v2 = self.values
        return (
            f"distinguished by {self.datum.render()} (N={self.datum.N}): "
            f"{format_scalar(v1)} vs {format_scalar(v2)} after {self.checked} invariants"
        )


def distinguish(H1, H2, n_max: int, workers: int = 1) -> Verdict:
    """First scalar invariant (in canonical order) on which H1 and H2 differ."""
    checked = 0
    data = list(enumerate_canonical(0, 0, n_max))
    first = evaluate_many(H1, data, workers=workers)
    second = evaluate_many(H2, data, workers=workers)
    for (c, v1), (_, v2) in zip(first, second):
        checked += 1
        x, y = v1.scalar_value(), v2.scalar_value()
        if x != y:
            return Verdict(True, c, (x, y), checked, n_max)
    return Verdict(False, None, None, checked, n_max)


def k0_generators(H, n_max: int, workers: int = 1) -> list[tuple[CanonicalInvariant, Scalar]]:
    """Distinct scalar invariant values up to the budget, each with its first datum."""
    out = []
    seen: set = set()
    for c, v in evaluate_many(H, enumerate_canonical(0, 0, n_max), workers=workers):
        x = v.scalar_value()
        if x not in seen:
            seen.add(x)
            out.append((c, x))
    return out
