"""Braid words acting on tensor powers of a quasitriangular Hopf algebra.

The braiding on the regular module is c(v (x) w) = R21-twisted flip:
c(v (x) w) = sum r2 w (x) r1 v for R = sum r1 (x) r2.  A word acts on D^(x)n
letter by letter, first letter first.
"""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping

from .groups.core import BudgetExceeded, FinGroup, FpGroup, count_homs
from .hopf import HopfError, HopfStructure, RMatrix
from .scalars import Scalar, format_scalar

__all__ = [
    "BraidWord",
    "BraidOperator",
    "braiding_operator",
    "apply_word",
    "braid_trace",
    "operators_equal",
    "yang_baxter_holds",
    "braid_relations",
    "CrosscheckReport",
    "homcount_crosscheck",
    "DEFAULT_STATE_BUDGET",
]

DEFAULT_STATE_BUDGET = 1 << 16

Pair = tuple[int, int]
Sparse = dict[Pair, Scalar]


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise ValueError("a braid needs at least one strand")
        for s in self.letters:
            if s == 0 or abs(s) >= self.strands:
                raise ValueError(f"generator {s} out of range for {self.strands} strands")

    @classmethod
    def parse(cls, text: str, strands: int | None = None) -> "BraidWord":
        """Read ``s1 s2' s1``; an apostrophe marks an inverse generator."""
        letters = []
        for tok in text.replace(",", " ").split():
            m = re.fullmatch(r"s(\d+)('?)", tok)
            if not m:
                raise ValueError(f"bad braid letter {tok!r}")
            k = int(m.group(1))
            letters.append(-k if m.group(2) else k)
        if strands is None:
            strands = max((abs(s) for s in letters), default=0) + 1
        return cls(strands, tuple(letters))

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, tuple(-s for s in reversed(self.letters)))

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.strands != self.strands:
            raise ValueError("strand counts differ")
        return BraidWord(self.strands, self.letters + other.letters)

    def format(self) -> str:
        return " ".join(f"s{abs(s)}" + ("'" if s < 0 else "") for s in self.letters) or "1"


@dataclass
class BraidOperator:
    """Sparse matrices of c and its inverse on D (x) D, keyed by input basis pair."""

    dim: int
    forward: dict[Pair, Sparse]
    backward: dict[Pair, Sparse]

    def letter(self, s: int) -> dict[Pair, Sparse]:
        return self.forward if s > 0 else self.backward


def _act(D: HopfStructure, R: Mapping[Pair, Scalar], p: int, q: int) -> Sparse:
    """R . (e_p (x) e_q) as a sparse element of D (x) D."""
    out: Sparse = {}
    for (r1, r2), c in R.items():
        left = D.multiply(D.basis_vector(r1), D.basis_vector(p))
        right = D.multiply(D.basis_vector(r2), D.basis_vector(q))
        for u, x in enumerate(left):
            if not x:
                continue
            for v, y in enumerate(right):
                if y:
                    key = (u, v)
                    out[key] = out.get(key, 0) + c * x * y
    return {k: v for k, v in out.items() if v}


def braiding_operator(D: HopfStructure, R: RMatrix | Mapping | None = None) -> BraidOperator:
    """c = flip o (R .) and c^-1 = (R^-1 .) o flip, with R^-1 = (S (x) id)(R)."""
    if R is None:
        R = D.rmatrix
    if R is None:
        raise HopfError(f"{D.name or 'algebra'} carries no R-matrix")
    coeffs = R.coeffs if isinstance(R, RMatrix) else R
    r_inv: dict = {}
    for (i, j), c in coeffs.items():
        for k, s in enumerate(D.apply_antipode(D.basis_vector(i))):
            if s:
                r_inv[(k, j)] = r_inv.get((k, j), 0) + c * s
    r_inv = {k: v for k, v in r_inv.items() if v}
    d = D.dim
    forward, backward = {}, {}
    for p, q in itertools.product(range(d), repeat=2):
        forward[(p, q)] = {(v, u): c for (u, v), c in _act(D, coeffs, p, q).items()}
        backward[(p, q)] = _act(D, r_inv, q, p)
    op = BraidOperator(d, forward, backward)
    for p, q in itertools.product(range(d), repeat=2):
        if _apply_pair(op.forward, _apply_pair(op.backward, {(p, q): 1})) != {(p, q): 1}:
            raise HopfError("R is not invertible: c o c^-1 differs from the identity")
    return op


def _apply_pair(table: Mapping[Pair, Sparse], vec: Mapping[Pair, Scalar]) -> Sparse:
    out: Sparse = {}
    for key, c in vec.items():
        for k2, x in table[key].items():
            out[k2] = out.get(k2, 0) + c * x
    return {k: v for k, v in out.items() if v}


def _apply_letter(op: BraidOperator, s: int, state: Mapping[tuple, Scalar]) -> dict:
    i = abs(s) - 1
    table = op.letter(s)
    out: dict = {}
    for key, c in state.items():
        for (u, v), x in table[(key[i], key[i + 1])].items():
            k2 = key[:i] + (u, v) + key[i + 2:]
            out[k2] = out.get(k2, 0) + c * x
    return {k: v for k, v in out.items() if v}


def apply_word(op: BraidOperator, w: BraidWord, state: Mapping[tuple, Scalar]) -> dict:
    """The word applied to a sparse vector of D^(x)n keyed by basis tuples."""
    cur = dict(state)
    for s in w.letters:
        cur = _apply_letter(op, s, cur)
    return cur


def _diagonal_sum(op: BraidOperator, w: BraidWord, starts: Iterable[tuple]) -> Scalar:
    total = 0
    for key in starts:
        total += apply_word(op, w, {key: 1}).get(key, 0)
    return total


def _chunk_worker(args) -> Scalar:
    op, w, starts = args
    return _diagonal_sum(op, w, starts)


def braid_trace(
    D: HopfStructure,
    R: RMatrix | Mapping | None,
    w: BraidWord,
    budget: int = DEFAULT_STATE_BUDGET,
    workers: int = 1,
    op: BraidOperator | None = None,
) -> Scalar:
    """Trace of the word on D^(x)n, summing diagonal entries basis state by basis state."""
    states = D.dim ** w.strands
    if states > budget:
        raise BudgetExceeded(f"{D.dim}^{w.strands} = {states} basis states exceed the budget {budget}")
    if not w.letters:
        return states
    if op is None:
        op = braiding_operator(D, R)
    starts = list(itertools.product(range(D.dim), repeat=w.strands))
    if workers <= 1:
        return _diagonal_sum(op, w, starts)
    size = -(-len(starts) // workers)
    chunks = [(op, w, starts[k:k + size]) for k in range(0, len(starts), size)]
    with ProcessPoolExecutor(workers) as pool:
        return sum(pool.map(_chunk_worker, chunks))


def operators_equal(op: BraidOperator, w1: BraidWord, w2: BraidWord) -> bool:
    """Whether two words act identically, tested on every basis vector."""
    if w1.strands != w2.strands:
        raise ValueError("strand counts differ")
    for key in itertools.product(range(op.dim), repeat=w1.strands):
        if apply_word(op, w1, {key: 1}) != apply_word(op, w2, {key: 1}):
            return False
    return True


def yang_baxter_holds(op: BraidOperator) -> bool:
    """(c (x) 1)(1 (x) c)(c (x) 1) = (1 (x) c)(c (x) 1)(1 (x) c) on D^(x)3."""
    return operators_equal(op, BraidWord(3, (1, 2, 1)), BraidWord(3, (2, 1, 2)))


def braid_relations(op: BraidOperator, strands: int) -> list[tuple[str, bool]]:
    """Every braid relation of B_n, plus s_i s_i' = 1, as (relation, holds)."""
    results = []
    ident = BraidWord(strands)
    for i in range(1, strands):
        w = BraidWord(strands, (i, -i))
        results.append((f"s{i} s{i}' = 1", operators_equal(op, w, ident)))
    for i in range(1, strands - 1):
        a, b = BraidWord(strands, (i, i + 1, i)), BraidWord(strands, (i + 1, i, i + 1))
        results.append((f"{a.format()} = {b.format()}", operators_equal(op, a, b)))
    for i in range(1, strands):
        for j in range(i + 2, strands):
            a, b = BraidWord(strands, (i, j)), BraidWord(strands, (j, i))
            results.append((f"{a.format()} = {b.format()}", operators_equal(op, a, b)))
    return results


@dataclass
class CrosscheckReport:
    trace: Scalar
    homs: int
    exponent: int
    count_side: int
    match: bool

    def format(self) -> str:
        verdict = "match" if self.match else "mismatch"
        return (
            f"trace = {format_scalar(self.trace)}\n"
            f"|G|^{self.exponent} * #Hom = {self.count_side} (#Hom = {self.homs})\n{verdict}"
        )


def homcount_crosscheck(G: FinGroup, w: BraidWord, P: FpGroup, a: int, budget: int = DEFAULT_STATE_BUDGET) -> CrosscheckReport:
    """Compare the braid trace on D(KG)^(x)n with |G|^a #Hom(P, G); informational only."""
    from .hopf import drinfeld_double

    D, R = drinfeld_double(G)
    trace = braid_trace(D, R, w, budget=budget)
    homs = count_homs(P, G)
    count_side = G.order**a * homs
    return CrosscheckReport(trace, homs, a, count_side, trace == count_side)
