"""Canonical data for basic invariants and their deterministic enumeration.

A datum takes ``a`` copies of an H-side generator (normally the integral l)
split into ``comps_H`` Sweedler legs and ``b`` copies of an H*-side generator
(normally lam) split into ``comps_D`` legs.  ``sigma[t-1]`` is the H*-leg that
H-leg t is paired with, or 0 when the leg is left open.  Open legs are output
in the orders ``out_H`` and ``out_D``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .expr import Gen, InvariantExpr, Op

__all__ = [
    "CanonicalInvariant",
    "compositions",
    "enumerate_canonical",
    "count_canonical",
    "compile_invariant",
    "compile_staged",
]


@dataclass(frozen=True)
class CanonicalInvariant:
    a: int
    b: int
    comps_H: tuple[int, ...]
    comps_D: tuple[int, ...]
    sigma: tuple[int, ...]
    out_H: tuple[int, ...] = ()
    out_D: tuple[int, ...] = ()
    gens_H: tuple[str, ...] = ()
    gens_D: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.gens_H:
            object.__setattr__(self, "gens_H", ("L",) * self.a)
        if not self.gens_D:
            object.__setattr__(self, "gens_D", ("Lam",) * self.b)
        if len(self.comps_H) != self.a or len(self.comps_D) != self.b:
            raise ValueError("composition lengths must equal the copy counts")
        if any(m < 1 for m in self.comps_H + self.comps_D):
            raise ValueError("compositions must be positive")
        if len(self.sigma) != self.legs_H:
            raise ValueError("sigma must assign every H-leg")
        paired = [s for s in self.sigma if s]
        if len(set(paired)) != len(paired) or any(not 1 <= s <= self.legs_D for s in paired):
            raise ValueError("sigma must be injective into the H*-legs")
        open_h = sorted(t + 1 for t, s in enumerate(self.sigma) if not s)
        open_d = sorted(set(range(1, self.legs_D + 1)) - set(paired))
        if sorted(self.out_H) != open_h or sorted(self.out_D) != open_d:
            raise ValueError("output orders must list exactly the open legs")
        if len(self.gens_H) != self.a or len(self.gens_D) != self.b:
            raise ValueError("one generator per copy")

    @property
    def legs_H(self) -> int:
        return sum(self.comps_H)

    @property
    def legs_D(self) -> int:
        return sum(self.comps_D)

    @property
    def pairs(self) -> int:
        return sum(1 for s in self.sigma if s)

    @property
    def N(self) -> int:
        return max(self.legs_H, self.legs_D)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.out_H), len(self.out_D)

    def sort_key(self) -> tuple:
        return (self.N, self.a, self.b, self.comps_H, self.comps_D, self.sigma, self.out_H, self.out_D, self.gens_H, self.gens_D)

    def h_owner(self) -> list[tuple[int, int]]:
        """(copy, leg) for every H-leg, both 1-based."""
        return [(c + 1, k + 1) for c, m in enumerate(self.comps_H) for k in range(m)]

    def d_owner(self) -> list[tuple[int, int]]:
        return [(c + 1, k + 1) for c, m in enumerate(self.comps_D) for k in range(m)]

    def render(self) -> str:
        """Readable form such as ``Lam1(L1_1 L1_2)``; open legs print as ``_``."""
        hown = self.h_owner()
        back = {s: t for t, s in enumerate(self.sigma, 1) if s}
        name_h = ["L" if g == "L" else g.split()[1] for g in self.gens_H]
        name_d = ["Lam" if g == "Lam" else g.split()[1] for g in self.gens_D]
        parts = []
        v = 1
        for u, k in enumerate(self.comps_D):
            legs = []
            for _ in range(k):
                t = back.get(v)
                if t is None:
                    legs.append("_")
                else:
                    c, leg = hown[t - 1]
                    legs.append(f"{name_h[c - 1]}{c}_{leg}")
                v += 1
            parts.append(f"{name_d[u]}{u + 1}({' '.join(legs)})")
        text = " ".join(parts)
        if self.out_H:
            outs = " ".join(f"{name_h[hown[t - 1][0] - 1]}{hown[t - 1][0]}_{hown[t - 1][1]}" for t in self.out_H)
            text = f"{text} (x) [{outs}]" if text else f"[{outs}]"
        if self.out_D:
            down = self.d_owner()
            outs = " ".join(f"{name_d[down[v - 1][0] - 1]}{down[v - 1][0]}_{down[v - 1][1]}" for v in self.out_D)
            text = f"{text} (x) [{outs}]*" if text else f"[{outs}]*"
        return text

    def to_json(self) -> dict:
        return {
            "a": self.a, "b": self.b, "comps_H": list(self.comps_H), "comps_D": list(self.comps_D),
            "sigma": list(self.sigma), "out_H": list(self.out_H), "out_D": list(self.out_D),
            "gens_H": list(self.gens_H), "gens_D": list(self.gens_D), "render": self.render(),
        }


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` positive parts, lexicographically."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _sigmas(m_h: int, m_d: int, open_h: int) -> Iterator[tuple[int, ...]]:
    """Partial injections {1..m_h} -> {1..m_d} with exactly open_h zeros, lexicographically."""

    def rec(t: int, used: frozenset, zeros: int, acc: tuple):
        if t == m_h:
            if zeros == open_h:
                yield acc
            return
        remaining = m_h - t
        if zeros < open_h:
            yield from rec(t + 1, used, zeros + 1, acc + (0,))
        if remaining > open_h - zeros:
            for s in range(1, m_d + 1):
                if s not in used:
                    yield from rec(t + 1, used | {s}, zeros, acc + (s,))

    yield from rec(0, frozenset(), 0, ())


def _copies(legs: int) -> Iterator[int]:
    return iter(range(1, legs + 1)) if legs else iter([0])


def enumerate_canonical(
    i: int,
    j: int,
    n_max: int,
    gens_H: Sequence[str] = ("L",),
    gens_D: Sequence[str] = ("Lam",),
    n_min: int = 1,
) -> Iterator[CanonicalInvariant]:
    """All canonical data of output shape (i, j) with N <= n_max, in canonical order."""
    for N in range(max(n_min, 1, max(i, j)), n_max + 1):
        P = N - max(i, j)
        m_h, m_d = P + i, P + j
        for a in _copies(m_h):
            for b in _copies(m_d):
                for ch in compositions(m_h, a):
                    for cd in compositions(m_d, b):
                        for sigma in _sigmas(m_h, m_d, i):
                            open_h = [t + 1 for t, s in enumerate(sigma) if not s]
                            open_d = sorted(set(range(1, m_d + 1)) - set(sigma))
                            for oh in itertools.permutations(open_h):
                                for od in itertools.permutations(open_d):
                                    for gh in itertools.product(gens_H, repeat=a):
                                        for gd in itertools.product(gens_D, repeat=b):
                                            yield CanonicalInvariant(a, b, ch, cd, sigma, oh, od, gh, gd)


def count_canonical(i: int, j: int, n_max: int) -> int:
    return sum(1 for _ in enumerate_canonical(i, j, n_max))


def _gens(c: CanonicalInvariant) -> tuple[Gen, ...]:
    return tuple(Gen.from_text(g) for g in c.gens_H) + tuple(Gen.from_text(g) for g in c.gens_D)


def _expand_h(c: CanonicalInvariant) -> list[Op]:
    ops = []
    start = 1
    for m in c.comps_H:
        ops.extend(Op("comultH", (start,)) for _ in range(m - 1))
        start += m
    return ops


def _perm_to(current: Sequence, target: Sequence) -> tuple[int, ...] | None:
    sigma = tuple(target.index(x) + 1 for x in current)
    return None if sigma == tuple(range(1, len(sigma) + 1)) else sigma


def compile_invariant(c: CanonicalInvariant) -> InvariantExpr:
    """Expression for the datum: expand every H-side copy, then consume the H*-side
    copies leg by leg (each leg split off and paired at once)."""
    ops = _expand_h(c)
    back = {s: t for t, s in enumerate(c.sigma, 1) if s}
    h_list = list(range(1, c.legs_H + 1))
    d_list: list[tuple[str, int]] = [("copy", u) for u in range(c.b)]
    v = 1
    for u, k in enumerate(c.comps_D):
        for leg in range(k):
            q = d_list.index(("copy", u)) + 1
            t = back.get(v)
            last = leg == k - 1
            if not last:
                ops.append(Op("comultD", (q,)))
                d_list.insert(q - 1, ("leg", v))
            if t is not None:
                ops.append(Op("pair", (h_list.index(t) + 1, q)))
                h_list.remove(t)
                d_list.pop(q - 1)
            elif last:
                d_list[q - 1] = ("leg", v)
            v += 1
    sh = _perm_to(h_list, list(c.out_H))
    if sh:
        ops.append(Op("permH", sh))
    sd = _perm_to([x for _, x in d_list], list(c.out_D))
    if sd:
        ops.append(Op("permD", sd))
    return InvariantExpr(_gens(c), tuple(ops))


def compile_staged(c: CanonicalInvariant) -> InvariantExpr:
    """Literal form: expand both sides fully, line the paired legs up, then pair."""
    ops = _expand_h(c)
    start = 1
    for k in c.comps_D:
        ops.extend(Op("comultD", (start,)) for _ in range(k - 1))
        start += k
    paired = [t for t, s in enumerate(c.sigma, 1) if s]
    target_h = paired + list(c.out_H)
    target_d = [c.sigma[t - 1] for t in paired] + list(c.out_D)
    sh = _perm_to(list(range(1, c.legs_H + 1)), target_h)
    if sh:
        ops.append(Op("permH", sh))
    sd = _perm_to(list(range(1, c.legs_D + 1)), target_d)
    if sd:
        ops.append(Op("permD", sd))
    ops.extend(Op("pair", (1, 1)) for _ in paired)
    return InvariantExpr(_gens(c), tuple(ops))
