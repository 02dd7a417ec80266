"""Bundled character tables for the named group families."""

from __future__ import annotations

from functools import lru_cache

from ..characters import CharacterTable, make_table
from ..scalars import lift_conductor, zeta
from .core import FinGroup, GroupError, _perm_sign

__all__ = ["character_table", "dual_character_table", "has_character_table", "class_function_check"]


def _root(n: int, k: int, conductor: int):
    """zeta_n^k expressed with the given conductor (n | conductor)."""
    return lift_conductor(zeta(n) ** (k % n), conductor)


def _rows_for(G: FinGroup, conductor: int) -> list:
    kind = G.kind[0] if G.kind else None
    n = G.order
    elems = G.elements
    if kind == "cyclic":
        m = G.kind[1]
        return [(f"chi{j}", 1, [_root(m, j * x, conductor) for x in elems]) for j in range(m)]
    if kind == "product":
        A, B = G.kind[1], G.kind[2]
        ra, rb = _rows_for(A, conductor), _rows_for(B, conductor)
        rows = []
        for na, da, va in ra:
            for nb, db, vb in rb:
                vals = [va[x] * vb[y] for x, y in elems]
                rows.append((f"{na}.{nb}", da * db, vals))
        return rows
    if kind == "dihedral":
        m = G.kind[1]
        rows = [
            ("triv", 1, [1] * n),
            ("sign", 1, [(-1) ** s for k, s in elems]),
        ]
        if m % 2 == 0:
            rows.append(("rho", 1, [(-1) ** k for k, s in elems]))
            rows.append(("rho.sign", 1, [(-1) ** (k + s) for k, s in elems]))
        for h in range(1, (m - 1) // 2 + 1):
            vals = [
                (_root(m, h * k, conductor) + _root(m, -h * k, conductor)) if s == 0 else 0
                for k, s in elems
            ]
            rows.append((f"std{h}", 2, vals))
        return rows
    if kind == "dicyclic":
        m = G.kind[1]
        rows = []
        for alpha in (1, -1):
            target = alpha**m
            # beta with beta^2 = alpha^m: +-1 or +-i
            betas = [1, -1] if target == 1 else [_root(4, 1, conductor), _root(4, 3, conductor)]
            for t, beta in enumerate(betas):
                name = f"lin{'+' if alpha == 1 else '-'}{t}"
                rows.append((name, 1, [alpha**k * (beta if s else 1) for k, s in elems]))
        for h in range(1, m):
            vals = [
                (_root(2 * m, h * k, conductor) + _root(2 * m, -h * k, conductor)) if s == 0 else 0
                for k, s in elems
            ]
            rows.append((f"std{h}", 2, vals))
        return rows
    if kind == "quaternion":
        signs = {
            "i": {"1": 1, "i": 1, "j": -1, "k": -1},
            "j": {"1": 1, "i": -1, "j": 1, "k": -1},
            "k": {"1": 1, "i": -1, "j": -1, "k": 1},
        }
        rows = [("triv", 1, [1] * n)]
        for u in ("i", "j", "k"):
            rows.append((f"chi_{u}", 1, [signs[u][x[1]] for x in elems]))
        rows.append(("std", 2, [2 * x[0] if x[1] == "1" else 0 for x in elems]))
        return rows
    if kind == "symmetric" and G.kind[1] in (1, 2, 3, 4):
        deg = G.kind[1]
        fix = [sum(1 for i, v in enumerate(p) if i == v) for p in elems]
        sign = [_perm_sign(p) for p in elems]
        if deg == 1:
            return [("triv", 1, [1])]
        rows = [("triv", 1, [1] * n), ("sign", 1, sign)]
        if deg == 2:
            return rows
        rows.append(("std", deg - 1, [f - 1 for f in fix]))
        if deg == 4:
            rows.append(("std.sign", 3, [(f - 1) * s for f, s in zip(fix, sign)]))
            rows.append(("two", 2, [_s4_two(p) for p in elems]))
        return rows
    if kind == "alternating" and G.kind[1] == 4:
        t = next(i for i, p in enumerate(elems) if p == (1, 2, 0, 3))
        v4 = {i for i, p in enumerate(elems) if G.element_order(i) <= 2}
        coset = []
        for x in range(n):
            k = next(k for k in range(3) if G.table[x][G.power(t, -k)] in v4)
            coset.append(k)
        fix = [sum(1 for i, v in enumerate(p) if i == v) for p in elems]
        rows = [(f"omega{j}" if j else "triv", 1, [_root(3, j * k, conductor) for k in coset]) for j in range(3)]
        rows.append(("std", 3, [f - 1 for f in fix]))
        return rows
    raise GroupError(f"no bundled character table for {G.name}")


def _s4_two(p) -> int:
    cycle_type = sorted(_cycle_lengths(p), reverse=True)
    return {(1, 1, 1, 1): 2, (2, 1, 1): 0, (2, 2): 2, (3, 1): -1, (4,): 0}[tuple(cycle_type)]


def _cycle_lengths(p) -> list[int]:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        out.append(length)
    return out


def has_character_table(G: FinGroup) -> bool:
    try:
        character_table(G)
    except GroupError:
        return False
    return True


@lru_cache(maxsize=None)
def _cached_table(G: FinGroup) -> CharacterTable:
    conductor = G.exponent
    return make_table(conductor, _rows_for(G, conductor))


def character_table(G: FinGroup) -> CharacterTable:
    """Irreducible characters of KG as functionals on the group basis."""
    if G.elements is None:
        raise GroupError(f"no bundled character table for {G.name}")
    return _cached_table(G)


def dual_character_table(G: FinGroup) -> CharacterTable:
    """Characters of the function algebra K^G as elements of KG.

    Every irreducible of K^G is one-dimensional (evaluation at a group
    element), so its character is that basis vector; the identity comes first.
    """
    order = [G.identity] + [g for g in range(G.order) if g != G.identity]
    rows = []
    for g in order:
        vals = [1 if h == g else 0 for h in range(G.order)]
        rows.append((f"ev{g + 1}", 1, vals))
    return make_table(1, rows)


def class_function_check(G: FinGroup, table: CharacterTable) -> bool:
    """Column orthogonality sanity check: sum_chi |chi(g)|^2 = |C_G(g)|."""
    n = G.order
    for g in range(n):
        cent = sum(1 for h in range(n) if G.table[g][h] == G.table[h][g])
        g_inv = G.inverse[g]
        total = sum(r.values[g] * r.values[g_inv] for r in table.irreps)
        if total != cent:
            return False
    return True
