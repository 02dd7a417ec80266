"""Finite groups by multiplication table and finitely presented groups."""

from __future__ import annotations

import itertools
import json
import math
import re
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Sequence

import numpy as np

__all__ = [
    "FinGroup",
    "FpGroup",
    "GroupError",
    "BudgetExceeded",
    "named_group",
    "count_homs",
    "automorphisms",
    "normal_subgroups",
    "cayley_presentation",
    "isomorphic_groups",
    "IsoVerdict",
    "BUNDLED_GROUPS",
]

# brute-force ceilings; callers may override per call
MAX_ASSIGNMENTS = 10**7
MAX_AUT_CANDIDATES = 10**6


class GroupError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class FinGroup:
    """A finite group given by its (0-based) multiplication table.

    ``table[a][b]`` is the index of the product ``a*b``.  ``elements`` keeps
    the concrete objects the table was built from (when known) so bundled
    character tables can be evaluated on them.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        name: str = "G",
        labels: Sequence[str] | None = None,
        elements: Sequence[Hashable] | None = None,
        kind: tuple = (),
        check: bool = True,
    ):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = n = len(self.table)
        self.name = name
        self.labels = tuple(labels) if labels is not None else tuple(str(i + 1) for i in range(n))
        self.elements = tuple(elements) if elements is not None else None
        self.kind = kind
        if n == 0 or any(len(row) != n for row in self.table):
            raise GroupError("multiplication table must be square and non-empty")
        if any(not 0 <= x < n for row in self.table for x in row):
            raise GroupError("table entry out of range")
        ident = [e for e in range(n) if all(self.table[e][a] == a == self.table[a][e] for a in range(n))]
        if not ident:
            raise GroupError("no identity element")
        self.identity = ident[0]
        inv = []
        for a in range(n):
            row = self.table[a]
            cand = [b for b in range(n) if row[b] == self.identity and self.table[b][a] == self.identity]
            if not cand:
                raise GroupError(f"element {self.labels[a]} has no inverse")
            inv.append(cand[0])
        self.inverse = tuple(inv)
        if check and n <= 64:
            t = self.np_table
            left = t[t[:, :, None], np.arange(n)[None, None, :]]  # (ab)c
            right = t[np.arange(n)[:, None, None], t[None, :, :]]  # a(bc)
            if not np.array_equal(left, right):
                bad = np.argwhere(left != right)[0]
                raise GroupError(f"table is not associative at {tuple(int(x) + 1 for x in bad)}")

    @classmethod
    def from_elements(
        cls,
        elements: Sequence[Hashable],
        mul: Callable,
        name: str,
        label: Callable[[Hashable], str] = str,
        kind: tuple = (),
    ) -> "FinGroup":
        index = {x: i for i, x in enumerate(elements)}
        if len(index) != len(elements):
            raise GroupError("duplicate elements")
        try:
            table = [[index[mul(a, b)] for b in elements] for a in elements]
        except KeyError as exc:
            raise GroupError(f"element set not closed under multiplication: {exc}") from None
        return cls(table, name=name, labels=[label(x) for x in elements], elements=elements, kind=kind)

    def __repr__(self):
        return f"FinGroup({self.name}, order={self.order})"

    def __len__(self):
        return self.order

    @cached_property
    def np_table(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    @cached_property
    def np_inverse(self) -> np.ndarray:
        return np.array(self.inverse, dtype=np.int64)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        x = self.identity
        for _ in range(k):
            x = self.table[x][a]
        return x

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(self.element_order(a) for a in range(self.order)))

    def is_abelian(self) -> bool:
        t = self.np_table
        return bool(np.array_equal(t, t.T))

    def conjugate(self, x: int, h: int) -> int:
        """h x h^-1"""
        return self.table[self.table[h][x]][self.inverse[h]]

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        out = []
        for x in range(self.order):
            if x in seen:
                continue
            cls_ = sorted({self.conjugate(x, h) for h in range(self.order)})
            seen.update(cls_)
            out.append(tuple(cls_))
        return tuple(out)

    def subgroup_closure(self, gens: Sequence[int]) -> frozenset[int]:
        elems = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(elems)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily and deterministically."""
        gens: list[int] = []
        span = frozenset({self.identity})
        by_order = sorted(range(self.order), key=lambda a: (-self.element_order(a), a))
        while len(span) < self.order:
            best = None
            for a in by_order:
                if a in span:
                    continue
                size = len(self.subgroup_closure(gens + [a]))
                if best is None or size > best[0]:
                    best = (size, a)
            gens.append(best[1])
            span = self.subgroup_closure(gens)
        return tuple(gens)

    def count_solutions(self, predicate: Callable[[int], bool]) -> int:
        return sum(1 for a in range(self.order) if predicate(a))

    # -- serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "order": self.order,
            "name": self.name,
            "labels": list(self.labels),
            "table": [[x + 1 for x in row] for row in self.table],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FinGroup":
        try:
            table = [[int(x) - 1 for x in row] for row in data["table"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise GroupError(f"malformed group file: {exc}") from None
        if "order" in data and int(data["order"]) != len(table):
            raise GroupError("order does not match table size")
        if data.get("name") in _NAMED_KINDS_CACHE:
            # rebuild the bundled group so its character table stays available
            G = named_group(data["name"])
            if G.table == tuple(tuple(r) for r in table):
                return G
        return cls(table, name=data.get("name", "G"), labels=data.get("labels"))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def direct_product(G: FinGroup, H: FinGroup, name: str | None = None) -> FinGroup:
    elems = [(a, b) for a in range(G.order) for b in range(H.order)]
    labels = {(a, b): f"({G.labels[a]},{H.labels[b]})" for a, b in elems}
    return FinGroup.from_elements(
        elems,
        lambda x, y: (G.table[x[0]][y[0]], H.table[x[1]][y[1]]),
        name or f"{G.name}x{H.name}",
        label=labels.__getitem__,
        kind=("product", G, H),
    )


# -- named families ------------------------------------------------------------


def _cyclic(n: int) -> FinGroup:
    def label(k):
        return "e" if k == 0 else ("g" if k == 1 else f"g^{k}")

    return FinGroup.from_elements(list(range(n)), lambda a, b: (a + b) % n, f"C{n}", label, ("cyclic", n))


def _dihedral(n: int) -> FinGroup:
    """Dihedral group of order 2n; element (k, s) is r^k s^s."""
    elems = [(k, s) for s in (0, 1) for k in range(n)]

    def mul(x, y):
        k1, s1 = x
        k2, s2 = y
        return ((k1 + (-1) ** s1 * k2) % n, (s1 + s2) % 2)

    def label(x):
        k, s = x
        r = "" if k == 0 else ("r" if k == 1 else f"r^{k}")
        out = r + ("s" if s else "")
        return out or "e"

    return FinGroup.from_elements(elems, mul, f"D{2 * n}", label, ("dihedral", n))


def _dicyclic(m: int) -> FinGroup:
    """Dicyclic group of order 4m: <a, x | a^2m, x^2 = a^m, x a x^-1 = a^-1>."""
    n = 2 * m
    elems = [(k, s) for s in (0, 1) for k in range(n)]

    def mul(x, y):
        k1, s1 = x
        k2, s2 = y
        k = k1 + (-1) ** s1 * k2 + (m if s1 and s2 else 0)
        return (k % n, (s1 + s2) % 2)

    def label(x):
        k, s = x
        a = "" if k == 0 else ("a" if k == 1 else f"a^{k}")
        out = a + ("x" if s else "")
        return out or "e"

    name = "Q8" if m == 2 else f"Dic{4 * m}"
    return FinGroup.from_elements(elems, mul, name, label, ("dicyclic", m))


def _quaternion() -> FinGroup:
    units = ("1", "i", "j", "k")
    prod = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for u in units for s in (1, -1)]

    def mul(x, y):
        sg, u = prod[(x[1], y[1])]
        return (x[0] * y[0] * sg, u)

    def label(x):
        return ("-" if x[0] < 0 else "") + x[1]

    return FinGroup.from_elements(elems, mul, "Q8", label, ("quaternion",))


def _perm_label(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def _perm_mul(p, q):
    # (p*q)(i) = p(q(i)): apply q first
    return tuple(p[i] for i in q)


def _perm_sign(p) -> int:
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _symmetric(n: int) -> FinGroup:
    elems = list(itertools.permutations(range(n)))
    return FinGroup.from_elements(elems, _perm_mul, f"S{n}", _perm_label, ("symmetric", n))


def _alternating(n: int) -> FinGroup:
    elems = [p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1]
    return FinGroup.from_elements(elems, _perm_mul, f"A{n}", _perm_label, ("alternating", n))


_SPEC = re.compile(r"^(C|D|S|A|Q|Dic)(\d+)$")
_NAMED_KINDS_CACHE: dict[str, FinGroup] = {}


def named_group(spec: str) -> FinGroup:
    """Bundled families: ``Cn``, ``D2n`` (order 2n), ``Q8``, ``Dic4m``, ``Sn``, ``An``,
    and direct products written ``C2xC4``."""
    key = spec.strip().replace("×", "x").replace(" ", "")
    if key in ("trivial", "1"):
        key = "C1"
    if key in _NAMED_KINDS_CACHE:
        return _NAMED_KINDS_CACHE[key]
    parts = key.split("x")
    if len(parts) > 1:
        G = named_group(parts[0])
        for p in parts[1:]:
            G = direct_product(G, named_group(p))
        G.name = key
    else:
        m = _SPEC.match(key)
        if not m:
            raise GroupError(f"unknown group spec {spec!r}")
        fam, k = m.group(1), int(m.group(2))
        if fam == "C" and k >= 1:
            G = _cyclic(k)
        elif fam == "D" and k >= 2 and k % 2 == 0:
            G = _dihedral(k // 2)
        elif fam == "Q" and k == 8:
            G = _quaternion()
        elif fam == "Dic" and k >= 8 and k % 4 == 0:
            G = _dicyclic(k // 4)
        elif fam == "S" and 1 <= k <= 5:
            G = _symmetric(k)
        elif fam == "A" and 3 <= k <= 5:
            G = _alternating(k)
        else:
            raise GroupError(f"unknown group spec {spec!r}")
    _NAMED_KINDS_CACHE[key] = G
    return G


# every group of order <= 12 up to isomorphism, plus S4
BUNDLED_GROUPS = (
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C2xC4",
    "C2xC2xC2", "D8", "Q8", "C9", "C3xC3", "C10", "D10", "C11", "C12", "C2xC6",
    "D12", "A4", "Dic12", "S4",
)


# -- finitely presented groups ---------------------------------------------------


@dataclass(frozen=True)
class FpGroup:
    """Generators x_1..x_r and relator words.

    A word is a tuple of non-zero ints: ``k`` stands for generator k (1-based),
    ``-k`` for its inverse.
    """

    rank: int
    relators: tuple[tuple[int, ...], ...] = ()
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if not self.names:
            object.__setattr__(self, "names", _default_names(self.rank))
        object.__setattr__(self, "relators", tuple(tuple(w) for w in self.relators))
        if len(self.names) != self.rank:
            raise GroupError("generator names do not match rank")
        for w in self.relators:
            for letter in w:
                if letter == 0 or abs(letter) > self.rank:
                    raise GroupError(f"relator letter {letter} out of range")

    @classmethod
    def parse(cls, text: str) -> "FpGroup":
        """Parse ``"gens: x,y; rels: x y y x y y y, y x^4 y x^5;"``.

        ``^k`` repeats a letter (``^-k`` repeats its inverse); a trailing
        apostrophe inverts.  Letters may be juxtaposed without spaces when the
        generator names allow an unambiguous longest-match split.
        """
        m = re.fullmatch(r"\s*gens\s*:\s*([^;]*);\s*(?:rels\s*:\s*([^;]*);?)?\s*", text)
        if not m:
            raise GroupError(f"cannot parse presentation {text!r}")
        names = tuple(s.strip() for s in m.group(1).split(",") if s.strip())
        if len(set(names)) != len(names):
            raise GroupError("duplicate generator names")
        rels_text = m.group(2) or ""
        relators = []
        for chunk in rels_text.split(","):
            chunk = chunk.strip()
            if chunk:
                relators.append(_parse_word(chunk, names))
        return cls(len(names), tuple(relators), names)

    def format(self) -> str:
        rels = ", ".join(self.format_word(w) for w in self.relators)
        return f"gens: {','.join(self.names)}; rels: {rels};"

    def format_word(self, word: Sequence[int]) -> str:
        out: list[str] = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.names[abs(word[i]) - 1]
            run = j - i
            if word[i] < 0:
                out.append(f"{name}'" if run == 1 else f"{name}^-{run}")
            else:
                out.append(name if run == 1 else f"{name}^{run}")
            i = j
        return " ".join(out) if out else "1"


def _default_names(r: int) -> tuple[str, ...]:
    base = "xyzwuvst"
    if r <= len(base):
        return tuple(base[:r])
    return tuple(f"x{i + 1}" for i in range(r))


_LETTER = re.compile(r"\s*([A-Za-z][A-Za-z0-9_]*?)('?)(?:\^(-?\d+))?('?)\s*")


def _parse_word(text: str, names: Sequence[str]) -> tuple[int, ...]:
    if text.strip() in ("1", "e"):
        return ()
    index = {n: i + 1 for i, n in enumerate(names)}
    by_len = sorted(names, key=len, reverse=True)
    word: list[int] = []
    pos, s = 0, text
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        name = next((n for n in by_len if s.startswith(n, pos)), None)
        if name is None:
            raise GroupError(f"unknown generator in word {text!r} at column {pos + 1}")
        pos += len(name)
        inv = False
        if pos < len(s) and s[pos] == "'":
            inv = True
            pos += 1
        power = 1
        pm = re.match(r"\^(-?\d+)", s[pos:])
        if pm:
            power = int(pm.group(1))
            pos += pm.end()
        if pos < len(s) and s[pos] == "'":
            inv = not inv
            pos += 1
        letter = -index[name] if inv else index[name]
        if power < 0:
            letter, power = -letter, -power
        word.extend([letter] * power)
    return tuple(word)


def _eval_words(G: FinGroup, relators, assignments: np.ndarray) -> np.ndarray:
    """Boolean mask of assignment rows satisfying every relator."""
    t, inv = G.np_table, G.np_inverse
    mask = np.ones(assignments.shape[0], dtype=bool)
    for w in relators:
        val = np.full(assignments.shape[0], G.identity, dtype=np.int64)
        for letter in w:
            g = assignments[:, abs(letter) - 1]
            if letter < 0:
                g = inv[g]
            val = t[val, g]
        mask &= val == G.identity
    return mask


def _count_block(args) -> int:
    G, relators, r, first = args
    n = G.order
    rest = r - 1
    if rest:
        grid = np.indices((n,) * rest).reshape(rest, -1).T
    else:
        grid = np.zeros((1, 0), dtype=np.int64)
    assign = np.empty((grid.shape[0], r), dtype=np.int64)
    assign[:, 0] = first
    assign[:, 1:] = grid
    return int(_eval_words(G, relators, assign).sum())


def count_homs(P: FpGroup, G: FinGroup, max_assignments: int = MAX_ASSIGNMENTS, workers: int = 1) -> int:
    """#Hom(P, G) by brute force over all generator assignments."""
    n, r = G.order, P.rank
    if r == 0:
        return 1
    if n**r > max_assignments:
        raise BudgetExceeded(f"{n}^{r} assignments exceed budget {max_assignments}")
    jobs = [(G, P.relators, r, first) for first in range(n)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_count_block, jobs))
    return sum(map(_count_block, jobs))


# -- automorphisms ---------------------------------------------------------------


def _extend_hom(G: FinGroup, H: FinGroup, gens: Sequence[int], images: Sequence[int]) -> list[int] | None:
    """Extend gens -> images to a homomorphism G -> H, or None if impossible."""
    phi = [-1] * G.order
    phi[G.identity] = H.identity
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        for s, t in zip(gens, images):
            y = G.table[x][s]
            img = H.table[phi[x]][t]
            if phi[y] == -1:
                phi[y] = img
                queue.append(y)
            elif phi[y] != img:
                return None
    if -1 in phi:
        return None
    # BFS consistency checks only tree-adjacent products; verify fully
    for a in range(G.order):
        for b in gens:
            if phi[G.table[a][b]] != H.table[phi[a]][phi[b]]:
                return None
    return phi


def automorphisms(G: FinGroup, max_candidates: int = MAX_AUT_CANDIDATES) -> list[tuple[int, ...]]:
    """All automorphisms of G as permutation tuples ``phi[g]``, identity first."""
    gens = G.generators
    orders = [G.element_order(a) for a in range(G.order)]
    cands = [[b for b in range(G.order) if orders[b] == orders[s]] for s in gens]
    total = math.prod(len(c) for c in cands)
    if total > max_candidates:
        raise BudgetExceeded(f"{total} candidate generator images exceed budget {max_candidates}")
    out = []
    for images in itertools.product(*cands):
        phi = _extend_hom(G, G, gens, images)
        if phi is not None and len(set(phi)) == G.order:
            out.append(tuple(phi))
    out.sort()
    ident = tuple(range(G.order))
    out.remove(ident)
    return [ident] + out


# -- normal subgroups and the inclusion-exclusion certificate --------------------------


def normal_subgroups(G: FinGroup) -> list[frozenset[int]]:
    def normal_closure(elems) -> frozenset[int]:
        conj = {G.conjugate(x, h) for x in elems for h in range(G.order)}
        return G.subgroup_closure(sorted(conj))

    found = {normal_closure([G.identity])}
    for x in range(G.order):
        found.add(normal_closure([x]))
    changed = True
    while changed:
        changed = False
        cur = list(found)
        for A in cur:
            for B in cur:
                J = G.subgroup_closure(sorted(A | B))
                if J not in found:
                    found.add(J)
                    changed = True
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def cayley_presentation(G: FinGroup, gens: Sequence[int] | None = None) -> tuple[FpGroup, list[tuple[int, ...]]]:
    """A finite presentation of G read off its Cayley graph.

    Returns the presentation and, for each element, a word (in the generators)
    representing it.
    """
    gens = list(G.generators if gens is None else gens)
    words: list[tuple[int, ...] | None] = [None] * G.order
    words[G.identity] = ()
    queue = deque([G.identity])
    tree: set[tuple[int, int]] = set()
    while queue:
        x = queue.popleft()
        for k, s in enumerate(gens):
            y = G.table[x][s]
            if words[y] is None:
                words[y] = words[x] + (k + 1,)
                tree.add((x, k))
                queue.append(y)
    if any(w is None for w in words):
        raise GroupError("given elements do not generate the group")
    relators = []
    for x in range(G.order):
        for k, s in enumerate(gens):
            if (x, k) in tree:
                continue
            y = G.table[x][s]
            rel = words[x] + (k + 1,) + tuple(-c for c in reversed(words[y]))
            relators.append(_free_reduce(rel))
    relators = sorted({r for r in relators if r}, key=lambda w: (len(w), w))
    return FpGroup(len(gens), tuple(relators)), words


def _free_reduce(word: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for c in word:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


@dataclass
class IsoVerdict:
    isomorphic: bool
    injective_homs: int | None
    reason: str
    terms: list[tuple[int, int, int]] = field(default_factory=list)  # (|N|, mobius, #Hom(G2/N, G1))


def isomorphic_groups(G1: FinGroup, G2: FinGroup, max_assignments: int = MAX_ASSIGNMENTS) -> IsoVerdict:
    """Decide G1 ~= G2 by counting injective homs G2 -> G1 via Moebius inversion
    over the lattice of normal subgroups of G2."""
    if G1.order != G2.order:
        return IsoVerdict(False, None, f"orders differ: {G1.order} != {G2.order}")
    P, words = cayley_presentation(G2)
    normals = normal_subgroups(G2)
    mu: dict[frozenset[int], int] = {}
    for N in normals:
        mu[N] = 1 if len(N) == 1 else -sum(mu[K] for K in normals if K < N)
    terms = []
    total = 0
    for N in normals:
        if mu[N] == 0:
            continue
        extra = tuple(words[x] for x in sorted(N) if words[x])
        Q = FpGroup(P.rank, P.relators + extra, P.names)
        homs = count_homs(Q, G1, max_assignments=max_assignments)
        terms.append((len(N), mu[N], homs))
        total += mu[N] * homs
    return IsoVerdict(total > 0, total, "injective homomorphism count", terms)
