"""A small language for basic invariants.

Grammar::

    expr := "gens:" gen ("," gen)* ";" op*
    gen  := "L" | "Lam" | "charH" IDENT | "charD" IDENT
    op   := "op:" body ";"
    body := "comultH" INT | "comultD" INT | "permH" PERM | "permD" PERM | "pair" INT INT
    PERM := "[" INT (" " INT)* "]"

``L`` and ``charH`` generators are factors of H, ``Lam`` and ``charD`` are
factors of H*; each side keeps the order in which its generators are listed.
Factor positions are 1-based and counted separately per side.  ``comultX k``
replaces factor k by its two legs at k and k+1.  ``permX [s1 .. sn]`` moves
factor t to position s_t.  ``pair p q`` evaluates H*-factor q on H-factor p
and removes both; the remaining factors keep their relative order.
Text after ``#`` on a line is ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from ..tensor import TensorElement

__all__ = [
    "Gen",
    "Op",
    "InvariantExpr",
    "DSLSyntaxError",
    "ShapeError",
    "MissingCharacterError",
    "parse",
    "evaluate",
]


class DSLSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ShapeError(ValueError):
    def __init__(self, message: str, op_index: int):
        super().__init__(f"op {op_index}: {message}")
        self.op_index = op_index


class MissingCharacterError(LookupError):
    pass


@dataclass(frozen=True)
class Gen:
    kind: str  # "L", "Lam", "charH", "charD"
    name: str = ""

    @property
    def side(self) -> str:
        return "H" if self.kind in ("L", "charH") else "D"

    def format(self) -> str:
        return f"{self.kind} {self.name}" if self.name else self.kind

    @classmethod
    def from_text(cls, text: str) -> "Gen":
        parts = text.split()
        if len(parts) == 1 and parts[0] in ("L", "Lam"):
            return cls(parts[0])
        if len(parts) == 2 and parts[0] in ("charH", "charD"):
            return cls(parts[0], parts[1])
        raise ValueError(f"bad generator {text!r}")


@dataclass(frozen=True)
class Op:
    kind: str  # "comultH", "comultD", "permH", "permD", "pair"
    args: tuple[int, ...]

    def format(self) -> str:
        if self.kind in ("permH", "permD"):
            return f"{self.kind} [{' '.join(map(str, self.args))}]"
        return f"{self.kind} {' '.join(map(str, self.args))}"


@dataclass(frozen=True)
class InvariantExpr:
    gens: tuple[Gen, ...]
    ops: tuple[Op, ...] = ()

    def __post_init__(self):
        self.shapes()

    @property
    def initial_shape(self) -> tuple[int, int]:
        i = sum(1 for g in self.gens if g.side == "H")
        return i, len(self.gens) - i

    def shapes(self) -> list[tuple[int, int]]:
        """Shape after each prefix of the op list; raises ShapeError on underflow."""
        i, j = self.initial_shape
        out = [(i, j)]
        for n, op in enumerate(self.ops, 1):
            a = op.args
            if op.kind == "comultH":
                if not 1 <= a[0] <= i:
                    raise ShapeError(f"comultH {a[0]} needs an H factor at that position (have {i})", n)
                i += 1
            elif op.kind == "comultD":
                if not 1 <= a[0] <= j:
                    raise ShapeError(f"comultD {a[0]} needs an H* factor at that position (have {j})", n)
                j += 1
            elif op.kind in ("permH", "permD"):
                count = i if op.kind == "permH" else j
                if sorted(a) != list(range(1, count + 1)):
                    raise ShapeError(f"{op.format()} is not a permutation of 1..{count}", n)
            elif op.kind == "pair":
                if not 1 <= a[0] <= i:
                    raise ShapeError(f"pair needs an H factor at position {a[0]} (have {i})", n)
                if not 1 <= a[1] <= j:
                    raise ShapeError(f"pair needs an H* factor at position {a[1]} (have {j})", n)
                i -= 1
                j -= 1
            else:
                raise ShapeError(f"unknown op {op.kind}", n)
            out.append((i, j))
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return self.shapes()[-1]

    def format(self) -> str:
        lines = ["gens: " + ", ".join(g.format() for g in self.gens) + ";"]
        lines.extend(f"op: {op.format()};" for op in self.ops)
        return "\n".join(lines)

    __str__ = format


# -- parser -----------------------------------------------------------------------

_TOKEN = re.compile(r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)|(?P<punct>[:;,\[\]])|(?P<int>-?\d+)|(?P<word>[^\s:;,\[\]#]+)")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks: list[_Tok] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:  # pragma: no cover - the word class matches everything else
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, tok: _Tok, expected: str):
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise DSLSyntaxError(f"expected {expected}, found {found}", tok.line, tok.col)

    def expect(self, text: str) -> _Tok:
        tok = self.next()
        if tok.text != text:
            self.fail(tok, repr(text))
        return tok

    def integer(self) -> int:
        tok = self.next()
        if tok.kind != "int":
            self.fail(tok, "an integer")
        return int(tok.text)

    def parse(self) -> InvariantExpr:
        self.expect("gens")
        self.expect(":")
        gens = [self.gen()]
        while self.peek().text == ",":
            self.next()
            gens.append(self.gen())
        self.expect(";")
        ops = []
        while self.peek().kind != "eof":
            self.expect("op")
            self.expect(":")
            ops.append(self.op())
            self.expect(";")
        return InvariantExpr(tuple(gens), tuple(ops))

    def gen(self) -> Gen:
        tok = self.next()
        if tok.text in ("L", "Lam"):
            return Gen(tok.text)
        if tok.text in ("charH", "charD"):
            name = self.next()
            if name.kind not in ("word", "int"):
                self.fail(name, "a character name")
            return Gen(tok.text, name.text)
        self.fail(tok, "a generator (L, Lam, charH NAME, charD NAME)")

    def op(self) -> Op:
        tok = self.next()
        if tok.text in ("comultH", "comultD"):
            return Op(tok.text, (self.integer(),))
        if tok.text == "pair":
            return Op("pair", (self.integer(), self.integer()))
        if tok.text in ("permH", "permD"):
            self.expect("[")
            vals = []
            while self.peek().kind == "int":
                vals.append(self.integer())
            if not vals:
                self.fail(self.peek(), "a permutation entry")
            self.expect("]")
            return Op(tok.text, tuple(vals))
        self.fail(tok, "an op (comultH, comultD, permH, permD, pair)")


def parse(text: str) -> InvariantExpr:
    return _Parser(text).parse()


# -- evaluation -------------------------------------------------------------------


class _State:
    """Tensor with lazily materialized generator factors.

    Each logical factor is a slot id; ``phys`` lists the ids in the physical
    column order of ``mat``.  A generator factor is only tensored into ``mat``
    when an op touches it, which keeps the support small.
    """

    def __init__(self, H, vectors_h: list, vectors_d: list):
        self.H = H
        self.mat = TensorElement.scalar(H, 1)
        self.next_id = 0
        self.lazy: dict[int, list] = {}
        self.slots = {"H": [], "D": []}
        self.phys = {"H": [], "D": []}
        for side, vecs in (("H", vectors_h), ("D", vectors_d)):
            for v in vecs:
                sid = self._new_id()
                self.lazy[sid] = v
                self.slots[side].append(sid)

    def _new_id(self) -> int:
        self.next_id += 1
        return self.next_id

    def pos(self, side: str, sid: int) -> int:
        return self.phys[side].index(sid) + 1

    def materialize(self, side: str, sid: int) -> None:
        if sid in self.lazy:
            vec = self.lazy.pop(sid)
            self.mat = self.mat.tensor_product(TensorElement.from_vector(self.H, side, vec))
            self.phys[side].append(sid)

    def comult(self, side: str, k: int) -> None:
        sid = self.slots[side][k - 1]
        self.materialize(side, sid)
        p = self.pos(side, sid)
        self.mat = self.mat.comult_at(side, p)
        new = self._new_id()
        self.phys[side].insert(p, new)
        self.slots[side].insert(k, new)

    def comult_pair(self, side: str, k: int, other: int, leg: int) -> None:
        """comult on ``side`` at k, then pair leg ``leg`` of it with factor ``other`` of the opposite side."""
        opp = "D" if side == "H" else "H"
        sid = self.slots[side][k - 1]
        oid = self.slots[opp][other - 1]
        self.materialize(side, sid)
        self.materialize(opp, oid)
        p, q = self.pos(side, sid), self.pos(opp, oid)
        if side == "H":
            self.mat = self.mat.comult_pair_H(p, q, leg)
        else:
            self.mat = self.mat.comult_pair_D(q, p, leg)
        self.phys[opp].remove(oid)
        self.slots[opp].remove(oid)

    def permute(self, side: str, sigma: Sequence[int]) -> None:
        old = self.slots[side]
        new = [0] * len(old)
        for t, s in enumerate(sigma):
            new[s - 1] = old[t]
        self.slots[side] = new

    def pair(self, p: int, q: int) -> None:
        hid, did = self.slots["H"][p - 1], self.slots["D"][q - 1]
        if hid in self.lazy and did in self.lazy:
            x, f = self.lazy.pop(hid), self.lazy.pop(did)
            value = self.H.evaluate(f, x)
            self.mat = self.mat * value
        else:
            self.materialize("H", hid)
            self.materialize("D", did)
            self.mat = self.mat.pair(self.pos("H", hid), self.pos("D", did))
            self.phys["H"].remove(hid)
            self.phys["D"].remove(did)
        self.slots["H"].remove(hid)
        self.slots["D"].remove(did)

    def result(self) -> TensorElement:
        for side in ("H", "D"):
            for sid in self.slots[side]:
                self.materialize(side, sid)
        mat = self.mat
        for side in ("H", "D"):
            order = self.slots[side]
            sigma = [order.index(sid) + 1 for sid in self.phys[side]]
            if sigma != sorted(sigma):
                mat = mat.permute(side, sigma)
        return mat


def _generator_vectors(H, expr: InvariantExpr, h_chars, d_chars) -> tuple[list, list]:
    from ..hopf import integrals

    ell = lam = None
    vh, vd = [], []
    for g in expr.gens:
        if g.kind == "L":
            if ell is None:
                ell, lam = integrals(H)
            vh.append(ell)
        elif g.kind == "Lam":
            if lam is None:
                ell, lam = integrals(H)
            vd.append(lam)
        else:
            table = h_chars if g.kind == "charH" else d_chars
            if table is None:
                raise MissingCharacterError(f"{g.format()} needs a character table")
            try:
                vals = list(table[g.name].values)
            except KeyError as exc:
                raise MissingCharacterError(str(exc)) from None
            if len(vals) != H.dim:
                raise MissingCharacterError(f"character {g.name} has {len(vals)} values, dimension is {H.dim}")
            (vh if g.kind == "charH" else vd).append(vals)
    return vh, vd


def evaluate(H, expr: InvariantExpr, h_chars=None, d_chars=None, fuse: bool = True) -> TensorElement:
    """Evaluate ``expr`` on H.

    ``h_chars`` supplies the ``charH`` generators (characters of H*, i.e.
    elements of H) and ``d_chars`` the ``charD`` generators (characters of H,
    i.e. elements of H*).  With ``fuse`` a comultiplication immediately
    followed by a pairing against one of its two new legs is done in one step.
    """
    vh, vd = _generator_vectors(H, expr, h_chars, d_chars)
    st = _State(H, vh, vd)
    ops = expr.ops
    n = 0
    while n < len(ops):
        op = ops[n]
        nxt = ops[n + 1] if n + 1 < len(ops) else None
        if op.kind in ("comultH", "comultD"):
            k = op.args[0]
            if fuse and nxt is not None and nxt.kind == "pair":
                p, q = nxt.args
                mine, other = (p, q) if op.kind == "comultH" else (q, p)
                if mine in (k, k + 1):
                    side = "H" if op.kind == "comultH" else "D"
                    st.comult_pair(side, k, other, 1 if mine == k else 2)
                    n += 2
                    continue
            st.comult("H" if op.kind == "comultH" else "D", k)
        elif op.kind in ("permH", "permD"):
            st.permute("H" if op.kind == "permH" else "D", op.args)
        else:
            st.pair(*op.args)
        n += 1
    return st.result()
