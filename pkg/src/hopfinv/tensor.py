"""Sparse elements of the mixed tensor spaces H^{(x)i} (x) (H*)^{(x)j}.

A :class:`TensorElement` stores its support as an integer key matrix (one
row per supported multi-index, H-factors first, then H*-factors) and an object
array of exact coefficients.  Rows are kept sorted, unique and free of exact
zeros, so two equal tensors have identical arrays.

Public factor positions are 1-based, matching the invariant language.  The
owner is any object exposing ``dim``, ``mult``, ``comult`` and ``conductor``
(a :class:`hopfinv.hopf.HopfStructure` in practice); the structure tensors are
compiled once into CSR lookup tables cached on the owner.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

import numpy as np

from .scalars import as_cyc, format_scalar, parse_scalar

__all__ = ["TensorElement", "TensorShapeError"]

_CODE_LIMIT = 1 << 62


class TensorShapeError(IndexError):
    pass


# -- lookup tables -----------------------------------------------------------------


class _Table:
    """CSR map from an integer key to a list of (output indices, coefficient)."""

    __slots__ = ("indptr", "out", "coeff")

    def __init__(self, nkeys: int, arity: int, entries: Mapping[int, Iterable[tuple[tuple[int, ...], object]]]):
        counts = np.zeros(nkeys + 1, dtype=np.int64)
        rows_out: list[tuple[int, ...]] = []
        rows_c: list = []
        for key in range(nkeys):
            items = entries.get(key, ())
            for out, c in items:
                rows_out.append(out)
                rows_c.append(c)
                counts[key + 1] += 1
        self.indptr = np.cumsum(counts)
        self.out = np.array(rows_out, dtype=np.int64).reshape(len(rows_out), arity)
        self.coeff = np.empty(len(rows_c), dtype=object)
        self.coeff[:] = rows_c


def _tables(owner) -> dict:
    cache = owner.__dict__.get("_tensor_tables")
    if cache is None:
        cache = {}
        owner.__dict__["_tensor_tables"] = cache
    return cache


def _table(owner, name: str) -> _Table:
    cache = _tables(owner)
    if name in cache:
        return cache[name]
    d = owner.dim
    entries: dict[int, list] = {}
    if name == "comult_H":
        for b, terms in owner.comult.items():
            entries[b] = [((j, k), c) for (j, k), c in sorted(terms.items())]
        tab = _Table(d, 2, entries)
    elif name == "comult_D":
        # Delta*(e^f) = sum_{a,b} m_{ab}^f e^a (x) e^b
        for (a, b), terms in sorted(owner.mult.items()):
            for f, c in terms.items():
                entries.setdefault(f, []).append(((a, b), c))
        tab = _Table(d, 2, entries)
    elif name == "mult_H":
        for (a, b), terms in owner.mult.items():
            entries[a * d + b] = [((k,), c) for k, c in sorted(terms.items())]
        tab = _Table(d * d, 1, entries)
    elif name == "mult_D":
        # e^a e^b = sum_c Delta_c^{ab} e^c
        for c_idx, terms in sorted(owner.comult.items()):
            for (a, b), c in terms.items():
                entries.setdefault(a * d + b, []).append(((c_idx,), c))
        tab = _Table(d * d, 1, entries)
    elif name in ("fuse_D0", "fuse_D1"):
        # pairing h with one leg of Delta*(e^f): key h*d+f -> (y, m)
        first = name == "fuse_D0"
        for (a, b), terms in sorted(owner.mult.items()):
            for f, c in terms.items():
                h, y = (a, b) if first else (b, a)
                entries.setdefault(h * d + f, []).append(((y,), c))
        tab = _Table(d * d, 1, entries)
    elif name in ("fuse_H0", "fuse_H1"):
        # pairing e^f with one leg of Delta(e_b): key b*d+f -> (y, c)
        first = name == "fuse_H0"
        for b, terms in sorted(owner.comult.items()):
            for (j, k), c in sorted(terms.items()):
                f, y = (j, k) if first else (k, j)
                entries.setdefault(b * d + f, []).append(((y,), c))
        tab = _Table(d * d, 1, entries)
    else:
        raise KeyError(name)
    cache[name] = tab
    return tab


def _map_table(owner, matrix: Mapping[tuple[int, int], object], cache_key=None) -> _Table:
    """Table for the linear map e_j -> sum_i M[i, j] e_i."""
    if cache_key is not None and cache_key in _tables(owner):
        return _tables(owner)[cache_key]
    entries: dict[int, list] = {}
    for (i, j), c in sorted(matrix.items()):
        if c:
            entries.setdefault(j, []).append(((i,), c))
    tab = _Table(owner.dim, 1, entries)
    if cache_key is not None:
        _tables(owner)[cache_key] = tab
    return tab


def _gather(table: _Table, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """For each source row r, all table rows at key idx[r]: returns (row ids, table positions)."""
    starts = table.indptr[idx]
    counts = table.indptr[idx + 1] - starts
    total = int(counts.sum())
    src = np.repeat(np.arange(len(idx)), counts)
    if total == 0:
        return src, np.zeros(0, dtype=np.int64)
    offsets = np.cumsum(counts) - counts
    pos = np.arange(total) - np.repeat(offsets, counts) + np.repeat(starts, counts)
    return src, pos


# -- the element type ----------------------------------------------------------------


class TensorElement:
    __slots__ = ("owner", "shape", "keys", "vals")

    def __init__(self, owner, shape: tuple[int, int], keys, vals, canonical: bool = False):
        self.owner = owner
        self.shape = (int(shape[0]), int(shape[1]))
        width = self.shape[0] + self.shape[1]
        if not isinstance(vals, np.ndarray) or vals.dtype != object:
            arr = np.empty(len(vals), dtype=object)
            arr[:] = list(vals)
            vals = arr
        keys = np.asarray(keys, dtype=np.int64).reshape(len(vals), width)
        self.keys = keys
        self.vals = vals
        if not canonical:
            self._canonicalize()

    def __reduce__(self):
        # the owner is re-attached by the receiver; shipping it with every value is wasteful
        return (_rebuild, (self.shape, self.keys, self.vals))

    # -- construction ---------------------------------------------------------
    @classmethod
    def zero(cls, owner, shape=(0, 0)) -> "TensorElement":
        w = shape[0] + shape[1]
        return cls(owner, shape, np.zeros((0, w), dtype=np.int64), np.empty(0, dtype=object), canonical=True)

    @classmethod
    def scalar(cls, owner, value) -> "TensorElement":
        return cls(owner, (0, 0), np.zeros((1, 0), dtype=np.int64), [value])

    @classmethod
    def from_dict(cls, owner, shape, data: Mapping[tuple[int, ...], object]) -> "TensorElement":
        """Build from ``{(b_1..b_i, c_1..c_j): coeff}`` with 0-based indices."""
        items = [(k, v) for k, v in data.items() if v]
        w = shape[0] + shape[1]
        if any(len(k) != w for k, _ in items):
            raise TensorShapeError("multi-index length does not match shape")
        keys = np.array([k for k, _ in items], dtype=np.int64).reshape(len(items), w)
        if keys.size and (keys.min() < 0 or keys.max() >= owner.dim):
            raise TensorShapeError("basis index out of range")
        return cls(owner, shape, keys, [v for _, v in items])

    @classmethod
    def from_vector(cls, owner, side: str, vec: Sequence) -> "TensorElement":
        """A single factor on side ``"H"`` or ``"D"`` from a coefficient vector."""
        shape = (1, 0) if side == "H" else (0, 1)
        return cls.from_dict(owner, shape, {(i,): c for i, c in enumerate(vec) if c})

    def _canonicalize(self) -> None:
        keys, vals = self.keys, self.vals
        if len(vals) == 0:
            return
        d = max(self.owner.dim, 1)
        w = keys.shape[1]
        if w == 0:
            total = sum(vals.tolist())
            self.keys = np.zeros((1 if total else 0, 0), dtype=np.int64)
            self.vals = _obj([total] if total else [])
            return
        if d**w < _CODE_LIMIT:
            codes = keys @ (d ** np.arange(w - 1, -1, -1, dtype=np.int64))
            order = np.argsort(codes, kind="stable")
            codes = codes[order]
            starts = np.flatnonzero(np.concatenate(([True], codes[1:] != codes[:-1])))
        else:
            order = np.lexsort(keys.T[::-1])
            sk = keys[order]
            starts = np.flatnonzero(np.concatenate(([True], np.any(sk[1:] != sk[:-1], axis=1))))
        keys = keys[order][starts]
        vals = vals[order]
        if len(starts) != len(vals):
            vals = np.add.reduceat(vals, starts)
        nz = vals.astype(bool)
        if not nz.all():
            keys, vals = keys[nz], vals[nz]
        self.keys, self.vals = keys, vals

    # -- basic protocol ---------------------------------------------------------
    @property
    def nnz(self) -> int:
        return len(self.vals)

    def is_zero(self) -> bool:
        return len(self.vals) == 0

    def items(self):
        for k, v in zip(self.keys.tolist(), self.vals.tolist()):
            yield tuple(k), v

    def to_dict(self) -> dict:
        return dict(self.items())

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.shape == other.shape
            and self.keys.shape == other.keys.shape
            and bool(np.array_equal(self.keys, other.keys))
            and all(a == b for a, b in zip(self.vals.tolist(), other.vals.tolist()))
        )

    def __hash__(self):
        return hash((self.shape, self.keys.tobytes(), tuple(hash(v) for v in self.vals.tolist())))

    def __repr__(self):
        return f"TensorElement(shape={self.shape}, nnz={self.nnz})"

    def _check_same(self, other: "TensorElement") -> None:
        if self.shape != other.shape:
            raise TensorShapeError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check_same(other)
        return TensorElement(
            self.owner, self.shape, np.concatenate([self.keys, other.keys]), np.concatenate([self.vals, other.vals])
        )

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.owner, self.shape, self.keys, _obj([-v for v in self.vals.tolist()]), canonical=True)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def __mul__(self, c) -> "TensorElement":
        if isinstance(c, TensorElement):
            return NotImplemented
        if not c:
            return TensorElement.zero(self.owner, self.shape)
        return TensorElement(self.owner, self.shape, self.keys, _obj([v * c for v in self.vals.tolist()]), canonical=True)

    __rmul__ = __mul__

    def _pos(self, side: str, k: int) -> int:
        i, j = self.shape
        count = i if side == "H" else j
        if not 1 <= k <= count:
            raise TensorShapeError(f"factor {k} out of range on side {side} (have {count})")
        return k - 1 if side == "H" else i + k - 1

    # -- primitive operations -----------------------------------------------------
    def _expand(self, col: int, table: _Table, ncols_in: int, key: np.ndarray, new_shape) -> "TensorElement":
        src, pos = _gather(table, key)
        keys = self.keys[src]
        out = table.out[pos]
        keys = np.concatenate([keys[:, :col], out, keys[:, col + ncols_in :]], axis=1)
        vals = self.vals[src] * table.coeff[pos]
        return TensorElement(self.owner, new_shape, keys, vals)

    def comult_at(self, side: str, k: int) -> "TensorElement":
        col = self._pos(side, k)
        i, j = self.shape
        tab = _table(self.owner, "comult_H" if side == "H" else "comult_D")
        shape = (i + 1, j) if side == "H" else (i, j + 1)
        return self._expand(col, tab, 1, self.keys[:, col], shape)

    def mult_at(self, side: str, k: int) -> "TensorElement":
        col = self._pos(side, k)
        self._pos(side, k + 1)
        i, j = self.shape
        d = self.owner.dim
        tab = _table(self.owner, "mult_H" if side == "H" else "mult_D")
        key = self.keys[:, col] * d + self.keys[:, col + 1]
        shape = (i - 1, j) if side == "H" else (i, j - 1)
        return self._expand(col, tab, 2, key, shape)

    def apply_map(self, side: str, k: int, matrix: Mapping[tuple[int, int], object], cache_key=None) -> "TensorElement":
        """Apply e_j -> sum_i M[i, j] e_i to factor k of the given side."""
        col = self._pos(side, k)
        tab = _map_table(self.owner, matrix, cache_key)
        return self._expand(col, tab, 1, self.keys[:, col], self.shape)

    def pair(self, p: int, q: int) -> "TensorElement":
        """Evaluate H*-factor q on H-factor p; both factors disappear."""
        cp = self._pos("H", p)
        cq = self._pos("D", q)
        i, j = self.shape
        mask = self.keys[:, cp] == self.keys[:, cq]
        keep = [c for c in range(i + j) if c not in (cp, cq)]
        return TensorElement(self.owner, (i - 1, j - 1), self.keys[mask][:, keep], self.vals[mask])

    def comult_pair_D(self, p: int, q: int, leg: int = 1) -> "TensorElement":
        """``comultD q`` followed by pairing H-factor p with leg 1 or 2 of the result."""
        cp = self._pos("H", p)
        cq = self._pos("D", q)
        i, j = self.shape
        d = self.owner.dim
        tab = _table(self.owner, "fuse_D0" if leg == 1 else "fuse_D1")
        src, pos = _gather(tab, self.keys[:, cp] * d + self.keys[:, cq])
        keys = self.keys[src].copy()
        keys[:, cq] = tab.out[pos, 0]
        keys = np.delete(keys, cp, axis=1)
        return TensorElement(self.owner, (i - 1, j), keys, self.vals[src] * tab.coeff[pos])

    def comult_pair_H(self, p: int, q: int, leg: int = 1) -> "TensorElement":
        """``comultH p`` followed by pairing leg 1 or 2 of the result with H*-factor q."""
        cp = self._pos("H", p)
        cq = self._pos("D", q)
        i, j = self.shape
        d = self.owner.dim
        tab = _table(self.owner, "fuse_H0" if leg == 1 else "fuse_H1")
        src, pos = _gather(tab, self.keys[:, cp] * d + self.keys[:, cq])
        keys = self.keys[src].copy()
        keys[:, cp] = tab.out[pos, 0]
        keys = np.delete(keys, cq, axis=1)
        return TensorElement(self.owner, (i, j - 1), keys, self.vals[src] * tab.coeff[pos])

    def permute(self, side: str, sigma: Sequence[int]) -> "TensorElement":
        """Move factor t of the side to position sigma[t-1] (one-line, 1-based)."""
        i, j = self.shape
        count = i if side == "H" else j
        if sorted(sigma) != list(range(1, count + 1)):
            raise TensorShapeError(f"{list(sigma)} is not a permutation of 1..{count}")
        off = 0 if side == "H" else i
        cols = list(range(i + j))
        for t, s in enumerate(sigma):
            cols[off + s - 1] = off + t
        return TensorElement(self.owner, self.shape, self.keys[:, cols], self.vals)

    def tensor_product(self, other: "TensorElement") -> "TensorElement":
        i, j = self.shape
        a, b = other.shape
        n, m = self.nnz, other.nnz
        left = np.repeat(np.arange(n), m)
        right = np.tile(np.arange(m), n)
        ka, kb = self.keys[left], other.keys[right]
        keys = np.concatenate([ka[:, :i], kb[:, :a], ka[:, i:], kb[:, a:]], axis=1)
        return TensorElement(self.owner, (i + a, j + b), keys, self.vals[left] * other.vals[right])

    def multiply(self, other: "TensorElement") -> "TensorElement":
        """Factorwise product in the algebra H^{(x)i} (x) (H*)^{(x)j}."""
        self._check_same(other)
        i, j = self.shape
        t = self.tensor_product(other)
        # interleave: factor t of self next to factor t of other, then multiply
        w_h = list(range(1, 2 * i, 2)) + list(range(2, 2 * i + 1, 2))
        if i:
            t = t.permute("H", w_h)
            for k in range(1, i + 1):
                t = t.mult_at("H", k)
        if j:
            t = t.permute("D", list(range(1, 2 * j, 2)) + list(range(2, 2 * j + 1, 2)))
            for k in range(1, j + 1):
                t = t.mult_at("D", k)
        return t

    def as_scalar(self):
        if self.shape != (0, 0):
            raise TensorShapeError(f"tensor of shape {self.shape} is not a scalar")
        value = self.vals[0] if self.nnz else 0
        return as_cyc(value, self.owner.conductor)

    def scalar_value(self):
        """The raw exact coefficient of a shape-(0, 0) tensor (int, Fraction or CycScalar)."""
        if self.shape != (0, 0):
            raise TensorShapeError(f"tensor of shape {self.shape} is not a scalar")
        return self.vals[0] if self.nnz else 0

    def side_vector(self) -> list:
        """Coefficient vector of a single-factor tensor."""
        if sum(self.shape) != 1:
            raise TensorShapeError("not a single-factor tensor")
        vec = [0] * self.owner.dim
        for (b,), c in self.items():
            vec[b] = c
        return vec

    # -- flat vectors for linear algebra ------------------------------------------
    def flat(self) -> dict[int, object]:
        """``{radix code: coeff}``; codes of equal-shape tensors index the same basis."""
        d = self.owner.dim
        w = self.keys.shape[1]
        if d**w < _CODE_LIMIT:
            codes = (self.keys @ (d ** np.arange(w - 1, -1, -1, dtype=np.int64))).tolist()
        else:
            codes = []
            for row in self.keys.tolist():
                c = 0
                for x in row:
                    c = c * d + x
                codes.append(c)
        return dict(zip(codes, self.vals.tolist()))

    @classmethod
    def from_flat(cls, owner, shape, flat: Mapping[int, object]) -> "TensorElement":
        d = owner.dim
        w = shape[0] + shape[1]
        data = {}
        for code, v in flat.items():
            digits = []
            for _ in range(w):
                code, r = divmod(code, d)
                digits.append(r)
            data[tuple(reversed(digits))] = v
        return cls.from_dict(owner, shape, data)

    # -- text form --------------------------------------------------------------------
    def dump(self) -> str:
        i, _ = self.shape
        lines = []
        for key, v in self.items():
            hs = " ".join(str(x + 1) for x in key[:i])
            ds = " ".join(str(x + 1) for x in key[i:])
            lines.append(f"{hs} | {ds} : {format_scalar(v)}".replace("  ", " ").strip())
        return "\n".join(lines)

    @classmethod
    def parse_dump(cls, owner, shape, text: str) -> "TensorElement":
        data = {}
        for line_no, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                idx, coeff = line.rsplit(":", 1)
                hpart, dpart = idx.split("|")
                key = tuple(int(x) - 1 for x in hpart.split()) + tuple(int(x) - 1 for x in dpart.split())
            except ValueError:
                raise ValueError(f"malformed tensor line {line_no}: {line!r}") from None
            data[key] = data.get(key, 0) + parse_scalar(coeff)
        return cls.from_dict(owner, shape, data)


def _rebuild(shape, keys, vals) -> TensorElement:
    return TensorElement(None, shape, keys, vals, canonical=True)


def _obj(values: list) -> np.ndarray:
    arr = np.empty(len(values), dtype=object)
    arr[:] = values
    return arr
