"""Exact Gaussian elimination over Q and cyclotomic fields.

Vectors are sparse ``{index: scalar}`` dicts; dense helpers take lists of rows.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .scalars import Scalar, inverse

__all__ = ["EchelonBasis", "rref", "rank", "nullspace", "sparse_nullspace", "solve"]


def _is_zero(x) -> bool:
    return not x


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Rows are kept fully reduced, so the stored basis is canonical for the
    spanned subspace regardless of insertion order.
    """

    def __init__(self) -> None:
        self._rows: dict = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Mapping) -> dict:
        v = {k: c for k, c in vec.items() if not _is_zero(c)}
        for p in [p for p in v if p in self._rows]:
            c = v.get(p)
            if _is_zero(c):
                continue
            for k, r in self._rows[p].items():
                nv = v.get(k, 0) - c * r
                if _is_zero(nv):
                    v.pop(k, None)
                else:
                    v[k] = nv
        return v

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping) -> bool:
        """Insert ``vec``; return True iff it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = inverse(v[p])
        v = {k: c * inv for k, c in v.items()}
        v[p] = 1
        for q, row in self._rows.items():
            c = row.get(p)
            if c is None or _is_zero(c):
                continue
            for k, r in v.items():
                nv = row.get(k, 0) - c * r
                if _is_zero(nv):
                    row.pop(k, None)
                else:
                    row[k] = nv
        self._rows[p] = v
        return True

    def extend(self, vecs: Iterable[Mapping]) -> int:
        return sum(1 for v in vecs if self.add(v))

    def basis(self) -> list[dict]:
        return [dict(sorted(self._rows[p].items())) for p in sorted(self._rows)]

    def pivots(self) -> list:
        return sorted(self._rows)


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a dense matrix; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if not _is_zero(m[i][c])), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = inverse(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not _is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    basis = EchelonBasis()
    for row in rows:
        basis.add({k: c for k, c in enumerate(row) if not _is_zero(c)})
    return basis.rank


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> list[list]:
    """Basis of {x : A x = 0} for a dense matrix A (list of rows)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for i, p in enumerate(pivots):
            vec[p] = -m[i][f]
        out.append(vec)
    return out


def sparse_nullspace(rows: Iterable[Mapping[int, Scalar]], ncols: int) -> list[list]:
    """Nullspace for a matrix given as sparse rows (``{col: value}`` dicts)."""
    basis = EchelonBasis()
    for row in rows:
        basis.add(row)
    piv = basis.pivots()
    reduced = {p: basis._rows[p] for p in piv}
    free = [c for c in range(ncols) if c not in reduced]
    out = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for p, row in reduced.items():
            c = row.get(f)
            if c is not None:
                vec[p] = -c
        out.append(vec)
    return out


def solve(mat: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar]) -> list:
    """Unique solution of a square nonsingular system."""
    n = len(mat)
    aug = [list(mat[i]) + [rhs[i]] for i in range(n)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise ArithmeticError("singular system")
    return [m[i][n] for i in range(n)]

