from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfinv.linalg import EchelonBasis, nullspace, rank, rref, solve, sparse_nullspace
from hopfinv.scalars import zeta

entries = st.integers(min_value=-3, max_value=3)
matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda r: st.integers(min_value=1, max_value=4).flatmap(
        lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _mul(A, x):
    return [sum(a * b for a, b in zip(row, x)) for row in A]


@given(matrices)
@settings(max_examples=80, deadline=None)
def test_rank_nullity(A):
    ns = nullspace(A)
    assert rank(A) + len(ns) == len(A[0])
    for v in ns:
        assert all(x == 0 for x in _mul(A, v))


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_echelon_basis_rank_matches(A):
    ech = EchelonBasis()
    added = ech.extend({k: v for k, v in enumerate(row) if v} for row in A)
    assert added == ech.rank == rank(A)
    for row in A:
        assert ech.contains({k: v for k, v in enumerate(row) if v})


@given(matrices)
@settings(max_examples=40, deadline=None)
def test_sparse_nullspace_agrees(A):
    ncols = len(A[0])
    dense = nullspace(A)
    sparse = sparse_nullspace(({k: v for k, v in enumerate(row) if v} for row in A), ncols)
    assert len(dense) == len(sparse)
    for v in sparse:
        assert all(x == 0 for x in _mul(A, v))


def test_rref_pivots():
    m, piv = rref([[2, 4], [1, 3]])
    assert piv == [0, 1]
    assert m == [[1, 0], [0, 1]]


def test_solve_exact():
    assert solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(ArithmeticError):
        solve([[1, 2], [2, 4]], [1, 2])


def test_cyclotomic_entries():
    z = zeta(3)
    A = [[1, z], [z, z * z]]
    assert rank(A) == 1
    (v,) = nullspace(A)
    assert all(x == 0 for x in _mul(A, v))
