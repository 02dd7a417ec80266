import pytest

from hopfinv.braid import (
    BraidWord,
    apply_word,
    braid_relations,
    braid_trace,
    braiding_operator,
    homcount_crosscheck,
    operators_equal,
    yang_baxter_holds,
)
from hopfinv.groups import BudgetExceeded, FpGroup, named_group
from hopfinv.hopf import HopfError, drinfeld_double, group_algebra
from oracles import dense_braiding


@pytest.fixture(scope="module")
def double_c2():
    D, R = drinfeld_double(named_group("C2"))
    return D, R, braiding_operator(D, R)


@pytest.fixture(scope="module")
def double_c3():
    D, R = drinfeld_double(named_group("C3"))
    return D, R, braiding_operator(D, R)


def test_word_parsing():
    w = BraidWord.parse("s1 s2' s1")
    assert w.strands == 3 and w.letters == (1, -2, 1)
    assert w.format() == "s1 s2' s1"
    assert BraidWord.parse("", 2).letters == ()
    assert w.inverse().letters == (-1, 2, -1)
    with pytest.raises(ValueError):
        BraidWord.parse("t1")
    with pytest.raises(ValueError):
        BraidWord(2, (2,))


def test_operator_matches_dense_matrix(double_c2):
    D, R, op = double_c2
    mat = dense_braiding(D, R)
    d = D.dim
    for p in range(d):
        for q in range(d):
            col = {(r // d, r % d): mat[r][p * d + q] for r in range(d * d) if mat[r][p * d + q]}
            assert op.forward[(p, q)] == col
    assert sum(mat[k][k] for k in range(d * d)) == 2


def test_inverse(double_c3):
    D, R, op = double_c3
    ident = BraidWord(2)
    assert operators_equal(op, BraidWord(2, (1, -1)), ident)
    assert operators_equal(op, BraidWord(2, (-1, 1)), ident)


def test_yang_baxter(double_c2, double_c3):
    assert yang_baxter_holds(double_c2[2])
    assert yang_baxter_holds(double_c3[2])


def test_braid_relations_four_strands(double_c2):
    rels = braid_relations(double_c2[2], 4)
    assert any("s1 s3 = s3 s1" in r for r, _ in rels)
    assert all(ok for _, ok in rels)


def test_traces(double_c2, double_c3):
    D2, R2, op2 = double_c2
    assert braid_trace(D2, R2, BraidWord.parse("s1"), op=op2) == 2
    for D, R, op, n in (double_c2 + (2,), double_c3 + (3,)):
        for strands in (1, 2, 3):
            assert braid_trace(D, R, BraidWord(strands), op=op) == n ** (2 * strands)
    D3, R3, op3 = double_c3
    assert braid_trace(D3, R3, BraidWord.parse("s1"), op=op3) == 3


def test_conjugate_words_have_equal_traces(double_c3):
    D, R, op = double_c3
    w = BraidWord.parse("s1 s1 s2'", 3)
    for u in (BraidWord.parse("s2", 3), BraidWord.parse("s1' s2", 3)):
        assert braid_trace(D, R, u * w * u.inverse(), op=op) == braid_trace(D, R, w, op=op)


def test_parallel_trace_identical(double_c3):
    D, R, op = double_c3
    w = BraidWord.parse("s1 s2 s1'", 3)
    assert braid_trace(D, R, w, op=op, workers=2) == braid_trace(D, R, w, op=op)


def test_budget_and_missing_rmatrix(double_c3):
    D, R, _ = double_c3
    with pytest.raises(BudgetExceeded):
        braid_trace(D, R, BraidWord.parse("s1 s2"), budget=100)
    with pytest.raises(HopfError):
        braiding_operator(group_algebra(named_group("C2")))


def test_apply_word_is_linear(double_c2):
    D, R, op = double_c2
    w = BraidWord.parse("s1 s2'", 3)
    a = apply_word(op, w, {(0, 1, 2): 1})
    b = apply_word(op, w, {(3, 0, 0): 1})
    both = apply_word(op, w, {(0, 1, 2): 2, (3, 0, 0): -1})
    keys = set(a) | set(b)
    assert both == {k: 2 * a.get(k, 0) - b.get(k, 0) for k in keys if 2 * a.get(k, 0) - b.get(k, 0)}


def test_crosscheck_reports():
    G = named_group("C2")
    rep = homcount_crosscheck(G, BraidWord(1), FpGroup.parse("gens: x;"), 1)
    assert rep.match and rep.trace == 4 and rep.count_side == 4
    wrong = homcount_crosscheck(G, BraidWord(1), FpGroup.parse("gens: x; rels: x;"), 1)
    assert not wrong.match and "mismatch" in wrong.format()
    info = homcount_crosscheck(G, BraidWord.parse("s1"), FpGroup.parse("gens: x; rels: x^2;"), 0)
    assert info.trace == 2 and info.count_side == 2
