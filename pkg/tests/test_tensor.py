import pickle

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfinv.groups import named_group
from hopfinv.hopf import drinfeld_double, dual_hopf, group_algebra, integrals
from hopfinv.tensor import TensorElement, TensorShapeError

C2 = group_algebra(named_group("C2"))
C3 = group_algebra(named_group("C3"))
C4 = group_algebra(named_group("C4"))
S3 = group_algebra(named_group("S3"))
DS = dual_hopf(S3)
DC2 = drinfeld_double(named_group("C2"))[0]
ALGEBRAS = [C3, S3, DS, DC2]


def naive_comult(H, t, side, k):
    i, j = t.shape
    col = (k - 1) if side == "H" else i + k - 1
    out = {}
    for key, c in t.items():
        if side == "H":
            terms = H.comult.get(key[col], {}).items()
        else:
            terms = [(xy, m[key[col]]) for xy, m in H.mult.items() if key[col] in m]
        for (a, b), w in terms:
            new = key[:col] + (a, b) + key[col + 1:]
            out[new] = out.get(new, 0) + c * w
    shape = (i + 1, j) if side == "H" else (i, j + 1)
    return TensorElement.from_dict(H, shape, out)


def naive_pair(H, t, p, q):
    i, j = t.shape
    out = {}
    for key, c in t.items():
        if key[p - 1] == key[i + q - 1]:
            new = tuple(x for n, x in enumerate(key) if n not in (p - 1, i + q - 1))
            out[new] = out.get(new, 0) + c
    return TensorElement.from_dict(H, (i - 1, j - 1), out)


@st.composite
def tensors(draw, H=None, shape=None):
    H = H or draw(st.sampled_from(ALGEBRAS))
    shape = shape or draw(st.tuples(st.integers(0, 2), st.integers(0, 2)))
    w = sum(shape)
    keys = st.tuples(*[st.integers(0, H.dim - 1)] * w) if w else st.just(())
    data = draw(st.dictionaries(keys, st.integers(-3, 3), max_size=6))
    return TensorElement.from_dict(H, shape, data)


@st.composite
def tensor_pairs(draw):
    H = draw(st.sampled_from(ALGEBRAS))
    shape = draw(st.tuples(st.integers(1, 2), st.integers(1, 2)))
    return draw(tensors(H, shape)), draw(tensors(H, shape)), draw(st.integers(-3, 3))


@given(tensor_pairs())
@settings(max_examples=60, deadline=None)
def test_operations_are_linear(args):
    t, u, a = args
    s = t * a + u
    assert s.comult_at("H", 1) == t.comult_at("H", 1) * a + u.comult_at("H", 1)
    assert s.comult_at("D", 1) == t.comult_at("D", 1) * a + u.comult_at("D", 1)
    assert s.pair(1, 1) == t.pair(1, 1) * a + u.pair(1, 1)


@given(tensor_pairs())
@settings(max_examples=60, deadline=None)
def test_against_naive_loops(args):
    t, _, _ = args
    H = t.owner
    assert t.comult_at("H", 1) == naive_comult(H, t, "H", 1)
    assert t.comult_at("D", t.shape[1]) == naive_comult(H, t, "D", t.shape[1])
    assert t.pair(t.shape[0], 1) == naive_pair(H, t, t.shape[0], 1)


@given(tensors(shape=(3, 1)), st.permutations([1, 2, 3]))
@settings(max_examples=50, deadline=None)
def test_permute_inverse(t, sigma):
    inv = [0] * 3
    for pos, s in enumerate(sigma, 1):
        inv[s - 1] = pos
    assert t.permute("H", sigma).permute("H", inv) == t
    assert t.permute("H", [1, 2, 3]) == t


@given(tensors(shape=(3, 0)))
@settings(max_examples=30, deadline=None)
def test_three_cycle_cubed(t):
    c = [2, 3, 1]
    assert t.permute("H", c).permute("H", c).permute("H", c) == t


@given(tensors(shape=(1, 1)))
@settings(max_examples=40, deadline=None)
def test_coassociativity(t):
    for side in ("H", "D"):
        assert t.comult_at(side, 1).comult_at(side, 1) == t.comult_at(side, 1).comult_at(side, 2)


@given(tensors(shape=(1, 0)), tensors(shape=(0, 1)))
@settings(max_examples=40, deadline=None)
def test_pair_of_product_is_evaluation(x, f):
    if x.owner is not f.owner:
        return
    H = x.owner
    assert x.tensor_product(f).pair(1, 1).scalar_value() == H.evaluate(f.side_vector(), x.side_vector())


@given(tensors(shape=(1, 1)), st.integers(1, 2))
@settings(max_examples=40, deadline=None)
def test_fused_steps_match_unfused(t, leg):
    fused = t.comult_pair_D(1, 1, leg)
    plain = t.comult_at("D", 1).pair(1, leg)
    assert fused == plain
    fused = t.comult_pair_H(1, 1, leg)
    plain = t.comult_at("H", 1).pair(leg, 1)
    assert fused == plain


@given(tensors())
@settings(max_examples=40, deadline=None)
def test_dump_roundtrip_and_pickle(t):
    assert TensorElement.parse_dump(t.owner, t.shape, t.dump()) == t
    back = pickle.loads(pickle.dumps(t))
    back.owner = t.owner
    assert back == t
    assert TensorElement.from_flat(t.owner, t.shape, t.flat()) == t


def test_integral_examples():
    ell, lam = integrals(C2)
    L = TensorElement.from_vector(C2, "H", ell)
    assert L.comult_at("H", 1) == TensorElement.from_dict(C2, (2, 0), {(0, 0): 1, (1, 1): 1})
    Lam = TensorElement.from_vector(C2, "D", lam)
    # the function (g, h) -> lam(gh)
    expected = {(a, b): lam[k] for (a, b), prod in C2.mult.items() for k in prod}
    assert Lam.comult_at("D", 1) == TensorElement.from_dict(C2, (0, 2), expected)
    one = TensorElement.from_vector(C3, "H", C3.unit)
    assert one.comult_at("H", 1) == one.tensor_product(one)


def test_pair_examples():
    ell, lam = integrals(C3)
    t = TensorElement.from_vector(C3, "H", ell).tensor_product(TensorElement.from_vector(C3, "D", lam))
    assert t.pair(1, 1).scalar_value() == 3
    assert t.pair(1, 1).as_scalar() == 3
    unit_counit = TensorElement.from_vector(C3, "H", C3.unit).tensor_product(TensorElement.from_vector(C3, "D", C3.counit))
    assert unit_counit.pair(1, 1).scalar_value() == 1
    e = named_group("C2").identity
    g_delta = TensorElement.from_dict(C2, (1, 1), {(1 - e, e): 1})
    assert g_delta.pair(1, 1).is_zero()


def test_mult_examples():
    ell, _ = integrals(C4)
    sq = TensorElement.from_vector(C4, "H", ell).comult_at("H", 1).mult_at("H", 1)
    G = named_group("C4")
    g = next(x for x in range(4) if G.element_order(x) == 4)
    expected = [0] * 4
    expected[G.identity] = 2
    expected[G.table[g][g]] = 2
    assert sq.side_vector() == expected
    x = TensorElement.from_vector(S3, "H", S3.basis_vector(3))
    one = TensorElement.from_vector(S3, "H", S3.unit)
    assert one.tensor_product(x).mult_at("H", 1) == x
    assert one.tensor_product(x).permute("H", [2, 1]) == x.tensor_product(one)
    assert TensorElement.zero(C3).scalar_value() == 0


def test_shape_errors():
    t = TensorElement.from_vector(C3, "H", C3.unit)
    with pytest.raises(TensorShapeError):
        t.pair(1, 1)
    with pytest.raises(TensorShapeError):
        t.comult_at("H", 2)
    with pytest.raises(TensorShapeError):
        t.permute("H", [1, 2])
    with pytest.raises(TensorShapeError):
        t.scalar_value()
