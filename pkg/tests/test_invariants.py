import itertools
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfinv.groups import FpGroup, character_table, count_homs, dual_character_table, named_group
from hopfinv.groups import invariant_to_presentation, presentation_to_invariant
from hopfinv.hopf import drinfeld_double, dual_hopf, group_algebra, integrals
from hopfinv.invariants import (
    AutomorphismError,
    CanonicalInvariant,
    DSLSyntaxError,
    MissingCharacterError,
    ShapeError,
    aut_fixed_space,
    check_automorphism,
    compile_invariant,
    compile_staged,
    count_canonical,
    distinguish,
    enumerate_canonical,
    evaluate,
    evaluate_datum,
    gram_rank,
    group_automorphism_matrices,
    k0_generators,
    parse,
    saturation_check,
    span_basis,
)
from hopfinv.invariants.spans import _act, _dual_action
from hopfinv.scalars import classify
from oracles import brute_homs, squares_to_identity

LAM_L1L2 = "gens: L, Lam; op: comultH 1; op: comultD 1; op: pair 1 1; op: pair 1 1;"


# -- parser --------------------------------------------------------------------


def test_parse_examples():
    e = parse("gens: L;")
    assert e.shape == (1, 0) and e.ops == ()
    assert parse(LAM_L1L2).shape == (0, 0)
    with pytest.raises(ShapeError) as info:
        parse("gens: L; op: pair 1 1;")
    assert info.value.op_index == 1


def test_parse_errors_carry_position():
    with pytest.raises(DSLSyntaxError) as info:
        parse("gens: L, Lam;\nop: frobnicate 1;")
    assert info.value.line == 2
    assert info.value.column == 5
    with pytest.raises(DSLSyntaxError):
        parse("gens: L")
    with pytest.raises(DSLSyntaxError):
        parse("gens: L; op: permH [1 2;")


def test_parse_comments_and_permutations():
    e = parse("# two copies\ngens: L, L;  # H side\nop: permH [2 1];\n")
    assert e.ops[0].args == (2, 1)
    with pytest.raises(ShapeError):
        parse("gens: L; op: permH [1 2];")


ops_text = st.sampled_from(["comultH 1", "comultD 1", "pair 1 1", "permH [1]", "comultH 2", "permD [2 1]"])


@given(st.lists(st.sampled_from(["L", "Lam", "charH a", "charD b"]), min_size=1, max_size=3), st.lists(ops_text, max_size=4))
@settings(max_examples=80, deadline=None)
def test_format_parse_roundtrip(gens, ops):
    text = "gens: " + ", ".join(gens) + ";" + "".join(f" op: {o};" for o in ops)
    try:
        e = parse(text)
    except ShapeError:
        return
    assert parse(e.format()) == e
    assert parse(e.format().replace("\n", "   \n  ")) == e


# -- evaluation ------------------------------------------------------------------


def test_lam_of_l_is_dimension():
    for name in ["S3", "C3", "Q8"]:
        H = group_algebra(named_group(name))
        assert evaluate(H, parse("gens: L, Lam; op: pair 1 1;")).scalar_value() == H.dim


@pytest.mark.parametrize("name,value", [("C4", 8), ("C2xC2", 16), ("D8", 48), ("Q8", 16)])
def test_lam_l1l2(name, value):
    G = named_group(name)
    H = group_algebra(G)
    assert value == G.order * squares_to_identity(G.table)
    assert evaluate(H, parse(LAM_L1L2)).scalar_value() == value
    assert evaluate(H, parse(LAM_L1L2), fuse=False).scalar_value() == value


def test_shape_one_zero_pipeline():
    G = named_group("C3")
    H = group_algebra(G)
    t = evaluate(H, parse("gens: L, Lam; op: comultH 1; op: pair 2 1;"))
    assert t.shape == (1, 0)
    assert t.side_vector() == [3 if g == G.identity else 0 for g in range(3)]


def test_character_generators():
    G = named_group("S3")
    H = group_algebra(G)
    chars = character_table(G)
    evs = dual_character_table(G)
    # psi(l) = delta_{psi, eps} dim H
    for r in chars:
        t = evaluate(H, parse(f"gens: L, charD {r.name}; op: pair 1 1;"), d_chars=chars)
        assert t.scalar_value() == (6 if r.name == "triv" else 0)
    # lam(g) for the basis element g
    for r in evs:
        t = evaluate(H, parse(f"gens: charH {r.name}, Lam; op: pair 1 1;"), h_chars=evs)
        assert t.scalar_value() == (6 if r.name == evs.names[0] else 0)
    with pytest.raises(MissingCharacterError):
        evaluate(H, parse("gens: L, charD triv; op: pair 1 1;"))


# -- canonical data --------------------------------------------------------------------


def count_oracle(i, j, n_max):
    total = 0
    for N in range(max(1, i, j), n_max + 1):
        P = N - max(i, j)
        mh, md = P + i, P + j
        comps = (2 ** (mh - 1) if mh else 1) * (2 ** (md - 1) if md else 1)
        inj = comb(mh, i) * factorial(md) // factorial(md - P)
        total += comps * inj * factorial(i) * factorial(j)
    return total


@pytest.mark.parametrize("i,j,n", [(0, 0, 4), (1, 0, 5), (0, 1, 4), (1, 1, 4), (2, 1, 3), (0, 2, 3)])
def test_enumeration_counts(i, j, n):
    assert count_canonical(i, j, n) == count_oracle(i, j, n)


def test_enumeration_is_sorted_and_unique():
    data = list(enumerate_canonical(1, 1, 3))
    assert data == sorted(data, key=CanonicalInvariant.sort_key)
    assert len(set(data)) == len(data)
    assert count_canonical(0, 0, 4) == 1641
    first = next(iter(enumerate_canonical(0, 0, 1)))
    assert (first.a, first.b, first.sigma) == (1, 1, (1,))
    (only,) = list(enumerate_canonical(1, 0, 1))
    assert only.shape == (1, 0) and only.sigma == (0,)


def test_n2_data_include_both_pairings():
    data = list(enumerate_canonical(0, 0, 2))
    assert CanonicalInvariant(1, 1, (2,), (2,), (1, 2)) in data
    assert CanonicalInvariant(1, 1, (2,), (2,), (2, 1)) in data
    assert CanonicalInvariant(2, 1, (1, 1), (2,), (1, 2)) in data


def test_compile_forms_agree():
    H = group_algebra(named_group("S3"))
    for c in enumerate_canonical(1, 1, 3):
        assert evaluate(H, compile_invariant(c)) == evaluate(H, compile_staged(c))
    swap = CanonicalInvariant(1, 1, (2,), (2,), (2, 1))
    plain = CanonicalInvariant(1, 1, (2,), (2,), (1, 2))
    assert evaluate_datum(H, swap) == evaluate_datum(H, plain)
    assert evaluate(H, parse(LAM_L1L2)) == evaluate_datum(H, plain)


def test_compile_first_datum_is_lam_l():
    c = next(iter(enumerate_canonical(0, 0, 1)))
    assert compile_invariant(c).format() == parse("gens: L, Lam; op: pair 1 1;").format()


# -- bridge to homomorphism counts -------------------------------------------------


@pytest.mark.parametrize("name", ["C1", "C4", "S3", "Q8", "D10", "A4"])
def test_bridge_on_sample(name):
    G = named_group(name)
    H = group_algebra(G)
    for c in itertools.islice(enumerate_canonical(0, 0, 3), 0, None, 7):
        P, a = invariant_to_presentation(c)
        assert evaluate_datum(H, c).scalar_value() == G.order**a * brute_homs(G.table, P.relators, P.rank)


def test_bridge_examples():
    t = 3
    c = CanonicalInvariant(1, 1, (t,), (t,), (1, 2, 3))
    P, a = invariant_to_presentation(c)
    assert (P.relators, a) == (((1, 1, 1),), 1)
    G = named_group("C4")
    c2 = CanonicalInvariant(1, 1, (2,), (2,), (1, 2))
    assert evaluate_datum(group_algebra(G), c2).scalar_value() == 4 * count_homs(invariant_to_presentation(c2)[0], G) == 8
    P = FpGroup.parse("gens: x,y; rels: x y^2 x y^3, y x^4 y x^5;")
    c3 = presentation_to_invariant(P)
    assert invariant_to_presentation(c3)[0].relators == P.relators
    for name in ["C2", "C3", "S3"]:
        G = named_group(name)
        assert evaluate_datum(group_algebra(G), c3).scalar_value() == G.order**2 * count_homs(P, G)
    with pytest.raises(ValueError):
        invariant_to_presentation(next(iter(enumerate_canonical(1, 0, 1))))


# -- spans, automorphisms, pairing -------------------------------------------------


def test_span_examples():
    G = named_group("C3")
    H = group_algebra(G)
    res = span_basis(H, 1, 0, 4)
    assert res.dim == 2
    dims = [d for _, d in res.profile]
    assert dims == sorted(dims)
    assert span_basis(group_algebra(named_group("C2")), 1, 0, 4).dim == 2
    assert span_basis(group_algebra(named_group("S3")), 0, 0, 3).dim == 1


def test_fixed_space_examples():
    C3 = group_algebra(named_group("C3"))
    assert len(aut_fixed_space(C3, group_automorphism_matrices(C3), 1, 0)) == 2
    assert len(aut_fixed_space(C3, [], 1, 1)) == 9
    S3 = group_algebra(named_group("S3"))
    assert len(aut_fixed_space(S3, group_automorphism_matrices(S3), 1, 0)) == 3


def test_automorphism_validation():
    H = group_algebra(named_group("C3"))
    with pytest.raises(AutomorphismError):
        check_automorphism(H, {(0, 0): 2, (1, 1): 1, (2, 2): 1})
    with pytest.raises(AutomorphismError):
        group_automorphism_matrices(drinfeld_double(named_group("C2"))[0])


@pytest.mark.parametrize("name,dim", [("C2", 2), ("C3", 2), ("C5", 2), ("S3", 3)])
def test_saturation(name, dim):
    H = group_algebra(named_group(name))
    rep = saturation_check(H, group_automorphism_matrices(H), 1, 0, 5)
    assert rep.saturated and rep.fixed_dim == dim and rep.containment_violations == 0


def test_containment_for_every_invariant():
    for name in ["S3", "Q8"]:
        H = group_algebra(named_group(name))
        mats = group_automorphism_matrices(H)
        for c in enumerate_canonical(1, 1, 3):
            v = evaluate_datum(H, c)
            for A in mats:
                assert _act(v, A, _dual_action(A, H.dim)) == v


def test_dual_side_saturation():
    H = dual_hopf(group_algebra(named_group("C5")))
    rep = saturation_check(H, group_automorphism_matrices(H), 1, 0, 4)
    assert rep.saturated and rep.fixed_dim == 2


def test_gram_examples():
    assert gram_rank(group_algebra(named_group("C3")), 1, 0, 4) == (2, 2, 2)
    r, a, b = gram_rank(group_algebra(named_group("C2")), 1, 1, 4)
    assert r == a == b
    assert gram_rank(group_algebra(named_group("S3")), 0, 0, 2) == (1, 1, 1)


def test_distinguish_examples():
    v = distinguish(group_algebra(named_group("C4")), group_algebra(named_group("C2xC2")), 2)
    assert v.distinguished and v.values == (8, 16)
    assert v.datum == CanonicalInvariant(1, 1, (2,), (2,), (1, 2))
    v = distinguish(group_algebra(named_group("Q8")), group_algebra(named_group("D8")), 2)
    assert v.values == (16, 48)
    same = distinguish(group_algebra(named_group("S3")), group_algebra(named_group("S3")), 3)
    assert not same.distinguished and "indistinguishable" in same.format()


def test_distinguish_different_dimensions_first_invariant():
    v = distinguish(group_algebra(named_group("C2")), group_algebra(named_group("C3")), 1)
    assert v.values == (2, 3) and v.checked == 1


def test_k0_examples():
    vals = [x for _, x in k0_generators(group_algebra(named_group("S3")), 2)]
    assert {6, 24} <= set(vals)
    c2 = [x for _, x in k0_generators(group_algebra(named_group("C2")), 3)]
    assert all(classify(x).rational_integer for x in c2)
    assert [x for _, x in k0_generators(group_algebra(named_group("C1")), 3)] == [1]


def test_parallel_evaluation_identical():
    H = group_algebra(named_group("S3"))
    a = span_basis(H, 1, 1, 3, workers=1)
    b = span_basis(H, 1, 1, 3, workers=2)
    assert a.format() == b.format()


def test_integral_of_dual_matches():
    G = named_group("S3")
    ell, lam = integrals(group_algebra(G))
    ell_d, lam_d = integrals(dual_hopf(group_algebra(G)))
    assert ell_d == lam and lam_d == ell
