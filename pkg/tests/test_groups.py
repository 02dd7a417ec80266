import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfinv.groups import (
    BUNDLED_GROUPS,
    BudgetExceeded,
    FinGroup,
    FpGroup,
    GroupError,
    automorphisms,
    cayley_presentation,
    count_homs,
    isomorphic_groups,
    named_group,
    normal_subgroups,
)
from hopfinv.groups.core import direct_product
from oracles import brute_homs, squares_to_identity

EXPECTED_ORDERS = {
    "C1": 1, "C2": 2, "C3": 3, "C4": 4, "C2xC2": 4, "C5": 5, "C6": 6, "S3": 6, "C7": 7, "C8": 8,
    "C2xC4": 8, "C2xC2xC2": 8, "D8": 8, "Q8": 8, "C9": 9, "C3xC3": 9, "C10": 10, "D10": 10,
    "C11": 11, "C12": 12, "C2xC6": 12, "D12": 12, "A4": 12, "Dic12": 12, "S4": 24,
}


@pytest.mark.parametrize("name", BUNDLED_GROUPS)
def test_bundled_tables_are_groups(name):
    G = named_group(name)
    t = G.table
    n = G.order
    assert n == EXPECTED_ORDERS[name]
    assert all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))
    assert all(t[G.identity][a] == a == t[a][G.identity] for a in range(n))
    assert all(t[a][G.inverse[a]] == G.identity for a in range(n))


def test_bundled_list_has_every_group_up_to_order_12():
    small = [g for g in BUNDLED_GROUPS if EXPECTED_ORDERS[g] <= 12]
    assert len(small) == 24
    # pairwise non-isomorphic among equal orders
    for a, b in itertools.combinations(small, 2):
        if EXPECTED_ORDERS[a] == EXPECTED_ORDERS[b]:
            assert not isomorphic_groups(named_group(a), named_group(b)).isomorphic, (a, b)


def test_square_roots_of_identity():
    assert squares_to_identity(named_group("Q8").table) == 2
    assert squares_to_identity(named_group("D8").table) == 6
    assert named_group("C4").is_abelian()


def test_unknown_group_name():
    with pytest.raises(GroupError):
        named_group("X7")


def test_invalid_table_rejected():
    with pytest.raises(GroupError):
        FinGroup([[0, 1], [0, 1]])


def test_json_roundtrip():
    G = named_group("S3")
    H = FinGroup.from_json(G.to_json())
    assert H.table == G.table
    custom = FinGroup.from_json({"order": 2, "table": [[1, 2], [2, 1]], "name": "mine"})
    assert custom.order == 2


def test_presentation_parse_and_format():
    P = FpGroup.parse("gens: x,y; rels: x y y x y y y, y x^4 y x^5;")
    assert P.rank == 2
    assert P.relators[0] == (1, 2, 2, 1, 2, 2, 2)
    assert P.relators[1] == (2,) + (1,) * 4 + (2,) + (1,) * 5
    assert FpGroup.parse(P.format()) == P
    Q = FpGroup.parse("gens: a; rels: a^-2, a';")
    assert Q.relators == ((-1, -1), (-1,))
    with pytest.raises(GroupError):
        FpGroup.parse("gens x")


def test_count_homs_examples():
    S3 = named_group("S3")
    assert count_homs(FpGroup.parse("gens: x; rels: x^2;"), S3) == 4
    assert count_homs(FpGroup.parse("gens: x, y;"), S3) == 36
    assert count_homs(FpGroup.parse("gens: x; rels: x;"), S3) == 1


def test_count_homs_budget():
    with pytest.raises(BudgetExceeded):
        count_homs(FpGroup.parse("gens: a,b,c,d;"), named_group("S4"), max_assignments=1000)


words = st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=6)


@given(st.lists(words, min_size=0, max_size=2), st.sampled_from(["C4", "S3", "Q8", "C2xC2", "D10"]))
@settings(max_examples=40, deadline=None)
def test_count_homs_matches_brute_force(relators, name):
    G = named_group(name)
    P = FpGroup(2, tuple(tuple(w) for w in relators))
    assert count_homs(P, G) == brute_homs(G.table, P.relators, 2)


@given(st.lists(words, min_size=1, max_size=2))
@settings(max_examples=20, deadline=None)
def test_homs_multiplicative_over_products(relators):
    P = FpGroup(2, tuple(tuple(w) for w in relators))
    A, B = named_group("C2"), named_group("S3")
    assert count_homs(P, direct_product(A, B)) == count_homs(P, A) * count_homs(P, B)


def test_parallel_count_is_identical():
    P = FpGroup.parse("gens: x,y; rels: x y x' y';")
    G = named_group("S4")
    assert count_homs(P, G, workers=2) == count_homs(P, G) == 24 * 5


@pytest.mark.parametrize("name,order", [("C3", 2), ("Q8", 24), ("C2", 1), ("S3", 6), ("C2xC2", 6), ("D8", 8)])
def test_automorphism_group_orders(name, order):
    auts = automorphisms(named_group(name))
    assert len(auts) == order
    assert auts[0] == tuple(range(named_group(name).order))


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "A4"])
def test_automorphisms_are_homs_permuting_classes(name):
    G = named_group(name)
    classes = {frozenset(c) for c in G.conjugacy_classes}
    for p in automorphisms(G):
        assert all(p[G.table[a][b]] == G.table[p[a]][p[b]] for a in range(G.order) for b in range(G.order))
        assert {frozenset(p[x] for x in c) for c in classes} == classes


def test_inner_automorphisms_fix_each_class():
    G = named_group("S4")
    for h in range(G.order):
        for c in G.conjugacy_classes:
            assert {G.conjugate(x, h) for x in c} == set(c)


def test_normal_subgroups_counts():
    assert len(normal_subgroups(named_group("S3"))) == 3
    assert len(normal_subgroups(named_group("Q8"))) == 6
    assert len(normal_subgroups(named_group("S4"))) == 4


def test_cayley_presentation_defines_the_group():
    for name in ["C4", "S3", "Q8"]:
        G = named_group(name)
        P, _ = cayley_presentation(G)
        # the presentation's homs into G are exactly the endomorphisms compatible with the generators
        assert count_homs(P, G) >= len(automorphisms(G))


@pytest.mark.parametrize("a,b,iso", [("Q8", "D8", False), ("C4", "C4", True), ("C4", "C2xC2", False), ("S3", "C6", False)])
def test_isomorphic_groups(a, b, iso):
    assert isomorphic_groups(named_group(a), named_group(b)).isomorphic is iso
