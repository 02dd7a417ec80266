import json

import pytest

from hopfinv.characters import CharacterTable
from hopfinv.groups import BUNDLED_GROUPS, character_table, class_function_check, dual_character_table, named_group


@pytest.mark.parametrize("name", BUNDLED_GROUPS)
def test_row_orthogonality(name):
    G = named_group(name)
    T = character_table(G)
    n = G.order
    assert T.irreps[0].values == (1,) * n
    assert sum(d * d for d in T.dims) == n
    for r in T:
        assert r.values[G.identity] == r.dim
    for a in T:
        for b in T:
            inner = sum(a.values[g] * b.values[G.inverse[g]] for g in range(n))
            assert inner == (n if a is b else 0), (name, a.name, b.name)
    assert class_function_check(G, T)


@pytest.mark.parametrize("name", ["S3", "Q8", "A4", "C2xC4"])
def test_characters_are_class_functions(name):
    G = named_group(name)
    for r in character_table(G):
        for c in G.conjugacy_classes:
            assert len({r.values[x] for x in c}) == 1


def test_dual_table_is_evaluations():
    G = named_group("S3")
    T = dual_character_table(G)
    assert T.names[0] == f"ev{G.identity + 1}"
    assert all(d == 1 for d in T.dims)
    assert len(T) == G.order


def test_json_roundtrip(tmp_path):
    T = character_table(named_group("C3"))
    path = tmp_path / "c3.json"
    path.write_text(json.dumps(T.to_json()))
    assert CharacterTable.load(str(path)) == T


def test_malformed_table():
    with pytest.raises(ValueError):
        CharacterTable.from_json({"irreps": []})
    with pytest.raises(KeyError):
        character_table(named_group("S3"))["nope"]
