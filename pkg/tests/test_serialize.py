import json

import pytest
from hypothesis import given, strategies as st

from setoidcat import MalformedInput, Setoid, build_C, build_S, check_ea, check_hf, ext_eq
from setoidcat.family import transports_agree
from setoidcat.fixtures import MUTATIONS, VALID, chain_category, fam1, write_all, z2_category
from setoidcat.harness import gen_family, gen_setoid
from setoidcat.serialize import (
    dump_ea,
    dump_family,
    dump_hf,
    dump_map,
    dump_setoid,
    dumps,
    load_ea,
    load_family,
    load_hf,
    load_map,
    load_setoid,
    read_document,
    to_json,
)

seeds = st.integers(0, 10_000)


@given(seeds)
def test_setoid_round_trip(seed):
    s = gen_setoid(6, seed)
    assert load_setoid(json.loads(dumps(dump_setoid(s)))) == s


@given(seeds)
def test_family_round_trip(seed):
    f = gen_family(4, 3, seed)
    doc = json.loads(dumps(dump_family(f)))
    g = load_family(doc)
    assert transports_agree(f, g)
    assert dumps(dump_family(g)) == dumps(doc)


def test_map_forms():
    s = Setoid([1, 2])
    f = load_map([[1, 2], [2, 1]], s, s)
    assert f(1) == 2
    assert ext_eq(load_map({"1": 2, "2": 1}, s, s), f)
    assert load_map(dump_map(f), s, s) == f


def test_ea_round_trip():
    c = load_ea(chain_category())
    again = load_ea(json.loads(dumps(dump_ea(c))))
    assert again.c1 == c.c1 and again.cmp == c.cmp


def test_ea_round_trip_with_tuple_identifiers(fam1_family):
    for c in (build_C(fam1_family), build_S(fam1_family)):
        again = load_ea(json.loads(dumps(dump_ea(c))))
        assert again.c1.n_classes() == c.c1.n_classes() == 8
        assert len(again.c2) == len(c.c2)
        assert check_ea(again).passed


def test_hf_round_trip():
    c = load_hf(z2_category(("a", "b"), [("a", "b")]))
    again = load_hf(json.loads(dumps(dump_hf(c))))
    assert check_hf(again).passed
    assert again.compose("a", "b", "a", "x", "x") == "e"


@pytest.mark.parametrize("doc, message", [
    ({"elements": "ab"}, "expected a list"),
    ({"elements": ["a", "a"]}, "duplicate"),
    ({"elements": ["a"], "eq": [["a", "b"]]}, "unknown element"),
    ({"elements": [1.5]}, "not a valid identifier"),
    ({}, "missing field 'elements'"),
])
def test_malformed_setoids(doc, message):
    with pytest.raises(MalformedInput, match=message):
        load_setoid(doc)


def test_malformed_family_names_location():
    doc = fam1()
    doc["transports"]["i0->i1"] = {"a": "zz", "b": "b'"}
    with pytest.raises(MalformedInput, match="transports"):
        load_family(doc)
    doc = fam1()
    doc["transports"]["i0=>i1"] = doc["transports"].pop("i0->i1")
    with pytest.raises(MalformedInput, match="i->j"):
        load_family(doc)


def test_read_document_errors(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"elements": [1,\n}')
    with pytest.raises(MalformedInput, match="line 2"):
        read_document(str(p))
    with pytest.raises(MalformedInput):
        read_document(str(tmp_path / "missing.json"))


def test_to_json_is_plain():
    assert to_json({("a", 1): Setoid("x")}) is not None
    json.dumps(to_json({"w": (("i0", "a"), frozenset())}))


def test_fixture_files(tmp_path):
    names = write_all(tmp_path)
    assert len(names) == len(VALID) + len(MUTATIONS) + 1
    for name in names:
        read_document(str(tmp_path / f"{name}.json"))
