import itertools

import pytest
from hypothesis import given, strategies as st

from setoidcat import (
    DomainMismatch,
    ExtFun,
    MalformedInput,
    Setoid,
    Subsetoid,
    check_extensional,
    check_setoid,
    ext_eq,
    ext_maps,
    ext_setoid,
    identity,
    product,
    subsetoid_eq,
    subsetoid_leq,
)
from setoidcat.setoid import check_subsetoid, dot_in, members


@st.composite
def setoids(draw, max_size=5):
    n = draw(st.integers(0, max_size))
    labels = draw(st.lists(st.integers(0, max(n - 1, 0)), min_size=n, max_size=n))
    elements = [f"x{k}" for k in range(n)]
    return Setoid.from_key(elements, key=lambda x: labels[int(x[1:])]), labels


def brute_partition(elements, pairs):
    # smallest equivalence containing pairs, by iterating to a fixpoint
    rel = {(x, x) for x in elements} | set(pairs) | {(b, a) for a, b in pairs}
    while True:
        extra = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        if not extra:
            return rel
        rel |= extra


def test_closure_of_generators():
    s = Setoid("abcde", [("a", "b"), ("c", "b"), ("d", "e")])
    assert s.equal("a", "c")
    assert not s.equal("a", "d")
    assert s.n_classes() == 2
    assert s.rep("c") == "a"
    assert [list(c) for c in s.classes()] == [["a", "b", "c"], ["d", "e"]]


@given(st.integers(0, 6).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=8))))
def test_closure_matches_fixpoint(data):
    n, raw = data
    elements = list(range(n))
    pairs = [(a, b) for a, b in raw if n]
    s = Setoid(elements, pairs)
    rel = brute_partition(elements, pairs)
    for x, y in itertools.product(elements, repeat=2):
        assert s.equal(x, y) == ((x, y) in rel)


@given(setoids())
def test_label_is_first_of_class(data):
    s, labels = data
    for k, x in enumerate(s.elements):
        first = next(j for j in range(len(labels)) if labels[j] == labels[k])
        assert s.label(x) == first
    assert len(check_setoid(s)) == 0


def test_strict_setoid_reports_missing_pairs():
    s = Setoid("xy", [("x", "x"), ("y", "y"), ("x", "y")], closed=True)
    rep = check_setoid(s)
    assert rep.status("setoid.symmetric") == "fail"
    assert rep.witness("setoid.symmetric") == ("y", "x")
    assert rep.status("setoid.reflexive") == "ok"

    t = Setoid("xyz", [(a, a) for a in "xyz"] + [("x", "y"), ("y", "x"), ("y", "z"), ("z", "y")], closed=True)
    assert check_setoid(t).witness("setoid.transitive") == ("x", "y", "z")


def test_malformed_inputs():
    with pytest.raises(MalformedInput):
        Setoid(["a", "a"])
    with pytest.raises(MalformedInput, match="unknown element"):
        Setoid(["a"], [("a", "b")])
    s = Setoid("ab")
    with pytest.raises(MalformedInput, match="not total"):
        ExtFun(s, s, {"a": "a"})
    with pytest.raises(MalformedInput, match="'z'"):
        ExtFun(s, s, ["a", "z"])


def test_extensionality_witness():
    src = Setoid("ab", [("a", "b")])
    dst = Setoid("pq")
    rep = check_extensional(ExtFun(src, dst, {"a": "p", "b": "q"}))
    assert rep.witness("ext.extensional") == ("a", "b")
    assert len(check_extensional(ExtFun(src, dst, {"a": "q", "b": "q"}))) == 0


@given(setoids(4), setoids(3))
def test_ext_maps_match_definition(a, b):
    src, dst = a[0], b[0]
    found = {f.images for f in ext_maps(src, dst)}
    expected = {
        imgs for imgs in itertools.product(dst.elements, repeat=len(src))
        if all(dst.equal(imgs[i], imgs[j])
               for i in range(len(src)) for j in range(len(src))
               if src.equal(src.elements[i], src.elements[j]))
    }
    assert found == expected


@given(setoids(3), setoids(3))
def test_ext_setoid_counts_class_maps(a, b):
    src, dst = a[0], b[0]
    # extensional maps up to =_ext correspond to maps between class sets
    assert ext_setoid(src, dst).n_classes() == dst.n_classes() ** src.n_classes()


@given(setoids(4))
def test_identity_and_composition(data):
    s = data[0]
    f = ExtFun(s, s, [s.rep(x) for x in s])
    assert f @ identity(s) == f
    assert identity(s) @ f == f
    assert ext_eq(f, identity(s))
    assert (f @ f) @ f == f @ (f @ f)


def test_composition_domain_mismatch():
    a, b = Setoid("a"), Setoid("b")
    with pytest.raises(DomainMismatch):
        identity(a) @ identity(b)


def test_product_equality():
    s = Setoid("ab", [("a", "b")])
    t = Setoid("xy")
    p = product(s, t)
    assert p.equal(("a", "x"), ("b", "x"))
    assert not p.equal(("a", "x"), ("a", "y"))
    assert p.n_classes() == 2


def test_setoid_equality_is_structural():
    assert Setoid("ab", [("a", "b")]) == Setoid("ab", [("b", "a")])
    assert Setoid("ab") != Setoid("ab", [("a", "b")])
    assert hash(Setoid("ab")) == hash(Setoid("ab"))


def test_subsetoids():
    amb = Setoid("abcd", [("a", "b")])
    u = Subsetoid.inclusion(amb, ["a"])
    v = Subsetoid.inclusion(amb, ["b", "c"])
    assert dot_in("b", u)
    assert not dot_in("c", u)
    assert members(u) == ["a", "b"]
    assert subsetoid_leq(u, v) is not None
    assert subsetoid_leq(v, u) is None
    assert subsetoid_eq(u, Subsetoid.inclusion(amb, ["b"]))
    # two part elements with equal images violate injectivity
    bad = Subsetoid.inclusion(amb, ["a", "b"])
    assert check_subsetoid(bad).status("subsetoid.injective") == "fail"
