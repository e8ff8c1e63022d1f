import pytest
from hypothesis import given, strategies as st

from setoidcat import (
    CompatibilityError,
    DomainMismatch,
    ExtFun,
    ExtensionalityError,
    Family,
    IncompleteFamily,
    PreconditionError,
    Setoid,
    Subsetoid,
    SubsetoidFamily,
    check_cocone,
    check_down_family,
    check_family,
    check_injection_property,
    check_setoid,
    complete_transports,
    hat_family,
    identity,
    sigma,
    universal_map,
)
from setoidcat.family import transports_agree
from setoidcat.fixtures import broken_f3, cocone, fam1_missing_transport, fam1_sparse
from setoidcat.harness import gen_family
from setoidcat.serialize import load_cocone, load_family

seeds = st.integers(0, 10_000)


def test_fam1_laws(fam1_family):
    rep = check_family(fam1_family)
    assert rep.passed
    assert rep.status("F2") == "structural"


def test_missing_transport_is_reported_by_pair():
    f = load_family(fam1_missing_transport())
    with pytest.raises(IncompleteFamily, match="'i1' -> 'i0'"):
        check_family(f)


def test_autocomplete_rebuilds_fam1(fam1_family):
    f = load_family(fam1_sparse(), autocomplete=True)
    assert transports_agree(f, fam1_family)


def test_broken_f3_witness():
    rep = check_family(load_family(broken_f3()))
    assert rep.status("F3") == "fail"
    i, j, k, x = rep.witness("F3")
    assert {i, j, k} <= {"i0", "i1"}


def test_sigma_of_broken_family_is_refused():
    with pytest.raises(PreconditionError):
        sigma(load_family(broken_f3()))


def test_fam1_sum(fam1_family):
    s = sigma(fam1_family)
    assert len(s.setoid) == 5
    assert s.setoid.n_classes() == 3
    assert s.setoid.equal(("i0", "a"), ("i1", "a'"))
    assert not s.setoid.equal(("i0", "a"), ("i1", "b'"))
    assert check_setoid(s.setoid).passed


def brute_sum_classes(f):
    # (i, x) ~ (j, y) straight from the definition, then count classes by search
    elems = [(i, x) for i in f.index for x in f.fibers[i]]

    def rel(p, q):
        return f.index.equal(p[0], q[0]) and f.fibers[q[0]].equal(f.transports[p[0], q[0]](p[1]), q[1])

    reps = []
    for e in elems:
        if not any(rel(e, r) for r in reps):
            reps.append(e)
    return len(reps)


@given(seeds)
def test_generated_families_are_valid(seed):
    f = gen_family(4, 3, seed)
    assert check_family(f).passed
    s = sigma(f)
    assert check_setoid(s.setoid).passed
    assert check_injection_property(f, s).passed
    assert s.setoid.n_classes() == brute_sum_classes(f)


@given(seeds)
def test_down_family_recovers_transports(seed):
    f = gen_family(3, 3, seed)
    g = check_down_family(f)
    assert transports_agree(hat_family(g), f)


@given(seeds)
def test_quotient_cocone_factors_through_sum(seed):
    f = gen_family(3, 3, seed)
    s = sigma(f)
    target = Setoid(sorted({s.setoid.rep(e) for e in s.setoid}), ())
    legs = {i: ExtFun(f.fibers[i], target, [s.setoid.rep((i, x)) for x in f.fibers[i]]) for i in f.index}
    assert check_cocone(f, target, legs).passed
    k = universal_map(f, target, legs, s)
    for i in f.index:
        assert (k @ s.injections[i]) == legs[i]


def test_cocone_fixture(fam1_family):
    target, legs = load_cocone(cocone(), fam1_family)
    k = universal_map(fam1_family, target, legs)
    assert k(("i1", "a'")) == "p"
    target, legs = load_cocone(cocone(swap=True), fam1_family)
    rep = check_cocone(fam1_family, target, legs)
    assert rep.status("cocone.compatibility") == "fail"
    with pytest.raises(CompatibilityError):
        universal_map(fam1_family, target, legs)


def test_cocone_leg_with_wrong_type(fam1_family):
    target = Setoid("p")
    legs = {i: ExtFun(fam1_family.fibers[i], target, lambda _: "p") for i in fam1_family.index}
    legs["i2"] = identity(fam1_family.fibers["i2"])
    with pytest.raises(DomainMismatch):
        universal_map(fam1_family, target, legs)


def test_family_rejects_transport_between_unrelated_indices():
    idx = Setoid("ij")
    fib = {"i": Setoid("a"), "j": Setoid("b")}
    with pytest.raises(Exception, match="unrelated"):
        Family(idx, fib, {("i", "j"): ExtFun(fib["i"], fib["j"], ["b"])})


def test_complete_transports_walks_inverses():
    idx = Setoid("ijk", [("i", "j"), ("j", "k")])
    fib = {n: Setoid([f"{n}0", f"{n}1"]) for n in "ijk"}
    given_maps = {
        ("i", "j"): ExtFun(fib["i"], fib["j"], ["j1", "j0"]),
        ("k", "j"): ExtFun(fib["k"], fib["j"], ["j0", "j1"]),
    }
    f = Family(idx, fib, complete_transports(idx, fib, given_maps))
    assert f.missing_transports() == []
    assert check_family(f).passed
    assert f.transports["i", "k"].images == ("k1", "k0")


def test_hat_family_needs_extensional_assignment():
    amb = Setoid("ab")
    idx = Setoid("ij", [("i", "j")])
    g = SubsetoidFamily(idx, amb, {"i": Subsetoid.inclusion(amb, "a"), "j": Subsetoid.inclusion(amb, "b")})
    with pytest.raises(ExtensionalityError):
        hat_family(g)


def test_empty_family_records_vacuous_laws():
    rep = check_family(gen_family(0, 0, 0))
    assert rep.passed
    assert {"fiber.setoid.reflexive", "F1", "F3"} <= set(rep.laws)
