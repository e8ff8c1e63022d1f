from hypothesis import assume, given, strategies as st

from setoidcat import (
    build_C,
    build_S,
    check_ea,
    check_ea_functor,
    check_hf,
    check_iso,
    family_as_efunctor,
    full_image,
    functor_M,
    functor_N,
    sigma,
)
from setoidcat.constructions import check_full_image, check_graph_laws
from setoidcat.harness import gen_family, oracle_c_classes, oracle_s_classes

seeds = st.integers(0, 10_000)

# FAM1 by hand: object classes {i0 = i1} and {i2}; fibers {a, b} discrete over
# the first and {c} over the second.  Maps between class pairs: 2^2, 1^2, 2^1, 1^1.
FAM1_HOMS = {("i0", "i0"): 4, ("i0", "i2"): 1, ("i2", "i0"): 2, ("i2", "i2"): 1}


def test_fam1_counts(fam1_family):
    C, S = build_C(fam1_family), build_S(fam1_family)
    assert C.c0.n_classes() == S.c0.n_classes() == 2
    assert C.n_arrow_classes() == S.n_arrow_classes() == sum(FAM1_HOMS.values()) == 8
    assert oracle_c_classes(fam1_family) == 8
    assert oracle_s_classes(fam1_family) == 8


def test_fam1_iso(fam1_family):
    rep = check_iso(fam1_family)
    assert rep.passed, rep.failed_laws
    assert rep.summary["arrow_classes_C"] == rep.summary["arrow_classes_S"] == 8
    assert rep.summary["objects"] == 2


def test_fam1_hom_setoids_in_full_image(fam1_family):
    S, G = full_image(family_as_efunctor(fam1_family))
    assert check_hf(S).passed
    for (a, b), n in FAM1_HOMS.items():
        assert S.homset(a, b).n_classes() == n
    assert S.homset("i1", "i0").n_classes() == 4
    rep = check_full_image(fam1_family)
    assert rep.passed, rep.failed_laws
    assert rep.summary["hom_classes"]["i2->i1"] == 2


def test_functors_are_mutually_inverse_on_fam1(fam1_family):
    C, S = build_C(fam1_family), build_S(fam1_family)
    M, N = functor_M(fam1_family, C, S), functor_N(fam1_family, C, S)
    assert check_ea_functor(M).passed and check_ea_functor(N).passed
    for u in C.c1:
        assert C.c1.equal(N.f1(M.f1(u)), u)
    for r in S.c1:
        assert S.c1.equal(M.f1(N.f1(r)), r)


@given(seeds)
def test_iso_on_generated_families(seed):
    f = gen_family(3, 3, seed)
    rep = check_iso(f)
    assert rep.passed, rep.failed_laws
    assert rep.summary["arrow_classes_C"] == rep.summary["arrow_classes_S"]


@given(seeds)
def test_class_counts_match_oracles(seed):
    f = gen_family(3, 2, seed)
    assume(sigma(f).setoid.n_classes() <= 3)
    assert build_C(f).n_arrow_classes() == oracle_c_classes(f)
    assert build_S(f).n_arrow_classes() == oracle_s_classes(f)


@given(seeds)
def test_graph_laws(seed):
    f = gen_family(4, 3, seed)
    assert check_graph_laws(f).passed


@given(seeds)
def test_full_image_on_generated_families(seed):
    f = gen_family(3, 2, seed)
    rep = check_full_image(f)
    assert rep.passed, rep.failed_laws


def test_empty_family():
    f = gen_family(0, 0, 0)
    C, S = build_C(f), build_S(f)
    assert len(C.c1) == len(S.c1) == 0
    assert check_ea(C).passed and check_ea(S).passed
    assert check_iso(f).passed


def test_empty_fibers():
    f = gen_family(3, 0, 5)
    assert all(len(f.fibers[i]) == 0 for i in f.index)
    rep = check_iso(f)
    assert rep.passed
    # exactly one (empty) map between any two empty fibers
    n = f.index.n_classes()
    assert rep.summary["arrow_classes_C"] == n * n
