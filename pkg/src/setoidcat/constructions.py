"""The two categories of setoids over a family, the functors between them, and the full image."""

from __future__ import annotations

import itertools

from .category import (
    EACategory,
    EAFunctor,
    EFunctor,
    HFCategory,
    SetoidsCategory,
    check_e_functor,
    check_ea,
    check_ea_functor,
    check_hf,
    check_hf_isomorphism,
    check_transport_lemmas,
    ea_to_hf,
)
from .errors import InvalidArrow, PreconditionError
from .family import Family, SetoidSum, _require_valid, sigma
from .relations import (
    Relation,
    check_functional,
    check_saturated,
    graph_of,
    identity_relation,
    rel_compose,
    rel_dom,
    rel_ran,
)
from .report import Report
from .setoid import ExtFun, Setoid, ext_maps, identity, product, subsetoid_eq, subsetoid_leq


def _interner(elements):
    """Map each value to the stored equal element, so later lookups hit identity."""
    return {x: x for x in elements}


def _composable_pairs(c1_elements, index_label):
    by_dom = {}
    for x in c1_elements:
        by_dom.setdefault(index_label[x[0]], []).append(x)
    return [(x, y) for x in c1_elements for y in by_dom.get(index_label[x[1]], ())]


def build_C(f: Family, check=True) -> EACategory:
    """Arrows ``(i, j, h)`` for every extensional ``h: F(i) -> F(j)``.

    Two arrows are equal when the square with the transports commutes; the
    composite of ``(i, j, h)`` then ``(j', k, g)`` is ``(i, k, g o F(j->j') o h)``.
    """
    if check:
        _require_valid(f)
    idx = f.index
    L = idx._label
    maps = {}
    arrows = []
    for i in idx:
        for j in idx:
            key = (i, j)
            maps[key] = list(ext_maps(f.fibers[i], f.fibers[j]))
            arrows.extend((i, j, h) for h in maps[key])

    def square_key(arrow):
        # move the arrow to the representatives of its end classes
        i, j, h = arrow
        ri, rj = idx.rep(i), idx.rep(j)
        moved = f.transports[j, rj] @ h @ f.transports[ri, i]
        return (L[i], L[j], tuple(f.fibers[rj].label(y) for y in moved.images))

    c1 = Setoid.from_key(arrows, square_key)
    pairs = _composable_pairs(arrows, L)
    c2 = Setoid.from_key(pairs, lambda u: (c1.label(u[0]), c1.label(u[1])))
    canon = _interner(arrows)
    by_pos = {(i, j, h.pos): (i, j, h) for i, j, h in arrows}

    def cmp(u):
        # g o F(j->j') o h, looked up by image positions
        (i, j, h), (j2, k, g) = u
        gp, tp = g.pos, f.transports[j, j2].pos
        return by_pos[i, k, tuple(gp[tp[x]] for x in h.pos)]

    return EACategory(
        idx, c1, c2,
        id=ExtFun(idx, c1, [canon[i, i, identity(f.fibers[i])] for i in idx]),
        dom=ExtFun(c1, idx, [a[0] for a in arrows]),
        cod=ExtFun(c1, idx, [a[1] for a in arrows]),
        cmp=ExtFun(c2, c1, [cmp(u) for u in pairs]),
        fst=ExtFun(c2, c1, [u[0] for u in pairs]),
        snd=ExtFun(c2, c1, [u[1] for u in pairs]),
    )


def _hit_classes(s: SetoidSum, i):
    base = s.setoid
    seen = {}
    for x in s.family.fibers[i]:
        lab = base.label((i, x))
        if lab not in seen:
            seen[lab] = base.class_of((i, x))
    return [seen[k] for k in sorted(seen)]


def s_arrows(s: SetoidSum, i, j):
    """All saturated functional relations with domain ``F(i)`` and range inside ``F(j)``.

    Each is a choice of a ``F(j)``-class for every class met by ``F(i)``.
    """
    dom_classes = _hit_classes(s, i)
    cod_classes = _hit_classes(s, j)
    out = []
    for choice in itertools.product(cod_classes, repeat=len(dom_classes)):
        out.append(Relation._trusted(s.setoid, ((u, v) for dc, cc in zip(dom_classes, choice) for u in dc for v in cc)))
    return out


def check_s_arrow(s: SetoidSum, i, j, r: Relation) -> Report:
    """Saturation, functionality, ``dom(R) = F(i)`` and ``ran(R)`` included in ``F(j)``."""
    report = Report()
    report.merge(check_saturated(r))
    report.merge(check_functional(r))
    report.check("arrow.dom", subsetoid_eq(rel_dom(r), s.down(i)), (i, j))
    report.check("arrow.ran", subsetoid_leq(rel_ran(r), s.down(j)) is not None, (i, j))
    return report


def build_S(f: Family, s: SetoidSum = None, check=True) -> EACategory:
    """Arrows ``(i, j, R)`` with ``R`` a functional relation on the sum; composition is relational."""
    if check:
        _require_valid(f)
    if s is None:
        s = sigma(f, check=False)
    idx = f.index
    L = idx._label
    by_class = {}
    arrows = []
    for i in idx:
        for j in idx:
            key = (L[i], L[j])
            if key not in by_class:
                by_class[key] = s_arrows(s, i, j)
            arrows.extend((i, j, r) for r in by_class[key])
    c1 = Setoid.from_key(arrows, lambda a: (L[a[0]], L[a[1]], a[2]))
    pairs = _composable_pairs(arrows, L)
    c2 = Setoid.from_key(pairs, lambda u: (c1.label(u[0]), c1.label(u[1])))
    composites = {}
    canon = _interner(arrows)

    def cmp(u):
        (i, _, r), (_, k, q) = u
        if (q, r) not in composites:
            composites[q, r] = rel_compose(q, r)
        return canon[i, k, composites[q, r]]

    return EACategory(
        idx, c1, c2,
        id=ExtFun(idx, c1, [canon[i, i, identity_relation(i, s)] for i in idx]),
        dom=ExtFun(c1, idx, [a[0] for a in arrows]),
        cod=ExtFun(c1, idx, [a[1] for a in arrows]),
        cmp=ExtFun(c2, c1, [cmp(u) for u in pairs]),
        fst=ExtFun(c2, c1, [u[0] for u in pairs]),
        snd=ExtFun(c2, c1, [u[1] for u in pairs]),
    )


class _Graphs:
    """Memoised graphs of fiber maps."""

    def __init__(self, s: SetoidSum):
        self.s = s
        self._memo = {}

    def __call__(self, h, i, j):
        key = (i, j, h)
        if key not in self._memo:
            self._memo[key] = graph_of(h, i, j, self.s)
        return self._memo[key]


def _on_pairs(cat: EACategory, f1: ExtFun):
    """Images of the composable pairs of ``cat`` under an arrow map, componentwise."""
    imgs = f1.images
    return [(imgs[a], imgs[b]) for a, b in zip(cat.fst.pos, cat.snd.pos)]


def functor_M(f: Family, C: EACategory = None, S: EACategory = None, s: SetoidSum = None) -> EAFunctor:
    """Identity on objects, ``(i, j, h) -> (i, j, graph of h)``."""
    s = s or sigma(f)
    C = C or build_C(f)
    S = S or build_S(f, s)
    graph = _Graphs(s)
    canon = _interner(S.c1.elements)
    f1 = ExtFun(C.c1, S.c1, [canon[i, j, graph(h, i, j)] for i, j, h in C.c1])
    f2 = ExtFun(C.c2, S.c2, _on_pairs(C, f1))
    return EAFunctor(C, S, identity(f.index), f1, f2)


def extract_map(s: SetoidSum, i, j, r: Relation, check=True) -> ExtFun:
    """The unique fiber map whose graph is ``r`` (first witness in fiber order)."""
    if check:
        rep = check_s_arrow(s, i, j, r)
        if len(rep):
            raise InvalidArrow(f"({i}, {j}, R) is not an arrow: {', '.join(rep.failed_laws)}")
    fam = s.family
    fi, fj = fam.fibers[i], fam.fibers[j]
    images = []
    for x in fi:
        for y in fj:
            if ((i, x), (j, y)) in r.pairs:
                images.append(y)
                break
        else:
            raise InvalidArrow(f"no image for {x!r} in relation over ({i}, {j})")
    return ExtFun(fi, fj, images)


def functor_N(f: Family, C: EACategory = None, S: EACategory = None, s: SetoidSum = None) -> EAFunctor:
    """Identity on objects, ``(i, j, R) -> (i, j, h)`` with ``h`` extracted from ``R`` by unique choice."""
    s = s or sigma(f)
    C = C or build_C(f)
    S = S or build_S(f, s)
    L = f.index._label
    checked = set()
    canon = _interner(C.c1.elements)
    images = []
    for i, j, r in S.c1:
        key = (L[i], L[j], r)
        if key not in checked:
            extract_map(s, i, j, r, check=True)
            checked.add(key)
        images.append(canon[i, j, extract_map(s, i, j, r, check=False)])
    f1 = ExtFun(S.c1, C.c1, images)
    f2 = ExtFun(S.c2, C.c2, _on_pairs(S, f1))
    return EAFunctor(S, C, identity(f.index), f1, f2)


def check_iso(f: Family, C=None, S=None, s=None) -> Report:
    """Both categories are categories, M and N are functors, and they are mutually inverse."""
    report = Report()
    s = s or sigma(f)
    C = C or build_C(f)
    S = S or build_S(f, s)
    report.merge(check_ea(C), "C.")
    report.merge(check_ea(S), "S.")
    M = functor_M(f, C, S, s)
    N = functor_N(f, C, S, s)
    report.merge(check_ea_functor(M), "M.")
    report.merge(check_ea_functor(N), "N.")
    report.ok("iso.objects").ok("N.M=Id").ok("M.N=Id")
    for x in f.index:
        if N.f0(M.f0(x)) != x or M.f0(N.f0(x)) != x:
            report.fail("iso.objects", (x,))
    lab_c, lab_s = C.c1.labels, S.c1.labels
    for n, k in enumerate(M.f1.pos):
        if lab_c[N.f1.pos[k]] != lab_c[n]:
            report.fail("N.M=Id", (C.c1.elements[n],))
    for n, k in enumerate(N.f1.pos):
        if lab_s[M.f1.pos[k]] != lab_s[n]:
            report.fail("M.N=Id", (S.c1.elements[n],))
    report.summary.update(
        objects=f.index.n_classes(),
        arrow_classes_C=C.c1.n_classes(),
        arrow_classes_S=S.c1.n_classes(),
        arrows_C=len(C.c1),
        arrows_S=len(S.c1),
    )
    return report


def check_graph_laws(f: Family, C: EACategory = None, s: SetoidSum = None) -> Report:
    """Graphs of composable arrows compose to the graph of the composite; identity maps give the diagonal.

    Ranges over every composable pair of ``C`` (not just representatives).
    The composite is ``C``'s, i.e. ``g o F(j->j') o h``.
    """
    s = s or sigma(f)
    C = C or build_C(f)
    report = Report().ok("graph.well-defined").ok("graph.composition").ok("graph.identity")
    seen = {}
    graphs = [seen.setdefault(g, g) for g in (graph_of(h, i, j, s) for i, j, h in C.c1)]
    gid = [id(g) for g in graphs]
    first = {}
    for k, x in enumerate(C.c1.elements):
        lab = C.c1._label[x]
        if lab in first and graphs[first[lab]] != graphs[k]:
            report.fail("graph.well-defined", (C.c1.elements[first[lab]], x))
        first.setdefault(lab, k)
    pos = C.c1._index
    composites = {}
    for u, x, y, z in zip(C.c2.elements, C.fst.images, C.snd.images, C.cmp.images):
        gx, gy = pos[x], pos[y]
        key = (gid[gx], gid[gy])
        if key not in composites:
            r = rel_compose(graphs[gy], graphs[gx])
            composites[key] = seen.get(r, r)
        if composites[key] is not graphs[pos[z]]:
            report.fail("graph.composition", u)
    for i in f.index:
        if graph_of(identity(f.fibers[i]), i, i, s) != identity_relation(i, s):
            report.fail("graph.identity", (i,))
    return report


# ---------------------------------------------------------------------------
# full image

STAR = "*"


def discrete_category(a: Setoid) -> HFCategory:
    """One arrow ``*: x -> y`` exactly when ``x = y``."""
    ob2 = product(a, a)
    fibers = {(x, y): Setoid([STAR] if a.equal(x, y) else []) for x, y in ob2}
    transports = {
        (p, q): ExtFun(fibers[p], fibers[q], fibers[p].elements)
        for p in ob2 for q in ob2 if ob2.equal(p, q)
    }
    return HFCategory(a, Family(ob2, fibers, transports), {x: STAR for x in a}, lambda *args: STAR)


def family_as_efunctor(f: Family) -> EFunctor:
    """The family as an E-functor from the discrete category on its index into setoids."""
    target = SetoidsCategory([f.fibers[i] for i in f.index])
    return EFunctor(discrete_category(f.index), target, f.fibers.__getitem__, lambda a, b, _: f.transport(a, b))


def full_image(F: EFunctor):
    """The HF-category with the objects of the source and the homs of the target, plus ``G``.

    The transport along ``(a, b) -> (a', b')`` pre- and post-composes with
    the images of the source identities moved to ``a' -> a`` and ``b -> b'``.
    """
    C, D = F.source, F.target
    if not isinstance(C, HFCategory):
        raise PreconditionError("full image needs an HF-category as source")
    ob2 = C.hom.index
    Fo = F.ob
    fibers = {(a, b): D.homset(Fo(a), Fo(b)) for a, b in ob2}
    transports = {}
    for (a, b) in ob2:
        for (a2, b2) in ob2:
            if not ob2.equal((a, b), (a2, b2)):
                continue
            pre = F.hom(a2, a, C.transport((a, a), (a2, a))(C.ident(a)))
            post = F.hom(b, b2, C.transport((b, b), (b, b2))(C.ident(b)))

            def move(h, a=a, b=b, a2=a2, b2=b2, pre=pre, post=post):
                return D.compose(Fo(a2), Fo(b), Fo(b2), post, D.compose(Fo(a2), Fo(a), Fo(b), h, pre))

            src = fibers[a, b]
            transports[(a, b), (a2, b2)] = ExtFun(src, fibers[a2, b2], [move(h) for h in src])
    S = HFCategory(
        C.ob,
        Family(ob2, fibers, transports),
        {a: D.ident(Fo(a)) for a in C.ob},
        lambda a, b, c, g, f: D.compose(Fo(a), Fo(b), Fo(c), g, f),
    )
    G = EFunctor(C, S, lambda a: a, F.hom)
    return S, G


def check_full_image(f: Family, C: EACategory = None) -> Report:
    """Everything the full image of the family promises, plus agreement with ``ea_to_hf(build_C(f))``."""
    report = Report()
    F = family_as_efunctor(f)
    report.merge(check_e_functor(F), "F.")
    source = F.source
    report.merge(check_hf(source), "C.")
    report.merge(check_transport_lemmas(source), "C.")
    S, G = full_image(F)
    report.merge(check_hf(S), "S.")
    report.merge(check_transport_lemmas(S), "S.")
    report.ok("S.reflexive-transport")
    for a, b in S.hom.index:
        t = S.transport((a, b), (a, b))
        hom = S.homset(a, b)
        for h in hom:
            if not hom.equal(t(h), h):
                report.fail("S.reflexive-transport", (a, b, h))
    report.merge(check_e_functor(G), "G.")
    missing = [b for b in S.ob if not any(S.ob.equal(G.ob(a), b) for a in source.objects)]
    report.check("G.surjective", not missing, missing[:1])
    C = C or build_C(f)
    canon = ea_to_hf(C, check=False)
    report.merge(check_hf_isomorphism(S, canon, lambda a, b, h: (a, b, h)), "example.")
    report.summary.update(
        hom_classes={f"{a}->{b}": S.homset(a, b).n_classes() for a, b in S.hom.index},
    )
    return report

