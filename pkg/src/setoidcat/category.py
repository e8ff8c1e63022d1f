"""Categories with equality on objects, in two presentations, and the translations between them.

* :class:`EACategory` -- essentially algebraic: setoids of objects, arrows and
  composable pairs with operations ``id, dom, cod, cmp, fst, snd``.
* :class:`HFCategory` -- hom-family presented: an object setoid and a
  proof-irrelevant family of hom setoids over ``Ob x Ob``.
* :class:`ECategory` -- objects without equality, hom setoids, no transports.

In a composable pair ``u`` the arrow ``fst(u)`` is applied first, so
``cmp(u) = snd(u) o fst(u)``.  Composition callables take
``(a, b, c, g, f)`` with ``f: a -> b``, ``g: b -> c`` and return ``g o f``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import MalformedInput, PreconditionError
from .family import Family, check_family
from .report import Report
from .setoid import ExtFun, Setoid, check_extensional, check_setoid, ext_setoid, identity, product


# ---------------------------------------------------------------------------
# essentially algebraic presentation

@dataclass(eq=False)
class EACategory:
    c0: Setoid
    c1: Setoid
    c2: Setoid
    id: ExtFun
    dom: ExtFun
    cod: ExtFun
    cmp: ExtFun
    fst: ExtFun
    snd: ExtFun

    def __post_init__(self):
        typing = {
            "id": (self.c0, self.c1), "dom": (self.c1, self.c0), "cod": (self.c1, self.c0),
            "cmp": (self.c2, self.c1), "fst": (self.c2, self.c1), "snd": (self.c2, self.c1),
        }
        for name, (src, dst) in typing.items():
            m = getattr(self, name)
            if m.src != src or m.dst != dst:
                raise MalformedInput(f"operation {name} has the wrong source or target")

    def n_arrow_classes(self):
        return self.c1.n_classes()

    def pair_index(self):
        """Map ``(label fst, label snd)`` to the first composable pair with that shape."""
        L1 = self.c1._label
        index = {}
        for u, f, g in zip(self.c2.elements, self.fst.images, self.snd.images):
            index.setdefault((L1[f], L1[g]), u)
        return index


@dataclass(eq=False)
class EAFunctor:
    source: EACategory
    target: EACategory
    f0: ExtFun
    f1: ExtFun
    f2: ExtFun


def check_ea(c: EACategory) -> Report:
    """Check the nine axioms A1-A9 exhaustively (plus setoid and extensionality side conditions)."""
    report = Report()
    for name in ("c0", "c1", "c2"):
        report.merge(check_setoid(getattr(c, name)), f"{name}.")
    for name in ("id", "dom", "cod", "cmp", "fst", "snd"):
        for w in check_extensional(getattr(c, name)).witnesses("ext.extensional"):
            report.fail(f"{name}.extensional", w)
        report.ok(f"{name}.extensional")
    c0, c1, c2 = c.c0, c.c1, c.c2
    # work on positions: label of every operation's value, computed once
    lab0, lab1 = c0.labels, c1.labels
    id_pos = c.id.pos
    dom_lab = [lab0[k] for k in c.dom.pos]
    cod_lab = [lab0[k] for k in c.cod.pos]
    fst_pos, snd_pos, cmp_pos = c.fst.pos, c.snd.pos, c.cmp.pos
    fl = [lab1[k] for k in fst_pos]
    sl = [lab1[k] for k in snd_pos]
    cl = [lab1[k] for k in cmp_pos]
    els0, els2 = c0.elements, c2.elements

    for law in ("A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9"):
        report.ok(law)
    for n, x in enumerate(els0):
        if dom_lab[id_pos[n]] != lab0[n]:
            report.fail("A1", (x,))
        if cod_lab[id_pos[n]] != lab0[n]:
            report.fail("A2", (x,))
    for n, u in enumerate(els2):
        if dom_lab[cmp_pos[n]] != dom_lab[fst_pos[n]]:
            report.fail("A3", (u,))
        if cod_lab[cmp_pos[n]] != cod_lab[snd_pos[n]]:
            report.fail("A4", (u,))

    buckets = {}
    for n in range(len(els2)):
        buckets.setdefault((fl[n], sl[n]), []).append(n)
    lab2 = None if c2.strict else c2.labels
    for ns in buckets.values():
        m = ns[0]
        for n in ns[1:]:
            if not (lab2[m] == lab2[n] if lab2 else c2.equal(els2[m], els2[n])):
                report.fail("A5", (els2[m], els2[n]))

    by_cod = {}
    for k in range(len(c1)):
        by_cod.setdefault(cod_lab[k], []).append(k)
    for k, f in enumerate(c1.elements):
        for m in by_cod.get(dom_lab[k], ()):
            if (lab1[m], lab1[k]) not in buckets:
                report.fail("A6", (f, c1.elements[m]))

    id_labels = {lab1[k] for k in id_pos}
    for n, u in enumerate(els2):
        if fl[n] in id_labels and cl[n] != sl[n]:
            report.fail("A7", (u,))
        if sl[n] in id_labels and cl[n] != fl[n]:
            report.fail("A8", (u,))

    # A9, grouped: the premises only see classes of fst, snd and cmp, so it
    # suffices to range over distinct signatures of u and v; the conclusion
    # asks every admissible w and z to have one composite class.
    sigs = {}
    for n in range(len(els2)):
        sigs.setdefault((fl[n], sl[n], cl[n]), n)
    by_snd = {}
    for sig, n in sigs.items():
        by_snd.setdefault(sig[1], []).append((sig, n))
    # composite class shared by a whole bucket, or None when it is not shared
    shared = {}
    for key, ns in buckets.items():
        labs = {cl[n] for n in ns}
        shared[key] = labs.pop() if len(labs) == 1 else None
    for (a, b, cu), u in sigs.items():
        for (d, _, cv), v in by_snd.get(a, ()):
            kw, kz = (d, cu), (cv, b)
            if kw not in buckets or kz not in buckets:
                continue
            target = shared[kw]
            if target is not None and shared[kz] == target:
                continue
            ws, zs = buckets[kw], buckets[kz]
            target = cl[ws[0]]
            bad = next(n for n in itertools.chain(ws, zs) if cl[n] != target)
            w = bad if bad in ws else ws[0]
            z = bad if w != bad else zs[0]
            report.fail("A9", (els2[w], els2[v], els2[u], els2[z]))
    return report


def check_ea_functor(F: EAFunctor) -> Report:
    """Extensionality of the three components and the six preservation equations."""
    report = Report()
    B, C = F.source, F.target
    for name, m, src, dst in (("f0", F.f0, B.c0, C.c0), ("f1", F.f1, B.c1, C.c1), ("f2", F.f2, B.c2, C.c2)):
        if m.src != src or m.dst != dst:
            raise MalformedInput(f"functor component {name} has the wrong source or target")
        for w in check_extensional(m).witnesses("ext.extensional"):
            report.fail(f"functor.{name}.extensional", w)
        report.ok(f"functor.{name}.extensional")
    # everything by carrier position: f1p[n] is the position of the image of arrow n
    f0p, f1p, f2p = F.f0.pos, F.f1.pos, F.f2.pos
    for law in ("id", "dom", "cod", "fst", "snd", "cmp"):
        report.ok(f"functor.{law}")

    def same_in(s):
        if s.strict:
            return lambda i, k: s.equal(s.elements[i], s.elements[k])
        lab = s.labels
        return lambda i, k: lab[i] == lab[k]

    same0, same1 = same_in(C.c0), same_in(C.c1)
    for n, x in enumerate(B.c0.elements):
        if not same1(f1p[B.id.pos[n]], C.id.pos[f0p[n]]):
            report.fail("functor.id", (x,))
    for law, op_b, op_c in (("dom", B.dom, C.dom), ("cod", B.cod, C.cod)):
        bi, ci = op_b.pos, op_c.pos
        for n, f in enumerate(B.c1.elements):
            if not same0(f0p[bi[n]], ci[f1p[n]]):
                report.fail(f"functor.{law}", (f,))
    for law, op_b, op_c in (("fst", B.fst, C.fst), ("snd", B.snd, C.snd), ("cmp", B.cmp, C.cmp)):
        bi, ci = op_b.pos, op_c.pos
        for n, u in enumerate(B.c2.elements):
            if not same1(f1p[bi[n]], ci[f2p[n]]):
                report.fail(f"functor.{law}", (u,))
    return report


def identity_ea_functor(c: EACategory) -> EAFunctor:
    return EAFunctor(c, c, identity(c.c0), identity(c.c1), identity(c.c2))


def _bijective_on_classes(m: ExtFun, law, report):
    """``m`` induces a bijection between the quotients of its source and target."""
    report.ok(law)
    src, dst = m.src, m.dst
    seen = {}
    for x in src.representatives():
        lab = dst.label(m(x))
        if lab in seen:
            report.fail(law, ("not injective", seen[lab], x))
        seen.setdefault(lab, x)
    for y in dst.representatives():
        if dst.label(y) not in seen:
            report.fail(law, ("not surjective", y))


def check_ea_isomorphism(c: EACategory, d: EACategory, arrow_map) -> Report:
    """Verify an isomorphism certificate: identity on objects plus an arrow map.

    The map on composable pairs is induced by ``arrow_map`` through the
    unique-up-to-equality pair with the given components.
    """
    report = Report()
    if not report.check("iso.objects", c.c0 == d.c0, None):
        return report
    f1 = arrow_map if isinstance(arrow_map, ExtFun) else ExtFun(c.c1, d.c1, arrow_map)
    index = d.pair_index()
    L1 = d.c1._label
    images = []
    for u in c.c2:
        key = (L1[f1(c.fst(u))], L1[f1(c.snd(u))])
        if key not in index:
            report.fail("iso.pairs", (u,))
            return report
        images.append(index[key])
    report.ok("iso.pairs")
    functor = EAFunctor(c, d, identity(c.c0), f1, ExtFun(c.c2, d.c2, images))
    report.merge(check_ea_functor(functor), "iso.")
    _bijective_on_classes(functor.f1, "iso.arrows-bijective", report)
    _bijective_on_classes(functor.f2, "iso.pairs-bijective", report)
    return report


def find_ea_isomorphism(c: EACategory, d: EACategory):
    """Search for an arrow bijection that is the identity on objects.

    Classes are matched bucket by bucket (same domain and codomain class),
    identities are forced, and composites constrain the search.  Returns a
    dict from arrows of ``c`` to arrows of ``d`` (a certificate for
    :func:`check_ea_isomorphism`), or ``None``.
    """
    if c.c0 != d.c0:
        return None
    L0 = c.c0._label

    def shape(cat):
        L1 = cat.c1._label
        reps = cat.c1.representatives()
        buckets = {}
        for f in reps:
            buckets.setdefault((L0[cat.dom(f)], L0[cat.cod(f)]), []).append(f)
        comp = {}
        for u, f, g, h in zip(cat.c2.elements, cat.fst.images, cat.snd.images, cat.cmp.images):
            comp.setdefault((L1[f], L1[g]), L1[h])
        ids = {L0[x]: L1[cat.id(x)] for x in cat.c0}
        return reps, buckets, comp, ids

    reps_c, buckets_c, comp_c, ids_c = shape(c)
    reps_d, buckets_d, comp_d, ids_d = shape(d)
    if {k: len(v) for k, v in buckets_c.items()} != {k: len(v) for k, v in buckets_d.items()}:
        return None
    Lc, Ld = c.c1._label, d.c1._label
    assign = {}
    for x_lab, lab in ids_c.items():
        assign[lab] = ids_d[x_lab]
    order = [Lc[f] for f in reps_c if Lc[f] not in assign]
    by_label_d = {Ld[f]: f for f in reps_d}
    bucket_of = {Lc[f]: key for key, fs in buckets_c.items() for f in fs}
    cand = {key: [Ld[f] for f in fs] for key, fs in buckets_d.items()}

    def consistent():
        for (f, g), h in comp_c.items():
            if f in assign and g in assign and h in assign:
                if comp_d.get((assign[f], assign[g])) != assign[h]:
                    return False
        return True

    if len(set(assign.values())) != len(assign) or not consistent():
        return None

    def search(k):
        if k == len(order):
            return True
        lab = order[k]
        used = set(assign.values())
        for t in cand[bucket_of[lab]]:
            if t in used:
                continue
            assign[lab] = t
            if consistent() and search(k + 1):
                return True
            del assign[lab]
        return False

    if not search(0):
        return None
    return {f: by_label_d[assign[Lc[f]]] for f in c.c1}


# ---------------------------------------------------------------------------
# hom-family presentation and E-categories

class HFCategory:
    """Object setoid, hom family over ``ob x ob``, identities and composition.

    ``comp`` is a callable ``(a, b, c, g, f) -> g o f`` so large composition
    tables need not be materialised.
    """

    def __init__(self, ob: Setoid, hom: Family, ids, comp):
        if hom.index != product(ob, ob):
            raise MalformedInput("hom family must be indexed by ob x ob")
        self.ob = ob
        self.hom = hom
        self.ids = dict(ids)
        self.comp = comp
        for a in ob:
            if a not in self.ids:
                raise MalformedInput(f"no identity arrow given for object {a!r}")

    @property
    def objects(self):
        return self.ob.elements

    def homset(self, a, b) -> Setoid:
        return self.hom.fibers[a, b]

    def ident(self, a):
        return self.ids[a]

    def compose(self, a, b, c, g, f):
        return self.comp(a, b, c, g, f)

    def transport(self, src, dst):
        """``Hom(p, q)`` for ``src = (a, b)`` related to ``dst = (a', b')``."""
        return self.hom.transport(src, dst)


class ECategory:
    """Objects without equality; hom setoids, identities and composition given by callables."""

    def __init__(self, objects, hom, ident, comp):
        self.objects = tuple(objects)
        self._hom = hom
        self._ident = ident
        self.comp = comp

    def homset(self, a, b) -> Setoid:
        return self._hom(a, b)

    def ident(self, a):
        return self._ident(a)

    def compose(self, a, b, c, g, f):
        return self.comp(a, b, c, g, f)


class SetoidsCategory(ECategory):
    """The E-category of finite setoids, materialised only on the homs asked for."""

    def __init__(self, objects=()):
        self._homs = {}
        super().__init__(objects, self._homset, identity, lambda a, b, c, g, f: g @ f)

    def _homset(self, a, b):
        key = (a, b)
        if key not in self._homs:
            self._homs[key] = ext_setoid(a, b)
        return self._homs[key]


def as_ecategory(c: HFCategory) -> ECategory:
    """Forget the equality on objects."""
    return ECategory(c.objects, c.homset, c.ident, c.comp)


class EFunctor:
    """Object map plus hom maps ``hom(a, b, f)``; between HF-categories this is an HF-functor."""

    def __init__(self, source, target, ob, hom):
        self.source = source
        self.target = target
        self.ob = ob if callable(ob) else dict(ob).__getitem__
        self.hom = hom

    @property
    def is_hf(self):
        return isinstance(self.source, HFCategory) and isinstance(self.target, HFCategory)


def _category_laws(report, objects, homset, ident, comp):
    """Typing and extensionality of identities and composition, then H1 and H2.

    Returns False when typing fails and nothing further can be evaluated.
    """
    for law in ("ids.typing", "comp.typing", "comp.extensional", "H1", "H2", "H3"):
        report.ok(law)
    homs = {(a, b): homset(a, b) for a in objects for b in objects}
    for a in objects:
        if ident(a) not in homs[a, a]:
            report.fail("ids.typing", (a,))
    if report.failed_laws:
        return False
    for a, b, c in itertools.product(objects, repeat=3):
        hab, hbc, hac = homs[a, b], homs[b, c], homs[a, c]
        rep_val = {}
        for g in hbc:
            for f in hab:
                try:
                    h = comp(a, b, c, g, f)
                except (KeyError, MalformedInput):
                    h = None
                if h is None or h not in hac:
                    report.fail("comp.typing", (a, b, c, g, f))
                    continue
                key = (hbc.label(g), hab.label(f))
                if key not in rep_val:
                    rep_val[key] = (g, f, h)
                elif not hac.equal(rep_val[key][2], h):
                    report.fail("comp.extensional", (a, b, c, rep_val[key][0], rep_val[key][1], g, f))
    if "comp.typing" in report.failed_laws:
        return False
    for a, b in itertools.product(objects, repeat=2):
        hab = homs[a, b]
        for f in hab:
            if not hab.equal(comp(a, b, b, ident(b), f), f):
                report.fail("H1", (a, b, f))
            if not hab.equal(comp(a, a, b, f, ident(a)), f):
                report.fail("H2", (a, b, f))
    return True


def _associativity(report, quads, homset, comp, reduce_elements):
    """H3 over the given object quadruples; on representatives only if ``reduce_elements``.

    The reduced check first tabulates composition of representatives as
    label positions, one table per object triple, then compares the two
    bracketings by table lookups.
    """
    if not reduce_elements:
        for a, b, c, d in quads:
            had = homset(a, d)
            for h in homset(a, b):
                for g in homset(b, c):
                    gh = comp(a, b, c, g, h)
                    for f in homset(c, d):
                        if not had.equal(comp(a, c, d, f, gh), comp(a, b, d, comp(b, c, d, f, g), h)):
                            report.fail("H3", (a, b, c, d, f, g, h))
        return
    reps, where, tables = {}, {}, {}

    def arrows(a, b):
        if (a, b) not in reps:
            hom = homset(a, b)
            reps[a, b] = hom.representatives()
            where[a, b] = {hom.label(x): n for n, x in enumerate(reps[a, b])}
        return reps[a, b]

    def table(a, b, c):
        # table[g][h] = position of g o h among the representatives of Hom(a, c)
        if (a, b, c) not in tables:
            hac = homset(a, c)
            arrows(a, c)
            pos = where[a, c]
            tables[a, b, c] = [[pos[hac.label(comp(a, b, c, g, h))] for h in arrows(a, b)] for g in arrows(b, c)]
        return tables[a, b, c]

    for a, b, c, d in quads:
        t_abc, t_bcd, t_acd, t_abd = table(a, b, c), table(b, c, d), table(a, c, d), table(a, b, d)
        for fi, row_bcd in enumerate(t_bcd):
            row_acd = t_acd[fi]
            for gi, fg in enumerate(row_bcd):
                lhs = [row_acd[x] for x in t_abc[gi]]
                rhs = t_abd[fg]
                if lhs != rhs:
                    hi = next(n for n in range(len(lhs)) if lhs[n] != rhs[n])
                    report.fail("H3", (a, b, c, d, reps[c, d][fi], reps[b, c][gi], reps[a, b][hi]))


def check_e_category(e, objects=None) -> Report:
    """Identity and associativity laws of an E-category over the given objects."""
    objects = tuple(e.objects if objects is None else objects)
    report = Report()
    for a in objects:
        for b in objects:
            report.merge(check_setoid(e.homset(a, b)), "hom.")
    if _category_laws(report, objects, e.homset, e.ident, e.compose):
        reduce_elements = "comp.extensional" not in report.failed_laws
        _associativity(report, itertools.product(objects, repeat=4), e.homset, e.compose, reduce_elements)
    return report


def check_hf(c: HFCategory, exhaustive=False) -> Report:
    """Hom-family laws, H1-H3 and the two coherence conditions.

    By default the coherence condition for composition is checked along the
    transports from each triple of objects to its triple of class
    representatives, and associativity on representative objects and
    arrows.  Given the family laws and extensional composition, which are
    always checked in full, transports are bijective homomorphisms and these
    reductions decide the same laws.  Whenever a prerequisite fails, or with
    ``exhaustive=True``, everything is checked on every element.
    """
    report = Report()
    report.merge(check_setoid(c.ob), "ob.")
    report.merge(check_family(c.hom), "hom.")
    objects = c.objects
    ob = c.ob
    if not _category_laws(report, objects, c.homset, c.ident, c.comp):
        return report
    base_ok = not report.failed_laws
    reduced = base_ok and not exhaustive

    report.ok("coherence.identity")
    for a in objects:
        for a2 in objects:
            if ob.equal(a, a2):
                moved = c.transport((a, a), (a2, a2))(c.ident(a))
                if not c.homset(a2, a2).equal(moved, c.ident(a2)):
                    report.fail("coherence.identity", (a, a2))

    report.ok("coherence.composition")
    for a, b, cc in itertools.product(objects, repeat=3):
        if reduced:
            targets = [(ob.rep(a), ob.rep(b), ob.rep(cc))]
        else:
            targets = [t for t in itertools.product(objects, repeat=3)
                       if ob.equal(a, t[0]) and ob.equal(b, t[1]) and ob.equal(cc, t[2])]
        hab, hbc = c.homset(a, b), c.homset(b, cc)
        fs = hbc.representatives() if reduced else hbc.elements
        gs = hab.representatives() if reduced else hab.elements
        for a2, b2, c2 in targets:
            t_ac = c.transport((a, cc), (a2, c2))
            t_bc = c.transport((b, cc), (b2, c2))
            t_ab = c.transport((a, b), (a2, b2))
            h_ac2 = c.homset(a2, c2)
            for f in fs:
                for g in gs:
                    lhs = t_ac(c.comp(a, b, cc, f, g))
                    rhs = c.comp(a2, b2, c2, t_bc(f), t_ab(g))
                    if not h_ac2.equal(lhs, rhs):
                        report.fail("coherence.composition", ((a, b, cc), (a2, b2, c2), f, g))

    if reduced and not report.failed_laws:
        quads = itertools.product(ob.representatives(), repeat=4)
        _associativity(report, quads, c.homset, c.comp, True)
    else:
        _associativity(report, itertools.product(objects, repeat=4), c.homset, c.comp,
                       "comp.extensional" not in report.failed_laws and not exhaustive)
    return report


def check_transport_lemmas(c: HFCategory) -> Report:
    """Transported identities compose like the transports themselves.

    For ``b = b' = b''``:  ``e(b', b'') o e(b, b') = e(b, b'')`` where
    ``e(b, b')`` is the identity at ``b`` moved along ``(b, b) -> (b, b')``;
    dually on the domain side.
    """
    report = Report().ok("lemma.codomain").ok("lemma.domain")
    ob = c.ob
    for x, y, z in itertools.product(ob.elements, repeat=3):
        if not (ob.equal(x, y) and ob.equal(y, z)):
            continue
        # codomain side: x = b, y = b', z = b''
        e1 = c.transport((x, x), (x, y))(c.ident(x))
        e2 = c.transport((y, y), (y, z))(c.ident(y))
        e3 = c.transport((x, x), (x, z))(c.ident(x))
        if not c.homset(x, z).equal(c.comp(x, y, z, e2, e1), e3):
            report.fail("lemma.codomain", (x, y, z))
        # domain side: x = a, y = a', z = a''
        d1 = c.transport((x, x), (y, x))(c.ident(x))
        d2 = c.transport((y, y), (z, y))(c.ident(y))
        d3 = c.transport((x, x), (z, x))(c.ident(x))
        if not c.homset(z, x).equal(c.comp(z, y, x, d1, d2), d3):
            report.fail("lemma.domain", (x, y, z))
    return report


def check_e_functor(F: EFunctor, objects=None) -> Report:
    """Preservation of identities and composition; for HF-functors also the coherence square.

    ``objects`` restricts the source objects inspected (defaults to all of them).
    """
    C, D = F.source, F.target
    objects = tuple(C.objects if objects is None else objects)
    report = Report()
    for law in ("functor.typing", "functor.extensional", "functor.id", "functor.comp"):
        report.ok(law)
    for a, b in itertools.product(objects, repeat=2):
        src, dst = C.homset(a, b), D.homset(F.ob(a), F.ob(b))
        first = {}
        for f in src:
            y = F.hom(a, b, f)
            if y not in dst:
                report.fail("functor.typing", (a, b, f))
                continue
            lab = src.label(f)
            if lab in first and not dst.equal(first[lab], y):
                report.fail("functor.extensional", (a, b, src.rep(f), f))
            first.setdefault(lab, y)
    if report.failed_laws:
        return report
    for a in objects:
        Fa = F.ob(a)
        if not D.homset(Fa, Fa).equal(F.hom(a, a, C.ident(a)), D.ident(Fa)):
            report.fail("functor.id", (a,))
    for a, b, c in itertools.product(objects, repeat=3):
        Fa, Fb, Fc = F.ob(a), F.ob(b), F.ob(c)
        hfac = D.homset(Fa, Fc)
        for g in C.homset(b, c):
            Fg = F.hom(b, c, g)
            for f in C.homset(a, b):
                lhs = F.hom(a, c, C.compose(a, b, c, g, f))
                rhs = D.compose(Fa, Fb, Fc, Fg, F.hom(a, b, f))
                if not hfac.equal(lhs, rhs):
                    report.fail("functor.comp", (a, b, c, g, f))
    if F.is_hf:
        ob_c, ob_d = C.ob, D.ob
        report.ok("functor.objects-extensional").ok("coherence.functor")
        for a, a2 in itertools.product(objects, repeat=2):
            if ob_c.equal(a, a2) and not ob_d.equal(F.ob(a), F.ob(a2)):
                report.fail("functor.objects-extensional", (a, a2))
        if "functor.objects-extensional" in report.failed_laws:
            return report
        for a, b in itertools.product(objects, repeat=2):
            for a2, b2 in itertools.product(objects, repeat=2):
                if not (ob_c.equal(a, a2) and ob_c.equal(b, b2)):
                    continue
                t_c = C.transport((a, b), (a2, b2))
                t_d = D.transport((F.ob(a), F.ob(b)), (F.ob(a2), F.ob(b2)))
                dst = D.homset(F.ob(a2), F.ob(b2))
                for f in C.homset(a, b):
                    if not dst.equal(F.hom(a2, b2, t_c(f)), t_d(F.hom(a, b, f))):
                        report.fail("coherence.functor", ((a, b), (a2, b2), f))
    return report


def identity_e_functor(c):
    return EFunctor(c, c, lambda a: a, lambda a, b, f: f)


def check_hf_isomorphism(c: HFCategory, d: HFCategory, hom_map) -> Report:
    """Verify hom bijections ``hom_map(a, b, f)`` that are the identity on objects.

    They must be extensional and bijective on classes and commute with
    identities, composition and transports.  Composition and transports
    are compared on class representatives, which is exact because both
    categories have extensional composition and transports (check them
    with :func:`check_hf` first).
    """
    report = Report()
    if not report.check("iso.objects", c.ob == d.ob, None):
        return report
    ob = c.ob
    objects = c.objects
    for law in ("iso.typing", "iso.extensional", "iso.bijective", "iso.id", "iso.comp", "iso.transport"):
        report.ok(law)
    for a, b in itertools.product(objects, repeat=2):
        src, dst = c.homset(a, b), d.homset(a, b)
        seen = {}
        for f in src:
            y = hom_map(a, b, f)
            if y not in dst:
                report.fail("iso.typing", (a, b, f))
                continue
            lab = src.label(f)
            if lab in seen and not dst.equal(seen[lab], y):
                report.fail("iso.extensional", (a, b, f))
            seen.setdefault(lab, y)
        hit = {}
        for lab, y in seen.items():
            if dst.label(y) in hit:
                report.fail("iso.bijective", ("not injective", a, b, src.elements[lab]))
            hit[dst.label(y)] = lab
        for y in dst.representatives():
            if dst.label(y) not in hit:
                report.fail("iso.bijective", ("not surjective", a, b, y))
    if report.failed_laws:
        return report
    for a in objects:
        if not d.homset(a, a).equal(hom_map(a, a, c.ident(a)), d.ident(a)):
            report.fail("iso.id", (a,))
    for a, b, cc in itertools.product(objects, repeat=3):
        dst = d.homset(a, cc)
        for g in c.homset(b, cc).representatives():
            for f in c.homset(a, b).representatives():
                lhs = hom_map(a, cc, c.comp(a, b, cc, g, f))
                rhs = d.comp(a, b, cc, hom_map(b, cc, g), hom_map(a, b, f))
                if not dst.equal(lhs, rhs):
                    report.fail("iso.comp", (a, b, cc, g, f))
    for a, b in itertools.product(objects, repeat=2):
        for a2, b2 in itertools.product(objects, repeat=2):
            if not (ob.equal(a, a2) and ob.equal(b, b2)):
                continue
            t_c, t_d = c.transport((a, b), (a2, b2)), d.transport((a, b), (a2, b2))
            dst = d.homset(a2, b2)
            for f in c.homset(a, b).representatives():
                if not dst.equal(hom_map(a2, b2, t_c(f)), t_d(hom_map(a, b, f))):
                    report.fail("iso.transport", ((a, b), (a2, b2), f))
    return report


# ---------------------------------------------------------------------------
# translations between the presentations

def ea_to_hf(c: EACategory, check=True) -> HFCategory:
    """Hom setoids are the arrows with prescribed domain and codomain classes.

    Transports re-tag an arrow without changing it; composition goes through
    the composable pair with the given components.
    """
    if check:
        rep = check_ea(c)
        if len(rep):
            raise PreconditionError(f"EA category fails {', '.join(rep.failed_laws)}", rep)
    c0, c1 = c.c0, c.c1
    L0, L1 = c0._label, c1._label
    by_shape = {}
    for f, x, y in zip(c1.elements, c.dom.images, c.cod.images):
        by_shape.setdefault((L0[x], L0[y]), []).append(f)
    ob2 = product(c0, c0)
    fibers = {}
    for a, b in ob2:
        fibers[a, b] = Setoid.from_key(by_shape.get((L0[a], L0[b]), ()), L1.__getitem__)
    transports = {}
    for p in ob2:
        for q in ob2:
            if ob2.equal(p, q):
                transports[p, q] = ExtFun(fibers[p], fibers[q], fibers[p].elements)
    hom = Family(ob2, fibers, transports)
    cmp = dict(zip(c.c2.elements, c.cmp.images))
    index = c.pair_index()

    def comp(a, b, cc, g, f):
        u = index.get((L1[f], L1[g]))
        if u is None:
            raise PreconditionError(f"no composable pair for {f!r} then {g!r}")
        return cmp[u]

    return HFCategory(c0, hom, {a: c.id(a) for a in c0}, comp)


def hf_to_ea(c: HFCategory) -> EACategory:
    """Arrows are triples ``(a, b, f)``; composable pairs are pairs of triples.

    ``(a, b, f) = (a', b', f')`` iff ``Hom((a,b),(a',b'))(f) = f'``; a pair is
    compared componentwise.  The composite of ``(a, b, f)`` then
    ``(b', c, g)`` is ``(a, c, g o e o f)`` with ``e`` the identity at ``b``
    transported to ``Hom(b, b')``.
    """
    ob = c.ob
    L0 = ob._label
    arrows = [(a, b, f) for a in ob for b in ob for f in c.homset(a, b)]

    def arrow_key(t):
        a, b, f = t
        ra, rb = ob.rep(a), ob.rep(b)
        return (L0[a], L0[b], c.homset(ra, rb).label(c.transport((a, b), (ra, rb))(f)))

    keys = {t: arrow_key(t) for t in arrows}
    c1 = Setoid.from_key(arrows, keys.__getitem__)
    by_dom = {}
    for t in arrows:
        by_dom.setdefault(L0[t[0]], []).append(t)
    pairs = [(x, y) for x in arrows for y in by_dom.get(L0[x[1]], ())]
    c2 = Setoid.from_key(pairs, lambda u: (keys[u[0]], keys[u[1]]))
    c0 = ob

    def cmp(u):
        (a, b, f), (b2, cc, g) = u
        e = c.transport((b, b), (b, b2))(c.ident(b))
        return (a, cc, c.comp(a, b2, cc, g, c.comp(a, b, b2, e, f)))

    return EACategory(
        c0, c1, c2,
        id=ExtFun(c0, c1, [(a, a, c.ident(a)) for a in c0]),
        dom=ExtFun(c1, c0, [t[0] for t in arrows]),
        cod=ExtFun(c1, c0, [t[1] for t in arrows]),
        cmp=ExtFun(c2, c1, [cmp(u) for u in pairs]),
        fst=ExtFun(c2, c1, [u[0] for u in pairs]),
        snd=ExtFun(c2, c1, [u[1] for u in pairs]),
    )


def check_identity_transport(c: HFCategory) -> Report:
    """Composing with a transported identity is transport.

    With ``e = Hom((a,a),(a',a''))(id_a)``:
    ``e o g = Hom((x,a'),(x,a''))(g)`` for ``g: x -> a'`` and
    ``f o e = Hom((a'',y),(a',y))(f)`` for ``f: a'' -> y``.
    """
    report = Report().ok("identity-transport.postcompose").ok("identity-transport.precompose")
    ob = c.ob
    for a, a1, a2 in itertools.product(ob.elements, repeat=3):
        if not (ob.equal(a, a1) and ob.equal(a, a2)):
            continue
        e = c.transport((a, a), (a1, a2))(c.ident(a))
        for x in ob:
            dst = c.homset(x, a2)
            t = c.transport((x, a1), (x, a2))
            for g in c.homset(x, a1):
                if not dst.equal(c.comp(x, a1, a2, e, g), t(g)):
                    report.fail("identity-transport.postcompose", ((a, a1, a2), x, g))
        for y in ob:
            dst = c.homset(a1, y)
            t = c.transport((a2, y), (a1, y))
            for f in c.homset(a2, y):
                if not dst.equal(c.comp(a1, a2, y, f, e), t(f)):
                    report.fail("identity-transport.precompose", ((a, a1, a2), y, f))
    return report


def ea_roundtrip(c: EACategory):
    """``hf_to_ea(ea_to_hf(c))`` with the canonical certificate ``f -> (dom f, cod f, f)``."""
    back = hf_to_ea(ea_to_hf(c))
    arrow_map = ExtFun(c.c1, back.c1, [(c.dom(f), c.cod(f), f) for f in c.c1])
    return back, check_ea_isomorphism(c, back, arrow_map)


def hf_roundtrip(c: HFCategory):
    """``ea_to_hf(hf_to_ea(c))`` with the canonical certificate ``f -> (a, b, f)``."""
    back = ea_to_hf(hf_to_ea(c))
    return back, check_hf_isomorphism(c, back, lambda a, b, f: (a, b, f))
