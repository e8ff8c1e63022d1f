"""Seeded generators, brute-force oracles and the property suite."""

from __future__ import annotations

import itertools
import random

from .category import (
    EACategory,
    check_identity_transport,
    check_ea,
    check_hf,
    ea_roundtrip,
    ea_to_hf,
    hf_roundtrip,
    hf_to_ea,
)
from .constructions import (
    build_C,
    build_S,
    check_full_image,
    check_graph_laws,
    check_iso,
    check_s_arrow,
    discrete_category,
)
from .family import Family, check_family, check_injection_property, sigma
from .relations import Relation, dot_in_rel
from .report import Report
from .setoid import ExtFun, Setoid, check_setoid, identity


def _partition(rng, elements, n_classes):
    """Random labels with every one of ``n_classes`` classes used."""
    labels = list(range(n_classes)) + [rng.randrange(n_classes) for _ in range(len(elements) - n_classes)]
    rng.shuffle(labels)
    return labels


def _setoid_from_labels(elements, labels):
    first = {}
    eq = []
    for x, lab in zip(elements, labels):
        eq.append((x, first.setdefault(lab, x)))
    return Setoid(elements, eq)


def gen_setoid(max_elems, seed) -> Setoid:
    """A random setoid with at most ``max_elems`` elements, fixed by ``seed``."""
    if max_elems < 0:
        raise ValueError("max_elems must be non-negative")
    rng = random.Random(seed)
    n = rng.randint(0, max_elems)
    elements = [f"x{k}" for k in range(n)]
    if n == 0:
        return Setoid(())
    return _setoid_from_labels(elements, _partition(rng, elements, rng.randint(1, n)))


def gen_family(max_index, max_fiber, seed) -> Family:
    """A random valid family, fixed by ``seed``.

    Within an index class every fiber has the same number of classes.  A
    random spanning tree of the class carries class bijections (with random
    choices of class members) along each edge in both directions; the
    transport ``i -> j`` is the composite along the tree path through the
    root, and the diagonal gets identities.
    """
    if max_index < 0 or max_fiber < 0:
        raise ValueError("bounds must be non-negative")
    rng = random.Random(seed)
    m = rng.randint(1, max_index) if max_index else 0
    index_elems = [f"i{k}" for k in range(m)]
    index = _setoid_from_labels(index_elems, _partition(rng, index_elems, rng.randint(1, m))) if m else Setoid(())

    fibers, transports = {}, {}
    for cls in index.classes():
        k = rng.randint(1, max_fiber) if max_fiber else 0
        fiber_classes = {}
        for i in cls:
            size = rng.randint(k, max_fiber)
            elems = [f"{i}.{t}" for t in range(size)]
            fibers[i] = _setoid_from_labels(elems, _partition(rng, elems, k)) if k else Setoid(())
            fiber_classes[i] = fibers[i].classes()

        def edge(a, b, perm):
            # send the class at position c of a to a random member of class perm[c] of b
            picks = [rng.choice(fiber_classes[b][perm[c]]) for c in range(k)]
            pos = {x: c for c, members in enumerate(fiber_classes[a]) for x in members}
            return ExtFun(fibers[a], fibers[b], [picks[pos[x]] for x in fibers[a]])

        root = cls[0]
        up = {root: identity(fibers[root])}
        down = {root: identity(fibers[root])}
        for n, i in enumerate(cls[1:], start=1):
            parent = cls[rng.randrange(n)]
            perm = list(range(k))
            rng.shuffle(perm)
            inv = [0] * k
            for c, d in enumerate(perm):
                inv[d] = c
            up[i] = up[parent] @ edge(i, parent, inv)
            down[i] = edge(parent, i, perm) @ down[parent]
        for i in cls:
            for j in cls:
                transports[i, j] = identity(fibers[i]) if i == j else down[j] @ up[i]
    return Family(index, fibers, transports)


# ---------------------------------------------------------------------------
# oracles

def oracle_rel_eq(r1: Relation, r2: Relation) -> bool:
    """Equality of relations as mutual inclusion up to membership."""
    return all(dot_in_rel(p, r2) for p in r1.pairs) and all(dot_in_rel(p, r1) for p in r2.pairs)


def oracle_ext_maps(src: Setoid, dst: Setoid):
    """Extensional maps found by testing every related pair of the source."""
    related = [(a, b) for a in range(len(src)) for b in range(len(src))
               if src.equal(src.elements[a], src.elements[b])]
    out = []
    for images in itertools.product(dst.elements, repeat=len(src)):
        if all(dst.equal(images[a], images[b]) for a, b in related):
            out.append(images)
    return out


def _count_classes(items, same):
    reps = []
    for x in items:
        if not any(same(x, r) for r in reps):
            reps.append(x)
    return len(reps)


def oracle_c_classes(f: Family) -> int:
    """Arrow classes of ``build_C`` by literal comparison of the commuting squares."""
    idx = f.index
    arrows = []
    for i in idx:
        for j in idx:
            src, dst = f.fibers[i], f.fibers[j]
            arrows.extend((i, j, dict(zip(src.elements, imgs))) for imgs in oracle_ext_maps(src, dst))

    def same(u, v):
        (i, j, h), (i2, j2, h2) = u, v
        if not (idx.equal(i, i2) and idx.equal(j, j2)):
            return False
        tp, tq = f.transports[i, i2], f.transports[j, j2]
        return all(f.fibers[j2].equal(h2[tp(x)], tq(h[x])) for x in f.fibers[i])

    return _count_classes(arrows, same)


def oracle_s_classes(f: Family) -> int:
    """Arrow classes of ``build_S``: every union of blocks of class pairs that passes the arrow checks."""
    s = sigma(f)
    base = s.setoid
    blocks = [(cu, cv) for cu in base.classes() for cv in base.classes()]
    idx = f.index
    arrows = []
    for i in idx:
        for j in idx:
            for mask in range(1 << len(blocks)):
                chosen = [b for k, b in enumerate(blocks) if mask >> k & 1]
                r = Relation(base, ((u, v) for cu, cv in chosen for u in cu for v in cv))
                if not len(check_s_arrow(s, i, j, r)):
                    arrows.append((i, j, r))

    def same(u, v):
        return idx.equal(u[0], v[0]) and idx.equal(u[1], v[1]) and oracle_rel_eq(u[2], v[2])

    return _count_classes(arrows, same)


# ---------------------------------------------------------------------------
# property runs

def family_properties(f: Family) -> Report:
    """Family laws, the sum, the injection property, the isomorphism, graph laws and full image."""
    report = Report()
    report.merge(check_family(f), "laws.")
    if len(report):
        return report
    s = sigma(f)
    report.merge(check_setoid(s.setoid), "sum.")
    report.merge(check_injection_property(f, s))
    C = build_C(f, check=False)
    S = build_S(f, s, check=False)
    report.merge(check_iso(f, C, S, s), "iso.")
    report.merge(check_graph_laws(f, C, s))
    report.merge(check_full_image(f, C), "full-image.")
    return report


def roundtrip_properties(c: EACategory) -> Report:
    """Both round trips with their certificates, and the two identities on the translated category."""
    report = Report()
    report.merge(check_ea(c), "input.")
    if len(report):
        return report
    hf = ea_to_hf(c, check=False)
    report.merge(check_hf(hf), "hf.")
    report.merge(check_identity_transport(hf))
    back, rep = ea_roundtrip(c)
    report.merge(check_ea(back), "ea-roundtrip.category.")
    report.merge(rep, "ea-roundtrip.")
    _, rep = hf_roundtrip(hf)
    report.merge(rep, "hf-roundtrip.")
    return report


def hf_roundtrip_properties(c) -> Report:
    """Round trips starting from an HF-category."""
    report = Report()
    report.merge(check_hf(c), "input.")
    if len(report):
        return report
    _, rep = hf_roundtrip(c)
    report.merge(rep, "hf-roundtrip.")
    report.merge(roundtrip_properties(hf_to_ea(c)), "ea.")
    return report


SUITE_DEFAULTS = dict(seed=0, samples=500, max_index=4, max_fiber=3,
                      roundtrip_samples=100, roundtrip_max_index=3, roundtrip_max_fiber=2,
                      discrete_samples=5, discrete_max=4)


def _suite_item(task):
    kind, seed, a, b = task
    if kind == "family":
        return family_properties(gen_family(a, b, seed))
    if kind == "roundtrip":
        return roundtrip_properties(build_C(gen_family(a, b, seed)))
    return hf_roundtrip_properties(discrete_category(gen_setoid(a, seed)))


def suite_tasks(seed=0, samples=500, max_index=4, max_fiber=3, roundtrip_samples=100,
                roundtrip_max_index=3, roundtrip_max_fiber=2, discrete_samples=5, discrete_max=4):
    tasks = [("family", seed + k, max_index, max_fiber) for k in range(samples)]
    tasks += [("roundtrip", seed + k, roundtrip_max_index, roundtrip_max_fiber) for k in range(roundtrip_samples)]
    tasks += [("discrete", seed + k, discrete_max, 0) for k in range(discrete_samples)]
    return tasks


def run_suite(jobs=1, **params):
    """Run every property over seeded samples and merge the reports.

    Laws are keyed ``<kind>.<law>`` with witnesses ``{"seed", "witness"}``;
    ``summary["checked"]`` counts the samples each law was checked on.
    Results are merged in task order whatever the number of workers.
    """
    opts = dict(SUITE_DEFAULTS)
    opts.update(params)
    tasks = suite_tasks(**opts)
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_suite_item, tasks, chunksize=8))
    else:
        results = [_suite_item(t) for t in tasks]
    report = Report()
    counts, checked = {}, {}
    for (kind, seed, _, _), rep in zip(tasks, results):
        counts[kind] = counts.get(kind, 0) + 1
        for law in rep.laws:
            name = f"{kind}.{law}"
            checked[name] = checked.get(name, 0) + 1
            ws = rep.witnesses(law)
            if ws:
                for w in ws:
                    report.fail(name, {"seed": seed, "witness": w})
            else:
                report.ok(name, rep.status(law))
    report.summary.update(opts)
    report.summary["samples_by_kind"] = counts
    report.summary["checked"] = checked
    return report
