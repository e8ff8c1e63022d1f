"""Proof-irrelevant families of setoids and the setoid sum."""

from __future__ import annotations

from collections import deque

from .errors import (
    CompatibilityError,
    DomainMismatch,
    ExtensionalityError,
    IncompleteFamily,
    MalformedInput,
    PreconditionError,
)
from .report import Report
from .setoid import (
    ExtFun,
    Setoid,
    Subsetoid,
    check_extensional,
    check_setoid,
    ext_eq,
    identity,
    subsetoid_eq,
    subsetoid_leq,
)


class Family:
    """A setoid ``fibers[i]`` for each index element and one transport per related pair.

    Storing exactly one transport per ordered related pair ``(i, j)`` makes
    proof-irrelevance structural.
    """

    def __init__(self, index: Setoid, fibers, transports):
        self.index = index
        self.fibers = dict(fibers)
        self.transports = dict(transports)
        for i in index:
            if i not in self.fibers:
                raise MalformedInput(f"no fiber given for index element {i!r}")
        for i in self.fibers:
            if i not in index:
                raise MalformedInput(f"fiber given for unknown index element {i!r}")
        for (i, j), t in self.transports.items():
            if i not in index or j not in index:
                raise MalformedInput(f"transport {i!r} -> {j!r} mentions an unknown index element")
            if not index.equal(i, j):
                raise MalformedInput(f"transport given for unrelated pair {i!r} -> {j!r}")
            if t.src != self.fibers[i] or t.dst != self.fibers[j]:
                raise MalformedInput(f"transport {i!r} -> {j!r} does not map F({i}) to F({j})")

    def fiber(self, i) -> Setoid:
        try:
            return self.fibers[i]
        except (KeyError, TypeError):
            raise MalformedInput(f"{i!r} is not an index element") from None

    def transport(self, i, j) -> ExtFun:
        t = self.transports.get((i, j))
        if t is None:
            if self.index.equal(i, j):
                raise IncompleteFamily((i, j))
            raise DomainMismatch(f"no transport between unrelated {i!r} and {j!r}")
        return t

    def related_pairs(self):
        idx = self.index
        return [(i, j) for i in idx for j in idx if idx.equal(i, j)]

    def missing_transports(self):
        return [p for p in self.related_pairs() if p not in self.transports]

    def require_complete(self):
        missing = self.missing_transports()
        if missing:
            raise IncompleteFamily(missing[0])
        return self

    def __repr__(self):
        return f"Family(index={self.index!r}, fibers={len(self.fibers)})"


def _invert(t: ExtFun):
    """A map back along ``t``, if ``t`` is surjective up to equality."""
    src, dst = t.src, t.dst
    images = []
    for y in dst.elements:
        for x, tx in zip(src.elements, t.images):
            if dst.equal(tx, y):
                images.append(x)
                break
        else:
            return None
    return ExtFun(dst, src, images)


def complete_transports(index: Setoid, fibers, transports):
    """Fill missing transports with identities on the diagonal and composites along given ones.

    Given transports may also be walked backwards through their inverse.
    Whatever is produced still has to pass :func:`check_family`.
    """
    transports = dict(transports)
    for i in index:
        if (i, i) not in transports:
            transports[i, i] = identity(fibers[i])
    edges = {}
    for (i, j), t in list(transports.items()):
        if i == j:
            continue
        edges.setdefault(i, []).append((j, t))
        if (j, i) not in transports:
            inv = _invert(t)
            if inv is not None:
                edges.setdefault(j, []).append((i, inv))
    for i in index:
        # breadth-first over known edges, composing as we go
        reached = {i: transports[i, i]}
        queue = deque([i])
        while queue:
            a = queue.popleft()
            for b, t in edges.get(a, ()):
                if b not in reached:
                    reached[b] = t @ reached[a]
                    queue.append(b)
        for j in index:
            if index.equal(i, j) and (i, j) not in transports and j in reached:
                transports[i, j] = reached[j]
    return transports


def check_family(f: Family) -> Report:
    """Check the family laws: identity transports, proof-irrelevance, composition.

    Raises :class:`IncompleteFamily` when a related pair has no transport.
    """
    f.require_complete()
    report = Report()
    report.merge(check_setoid(f.index), "index.")
    # recorded even when there are no fibers, where they hold vacuously
    report.ok("fiber.setoid.reflexive").ok("fiber.setoid.symmetric").ok("fiber.setoid.transitive")
    for i in f.index:
        report.merge(check_setoid(f.fibers[i]), "fiber.")
    report.ok("transport.extensional")
    for (i, j) in f.related_pairs():
        t = f.transports[i, j]
        for w in check_extensional(t).witnesses("ext.extensional"):
            report.fail("transport.extensional", (i, j) + tuple(w))
    report.ok("F1")
    for i in f.index:
        t = f.transports[i, i]
        fib = f.fibers[i]
        for x, tx in zip(fib.elements, t.images):
            if not fib.equal(tx, x):
                report.fail("F1", (i, x))
    report.ok("F2", "structural")
    report.ok("F3")
    idx = f.index
    for i in idx:
        for j in idx:
            if not idx.equal(i, j):
                continue
            tij = f.transports[i, j]
            for k in idx:
                if not idx.equal(j, k) or not idx.equal(i, k):
                    continue
                tjk, tik = f.transports[j, k], f.transports[i, k]
                dst = f.fibers[k]
                for x, y in zip(f.fibers[i].elements, tij.images):
                    if not dst.equal(tjk(y), tik(x)):
                        report.fail("F3", (i, j, k, x))
    return report


def _require_valid(f: Family):
    rep = check_family(f)
    if len(rep):
        raise PreconditionError(f"family fails {', '.join(rep.failed_laws)}", rep)


class SetoidSum:
    """The setoid sum of a family together with its injections."""

    def __init__(self, family: Family, setoid: Setoid, injections):
        self.family = family
        self.setoid = setoid
        self.injections = injections

    def down(self, i) -> Subsetoid:
        """The subsetoid ``(F(i), iota_i)`` of the sum."""
        return Subsetoid(self.setoid, self.family.fibers[i], self.injections[i])

    def __repr__(self):
        return f"SetoidSum({self.setoid!r})"


def sigma(f: Family, check=True) -> SetoidSum:
    """Pairs ``(i, x)`` with ``(i, x) ~ (j, y)`` iff ``i = j`` and ``F(i->j)(x) = y``.

    The relation is built literally from that definition and kept strict, so
    :func:`check_setoid` on the result really tests that it is an equivalence.
    """
    if check:
        _require_valid(f)
    else:
        f.require_complete()
    idx = f.index
    elements = [(i, x) for i in idx for x in f.fibers[i]]
    pairs = []
    for i in idx:
        for j in idx:
            if not idx.equal(i, j):
                continue
            t, fj = f.transports[i, j], f.fibers[j]
            for x, tx in zip(f.fibers[i].elements, t.images):
                for y in fj.elements:
                    if fj.equal(tx, y):
                        pairs.append(((i, x), (j, y)))
    s = Setoid(elements, pairs, closed=True)
    injections = {i: ExtFun(f.fibers[i], s, [(i, x) for x in f.fibers[i]]) for i in idx}
    return SetoidSum(f, s, injections)


def check_injection_property(f: Family, s: SetoidSum = None) -> Report:
    """``iota_j o F(i->j) =_ext iota_i`` for every related pair."""
    if s is None:
        s = sigma(f)
    report = Report().ok("injection")
    for i, j in f.related_pairs():
        t = f.transports[i, j]
        for x, tx in zip(f.fibers[i].elements, t.images):
            if not s.setoid.equal(s.injections[j](tx), s.injections[i](x)):
                report.fail("injection", (i, j, x))
    return report


def check_cocone(f: Family, target: Setoid, legs) -> Report:
    """Typing, extensionality and compatibility ``j_b o F(a->b) =_ext j_a`` of cocone legs."""
    report = Report().ok("cocone.typing").ok("cocone.extensional").ok("cocone.compatibility")
    for i in f.index:
        leg = legs.get(i)
        if leg is None or leg.src != f.fibers[i] or leg.dst != target:
            report.fail("cocone.typing", (i,))
            continue
        for w in check_extensional(leg).witnesses("ext.extensional"):
            report.fail("cocone.extensional", (i,) + tuple(w))
    if report.failed_laws:
        return report
    for i, j in f.related_pairs():
        t = f.transports[i, j]
        for x, tx in zip(f.fibers[i].elements, t.images):
            if not target.equal(legs[j](tx), legs[i](x)):
                report.fail("cocone.compatibility", (i, j, x))
    return report


def universal_map(f: Family, target: Setoid, legs, s: SetoidSum = None) -> ExtFun:
    """The map ``k(i, x) = j_i(x)`` out of the sum induced by a compatible cocone."""
    if s is None:
        s = sigma(f)
    report = check_cocone(f, target, legs)
    if "cocone.typing" in report.failed_laws:
        raise DomainMismatch(f"cocone leg at {report.witness('cocone.typing')[0]!r} has the wrong type")
    if len(report):
        law = report.failed_laws[0]
        if law == "cocone.compatibility":
            i, _, x = report.witness(law)
            raise CompatibilityError((i, x))
        raise CompatibilityError(report.witness(law))
    return ExtFun(s.setoid, target, [legs[i](x) for i, x in s.setoid.elements])


class SubsetoidFamily:
    """An assignment of subsetoids of a fixed ambient setoid to index elements."""

    def __init__(self, index: Setoid, ambient: Setoid, assign):
        self.index = index
        self.ambient = ambient
        self.assign = dict(assign)
        for i in index:
            u = self.assign.get(i)
            if u is None:
                raise MalformedInput(f"no subsetoid assigned to {i!r}")
            if u.ambient != ambient:
                raise DomainMismatch(f"subsetoid at {i!r} lives in a different ambient setoid")


def check_subsetoid_family(g: SubsetoidFamily) -> Report:
    report = Report().ok("subsetoid-family.extensional")
    idx = g.index
    for i in idx:
        for j in idx:
            if idx.equal(i, j) and not subsetoid_eq(g.assign[i], g.assign[j]):
                report.fail("subsetoid-family.extensional", (i, j))
    return report


def hat_family(g: SubsetoidFamily) -> Family:
    """The canonical family: fibers are the parts, transports the unique triangle fillers."""
    rep = check_subsetoid_family(g)
    if len(rep):
        raise ExtensionalityError(rep.witness("subsetoid-family.extensional"))
    idx = g.index
    transports = {}
    for i in idx:
        for j in idx:
            if idx.equal(i, j):
                transports[i, j] = subsetoid_leq(g.assign[i], g.assign[j])
    return Family(idx, {i: g.assign[i].part for i in idx}, transports)


def check_down_family(f: Family, s: SetoidSum = None) -> SubsetoidFamily:
    """The subsetoid family ``i -> (F(i), iota_i)`` of the sum, verified extensional."""
    if s is None:
        s = sigma(f)
    g = SubsetoidFamily(f.index, s.setoid, {i: s.down(i) for i in f.index})
    rep = check_subsetoid_family(g)
    if len(rep):
        raise PreconditionError("induced subsetoid family is not extensional", rep)
    return g


def transports_agree(f: Family, other: Family) -> bool:
    """Same index and fibers, and ``=_ext`` transports on every related pair."""
    if f.index != other.index:
        return False
    for i in f.index:
        if f.fibers[i] != other.fibers[i]:
            return False
    return all(ext_eq(f.transports[p], other.transports[p]) for p in f.related_pairs())
