"""Saturated binary relations on a setoid sum: the arrows of the relational category."""

from __future__ import annotations

from .errors import DomainMismatch, MalformedInput
from .family import SetoidSum
from .report import Report
from .setoid import ExtFun, Setoid, Subsetoid


class Relation:
    """A set of pairs of ``base`` elements.

    Operations here return saturated relations, for which ``==`` on pair
    sets coincides with equality up to membership.
    """

    __slots__ = ("base", "pairs", "_hash")

    def __init__(self, base: Setoid, pairs):
        pairs = frozenset(tuple(p) for p in pairs)
        for p in pairs:
            if len(p) != 2 or p[0] not in base or p[1] not in base:
                raise MalformedInput(f"relation pair {p!r} mentions an unknown element")
        self.base = base
        self.pairs = pairs
        self._hash = None

    @classmethod
    def _trusted(cls, base, pairs):
        """Skip validation for pair sets built from elements of ``base``."""
        r = cls.__new__(cls)
        r.base, r.pairs, r._hash = base, frozenset(pairs), None
        return r

    def __contains__(self, pair):
        return pair in self.pairs

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.sorted_pairs())

    def sorted_pairs(self):
        idx = self.base.index
        return sorted(self.pairs, key=lambda p: (idx(p[0]), idx(p[1])))

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Relation):
            return NotImplemented
        return self.pairs == other.pairs and self.base == other.base

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.pairs)
        return self._hash

    def __repr__(self):
        return "Relation({})".format(", ".join(f"{u}~>{v}" for u, v in self.sorted_pairs()))


def _base(s):
    return s.setoid if isinstance(s, SetoidSum) else s


def saturate(base, raw) -> Relation:
    """Smallest relation containing ``raw`` that is closed under equality in both components."""
    base = _base(base)
    raw = list(raw)
    for p in raw:
        if len(p) != 2 or p[0] not in base or p[1] not in base:
            raise MalformedInput(f"relation pair {p!r} mentions an unknown element")
    # expand each pair of classes once
    groups, L = base._by_label(), base._label
    blocks = {(L[u], L[v]) for u, v in raw}
    return Relation._trusted(base, ((a, b) for lu, lv in blocks for a in groups[lu] for b in groups[lv]))


def check_saturated(r: Relation) -> Report:
    report = Report().ok("relation.saturated")
    base = r.base
    for u, v in r.sorted_pairs():
        for a in base.class_of(u):
            for b in base.class_of(v):
                if (a, b) not in r.pairs:
                    report.fail("relation.saturated", ((u, v), (a, b)))
    return report


def is_saturated(r: Relation) -> bool:
    return len(check_saturated(r)) == 0


def dot_in_rel(pair, r: Relation) -> bool:
    """Membership up to equality of both components."""
    u, v = pair
    base = r.base
    return any(base.equal(u, a) and base.equal(v, b) for a, b in r.pairs)


def _image_subsetoid(base, xs):
    present = set(xs)
    reps = [x for x in base.representatives() if any(base.equal(x, y) for y in present)]
    return Subsetoid.inclusion(base, reps)


def rel_dom(r: Relation) -> Subsetoid:
    return _image_subsetoid(r.base, (u for u, _ in r.pairs))


def rel_ran(r: Relation) -> Subsetoid:
    return _image_subsetoid(r.base, (v for _, v in r.pairs))


def check_functional(r: Relation) -> Report:
    report = Report().ok("relation.functional")
    base = r.base
    ordered = r.sorted_pairs()
    for k, (u, v) in enumerate(ordered):
        for u2, v2 in ordered[k + 1:]:
            if base.equal(u, u2) and not base.equal(v, v2):
                report.fail("relation.functional", (u, v, v2))
    return report


def is_functional(r: Relation) -> bool:
    return len(check_functional(r)) == 0


def rel_compose(q: Relation, r: Relation) -> Relation:
    """``q o r``: pairs ``(u, w)`` with some ``v``, ``(u, v)`` in ``r`` and ``(v, w)`` in ``q``."""
    if q.base != r.base:
        raise DomainMismatch("composing relations on different setoids")
    q, r = saturate(q.base, q.pairs), saturate(r.base, r.pairs)
    after = {}
    for v, w in q.pairs:
        after.setdefault(v, []).append(w)
    return Relation._trusted(r.base, ((u, w) for u, v in r.pairs for w in after.get(v, ())))


def graph_of(f: ExtFun, i, j, s: SetoidSum) -> Relation:
    """Saturated graph of a fiber map ``f: F(i) -> F(j)`` inside the sum."""
    fam = s.family
    if f.src != fam.fiber(i) or f.dst != fam.fiber(j):
        raise DomainMismatch(f"map does not go from F({i}) to F({j})")
    return saturate(s.setoid, (((i, x), (j, y)) for x, y in zip(f.src.elements, f.images)))


def identity_relation(i, s: SetoidSum) -> Relation:
    """The diagonal on the members of ``F(i)`` viewed inside the sum."""
    return saturate(s.setoid, (((i, x), (i, x)) for x in s.family.fiber(i)))
