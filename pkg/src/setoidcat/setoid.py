"""Finite setoids, extensional functions and subsetoids.

A :class:`Setoid` is a finite carrier with an explicit equivalence relation.
Equality proofs are not represented: a proof of ``x = y`` is just the fact
that the pair is related, which is all the proof-irrelevant constructions
downstream ever look at.
"""

from __future__ import annotations

import itertools

from .errors import DomainMismatch, MalformedInput
from .report import Report


def _union_find_labels(elements, index, pairs):
    parent = list(range(len(elements)))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for x, y in pairs:
        a, b = find(index[x]), find(index[y])
        if a != b:
            # keep the smaller position as root so labels are canonical
            if a < b:
                parent[b] = a
            else:
                parent[a] = b
    return {x: find(k) for k, x in enumerate(elements)}


class Setoid:
    """A finite setoid.

    ``eq`` is a generating set of pairs; the equivalence closure is used
    unless ``closed`` is set, in which case the pairs are taken literally
    (and :func:`check_setoid` reports any missing reflexive, symmetric or
    transitive pair).

    Each element carries a *label*: the position of the first element of
    its class.  Two elements of a valid setoid are equal iff their labels
    agree.
    """

    __slots__ = ("elements", "_index", "_label", "_pairs", "_hash", "_sig", "_groups", "_labels")

    def __init__(self, elements, eq=(), closed=False):
        elements = tuple(elements)
        index = {}
        for k, x in enumerate(elements):
            if x in index:
                raise MalformedInput(f"duplicate element identifier {x!r}")
            index[x] = k
        eq = tuple(tuple(p) for p in eq)
        for p in eq:
            if len(p) != 2:
                raise MalformedInput(f"equality pair {p!r} is not a pair")
            for x in p:
                if x not in index:
                    raise MalformedInput(f"equality pair {p!r} mentions unknown element {x!r}")
        self.elements = elements
        self._index = index
        self._label = _union_find_labels(elements, index, eq)
        self._pairs = frozenset(eq) if closed else None
        self._hash = None
        self._sig = None
        self._groups = None
        self._labels = None

    @classmethod
    def from_key(cls, elements, key):
        """Setoid whose elements are equal iff ``key`` agrees on them."""
        s = cls.__new__(cls)
        elements = tuple(elements)
        s.elements = elements
        s._index = {}
        s._label = {}
        first = {}
        for k, x in enumerate(elements):
            if x in s._index:
                raise MalformedInput(f"duplicate element identifier {x!r}")
            s._index[x] = k
            s._label[x] = first.setdefault(key(x), k)
        s._pairs = None
        s._hash = None
        s._sig = None
        s._groups = None
        s._labels = None
        return s

    @classmethod
    def discrete(cls, elements):
        return cls(elements)

    # -- queries -----------------------------------------------------------
    def __contains__(self, x):
        try:
            return x in self._index
        except TypeError:
            return False

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def index(self, x):
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise MalformedInput(f"{x!r} is not an element of this setoid") from None

    def label(self, x):
        try:
            return self._label[x]
        except (KeyError, TypeError):
            raise MalformedInput(f"{x!r} is not an element of this setoid") from None

    def rep(self, x):
        """Least element (in carrier order) of the class of ``x``."""
        return self.elements[self.label(x)]

    def equal(self, x, y):
        if self._pairs is not None:
            return (x, y) in self._pairs
        try:
            return self._label[x] == self._label[y]
        except (KeyError, TypeError):
            bad = x if x not in self else y
            raise MalformedInput(f"{bad!r} is not an element of this setoid") from None

    @property
    def strict(self):
        return self._pairs is not None

    @property
    def eq(self):
        """The relation as a set of pairs (materialised on demand)."""
        if self._pairs is not None:
            return self._pairs
        return frozenset((x, y) for c in self.classes() for x in c for y in c)

    @property
    def labels(self):
        """Labels by carrier position."""
        if self._labels is None:
            self._labels = tuple(self._label[x] for x in self.elements)
        return self._labels

    def _by_label(self):
        if self._groups is None:
            groups = {}
            for x in self.elements:
                groups.setdefault(self._label[x], []).append(x)
            self._groups = {k: tuple(g) for k, g in groups.items()}
        return self._groups

    def classes(self):
        return tuple(self._by_label().values())

    def class_of(self, x):
        return self._by_label()[self.label(x)]

    def representatives(self):
        return tuple(x for k, x in enumerate(self.elements) if self._label[x] == k)

    def n_classes(self):
        return len(set(self._label.values()))

    def _signature(self):
        if self._sig is None:
            self._sig = (self.elements, tuple(self._label[x] for x in self.elements), self._pairs)
        return self._sig

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Setoid):
            return NotImplemented
        return self._signature() == other._signature()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.elements)
        return self._hash

    def __repr__(self):
        return "Setoid({})".format(" | ".join(" ".join(map(str, c)) for c in self.classes()))


def check_setoid(s: Setoid) -> Report:
    """Report every missing reflexive, symmetric or transitive pair."""
    report = Report()
    report.ok("setoid.reflexive").ok("setoid.symmetric").ok("setoid.transitive")
    if not s.strict:
        return report  # built as a closure, hence an equivalence
    pairs = s.eq
    order = sorted(pairs, key=lambda p: (s.index(p[0]), s.index(p[1])))
    for x in s.elements:
        if (x, x) not in pairs:
            report.fail("setoid.reflexive", (x, x))
    succ = {}
    for x, y in order:
        succ.setdefault(x, []).append(y)
    for x, y in order:
        if (y, x) not in pairs:
            report.fail("setoid.symmetric", (y, x))
    for x, y in order:
        for z in succ.get(y, ()):
            if (x, z) not in pairs:
                report.fail("setoid.transitive", (x, y, z))
    return report


class ExtFun:
    """A total map between finite setoids.

    Extensionality is a checkable property (:func:`check_extensional`), not a
    construction-time invariant, so broken maps can be represented and
    reported on.
    """

    __slots__ = ("src", "dst", "images", "pos", "_hash")

    def __init__(self, src: Setoid, dst: Setoid, mapping):
        if callable(mapping) and not isinstance(mapping, dict):
            images = tuple(mapping(x) for x in src.elements)
        else:
            if isinstance(mapping, dict):
                missing = [x for x in src.elements if x not in mapping]
                if missing:
                    raise MalformedInput(f"map is not total: no image for {missing[0]!r}")
                extra = [x for x in mapping if x not in src]
                if extra:
                    raise MalformedInput(f"map mentions unknown source element {extra[0]!r}")
                images = tuple(mapping[x] for x in src.elements)
            else:
                images = tuple(mapping)
                if len(images) != len(src):
                    raise MalformedInput("map is not total")
        index = dst._index
        try:
            pos = tuple(index[y] for y in images)
        except (KeyError, TypeError):
            bad = next(y for y in images if y not in dst)
            raise MalformedInput(f"image {bad!r} is not an element of the target setoid") from None
        self.src = src
        self.dst = dst
        self.images = images
        # positions of the images in dst, so checks never rehash elements
        self.pos = pos
        self._hash = None

    def __call__(self, x):
        return self.images[self.src.index(x)]

    def as_dict(self):
        return dict(zip(self.src.elements, self.images))

    def __matmul__(self, other: "ExtFun") -> "ExtFun":
        """``g @ f`` is the composite g after f."""
        if other.dst != self.src:
            raise DomainMismatch("composite of maps whose middle setoids differ")
        out = ExtFun.__new__(ExtFun)
        out.src, out.dst, out._hash = other.src, self.dst, None
        pos, imgs = self.pos, self.images
        out.pos = tuple(pos[k] for k in other.pos)
        out.images = tuple(imgs[k] for k in other.pos)
        return out

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, ExtFun):
            return NotImplemented
        return (
            self.images == other.images
            and (self.src is other.src or self.src == other.src)
            and (self.dst is other.dst or self.dst == other.dst)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __repr__(self):
        return "ExtFun({})".format(", ".join(f"{x}->{y}" for x, y in zip(self.src.elements, self.images)))


def identity(s: Setoid) -> ExtFun:
    return ExtFun(s, s, s.elements)


def check_extensional(f: ExtFun) -> Report:
    """List pairs ``x = y`` of the source with ``f(x) != f(y)``."""
    report = Report().ok("ext.extensional")
    src, dst = f.src, f.dst
    if src.strict:
        for x, y in sorted(src.eq, key=lambda p: (src.index(p[0]), src.index(p[1]))):
            if not dst.equal(f(x), f(y)):
                report.fail("ext.extensional", (x, y))
        return report
    imgs, pos = f.images, f.pos
    dl = None if dst.strict else dst.labels
    for k, r in enumerate(src.labels):
        if r == k:
            continue
        if not (dl[pos[r]] == dl[pos[k]] if dl else dst.equal(imgs[r], imgs[k])):
            report.fail("ext.extensional", (src.elements[r], src.elements[k]))
    return report


def is_extensional(f: ExtFun) -> bool:
    return len(check_extensional(f)) == 0


def ext_eq(f: ExtFun, g: ExtFun) -> bool:
    if f.src != g.src or f.dst != g.dst:
        raise DomainMismatch("ext_eq on maps with different source or target")
    return all(f.dst.equal(a, b) for a, b in zip(f.images, g.images))


def ext_maps(src: Setoid, dst: Setoid):
    """All extensional maps ``src -> dst``, in lexicographic order of image tuples."""
    for images in itertools.product(dst.elements, repeat=len(src)):
        f = ExtFun(src, dst, images)
        if is_extensional(f):
            yield f


def ext_setoid(src: Setoid, dst: Setoid) -> Setoid:
    """The setoid of extensional maps ``src -> dst`` under ``=_ext``."""
    return Setoid.from_key(ext_maps(src, dst), key=lambda f: tuple(dst.label(y) for y in f.images))


def product(s: Setoid, t: Setoid) -> Setoid:
    return Setoid.from_key(
        [(x, y) for x in s.elements for y in t.elements],
        key=lambda p: (s.label(p[0]), t.label(p[1])),
    )


class Subsetoid:
    """An injection ``inj: part -> ambient``, i.e. an element of P(ambient)."""

    __slots__ = ("ambient", "part", "inj")

    def __init__(self, ambient: Setoid, part: Setoid, inj: ExtFun):
        if inj.src != part or inj.dst != ambient:
            raise DomainMismatch("subsetoid injection must go from the part into the ambient setoid")
        self.ambient = ambient
        self.part = part
        self.inj = inj

    @classmethod
    def inclusion(cls, ambient: Setoid, members):
        part = Setoid.discrete(members)
        return cls(ambient, part, ExtFun(part, ambient, part.elements))

    def __repr__(self):
        return f"Subsetoid({self.inj!r})"


def check_subsetoid(u: Subsetoid) -> Report:
    report = check_extensional(u.inj)
    report.ok("subsetoid.injective")
    part, amb = u.part, u.ambient
    for a, b in itertools.combinations(part.elements, 2):
        if amb.equal(u.inj(a), u.inj(b)) and not part.equal(a, b):
            report.fail("subsetoid.injective", (a, b))
    return report


def dot_in(x, u: Subsetoid) -> bool:
    """Membership up to equality: some part element maps to something equal to ``x``."""
    if x not in u.ambient:
        raise MalformedInput(f"{x!r} is not an element of the ambient setoid")
    return any(u.ambient.equal(x, m) for m in u.inj.images)


def _require_same_ambient(u, v):
    if u.ambient != v.ambient:
        raise DomainMismatch("subsetoids of different ambient setoids")


def subsetoid_leq(u: Subsetoid, v: Subsetoid):
    """Witness ``k`` with ``v.inj o k =_ext u.inj``, or ``None`` if u is not included in v.

    For each part element of ``u`` the first part element of ``v`` (in carrier
    order) with an equal image is chosen.
    """
    _require_same_ambient(u, v)
    amb = u.ambient
    images = []
    for m in u.inj.images:
        for w, n in zip(v.part.elements, v.inj.images):
            if amb.equal(n, m):
                images.append(w)
                break
        else:
            return None
    return ExtFun(u.part, v.part, images)


def subsetoid_eq(u: Subsetoid, v: Subsetoid) -> bool:
    return subsetoid_leq(u, v) is not None and subsetoid_leq(v, u) is not None


def members(u: Subsetoid):
    """Ambient elements that are members of ``u``, in ambient order."""
    return [x for x in u.ambient.elements if dot_in(x, u)]
