"""JSON documents for setoids, families, relations, cocones and categories.

Identifiers are JSON strings or numbers; lists inside identifiers become
tuples.  Maps are either objects (string keys) or lists of ``[x, y]``
pairs.  Every loader raises :class:`MalformedInput` naming the offending
location.
"""

from __future__ import annotations

import json

from .category import EACategory, EFunctor, HFCategory
from .errors import MalformedInput
from .family import Family, complete_transports
from .relations import Relation
from .setoid import ExtFun, Setoid, product


def ident(x, where="value"):
    """A hashable identifier from JSON."""
    if isinstance(x, list):
        return tuple(ident(y, where) for y in x)
    if isinstance(x, (str, int)) and not isinstance(x, bool):
        return x
    raise MalformedInput(f"{where}: {x!r} is not a valid identifier")


def _json_id(x):
    # maps and relations inside built categories become their tables; they
    # load back as tuple identifiers, i.e. the same category up to renaming
    if isinstance(x, tuple):
        return [_json_id(y) for y in x]
    if isinstance(x, ExtFun):
        return [[_json_id(a), _json_id(b)] for a, b in zip(x.src.elements, x.images)]
    if isinstance(x, Relation):
        return [[_json_id(a), _json_id(b)] for a, b in x.sorted_pairs()]
    return x


def _field(doc, key, where):
    if not isinstance(doc, dict):
        raise MalformedInput(f"{where}: expected an object")
    if key not in doc:
        raise MalformedInput(f"{where}: missing field {key!r}")
    return doc[key]


def _pairs(doc, where, arity=2):
    """Entries of an object or a list of ``[key, ..., value]`` rows."""
    if isinstance(doc, dict):
        if arity != 2:
            raise MalformedInput(f"{where}: expected a list of rows")
        return [(k, v) for k, v in doc.items()]
    if not isinstance(doc, list):
        raise MalformedInput(f"{where}: expected an object or a list of pairs")
    for row in doc:
        if not isinstance(row, list) or len(row) != arity:
            raise MalformedInput(f"{where}: entry {row!r} should have {arity} components")
    return [tuple(row) for row in doc]


# -- setoids and maps --------------------------------------------------------

def load_setoid(doc, where="setoid", strict=False) -> Setoid:
    elements = _field(doc, "elements", where)
    if not isinstance(elements, list):
        raise MalformedInput(f"{where}.elements: expected a list")
    eq = doc.get("eq", [])
    if not isinstance(eq, list):
        raise MalformedInput(f"{where}.eq: expected a list of pairs")
    closed = doc.get("closed", strict)
    try:
        return Setoid(
            [ident(x, f"{where}.elements") for x in elements],
            [tuple(ident(p, f"{where}.eq")) for p in eq],
            closed=bool(closed),
        )
    except MalformedInput as e:
        raise MalformedInput(f"{where}: {e}") from None


def dump_setoid(s: Setoid) -> dict:
    if s.strict:
        eq = sorted(s.eq, key=lambda p: (s.index(p[0]), s.index(p[1])))
        return {"elements": [_json_id(x) for x in s], "eq": [[_json_id(x), _json_id(y)] for x, y in eq],
                "closed": True}
    # a generating set: each element tied to the first of its class
    eq = [[_json_id(x), _json_id(s.rep(x))] for x in s if s.rep(x) != x]
    return {"elements": [_json_id(x) for x in s], "eq": eq, "closed": False}


def load_map(doc, src: Setoid, dst: Setoid, where="map") -> ExtFun:
    mapping = {}
    for k, v in _pairs(doc, where):
        key = ident(k, where)
        if isinstance(doc, dict) and key not in src:
            # object keys are strings; accept numeric identifiers written as strings
            key = next((x for x in src if str(x) == k), key)
        mapping[key] = ident(v, where)
    try:
        return ExtFun(src, dst, mapping)
    except MalformedInput as e:
        raise MalformedInput(f"{where}: {e}") from None


def dump_map(f: ExtFun):
    if all(isinstance(x, str) for x in f.src):
        return {x: _json_id(y) for x, y in zip(f.src.elements, f.images)}
    return [[_json_id(x), _json_id(y)] for x, y in zip(f.src.elements, f.images)]


# -- families ----------------------------------------------------------------

def _split_arrow(key, where):
    if isinstance(key, str):
        parts = key.split("->")
        if len(parts) != 2:
            raise MalformedInput(f"{where}: transport key {key!r} is not of the form 'i->j'")
        return parts[0].strip(), parts[1].strip()
    raise MalformedInput(f"{where}: bad transport key {key!r}")


def _lookup(setoid, x, where):
    if x in setoid:
        return x
    match = next((y for y in setoid if str(y) == x), None)
    if match is None:
        raise MalformedInput(f"{where}: unknown identifier {x!r}")
    return match


def load_family(doc, where="family", strict=False, autocomplete=False) -> Family:
    index = load_setoid(_field(doc, "index", where), f"{where}.index", strict)
    fibers = {}
    for k, v in _pairs(_field(doc, "fibers", where), f"{where}.fibers"):
        i = _lookup(index, ident(k, f"{where}.fibers"), f"{where}.fibers")
        fibers[i] = load_setoid(v, f"{where}.fibers.{k}", strict)
    missing = [i for i in index if i not in fibers]
    if missing:
        raise MalformedInput(f"{where}.fibers: no fiber for index element {missing[0]!r}")
    raw = doc.get("transports", {})
    transports = {}
    if isinstance(raw, dict):
        rows = [(*_split_arrow(k, f"{where}.transports"), v) for k, v in raw.items()]
    else:
        rows = _pairs(raw, f"{where}.transports", arity=3)
    for i, j, m in rows:
        loc = f"{where}.transports.{i}->{j}"
        i = _lookup(index, ident(i, loc), loc)
        j = _lookup(index, ident(j, loc), loc)
        transports[i, j] = load_map(m, fibers[i], fibers[j], loc)
    if doc.get("autocomplete", False) or autocomplete:
        transports = complete_transports(index, fibers, transports)
    try:
        return Family(index, fibers, transports)
    except MalformedInput as e:
        raise MalformedInput(f"{where}: {e}") from None


def dump_family(f: Family) -> dict:
    idx = f.index
    out = {"index": dump_setoid(idx), "autocomplete": False}
    keys_are_str = all(isinstance(i, str) and "->" not in i for i in idx)
    if keys_are_str:
        out["fibers"] = {i: dump_setoid(f.fibers[i]) for i in idx}
        out["transports"] = {f"{i}->{j}": dump_map(f.transports[i, j]) for i, j in f.related_pairs()
                             if (i, j) in f.transports}
    else:
        out["fibers"] = [[_json_id(i), dump_setoid(f.fibers[i])] for i in idx]
        out["transports"] = [[_json_id(i), _json_id(j), dump_map(f.transports[i, j])]
                             for i, j in f.related_pairs() if (i, j) in f.transports]
    return out


# -- relations and cocones ---------------------------------------------------

def load_relation(doc, base: Setoid, where="relation") -> Relation:
    pairs = []
    for p in _field(doc, "pairs", where):
        if not isinstance(p, list) or len(p) != 2:
            raise MalformedInput(f"{where}.pairs: {p!r} is not a pair")
        pairs.append((ident(p[0], f"{where}.pairs"), ident(p[1], f"{where}.pairs")))
    try:
        return Relation(base, pairs)
    except MalformedInput as e:
        raise MalformedInput(f"{where}: {e}") from None


def dump_relation(r: Relation):
    return [[_json_id(u), _json_id(v)] for u, v in r.sorted_pairs()]


def load_cocone(doc, f: Family, where="cocone", strict=False):
    target = load_setoid(_field(doc, "target", where), f"{where}.target", strict)
    legs = {}
    for k, m in _pairs(_field(doc, "legs", where), f"{where}.legs"):
        i = _lookup(f.index, ident(k, f"{where}.legs"), f"{where}.legs")
        legs[i] = load_map(m, f.fibers[i], target, f"{where}.legs.{k}")
    return target, legs


# -- categories --------------------------------------------------------------

EA_OPS = (("id", "c0", "c1"), ("dom", "c1", "c0"), ("cod", "c1", "c0"),
          ("cmp", "c2", "c1"), ("fst", "c2", "c1"), ("snd", "c2", "c1"))


def load_ea(doc, where="ea-category", strict=False) -> EACategory:
    parts = {n: load_setoid(_field(doc, n, where), f"{where}.{n}", strict) for n in ("c0", "c1", "c2")}
    ops = {name: load_map(_field(doc, name, where), parts[s], parts[t], f"{where}.{name}")
           for name, s, t in EA_OPS}
    return EACategory(parts["c0"], parts["c1"], parts["c2"], **ops)


def dump_ea(c: EACategory) -> dict:
    out = {n: dump_setoid(getattr(c, n)) for n in ("c0", "c1", "c2")}
    for name, _, _ in EA_OPS:
        out[name] = [[_json_id(x), _json_id(y)] for x, y in zip(getattr(c, name).src.elements, getattr(c, name).images)]
    return out


def load_hf(doc, where="hf-category", strict=False, autocomplete=False) -> HFCategory:
    ob = load_setoid(_field(doc, "ob", where), f"{where}.ob", strict)
    ob2 = product(ob, ob)
    fibers = {}
    for key, s in _pairs(_field(doc, "hom", where), f"{where}.hom"):
        pair = ident(key, f"{where}.hom")
        if pair not in ob2:
            raise MalformedInput(f"{where}.hom: {key!r} is not a pair of objects")
        fibers[pair] = load_setoid(s, f"{where}.hom.{key}", strict)
    for p in ob2:
        fibers.setdefault(p, Setoid(()))
    transports = {}
    for src, dst, m in _pairs(doc.get("transports", []), f"{where}.transports", arity=3):
        p, q = ident(src, f"{where}.transports"), ident(dst, f"{where}.transports")
        if p not in ob2 or q not in ob2:
            raise MalformedInput(f"{where}.transports: {src!r} -> {dst!r} is not a pair of object pairs")
        transports[p, q] = load_map(m, fibers[p], fibers[q], f"{where}.transports.{src}->{dst}")
    if doc.get("autocomplete", False) or autocomplete:
        transports = complete_transports(ob2, fibers, transports)
    hom = Family(ob2, fibers, transports)
    ids = {}
    for k, v in _pairs(_field(doc, "ids", where), f"{where}.ids"):
        ids[_lookup(ob, ident(k, f"{where}.ids"), f"{where}.ids")] = ident(v, f"{where}.ids")
    table = {}
    for row in _field(doc, "comp", where):
        if not isinstance(row, list) or len(row) != 6:
            raise MalformedInput(f"{where}.comp: row {row!r} should be [a, b, c, g, f, g o f]")
        key = tuple(ident(x, f"{where}.comp") for x in row[:5])
        table[key] = ident(row[5], f"{where}.comp")

    def comp(a, b, c, g, f):
        return table.get((a, b, c, g, f))

    return HFCategory(ob, hom, ids, comp)


def dump_hf(c: HFCategory) -> dict:
    ob = c.ob
    hom = [[[_json_id(a), _json_id(b)], dump_setoid(c.homset(a, b))] for a in ob for b in ob]
    transports = [
        [[_json_id(p[0]), _json_id(p[1])], [_json_id(q[0]), _json_id(q[1])],
         [[_json_id(x), _json_id(y)] for x, y in zip(t.src.elements, t.images)]]
        for (p, q), t in sorted(c.hom.transports.items(), key=lambda kv: (
            c.hom.index.index(kv[0][0]), c.hom.index.index(kv[0][1])))
    ]
    comp = []
    for a in ob:
        for b in ob:
            for cc in ob:
                for g in c.homset(b, cc):
                    for f in c.homset(a, b):
                        h = c.comp(a, b, cc, g, f)
                        if h is not None:
                            comp.append([_json_id(x) for x in (a, b, cc, g, f, h)])
    return {"ob": dump_setoid(ob), "hom": hom, "transports": transports,
            "ids": [[_json_id(a), _json_id(c.ident(a))] for a in ob], "comp": comp}


def load_hf_functor(doc, where="hf-functor", strict=False, autocomplete=False) -> EFunctor:
    source = load_hf(_field(doc, "source", where), f"{where}.source", strict, autocomplete)
    target = load_hf(_field(doc, "target", where), f"{where}.target", strict, autocomplete)
    ob = load_map(_field(doc, "ob", where), source.ob, target.ob, f"{where}.ob")
    table = {}
    for row in _field(doc, "hom", where):
        if not isinstance(row, list) or len(row) != 4:
            raise MalformedInput(f"{where}.hom: row {row!r} should be [a, b, f, F(f)]")
        a, b, f, g = (ident(x, f"{where}.hom") for x in row)
        table[a, b, f] = g
    return EFunctor(source, target, ob, lambda a, b, f: table.get((a, b, f)))


# -- witnesses and reports ---------------------------------------------------

def to_json(x):
    """A JSON value for a witness: tuples become lists, maps and relations their tables."""
    if isinstance(x, (tuple, list)):
        return [to_json(y) for y in x]
    if isinstance(x, dict):
        return {str(k): to_json(v) for k, v in x.items()}
    if isinstance(x, ExtFun):
        return {"map": [[to_json(a), to_json(b)] for a, b in zip(x.src.elements, x.images)]}
    if isinstance(x, Relation):
        return {"relation": dump_relation(x)}
    if isinstance(x, Setoid):
        return dump_setoid(x)
    if x is None or isinstance(x, (str, int, float, bool)):
        return x
    return repr(x)


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_document(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise MalformedInput(f"{path}: cannot read file ({e.strerror})") from None
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    except UnicodeDecodeError:
        raise MalformedInput(f"{path}: not UTF-8") from None
