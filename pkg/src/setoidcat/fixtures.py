"""Small hand-written documents: the three-index family and deliberately broken inputs.

Each ``broken_*`` document violates exactly the law named in ``MUTATIONS``
(other laws may fail as a consequence).  ``python3 -m setoidcat.fixtures
DIR`` writes them all as JSON files.
"""

from __future__ import annotations

import copy
import itertools
import os
import sys


def setoid(elements, eq=(), closed=False):
    return {"elements": list(elements), "eq": [list(p) for p in eq], "closed": closed}


def fam1():
    """Index ``{i0 = i1, i2}``; discrete fibers ``{a, b}``, ``{a', b'}``, ``{c}``."""
    return {
        "kind": "family",
        "index": setoid(["i0", "i1", "i2"], [["i0", "i1"]]),
        "fibers": {"i0": setoid(["a", "b"]), "i1": setoid(["a'", "b'"]), "i2": setoid(["c"])},
        "transports": {
            "i0->i0": {"a": "a", "b": "b"},
            "i1->i1": {"a'": "a'", "b'": "b'"},
            "i2->i2": {"c": "c"},
            "i0->i1": {"a": "a'", "b": "b'"},
            "i1->i0": {"a'": "a", "b'": "b"},
        },
        "autocomplete": False,
    }


def fam1_missing_transport():
    doc = fam1()
    del doc["transports"]["i1->i0"]
    return doc


def fam1_sparse():
    """Only the generating transport; the rest is filled in on load."""
    doc = fam1()
    doc["transports"] = {"i0->i1": {"a": "a'", "b": "b'"}}
    doc["autocomplete"] = True
    return doc


def broken_symmetry():
    return {"kind": "setoid", **setoid(["x", "y"], [["x", "x"], ["y", "y"], ["x", "y"]], closed=True)}


def broken_f3():
    doc = fam1()
    doc["transports"]["i0->i1"] = {"a": "b'", "b": "b'"}
    return doc


def chain_category(break_assoc=False):
    """Objects 0-3, generators f, g, h along the chain, their composites, and a parallel x: 0 -> 3.

    With ``break_assoc`` the pair (gf, h) composes to x instead of hgf.
    """
    arrows = {
        "id0": (0, 0), "id1": (1, 1), "id2": (2, 2), "id3": (3, 3),
        "f": (0, 1), "g": (1, 2), "h": (2, 3),
        "gf": (0, 2), "hg": (1, 3), "hgf": (0, 3), "x": (0, 3),
    }
    # composites of non-identity arrows, keyed (first, second)
    table = {("f", "g"): "gf", ("g", "h"): "hg", ("gf", "h"): "hgf", ("f", "hg"): "hgf"}
    if break_assoc:
        table["gf", "h"] = "x"
    names = list(arrows)
    pairs = [(u, v) for u in names for v in names if arrows[u][1] == arrows[v][0]]
    cmp = []
    for u, v in pairs:
        if u.startswith("id"):
            w = v
        elif v.startswith("id"):
            w = u
        else:
            w = table[u, v]
        cmp.append([f"{u};{v}", w])
    return {
        "kind": "ea-category",
        "c0": setoid([0, 1, 2, 3]),
        "c1": setoid(names),
        "c2": setoid([f"{u};{v}" for u, v in pairs]),
        "id": [[k, f"id{k}"] for k in range(4)],
        "dom": [[a, arrows[a][0]] for a in names],
        "cod": [[a, arrows[a][1]] for a in names],
        "cmp": cmp,
        "fst": [[f"{u};{v}", u] for u, v in pairs],
        "snd": [[f"{u};{v}", v] for u, v in pairs],
    }


def broken_a9():
    return chain_category(break_assoc=True)


def _z2_comp(objects):
    # e is the unit, x o x = e
    rows = []
    for a, b, c in itertools.product(objects, repeat=3):
        for g in ("e", "x"):
            for f in ("e", "x"):
                rows.append([a, b, c, g, f, "e" if g == f else "x"])
    return rows


def _hf_doc(objects, eq, hom_elements, transport, comp, ids):
    pairs = [[a, b] for a in objects for b in objects]
    related = lambda a, b: a == b or [a, b] in eq or [b, a] in eq  # noqa: E731
    return {
        "kind": "hf-category",
        "ob": setoid(objects, eq),
        "hom": [[p, setoid(hom_elements(*p))] for p in pairs],
        "transports": [
            [p, q, [[x, transport(p, q, x)] for x in hom_elements(*p)]]
            for p in pairs for q in pairs if related(p[0], q[0]) and related(p[1], q[1])
        ],
        "ids": [[a, ids] for a in objects],
        "comp": comp,
    }


def z2_category(objects=("o",), eq=(), swap=lambda p, q: False):
    """Every hom is ``{e, x}`` with ``x o x = e``; transports swap e and x where ``swap`` says so."""
    flip = {"e": "x", "x": "e"}
    return _hf_doc(list(objects), [list(p) for p in eq], lambda a, b: ["e", "x"],
                   lambda p, q, v: flip[v] if swap(p, q) else v, _z2_comp(objects), "e")


def broken_h1():
    doc = z2_category()
    for row in doc["comp"]:
        if row[3:5] == ["e", "x"]:
            row[5] = "e"
    return doc


def broken_identity_coherence():
    return z2_category(("a", "b"), [("a", "b")], swap=lambda p, q: p[0] != q[0])


def discrete_doc(objects, eq):
    related = lambda a, b: a == b or [a, b] in eq or [b, a] in eq  # noqa: E731
    homs = lambda a, b: ["*"] if related(a, b) else []  # noqa: E731
    comp = [[a, b, c, "*", "*", "*"] for a, b, c in itertools.product(objects, repeat=3)
            if related(a, b) and related(b, c)]
    return _hf_doc(list(objects), [list(p) for p in eq], homs, lambda p, q, v: v, comp, "*")


def broken_functor_coherence():
    """A functor from the discrete category on ``a = b`` that sends the arrows between a and b to x."""
    source = discrete_doc(["a", "b"], [["a", "b"]])
    target = z2_category(("d",))
    return {
        "kind": "hf-functor",
        "source": source,
        "target": target,
        "ob": {"a": "d", "b": "d"},
        "hom": [[u, v, "*", "e" if u == v else "x"] for u in ("a", "b") for v in ("a", "b")],
    }


def _relation(pairs, arrow=None):
    doc = {"kind": "relation", "family": fam1(), "pairs": pairs}
    if arrow is not None:
        doc["arrow"] = arrow
    return doc


def _block(us, vs):
    return [[u, v] for u in us for v in vs]


CLASS_A = [["i0", "a"], ["i1", "a'"]]
CLASS_B = [["i0", "b"], ["i1", "b'"]]
CLASS_C = [["i2", "c"]]


def broken_saturation():
    return _relation([[["i0", "a"], ["i2", "c"]]])


def broken_functionality():
    return _relation(_block(CLASS_C, CLASS_A) + _block(CLASS_C, CLASS_B), arrow=["i2", "i0"])


def broken_dom_condition():
    return _relation(_block(CLASS_A, CLASS_C), arrow=["i0", "i2"])


def good_relation():
    return _relation(_block(CLASS_A, CLASS_C) + _block(CLASS_B, CLASS_C), arrow=["i0", "i2"])


def cocone(swap=False):
    legs = {
        "i0": {"a": "p", "b": "q"},
        "i1": {"a'": "q", "b'": "p"} if swap else {"a'": "p", "b'": "q"},
        "i2": {"c": "p"},
    }
    return {"kind": "cocone", "family": fam1(), "target": setoid(["p", "q"]), "legs": legs}


def broken_cocone():
    return cocone(swap=True)


# name -> (document builder, law expected to fail)
MUTATIONS = {
    "symmetry": (broken_symmetry, "setoid.symmetric"),
    "F3": (broken_f3, "F3"),
    "A9": (broken_a9, "A9"),
    "H1": (broken_h1, "H1"),
    "coherence-identity": (broken_identity_coherence, "coherence.identity"),
    "coherence-functor": (broken_functor_coherence, "coherence.functor"),
    "saturation": (broken_saturation, "relation.saturated"),
    "functionality": (broken_functionality, "relation.functional"),
    "dom-condition": (broken_dom_condition, "arrow.dom"),
    "cocone-compatibility": (broken_cocone, "cocone.compatibility"),
}

VALID = {
    "fam1": fam1,
    "fam1-sparse": fam1_sparse,
    "chain": chain_category,
    "z2": z2_category,
    "relation": good_relation,
    "cocone": cocone,
}


def write_all(directory):
    import json

    os.makedirs(directory, exist_ok=True)
    docs = {name: build() for name, build in VALID.items()}
    docs["fam1-missing-transport"] = fam1_missing_transport()
    docs.update({f"broken-{name}": build() for name, (build, _) in MUTATIONS.items()})
    for name, doc in docs.items():
        with open(os.path.join(directory, f"{name}.json"), "w", encoding="utf-8") as fh:
            json.dump(copy.deepcopy(doc), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return sorted(docs)


if __name__ == "__main__":
    for name in write_all(sys.argv[1] if len(sys.argv) > 1 else "fixtures"):
        print(name)
