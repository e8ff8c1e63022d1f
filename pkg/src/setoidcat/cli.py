"""Command line front end.

Exit codes: 0 when every checked law holds, 1 when some law fails (the
witness is printed), 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .category import check_e_functor, check_ea, check_hf
from .constructions import build_C, build_S, check_full_image, check_iso, check_s_arrow, discrete_category
from .errors import DomainMismatch, InvalidArrow, MalformedInput, PreconditionError
from .family import check_cocone, check_family, check_injection_property, sigma
from .harness import SUITE_DEFAULTS, hf_roundtrip_properties, roundtrip_properties, run_suite
from .relations import check_functional, check_saturated
from .report import Report
from .serialize import (
    dumps,
    ident,
    load_cocone,
    load_ea,
    load_family,
    load_hf,
    load_hf_functor,
    load_relation,
    load_setoid,
    read_document,
    to_json,
)
from .setoid import check_setoid

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED = 0, 1, 2


class Outcome:
    """A report plus the headline printed above it."""

    def __init__(self, report: Report, headline=""):
        self.report = report
        self.headline = headline


def _kind(doc):
    if not isinstance(doc, dict):
        raise MalformedInput("input: expected a JSON object")
    kind = doc.get("kind")
    if kind is None:
        if "fibers" in doc:
            return "family"
        if "elements" in doc:
            return "setoid"
        if "c2" in doc:
            return "ea-category"
        raise MalformedInput("input: missing field 'kind'")
    return kind


def _family(doc, opts):
    if _kind(doc) != "family":
        raise MalformedInput(f"input: expected a family, got kind {_kind(doc)!r}")
    return load_family(doc, "family", opts.strict_closure, opts.autocomplete_transports)


def _family_laws(f):
    """Headline for a family check, e.g. ``F1 ok, F2 structural, F3 ok``."""
    rep = check_family(f)
    line = ", ".join(f"{law} {rep.status(law)}" for law in ("F1", "F2", "F3"))
    return rep, line


def _invalid(f):
    """The family-law outcome when ``f`` is not a valid family; constructions need one."""
    rep, line = _family_laws(f)
    return Outcome(rep, line) if len(rep) else None


# -- commands -------------------------------------------------------------------

def cmd_validate(doc, opts):
    kind = _kind(doc)
    strict, auto = opts.strict_closure, opts.autocomplete_transports
    if kind == "setoid":
        s = load_setoid(doc, "setoid", strict)
        rep = check_setoid(s)
        return Outcome(rep, f"setoid: {len(s)} elements, {s.n_classes()} classes")
    if kind == "family":
        f = load_family(doc, "family", strict, auto)
        rep, line = _family_laws(f)
        return Outcome(rep, line)
    if kind == "relation":
        f = load_family(doc.get("family"), "relation.family", strict, auto)
        bad = _invalid(f)
        if bad:
            return bad
        s = sigma(f)
        r = load_relation(doc, s.setoid)
        rep = Report().merge(check_saturated(r)).merge(check_functional(r))
        arrow = doc.get("arrow")
        if arrow is not None:
            if not isinstance(arrow, list) or len(arrow) != 2:
                raise MalformedInput("relation.arrow: expected [i, j]")
            i, j = (ident(x, "relation.arrow") for x in arrow)
            for x in (i, j):
                if x not in f.index:
                    raise MalformedInput(f"relation.arrow: unknown index element {x!r}")
            rep.merge(check_s_arrow(s, i, j, r))
        return Outcome(rep, f"relation: {len(r)} pairs")
    if kind == "cocone":
        f = load_family(doc.get("family"), "cocone.family", strict, auto)
        bad = _invalid(f)
        if bad:
            return bad
        target, legs = load_cocone(doc, f, "cocone", strict)
        return Outcome(check_cocone(f, target, legs), f"cocone into {len(target)} elements")
    if kind == "ea-category":
        c = load_ea(doc, "ea-category", strict)
        rep = check_ea(c)
        return Outcome(rep, f"EA category: {c.c0.n_classes()} object classes, {c.c1.n_classes()} arrow classes")
    if kind == "hf-category":
        c = load_hf(doc, "hf-category", strict, auto)
        return Outcome(check_hf(c, exhaustive=True), f"HF category: {c.ob.n_classes()} object classes")
    if kind == "hf-functor":
        F = load_hf_functor(doc, "hf-functor", strict, auto)
        rep = Report()
        rep.merge(check_hf(F.source, exhaustive=True), "source.")
        rep.merge(check_hf(F.target, exhaustive=True), "target.")
        if not len(rep):
            rep.merge(check_e_functor(F))
        return Outcome(rep, "HF functor")
    raise MalformedInput(f"input: unknown kind {kind!r}")


def cmd_sum(doc, opts):
    f = _family(doc, opts)
    bad = _invalid(f)
    if bad:
        return bad
    s = sigma(f, check=False)
    rep = Report().merge(check_setoid(s.setoid), "sum.").merge(check_injection_property(f, s))
    rep.summary.update(elements=len(s.setoid), classes=s.setoid.n_classes())
    return Outcome(rep, f"sum: {len(s.setoid)} elements, {s.setoid.n_classes()} classes")


def _build(doc, opts, builder, name):
    f = _family(doc, opts)
    bad = _invalid(f)
    if bad:
        return bad
    c = builder(f, check=False)
    rep = check_ea(c)
    rep.summary.update(object_classes=c.c0.n_classes(), arrow_classes=c.c1.n_classes(),
                       arrows=len(c.c1), composable_pairs=len(c.c2))
    return Outcome(rep, f"{name}: {c.c0.n_classes()} object classes, {c.c1.n_classes()} arrow classes, "
                        f"{len(c.c1)} arrows, {len(c.c2)} composable pairs")


def cmd_build_c(doc, opts):
    return _build(doc, opts, build_C, "C")


def cmd_build_s(doc, opts):
    return _build(doc, opts, build_S, "S")


def cmd_check_iso(doc, opts):
    f = _family(doc, opts)
    bad = _invalid(f)
    if bad:
        return bad
    rep = check_iso(f)
    nc, ns = rep.summary["arrow_classes_C"], rep.summary["arrow_classes_S"]
    classes = f"{nc} arrow classes" if nc == ns else f"{nc} arrow classes in C, {ns} in S"
    mn = "=" if rep.status("M.N=Id") == "ok" else "≠"
    nm = "=" if rep.status("N.M=Id") == "ok" else "≠"
    return Outcome(rep, f"{classes}; M∘N {mn} Id, N∘M {nm} Id")


def cmd_full_image(doc, opts):
    f = _family(doc, opts)
    bad = _invalid(f)
    if bad:
        return bad
    rep = check_full_image(f)
    homs = ", ".join(f"{k}: {v}" for k, v in rep.summary["hom_classes"].items())
    return Outcome(rep, f"full image hom classes {homs}")


def cmd_roundtrip(doc, opts):
    kind = _kind(doc)
    strict, auto = opts.strict_closure, opts.autocomplete_transports
    rep = Report()
    if kind == "family":
        f = load_family(doc, "family", strict, auto)
        bad = _invalid(f)
        if bad:
            return bad
        rep.merge(roundtrip_properties(build_C(f, check=False)), "C.")
        rep.merge(roundtrip_properties(build_S(f, check=False)), "S.")
    elif kind == "ea-category":
        rep.merge(roundtrip_properties(load_ea(doc, "ea-category", strict)))
    elif kind == "setoid":
        rep.merge(hf_roundtrip_properties(discrete_category(load_setoid(doc, "setoid", strict))))
    elif kind == "hf-category":
        rep.merge(hf_roundtrip_properties(load_hf(doc, "hf-category", strict, auto)))
    else:
        raise MalformedInput(f"input: roundtrip needs a family, setoid or category, got kind {kind!r}")
    ok = "ok" if rep.passed else "FAILED"
    return Outcome(rep, f"EA→HF→EA and HF→EA→HF round trips {ok}")


def cmd_suite(opts):
    params = dict(seed=opts.seed, samples=opts.samples, max_index=opts.max_index, max_fiber=opts.max_fiber)
    if opts.roundtrip_samples is not None:
        params["roundtrip_samples"] = opts.roundtrip_samples
    if opts.discrete_samples is not None:
        params["discrete_samples"] = opts.discrete_samples
    rep = run_suite(jobs=opts.jobs, **params)
    counts = rep.summary["samples_by_kind"]
    total = sum(counts.values())
    verdict = "all laws hold" if rep.passed else f"{len(rep.failed_laws)} laws fail"
    return Outcome(rep, f"suite: {total} samples ({', '.join(f'{k} {v}' for k, v in counts.items())}); {verdict}")


COMMANDS = {
    "validate": cmd_validate,
    "sum": cmd_sum,
    "build-c": cmd_build_c,
    "build-s": cmd_build_s,
    "check-iso": cmd_check_iso,
    "full-image": cmd_full_image,
    "roundtrip": cmd_roundtrip,
}


# -- output ---------------------------------------------------------------------

def report_json(command, outcome: Outcome) -> dict:
    rep = outcome.report
    checked = rep.summary.get("checked", {})
    rows = []
    for row in rep.rows():
        out = {"law": row["law"], "status": row["status"], "witness": to_json(row["witness"])}
        if row["law"] in checked:
            out["checked"] = checked[row["law"]]
        rows.append(out)
    summary = {k: v for k, v in rep.summary.items() if k != "checked"}
    return {
        "command": command,
        "status": "pass" if rep.passed else "fail",
        "headline": outcome.headline,
        "laws": rows,
        "summary": to_json(summary),
    }


def _print_text(outcome: Outcome, out):
    rep = outcome.report
    if outcome.headline:
        print(outcome.headline, file=out)
    for law in rep.failed_laws:
        print(f"FAIL {law}: witness {json.dumps(to_json(rep.witness(law)), ensure_ascii=False)}", file=out)
    print("PASS" if rep.passed else f"FAIL ({len(rep.failed_laws)} laws, {len(rep)} violations)", file=out)


def build_parser():
    parser = argparse.ArgumentParser(prog="setoidcat", description="Check finite setoid categories.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(COMMANDS) + ["suite"]:
        p = sub.add_parser(name)
        p.add_argument("--report", metavar="PATH", help="write a JSON report here")
        if name == "suite":
            p.add_argument("--seed", type=int, default=SUITE_DEFAULTS["seed"])
            p.add_argument("--samples", type=int, default=SUITE_DEFAULTS["samples"])
            p.add_argument("--max-index", type=int, default=SUITE_DEFAULTS["max_index"])
            p.add_argument("--max-fiber", type=int, default=SUITE_DEFAULTS["max_fiber"])
            p.add_argument("--roundtrip-samples", type=int, default=None)
            p.add_argument("--discrete-samples", type=int, default=None)
            p.add_argument("--jobs", type=int, default=1, help="worker processes (results merged by seed)")
        else:
            p.add_argument("input_path", nargs="?", metavar="PATH")
            p.add_argument("--input", metavar="PATH")
            p.add_argument("--strict-closure", action="store_true",
                           help="take equality pairs literally instead of closing them")
            p.add_argument("--autocomplete-transports", action="store_true",
                           help="fill missing transports with identities and composites")
    return parser


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    opts = build_parser().parse_args(argv)
    try:
        if opts.command == "suite":
            for flag in ("samples", "max_index", "max_fiber", "jobs"):
                if getattr(opts, flag) < 0:
                    raise MalformedInput(f"--{flag.replace('_', '-')} must be non-negative")
            outcome = cmd_suite(opts)
        else:
            path = opts.input or opts.input_path
            if not path:
                raise MalformedInput("no input file given (use --input PATH)")
            outcome = COMMANDS[opts.command](read_document(path), opts)
    except (MalformedInput, DomainMismatch, InvalidArrow) as e:
        print(f"error: {e}", file=err)
        return EXIT_MALFORMED
    except PreconditionError as e:
        outcome = Outcome(e.report or Report().fail("precondition", str(e)), str(e))
    _print_text(outcome, out)
    if opts.report:
        with open(opts.report, "w", encoding="utf-8") as fh:
            fh.write(dumps(report_json(opts.command, outcome)))
    return EXIT_OK if outcome.report.passed else EXIT_FAIL


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
