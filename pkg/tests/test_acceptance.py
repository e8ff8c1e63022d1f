"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

The full suite (500 families, 100 round-trip families, 5 discrete
categories) runs twice through the command line, under different hash
seeds.  The first report backs criteria 2-6, and the pair backs criterion 8.
"""

import io
import json
import os
import subprocess
import sys
import time

import pytest

from setoidcat import build_C, build_S, check_family, check_iso, check_setoid, sigma
from setoidcat.cli import run
from setoidcat.fixtures import MUTATIONS, write_all
from setoidcat.harness import SUITE_DEFAULTS, gen_family, oracle_c_classes, oracle_s_classes, roundtrip_properties

SAMPLES = SUITE_DEFAULTS["samples"]
ROUNDTRIPS = SUITE_DEFAULTS["roundtrip_samples"]
DISCRETE = SUITE_DEFAULTS["discrete_samples"]


def _suite(path, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "setoidcat.cli", "suite", "--report", str(path)],
                          env=env, capture_output=True, text=True)
    return proc, time.perf_counter() - start


@pytest.fixture(scope="module")
def suite_runs(tmp_path_factory):
    d = tmp_path_factory.mktemp("suite")
    runs = [_suite(d / f"report-{h}.json", h) + (d / f"report-{h}.json",) for h in (1, 2)]
    return [(proc, secs, path.read_bytes() if path.exists() else b"") for proc, secs, path in runs]


@pytest.fixture(scope="module")
def suite_rows(suite_runs):
    data = suite_runs[0][2]
    assert data, suite_runs[0][0].stderr
    return {row["law"]: row for row in json.loads(data)["laws"]}


def _group(rows, prefix, expected):
    """Rows under ``prefix``: (all ok and each checked ``expected`` times, description)."""
    sel = {k: r for k, r in rows.items() if k.startswith(prefix)}
    bad = [k for k, r in sel.items() if r["status"] == "fail"]
    short = [k for k, r in sel.items() if r.get("checked") != expected]
    ok = bool(sel) and not bad and not short
    detail = f"{len(sel)} laws under {prefix}* x {expected} samples"
    if bad:
        detail += f"; failing {bad[:3]} e.g. {sel[bad[0]]['witness']}"
    if short:
        detail += f"; under-checked {short[:3]}"
    return ok, detail


def test_criterion_1_family_laws(record_criterion):
    start = time.perf_counter()
    bad = []
    for seed in range(SUITE_DEFAULTS["seed"], SUITE_DEFAULTS["seed"] + SAMPLES):
        f = gen_family(SUITE_DEFAULTS["max_index"], SUITE_DEFAULTS["max_fiber"], seed)
        rep = check_family(f)
        if len(rep) or rep.status("F2") != "structural":
            bad.append((seed, rep.failed_laws))
            continue
        if len(check_setoid(sigma(f, check=False).setoid)):
            bad.append((seed, "sum equivalence"))
    secs = time.perf_counter() - start
    ok = not bad and secs < 60
    record_criterion(1, ok, f"{SAMPLES} families pass F1-F3, sum ~ is an equivalence; {secs:.1f} s (< 60 s)"
                     + (f"; failures {bad[:3]}" if bad else ""))
    assert ok


def test_criterion_2_injection(suite_rows, record_criterion):
    ok, detail = _group(suite_rows, "family.injection", SAMPLES)
    record_criterion(2, ok, detail)
    assert ok


def test_criterion_3_isomorphism(suite_rows, fam1_family, record_criterion):
    ok, detail = _group(suite_rows, "family.iso.", SAMPLES)
    rep = check_iso(fam1_family)
    s = rep.summary
    counts = (s["objects"], s["arrow_classes_C"], s["arrow_classes_S"],
              oracle_c_classes(fam1_family), oracle_s_classes(fam1_family))
    fam1_ok = rep.passed and counts == (2, 8, 8, 8, 8)
    detail += f"; FAM1 objects/C/S/oracle C/oracle S = {counts}"
    record_criterion(3, ok and fam1_ok, detail)
    assert ok and fam1_ok


def test_criterion_4_graph_laws(suite_rows, record_criterion):
    ok, detail = _group(suite_rows, "family.graph.", SAMPLES)
    ok = ok and {"family.graph.composition", "family.graph.identity"} <= set(suite_rows)
    record_criterion(4, ok, detail)
    assert ok


def test_criterion_5_full_image(suite_rows, record_criterion):
    ok, detail = _group(suite_rows, "family.full-image.", SAMPLES)
    needed = {"family.full-image.S.coherence.identity", "family.full-image.S.coherence.composition",
              "family.full-image.G.coherence.functor", "family.full-image.example.iso.bijective"}
    ok = ok and needed <= set(suite_rows)
    record_criterion(5, ok, detail)
    assert ok


def test_criterion_6_roundtrips(suite_rows, fam1_family, record_criterion):
    ok_r, detail_r = _group(suite_rows, "roundtrip.", ROUNDTRIPS)
    ok_d, detail_d = _group(suite_rows, "discrete.", DISCRETE)
    fam1 = {name: roundtrip_properties(build(fam1_family)) for name, build in (("C", build_C), ("S", build_S))}
    ok_f = all(r.passed for r in fam1.values())
    needed = {"roundtrip.identity-transport.postcompose", "roundtrip.identity-transport.precompose",
              "roundtrip.ea-roundtrip.iso.arrows-bijective", "roundtrip.hf-roundtrip.iso.bijective"}
    ok = ok_r and ok_d and ok_f and needed <= set(suite_rows)
    record_criterion(6, ok, f"{detail_r}; {detail_d}; FAM1 C and S round trips {'ok' if ok_f else 'FAIL'}")
    assert ok


def test_criterion_7_mutations(tmp_path, record_criterion):
    write_all(tmp_path)
    results = {}
    for name, (_, law) in MUTATIONS.items():
        report = tmp_path / f"{name}.report.json"
        code = run(["validate", str(tmp_path / f"broken-{name}.json"), "--report", str(report)],
                   io.StringIO(), io.StringIO())
        rows = json.loads(report.read_text())["laws"] if report.exists() else []
        hit = [r for r in rows if (r["law"] == law or r["law"].endswith("." + law))
               and r["status"] == "fail" and r["witness"] is not None]
        results[name] = code == 1 and bool(hit)
    ok = len(results) >= 10 and all(results.values())
    failed = [k for k, v in results.items() if not v]
    record_criterion(7, ok, f"{sum(results.values())}/{len(results)} broken fixtures exit 1 with a witness"
                     + (f"; not caught {failed}" if failed else ""))
    assert ok


def test_criterion_8_determinism(suite_runs, record_criterion):
    (p1, t1, a), (p2, t2, b) = suite_runs
    ok = p1.returncode == p2.returncode == 0 and bool(a) and a == b
    record_criterion(8, ok, f"two full suite runs (PYTHONHASHSEED 1 and 2, {t1:.0f} s and {t2:.0f} s): "
                     f"{len(a)} and {len(b)} bytes, {'identical' if a == b else 'DIFFERENT'}; "
                     f"exit codes {p1.returncode}, {p2.returncode}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
