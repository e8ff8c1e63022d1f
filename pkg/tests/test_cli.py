import io
import json
import subprocess
import sys

import pytest

from setoidcat.cli import run
from setoidcat.fixtures import MUTATIONS, write_all


@pytest.fixture(scope="module")
def fixture_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    write_all(d)
    return d


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(tmp_path, *argv):
    path = tmp_path / "report.json"
    code, out, err = call(*argv, "--report", path)
    return code, json.loads(path.read_text()), out


def test_validate_fam1(fixture_dir):
    code, out, _ = call("validate", fixture_dir / "fam1.json")
    assert code == 0
    assert "F1 ok, F2 structural, F3 ok" in out
    assert out.strip().endswith("PASS")


def test_missing_transport_is_malformed(fixture_dir):
    code, out, err = call("validate", fixture_dir / "fam1-missing-transport.json")
    assert code == 2
    assert "missing transport for related pair 'i1' -> 'i0'" in err


def test_autocomplete_flag(fixture_dir):
    assert call("validate", fixture_dir / "fam1-missing-transport.json", "--autocomplete-transports")[0] == 0


def test_sum(fixture_dir, tmp_path):
    code, rep, out = call_json(tmp_path, "sum", "--input", fixture_dir / "fam1.json")
    assert code == 0
    assert "sum: 5 elements, 3 classes" in out
    assert rep["summary"]["classes"] == 3


@pytest.mark.parametrize("command, name", [("build-c", "C"), ("build-s", "S")])
def test_build(fixture_dir, command, name):
    code, out, _ = call(command, fixture_dir / "fam1.json")
    assert code == 0
    assert f"{name}: 2 object classes, 8 arrow classes" in out


def test_check_iso(fixture_dir, tmp_path):
    code, rep, out = call_json(tmp_path, "check-iso", fixture_dir / "fam1.json")
    assert code == 0
    assert "8 arrow classes; M∘N = Id, N∘M = Id" in out
    assert rep["status"] == "pass"
    assert rep["command"] == "check-iso"


def test_full_image(fixture_dir):
    code, out, _ = call("full-image", fixture_dir / "fam1.json")
    assert code == 0
    assert "i0->i0: 4" in out


@pytest.mark.parametrize("name", ["fam1", "chain", "z2"])
def test_roundtrip(fixture_dir, name):
    code, out, _ = call("roundtrip", fixture_dir / f"{name}.json")
    assert code == 0, out
    assert "round trips ok" in out


@pytest.mark.parametrize("name", ["chain", "z2", "relation", "cocone", "fam1-sparse"])
def test_valid_fixtures(fixture_dir, name):
    assert call("validate", fixture_dir / f"{name}.json")[0] == 0


@pytest.mark.parametrize("name", sorted(MUTATIONS))
def test_mutations_fail_with_witness(fixture_dir, tmp_path, name):
    law = MUTATIONS[name][1]
    code, rep, out = call_json(tmp_path, "validate", fixture_dir / f"broken-{name}.json")
    assert code == 1
    rows = {row["law"]: row for row in rep["laws"]}
    failing = [k for k in rows if k == law or k.endswith("." + law)]
    assert failing, rows.keys()
    assert all(rows[k]["status"] == "fail" and rows[k]["witness"] is not None for k in failing)
    assert "FAIL" in out


def test_malformed_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    code, _, err = call("validate", p)
    assert code == 2
    assert err.startswith("error:")


def test_unknown_kind(tmp_path):
    p = tmp_path / "odd.json"
    p.write_text('{"kind": "monoid"}')
    assert call("validate", p)[0] == 2


def test_no_input():
    assert call("sum")[0] == 2


def test_construction_on_broken_family_fails(fixture_dir):
    code, out, _ = call("check-iso", fixture_dir / "broken-F3.json")
    assert code == 1
    assert "F3 fail" in out


def test_small_suite(tmp_path):
    code, rep, out = call_json(tmp_path, "suite", "--samples", 2, "--roundtrip-samples", 1, "--discrete-samples", 1)
    assert code == 0
    assert rep["summary"]["samples_by_kind"] == {"discrete": 1, "family": 2, "roundtrip": 1}
    assert all(row["checked"] >= 1 for row in rep["laws"])


def test_negative_samples():
    assert call("suite", "--samples", -1)[0] == 2


def test_console_entry_point(fixture_dir):
    proc = subprocess.run([sys.executable, "-m", "setoidcat.cli", "sum", str(fixture_dir / "fam1.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "5 elements" in proc.stdout
