import json
import subprocess
import sys

import pytest

from odolab.cli import main
from odolab.errors import InputError
from odolab.workspace import builtin_fixtures, load


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_quasifactor_report(capsys):
    code, out, _ = run(capsys, "analyze", "--target", "s3-mod-12", "--analysis", "quasifactors")
    rep = json.loads(out)
    assert code == 0
    assert [q["orbit_size"] for q in rep["quasifactors"]] == [3, 3, 1]
    assert all(q["is_factor"] for q in rep["quasifactors"])


def test_d4_disjointness_report(capsys):
    code, out, _ = run(capsys, "analyze", "--target", "d4-s,d4-rs", "--analysis", "disjoint")
    rep = json.loads(out)
    assert code == 0
    assert rep["disjointness"]["disjoint"] is False
    assert rep["common_factor"]["no_common_factor"] is True


def test_odometer_report(capsys):
    _, out, _ = run(capsys, "analyze", "--target", "s3-mod-12", "--analysis", "odometer")
    rep = json.loads(out)
    assert not (rep["normal"] or rep["intersection_closed"] or rep["core_stable"])


@pytest.mark.parametrize("target,analysis", [
    ("s3-12,s3-13", "common-factor"), ("d4-mod-s", "tiles"), ("d4-mod-s", "settled"),
    ("d4-rotation-chain", "scale"), ("s3-mod-12", "measures"), ("free-s3", "quasifactors"),
])
def test_other_analyses_text_and_json(capsys, target, analysis):
    for fmt in ("json", "text"):
        code, out, _ = run(capsys, "analyze", "--target", target, "--analysis", analysis, "--format", fmt)
        assert code == 0 and out.strip()


def test_output_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "analyze", "--target", "d4-mod-s", "--analysis", "tiles", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["tiles"]


@pytest.mark.parametrize("argv", [
    ["analyze", "--target", "nope", "--analysis", "tiles"],
    ["analyze", "--target", "d4-s", "--analysis", "disjoint"],
    ["analyze", "--target", "d4-mod-s", "--analysis", "scale"],
    ["analyze", "--workspace", "/nonexistent.json", "--target", "x", "--analysis", "tiles"],
])
def test_input_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1 and err.startswith("odolab:")


def test_verify_filter(capsys):
    code, out, _ = run(capsys, "verify-paper", "--filter", "example:disjointness")
    lines = out.splitlines()
    assert code == 0
    assert len(lines) == 3 and all(l.startswith("PASS") for l in lines[:2])


def test_workspace_validation():
    doc = builtin_fixtures()
    doc["subgroups"]["S3"] = {"ambient": "S3", "generators": []}
    with pytest.raises(InputError):
        load(doc)
    doc = builtin_fixtures()
    doc["actions"]["bad"] = {"group": "S3", "points": 3, "images": {"a": "(12)"}}
    with pytest.raises(InputError):
        load(doc)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "odolab", "analyze", "--target", "s3-mod-12",
                        "--analysis", "tiles", "--format", "text"], capture_output=True, text=True)
    assert r.returncode == 0 and "tiles" in r.stdout
