"""CLI behaviour: exit codes and golden outputs, plus byte-for-byte determinism.

Regenerate the golden files with ``python3 scripts/regen_goldens.py`` after
an intentional schema change (and bump ``SCHEMA_VERSION``).
"""

import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from bergman_ellipsoids.cli import COMMANDS, SCHEMA_VERSION, main

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"
GOLDEN = Path(__file__).parent / "golden"

# (name, argv) pairs pinned by golden files
GOLDEN_CASES = [
    ("norms_ball2_N1.csv", ["norms", "--domain", "ball2.json", "--truncation", "1"]),
    ("norms_mixed_N2.json", ["norms", "--domain", "mixed.json", "--truncation", "2", "--format", "json"]),
    ("commutators_ball2_N1.csv", ["commutators", "--domain", "ball2.json", "--truncation", "1"]),
    ("decay_ball3.csv", ["decay", "--domain", "ball3.json", "--shells", "1,5,20"]),
    ("staircase_z1z2_N2.csv", ["staircase", "--ideal", "ideal_z1z2.json", "--truncation", "2"]),
    ("boxes_z1sq_z1z2.json", ["boxes", "--ideal", "ideal_z1sq_z1z2.json", "--format", "json"]),
    ("resolve_z1z2.csv", ["resolve", "--ideal", "ideal_z1z2.json", "--truncation", "3"]),
    ("verify_three.json", ["verify", "--ideal", "ideal_three.json", "--truncation", "4", "--format", "json"]),
    ("certificate_z1z2.csv", ["certificate", "--ideal", "ideal_z1z2.json"]),
    (
        "report_ball2_z1z2.json",
        ["report", "--domain", "ball2.json", "--ideal", "ideal_z1z2.json", "--shells", "2,4", "--format", "json"],
    ),
]


def resolve_paths(argv):
    out = list(argv)
    for i, a in enumerate(out):
        if a in ("--domain", "--ideal"):
            out[i + 1] = str(CONFIGS / out[i + 1])
    return out


def run(argv, capsys):
    code = main(resolve_paths(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.mark.parametrize("name, argv", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden(name, argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_norms_values(capsys):
    code, out, _ = run(["norms", "--domain", "ball2.json", "--truncation", "1"], capsys)
    lines = out.strip().splitlines()
    assert lines[0] == "z1,w11,log_omega"
    vals = [float(l.split(",")[-1]) for l in lines[1:]]
    assert vals == pytest.approx([math.log(math.pi**2 / 2), math.log(math.pi**2 / 6), math.log(math.pi**2 / 6)])


def test_norms_single_row(capsys):
    _, out, _ = run(["norms", "--domain", "ball2.json", "--truncation", "0"], capsys)
    assert len(out.strip().splitlines()) == 2


def test_commutator_values(capsys):
    _, out, _ = run(["commutators", "--domain", "ball2.json", "--truncation", "1", "--format", "json"], capsys)
    rows = {(tuple(r["n"]), r["var"]): r for r in json.loads(out)["rows"]}
    assert rows[((0, 0), "z1")]["lambda"] == pytest.approx(-1 / 3, abs=1e-12)
    assert rows[((1, 0), "z1")]["lambda"] == pytest.approx(-1 / 6, abs=1e-12)


def test_oracle_passes_on_ball(capsys):
    code, out, _ = run(
        ["oracle", "--domain", "ball2.json", "--truncation", "1", "--samples", "200000", "--format", "json"], capsys
    )
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert all(abs(r["z_score"]) <= 3 for r in doc["rows"])


def test_oracle_exit_one_on_failure(capsys):
    # an absurdly tight tolerance must flag the comparison as failed
    code, out, _ = run(
        ["oracle", "--domain", "ball2.json", "--truncation", "1", "--samples", "2000", "--tolerance", "1e-9"],
        capsys,
    )
    assert code == 1 and out


def test_resolve_examples(capsys):
    _, out, _ = run(["resolve", "--ideal", "ideal_z1z2.json", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["k"] == 2 and doc["passed"] and len(doc["certificate"]) == 3
    _, out, _ = run(["boxes", "--ideal", "ideal_z1sq_z1z2.json"], capsys)
    assert len(out.strip().splitlines()) == 3


def test_unit_ideal(capsys):
    code, out, _ = run(["resolve", "--ideal", "ideal_unit.json", "--format", "json"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["k"] == 0 and doc["staircase_empty"] and "note" in doc


def test_no_minimize_keeps_raw_cover(capsys):
    _, out, _ = run(["boxes", "--ideal", "ideal_three.json", "--no-minimize", "--format", "json"], capsys)
    raw = json.loads(out)["boxes"]
    _, out, _ = run(["boxes", "--ideal", "ideal_three.json", "--format", "json"], capsys)
    assert len(json.loads(out)["boxes"]) <= len(raw)


@pytest.mark.parametrize(
    "argv",
    [
        ["norms"],
        ["norms", "--domain", "missing.json"],
        ["norms", "--domain", "ball2.json", "--truncation", "-1"],
        ["decay", "--domain", "ball2.json", "--shells", ""],
        ["decay", "--domain", "ball2.json", "--shells", "10,5"],
        ["decay", "--domain", "ball2.json", "--shells", "a,b"],
        ["resolve"],
        ["report", "--domain", "ball3.json", "--ideal", "ideal_z1z2.json"],
        ["oracle", "--domain", "ball2.json", "--samples", "0"],
    ],
)
def test_config_errors_exit_2_without_output(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


def test_bad_domain_file_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"p": [1], "constraints": [{"q": [1], "p": [2]}]}')
    out_file = tmp_path / "out.csv"
    assert main(["norms", "--domain", str(bad), "--output", str(out_file)]) == 2
    assert not out_file.exists()


def test_budget_exit_2(monkeypatch, capsys):
    monkeypatch.setenv("BERGMAN_INDEX_BUDGET", "100")
    code, out, _ = run(["decay", "--domain", "ball3.json", "--shells", "50"], capsys)
    assert code == 2 and out == ""


def test_output_file(tmp_path, capsys):
    target = tmp_path / "norms.json"
    assert main(["norms", "--domain", str(CONFIGS / "ball2.json"), "--format", "json", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(target.read_text())
    assert doc["schema_version"] == SCHEMA_VERSION and doc["command"] == "norms"


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "bergman_ellipsoids", "norms", "--domain", str(CONFIGS / "ball2.json"), "--truncation", "0"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.startswith("z1,w11,log_omega\n")


def test_every_command_is_covered():
    covered = {argv[0] for _, argv in GOLDEN_CASES} | {"oracle"}
    assert covered == set(COMMANDS)
