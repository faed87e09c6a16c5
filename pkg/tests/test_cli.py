from __future__ import annotations

import json

import pytest

from taut24 import reference
from taut24.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_build_roots(capsys):
    code, out = run(capsys, "build", "roots")
    assert code == 0
    doc = json.loads(out)
    assert doc["result"]["count"] == 14
    assert doc["manifest"]["command"] == "build roots"
    assert doc["manifest"]["summary"] == {"pass": True}
    alphas = sorted(tuple(r["alpha"]) for r in doc["result"]["roots"])
    assert alphas == sorted(reference.ROOTS)


def test_build_fan_table(capsys):
    code, out = run(capsys, "build", "fan")
    assert code == 0
    table = json.loads(out)["result"]["table"]
    got = [(r["path"], tuple(r["cone"]), r["w_sigma_hat"]) for r in table]
    assert got == list(reference.FAN_TABLE)


def test_build_resolution_text(capsys):
    code, out = run(capsys, "build", "resolution", "--format", "text")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 8
    assert all(line.endswith("|det|=1") for line in lines)


def test_build_polytopes(capsys):
    code, out = run(capsys, "build", "polytope", "--divisor", "L")
    assert code == 0
    assert json.loads(out)["result"]["lattice_point_count"] == 6
    code, out = run(capsys, "build", "polytope", "--divisor", "K")
    assert json.loads(out)["result"]["lattice_point_count"] == 105


def test_systems_x_counts(capsys):
    code, out = run(capsys, "systems", "X", "--t", "1")
    assert code == 0
    gens = json.loads(out)["result"]["generators"]
    tags = [g["tag"] for g in gens]
    assert tags.count("symmetry") == 15 and tags.count("polynomial") == 21


def test_systems_x_symbolic_text(capsys):
    code, out = run(capsys, "systems", "X", "--t", "symbolic", "--format", "text")
    assert code == 0
    assert "t" in out and out.startswith("# symmetry")


def test_t_is_rejected_outside_x(capsys):
    assert main(["systems", "Y", "--t", "1"]) == 2
    assert main(["systems", "X", "--t", "abc"]) == 2


def test_systems_ci(capsys):
    code, out = run(capsys, "systems", "ci", "--split", "2,2")
    assert code == 0
    gens = json.loads(out)["result"]["generators"]
    assert sum(g["tag"] == "box" for g in gens) == 1062
    assert main(["systems", "ci", "--split", "1,1/x"]) == 2


def test_verify_table_and_exit_codes(capsys):
    code, out = run(capsys, "verify", "table")
    assert code == 0
    assert json.loads(out)["manifest"]["summary"]["pass"] is True
    assert main(["verify", "nonsense"]) == 2
    assert main(["verify", "periods", "--kmax", "-1"]) == 2
    assert main([]) == 2


def test_verify_text_lines(capsys):
    code, out = run(capsys, "verify", "missing", "--format", "text")
    assert code == 0
    assert out.splitlines()[-1] == "PASS  1/1 checks"


def test_output_is_deterministic(tmp_path, capsys):
    path = tmp_path / "roots.json"
    assert main(["build", "roots", "--out", str(path)]) == 0
    first = path.read_bytes()
    assert main(["build", "roots", "--out", str(path)]) == 0
    assert path.read_bytes() == first
    assert json.loads(first)["manifest"]["output"] == str(path)
    assert capsys.readouterr().out == ""


def test_version(capsys):
    with pytest.raises(SystemExit):
        from taut24.cli import build_parser
        build_parser().parse_args(["--version"])
    assert "0.1.0" in capsys.readouterr().out
