import json

import pytest

from matchext.cli import main
from matchext.embedding import bowtie_rotation_N2


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_gen_json_and_dot(capsys, tmp_path):
    code, out = run(capsys, "gen", "complete", "7")
    assert code == 0
    assert len(json.loads(out)["edges"]) == 21

    code, out = run(capsys, "gen", "bowtie", "6", "5", "--format", "dot")
    assert code == 0
    assert out.count("--") == 60

    code, out = run(capsys, "gen", "product", "cycle:6", "cycle:5")
    assert code == 0
    assert len(json.loads(out)["edges"]) == 60

    target = tmp_path / "g.json"
    code, _ = run(capsys, "gen", "cycle", "8", "--output", str(target))
    assert code == 0
    assert json.loads(target.read_text())["order"] == 8


def test_extendable_exit_codes(capsys, tmp_path):
    code, out = run(capsys, "extendable", "bowtie:6:5", "3")
    assert code == 0
    assert json.loads(out)["verdict"] is True

    wfile = tmp_path / "w.json"
    code, out = run(capsys, "extendable", "product:cycle4:cycle5", "3", "--witness", str(wfile))
    assert code == 1
    witness = json.loads(wfile.read_text())
    assert len(witness["witness"]["edges"]) == 3
    assert witness["certificate"]["odd_components"] > len(witness["certificate"]["set"])

    code, _ = run(capsys, "extendable", "product:path5:cycle5", "2")
    assert code == 1


def test_graph_file_input(capsys, tmp_path):
    target = tmp_path / "g.json"
    run(capsys, "gen", "cycle", "6", "--output", str(target))
    code, out = run(capsys, "extendable", str(target), "1")
    assert code == 0


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "extendable", "nonsense:1:2", "1")[0] == 2
    assert run(capsys, "gen", "bowtie", "six", "5")[0] == 2
    assert run(capsys, "conjecture", "7", "5")[0] == 2
    assert run(capsys, "conjecture", "6", "4")[0] == 2


def test_budget_guard_exit_3(capsys):
    # C(435, 4) matching solves is far beyond the 10^7 budget
    assert run(capsys, "extendable", "complete:30", "4")[0] == 3


def test_ext_number_and_nk(capsys):
    code, out = run(capsys, "ext-number", "complete:6")
    assert code == 0 and out.strip() == "2"
    code, out = run(capsys, "nk", "complete:6", "2", "1")
    assert code == 0 and json.loads(out)["holds"] is True
    code, out = run(capsys, "nk", "cycle:6", "2", "1")
    assert code == 1


def test_mu_table(capsys):
    code, out = run(capsys, "mu", "--chi-min", "-2")
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("chi")]
    table = {tuple(l.split("\t")[:2]): l.split("\t")[2:] for l in lines}
    assert table[("2", "S_0")] == ["3", "3"]
    assert table[("0", "N_2")] == ["4", "4"]
    assert table[("-2", "S_2")] == ["4", "4"]


def test_witness_c4cn(capsys):
    code, out = run(capsys, "witness-c4cn", "5")
    assert code == 0
    data = json.loads(out)
    assert len(data["U"]) == 6
    assert data["tutte_violator_of_remainder"]["odd_components"] == 8


def test_bowtie_extend_cli(capsys):
    code, out = run(capsys, "bowtie-extend", "5", "0-1", "7-8", "25-26")
    assert code == 0
    plan = json.loads(out)
    assert len(plan["matching"]["edges"]) == 15
    assert plan["case_tag"]


def test_embed_verify(capsys):
    code, out = run(capsys, "embed-verify", "bowtie-n2:5", "N2")
    assert code == 0
    data = json.loads(out)
    assert data["verdict"] is True and data["characteristic"] == 0
    assert run(capsys, "embed-verify", "bowtie-n2:5", "S1")[0] == 1
    assert run(capsys, "embed-verify", "k5-torus", "S1")[0] == 0


def test_embed_verify_rotation_file(capsys, tmp_path):
    rs = bowtie_rotation_N2(5)
    rot_file = tmp_path / "rot.json"
    rot_file.write_text(json.dumps(rs.to_json_obj()))
    code, out = run(capsys, "embed-verify", str(rot_file), "N2", "--graph", "bowtie:6:5")
    assert code == 0 and json.loads(out)["verdict"] is True


def test_contributions(capsys):
    code, out = run(capsys, "contributions", "k5-torus")
    assert code == 0
    assert "control point" in out
    rows = [l for l in out.splitlines() if l and not l.startswith(("vertex", "#"))]
    assert len(rows) == 5


def test_verify_paper_formulas(capsys):
    code, out = run(capsys, "verify-paper", "--suite", "formulas")
    assert code == 0
    manifest = json.loads(out)
    assert manifest["all_pass"] is True
    assert manifest["checks"]


def test_conjecture_smallest_theorem_case(capsys):
    code, out = run(capsys, "conjecture", "6", "5")
    assert code == 0
    data = json.loads(out)
    assert data["report"]["verdict"] is True
    assert "EVIDENCE" in data["status"]
