from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chromata.cli import run


def call(argv, stdin: str | None = None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    buf = io.StringIO()
    code = run(argv, out=buf)
    return code, buf.getvalue()


@pytest.fixture
def k3(tmp_path):
    p = tmp_path / "k3.txt"
    p.write_text("0 1\n1 2\n0 2\n")
    return str(p)


def test_verify_k3(k3):
    code, out = call(["verify", k3, "--colors", "1,2,3"])
    doc = json.loads(out)
    assert code == 0 and doc["proper"] and doc["acyclic"]


def test_verify_from_coloring_file(k3, tmp_path):
    col = tmp_path / "c.json"
    col.write_text(json.dumps({"kappa": 3, "colors": [[0, 1], [1, 2], [2, 1]]}))
    code, out = call(["verify", k3, "--coloring", str(col)])
    assert code == 1 and not json.loads(out)["proper"]


def test_color_below_max_degree_is_a_domain_negative():
    code, out = call(["color", "--graph", "K4", "--kappa", "2"])
    assert code == 1 and json.loads(out)["error"]["kind"] == "InfeasiblePalette"


def test_color_writes_json_out(tmp_path):
    target = tmp_path / "out.json"
    code, out = call(["color", "--graph", "icosahedron", "--json-out", str(target)])
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "solved" and doc["verify"]["acyclic"]
    assert json.loads(target.read_text())["kappa"] == doc["kappa"]


def test_audit_tetrahedron():
    code, out = call(["audit", "--graph", "tetrahedron"])
    doc = json.loads(out)
    assert doc["total_initial"] == "-12" and doc["total_final"] == "-12"
    assert code == 0


def test_audit_rejects_nonplanar_and_accepts_rule_files(tmp_path):
    code, out = call(["audit", "--graph", "K5"])
    assert code == 2 and json.loads(out)["error"]["kind"] == "InvalidParam"
    rules = tmp_path / "r.txt"
    rules.write_text("id: all ; sender: 3+ ; face: any ; amount: 1 ; anchor: x\n")
    code, out = call(["audit", "--graph", "cube", "--rules", str(rules)])
    assert json.loads(out)["total_final"] == "-12"


def test_audit_cases_small_range():
    code, out = call(["audit", "--graph", "tetrahedron", "--cases", "--min-degree", "3", "--max-degree", "5"])
    doc = json.loads(out)
    assert code == 0 and doc["vertex_cases_nonnegative"] and len(doc["vertex_cases"]) == 3


def test_exact_and_decision():
    code, out = call(["exact", "--graph", "K4"])
    assert code == 0 and json.loads(out)["chi_a"] == 5
    code, out = call(["exact", "--graph", "K4", "--decision", "4"])
    assert code == 1 and json.loads(out)["status"] == "no"
    code, out = call(["exact", "--graph", "K5", "--budget", "2"])
    assert code == 1 and json.loads(out)["error"]["kind"] == "BudgetExceeded"


def test_lemma_reports_counts(tmp_path):
    code, out = call(["lemma", "--gen", "5", "--kappa", "delta+2"])
    doc = json.loads(out)
    assert code == 0 and doc["found"] == 0 and doc["instances"] == "0 instances"
    cat = tmp_path / "cat.g6"
    cat.write_text("Bw\nC~\n")  # K3 and K4
    code, out = call(["lemma", "--catalog", str(cat), "--lemma", "delta2"])
    doc = json.loads(out)
    assert code == 0 and doc["found"] == 1 and doc["results"][0]["verdicts"][0]["status"] == "holds"
    code, out = call(["lemma", "--gen", "3", "--lemma", "nope"])
    assert code == 2 and json.loads(out)["error"]["kind"] == "UnknownLemmaId"
    code, out = call(["lemma"])
    assert code == 2


def test_gen_stats_and_stdin(monkeypatch):
    code, out = call(["gen", "--n", "12", "--seed", "4", "--out-format", "graph6"])
    doc = json.loads(out)
    assert code == 0 and doc["format"] == "graph6"
    code, out = call(["stats", "-", "--format", "graph6"], stdin=doc["serialized"], monkeypatch=monkeypatch)
    stats = json.loads(out)
    assert code == 0 and stats["planar"] and stats["m"] == 3 * 12 - 6


def test_seed_environment_override(monkeypatch):
    monkeypatch.setenv("CHROMATA_SEED", "9")
    _, a = call(["gen", "--n", "10", "--seed", "1"])
    _, b = call(["gen", "--n", "10", "--seed", "2"])
    assert a == b and json.loads(a)["seed"] == 9
    monkeypatch.setenv("CHROMATA_SEED", "x")
    code, out = call(["gen", "--n", "10"])
    assert code == 2


def test_usage_errors_are_json():
    for argv in (["bogus"], ["color", "--kappa", "two"], ["gen"], ["verify", "/no/such/file", "--colors", "1"], ["color", "--threads", "0", "--graph", "K3"]):
        code, out = call(argv)
        assert code == 2 and "error" in json.loads(out), argv


def test_parse_errors_exit_two(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0\n")
    code, out = call(["stats", str(bad)])
    assert code == 2 and json.loads(out)["error"]["kind"] == "NonSimpleError"


def test_table_renders_same_document():
    code, out = call(["stats", "--graph", "cube", "--table"])
    assert code == 0 and "max_degree" in out and "3" in out


def test_threads_do_not_change_output():
    _, a = call(["color", "--graph", "dodecahedron", "--threads", "1"])
    _, b = call(["color", "--graph", "dodecahedron", "--threads", "4"])
    assert a == b


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "chromata.cli", "stats", "--graph", "K4"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["m"] == 6 and proc.stderr == ""


SUBCOMMANDS = [
    ["stats", "--graph", "{g}"],
    ["color", "--graph", "{g}", "--seed", "{s}"],
    ["verify", "--graph", "{g}", "--colors", "{s}"],
    ["exact", "--graph", "{g}", "--budget", "50"],
    ["audit", "--graph", "{g}"],
    ["gen", "--n", "{s}"],
]


@given(st.sampled_from(SUBCOMMANDS), st.sampled_from(["K3", "C5", "P4", "tetrahedron", "K5", "nothing"]), st.integers(-3, 40))
def test_stdout_is_always_json(template, g, s):
    argv = [a.format(g=g, s=s) for a in template]
    code, out = call(argv)
    assert code in (0, 1, 2)
    json.loads(out)
