import json
import subprocess
import sys
from pathlib import Path

import pytest

import nsplit
from nsplit.cli import main, parse_A
from nsplit.catalog import load

FIX = Path(nsplit.__file__).parent / "data" / "fixtures"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_decompose_frobenius_a4(capsys, tmp_path):
    out = tmp_path / "a4.json"
    code, text, _ = run(capsys, "decompose", "--group", "catalog:A4", "--A", "klein", "--method", "frobenius",
                        "--out", str(out))
    assert code == 0 and "valid, strict, n = 2" in text
    assert len(json.loads(out.read_text())["parts"]) == 2


def test_decompose_ti_cover_l27(capsys, tmp_path):
    out = tmp_path / "l27.json"
    code, text, _ = run(capsys, "decompose", "--group", "catalog:L2_7", "--A", "auto", "--method", "ti-cover",
                        "--out", str(out))
    assert code == 0 and "n = 6" in text
    code, text, _ = run(capsys, "audit", str(out))
    assert code == 0 and "(ix) index bound: pass" in text


def test_decompose_precondition_exit_two(capsys):
    code, _, err = run(capsys, "decompose", "--group", "catalog:S3", "--A", "center", "--method", "frobenius")
    assert code == 2 and "Frobenius" in err


def test_decompose_maximal_abelian_and_coset(capsys):
    code, text, _ = run(capsys, "decompose", "--group", "Q8", "--A", "auto", "--method", "maximal-abelian")
    assert code == 0 and "n = 2" in text
    code, text, _ = run(capsys, "decompose", "--group", "D8", "--A", "(1 2 3 4)", "--method", "coset:(1 3)")
    doc = json.loads(text)
    assert code == 0 and len(doc["parts"]) == 2 and all(len(p) == 2 for p in doc["parts"])


@pytest.mark.parametrize("argv,n", [
    (["--group", "catalog:A5", "--over-all-A", "--strict"], 4),
    (["--group", "catalog:D8", "--A", "center", "--strict"], 2),
    (["--group", "catalog:PGL2_5", "--over-all-A", "--strict"], 5),
    (["--group", "S4", "--A", "trivial"], 3),
])
def test_min(capsys, argv, n):
    code, text, _ = run(capsys, "min", *argv)
    doc = json.loads(text)
    assert code == 0 and doc["n"] == n and doc["proven"] is True


def test_min_writes_witness(capsys, tmp_path):
    out = tmp_path / "w.json"
    code, text, _ = run(capsys, "min", "--group", "A4", "--over-all-A", "--out", str(out))
    assert code == 0 and json.loads(text)["decomposition_file"] == str(out)
    code, text, _ = run(capsys, "verify", str(out))
    assert code == 0 and text.startswith("valid")


def test_min_infeasible_and_non_strict(capsys):
    code, text, _ = run(capsys, "min", "--group", "D8", "--A", "trivial")
    assert code == 1 and json.loads(text)["error"] == "infeasible"
    code, text, _ = run(capsys, "min", "--group", "D8", "--A", "trivial", "--non-strict")
    assert code == 0 and json.loads(text)["strict"] is False


def test_verify_fixture_and_tampered(capsys):
    code, text, _ = run(capsys, "verify", str(FIX / "s4_lemma44.json"))
    assert code == 0 and "valid, strict, n = 2" in text
    code, text, _ = run(capsys, "verify", str(FIX / "s4_lemma44_tampered.json"))
    assert code == 1 and text.startswith("invalid")


def test_parse_errors_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "verify", str(bad))[0] == 2
    assert run(capsys, "verify", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "min", "--group", "S3", "--bogus")[0] == 2
    assert run(capsys, "min", "--group", "nosuchgroup", "--A", "trivial")[0] == 2
    assert run(capsys, "min", "--group", "S3", "--A", "(1 2 3),(1 2)")[0] == 2
    assert run(capsys)[0] == 2


def test_budget_exit_three(capsys, monkeypatch):
    import nsplit.cli as cli
    from nsplit.errors import BudgetExceeded

    def exhausted(*a, **k):
        raise BudgetExceeded("search budget of 1 nodes exhausted")

    monkeypatch.setattr(cli, "exact_min_fixed_A", exhausted)
    code, text, _ = run(capsys, "min", "--group", "S4", "--A", "trivial", "--budget", "1")
    assert code == 3 and json.loads(text)["error"] == "budget"

    real = cli.min_over_all_A

    def unproven(*a, **k):
        r = real(*a, **k)
        r.proven_exact = False
        return r

    monkeypatch.setattr(cli, "min_over_all_A", unproven)
    code, text, _ = run(capsys, "min", "--group", "S3", "--over-all-A")
    assert code == 3 and json.loads(text)["proven"] is False


def test_sweep_small(capsys, tmp_path):
    out = tmp_path / "s.jsonl"
    code, text, _ = run(capsys, "sweep", "--n", "2", "--groups", "S3,A4,S4", "--out", str(out))
    assert code == 0 and "0 discrepancies" in text
    lines = out.read_text().splitlines()
    assert all(json.loads(line)["status"] == "agree" for line in lines)


def test_graph_and_catalog(capsys, tmp_path):
    code, text, err = run(capsys, "graph", "--group", "S3")
    assert code == 0 and text.count(" -- ") == 1 and "5 vertices" in err
    out = tmp_path / "d8.dot"
    code, _, err = run(capsys, "graph", "--group", "D8", "--vertices", "complement", "--A", "center",
                       "--out", str(out))
    assert code == 0 and out.read_text().count(" -- ") == 3
    code, text, _ = run(capsys, "catalog", "--max-order", "8")
    assert code == 0 and [line.split()[0] for line in text.splitlines()] == ["S3", "D8", "Q8"]


def test_parse_A_forms():
    G = load("S4")
    assert parse_A(G, "auto") is None
    assert parse_A(G, "trivial").order == 1
    assert parse_A(G, "center").order == 1
    V = parse_A(G, "klein")
    assert V.order == 4 and V.is_normal
    assert parse_A(G, "(1 2 3 4)").order == 4
    assert parse_A(G, "(1 2),(3 4)").order == 4


def test_output_is_deterministic(capsys):
    a = run(capsys, "min", "--group", "A4", "--over-all-A")[1]
    b = run(capsys, "min", "--group", "A4", "--over-all-A")[1]
    assert a == b


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nsplit.cli", "verify", str(FIX / "s3_order2.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "valid" in proc.stdout
