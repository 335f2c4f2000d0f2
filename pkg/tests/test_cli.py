import json
import subprocess
import sys

import pytest

from llx.cli import main


@pytest.fixture
def files(tmp_path):
    (tmp_path / "k2.txt").write_text("a b\n")
    (tmp_path / "bad.txt").write_text("a b\nb b\n")
    labels = [f"a{i}" for i in range(4)] + [f"b{i}" for i in range(4)]
    (tmp_path / "g.txt").write_text("a0 b0\n" + "".join(f"vertex {x}\n" for x in labels))
    (tmp_path / "c.txt").write_text(" ".join(labels[:4]) + "\n" + " ".join(labels[4:]) + "\n")
    clauses = [" ".join(str(v if (i >> (v - 1)) & 1 else -v) for v in range(1, 8)) + " 0" for i in range(6)]
    (tmp_path / "f.cnf").write_text("p cnf 7 6\n" + "\n".join(clauses) + "\n")
    (tmp_path / "m.csv").write_text("1,2,3\n4,5,6\n7,8,9\n")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_check_improved(files, capsys):
    code, rep, err = run(capsys, "check", "--graph", files / "k2.txt", "--p", "0.25", "--method", "improved", "--mu", "0.5")
    assert code == 0
    assert rep["schema"] == "llx/1" and rep["command"] == "check"
    assert rep["holds"] and rep["lower_bound"] == pytest.approx(0.421875, abs=1e-12)
    assert "improved: HOLDS" in err


def test_check_classical_fails(files, capsys):
    code, rep, _ = run(capsys, "check", "--graph", files / "k2.txt", "--p", "0.25", "--method", "classical", "--mu", "0.5")
    assert code == 1 and rep["holds"] is False and rep["lower_bound"] is None
    assert rep["worst_vertex"] in ("a", "b")


def test_check_shearer_fails(files, capsys):
    code, rep, _ = run(capsys, "check", "--graph", files / "k2.txt", "--p", "0.6", "--method", "shearer")
    assert code == 1
    assert rep["details"]["P_empty"] == pytest.approx(-0.2)


def test_check_all(files, capsys):
    code, rep, _ = run(capsys, "check", "--graph", files / "k2.txt", "--p", "0.3", "--method", "all", "--json-only")
    assert code == 0
    assert [r["method"] for r in rep["reports"]] == ["classical", "improved", "shearer"]
    # the classical radius on K2 never exceeds 1/4
    assert [r["holds"] for r in rep["reports"]] == [False, True, True]


def test_parse_error_exit_code(files, capsys):
    code, rep, err = run(capsys, "check", "--graph", files / "bad.txt", "--p", "0.1")
    assert code == 2 and rep is None
    assert "bad.txt:2" in err


def test_missing_file(files, capsys):
    code, _, err = run(capsys, "check", "--graph", files / "nope.txt", "--p", "0.1")
    assert code == 2 and "error" in err


def test_shearer_cap_exit_code(files, capsys):
    code, _, err = run(capsys, "check", "--graph", files / "g.txt", "--p", "0.1", "--method", "shearer", "--max-vertices", "4")
    assert code == 2 and "improved" in err


def test_mu_roundtrip_bit_identical(files, capsys):
    code, first, _ = run(capsys, "check", "--graph", files / "g.txt", "--p", "0.05", "--json-only")
    assert code == 0 and first["details"]["mu_source"] == "fixed_point"
    saved = files / "report.json"
    saved.write_text(json.dumps(first))
    code, second, _ = run(capsys, "check", "--graph", files / "g.txt", "--p", "0.05", "--mu", saved, "--json-only")
    assert code == 0 and second["details"]["mu_source"] == "given"
    assert second["lower_bound"] == first["lower_bound"]
    assert second["mu"] == first["mu"]


def test_findmu(files, capsys):
    code, rep, _ = run(capsys, "findmu", "--graph", files / "k2.txt", "--p", "0.2")
    assert code == 0 and rep["found"]
    assert all(v["slack"] > 0 for v in rep["vertices"])
    code, rep, _ = run(capsys, "findmu", "--graph", files / "k2.txt", "--p", "0.6")
    assert code == 1 and rep["mu"] is None and rep["verdict"] == "diverged"
    assert "trace" in rep
    code, rep, _ = run(capsys, "findmu", "--graph", files / "k2.txt", "--p", "0")
    assert code == 0 and rep["mu"] == {"a": 0.0, "b": 0.0}


def test_app_ksat(files, capsys):
    code, rep, _ = run(capsys, "app", "ksat", "--cnf", files / "f.cnf")
    assert code == 0
    assert rep["details"]["k"] == 7 and rep["details"]["N"] == 6
    assert rep["details"]["simplified_threshold_holds"]


def test_app_latin(files, capsys):
    code, rep, _ = run(capsys, "app", "latin", "--matrix", files / "m.csv")
    assert code == 0 and rep["lower_bound"] == 1.0


def test_app_transversal_montecarlo_deterministic(files, capsys):
    argv = ("app", "transversal", "--graph", files / "g.txt", "--classes", files / "c.txt",
            "--montecarlo", "2000", "--seed", "7", "--json-only")
    code1, a, _ = run(capsys, *argv)
    code2, b, _ = run(capsys, *argv)
    assert code1 == code2
    assert a["montecarlo"] == b["montecarlo"]
    assert a["seed"] == 7
    assert a["details"]["s"] == 4 and a["details"]["delta"] == 1


def test_montecarlo_needs_seed(files, capsys):
    code, _, err = run(capsys, "app", "latin", "--matrix", files / "m.csv", "--montecarlo", "10")
    assert code == 2 and "--seed" in err


def test_module_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "llx", "check", "--graph", str(files / "k2.txt"), "--p", "0.25",
         "--mu", "0.5", "--json-only"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stderr == ""
    assert json.loads(proc.stdout)["holds"] is True
