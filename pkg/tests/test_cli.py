import json

import pytest

from diophlab.cli import main, read_output


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_lp_row(capsys):
    status, out, _ = run(capsys, "lp", "--k", "1")
    lines = out.splitlines()
    assert status == 0 and lines[0].startswith("# diophlab")
    assert lines[1] == "k,inv_a,b,c,status,active_set"
    assert lines[2].split(",")[3] == "1.000000000000e-01"


def test_lp_grid(capsys):
    status, out, _ = run(capsys, "lp", "--k-grid", "1.01:1.3333:50")
    assert status == 0 and len(out.splitlines()) == 52


def test_search_goldbach(capsys, tmp_path):
    cfg = write(tmp_path, "g.json", {"lambda": [1, 1, -1], "k": 1, "varpi": 0, "delta": 0.1})
    status, out, _ = run(capsys, "search", "--config", cfg, "--X", "20", "--eta", "0.5",
                         "--summary", str(tmp_path / "s.json"))
    assert status == 0
    rows = [l for l in out.splitlines() if not l.startswith("#")]
    assert rows[0] == "p1,p2,p3,form,miss,weight,boundary" and len(rows) == 9
    summary = json.loads(read_output(tmp_path / "s.json"))
    assert summary["count"] == 8


def test_validate_exit_codes(capsys, tmp_path):
    bad = write(tmp_path, "bad.json", {"lambda": [1, 2, 3], "k": 1.2})
    assert run(capsys, "validate", "--config", bad)[0] == 2
    good = write(tmp_path, "ok.json", {"lambda": [1, -1, 1], "k": 1.2})
    assert run(capsys, "validate", "--config", good)[0] == 0
    unknown = write(tmp_path, "u.json", {"lambda": [1, -1, 1], "k": 1.2, "extra": 0})
    assert run(capsys, "validate", "--config", unknown)[0] == 2


def test_report_refuses_tiny_scale(capsys, tmp_path):
    cfg = write(tmp_path, "q1.json", {"lambda": ["sqrt(2)", -1, 1], "k": 1.2, "q": 1})
    assert run(capsys, "report", "--config", cfg, "--out", str(tmp_path / "r"))[0] == 3


def test_arcs_budget_refusal(capsys, tmp_path):
    cfg = write(tmp_path, "big.json", {"lambda": ["sqrt(2)", -1, 1], "k": 1.2, "eps": 0.05, "X": 1e6})
    assert run(capsys, "arcs", "--config", cfg, "--arc", "all")[0] == 3


def test_arcs_json(capsys, tmp_path):
    cfg = write(tmp_path, "c.json", {"lambda": ["sqrt(2)", -1, 1], "k": 1.2, "varpi": 3.14159,
                                     "eps": 0.05, "X": 300})
    status, out, _ = run(capsys, "arcs", "--config", cfg, "--arc", "major")
    data = json.loads("".join(l for l in out.splitlines(True) if not l.startswith("#")))
    assert status == 0 and set(data) >= {"value", "error", "samples", "tail"}


def test_convergents_csv(capsys):
    status, out, _ = run(capsys, "convergents", "--ratio", "(1+sqrt(5))/2", "--count", "6")
    rows = out.splitlines()[2:]
    assert [r.split(",")[2] for r in rows] == ["1", "1", "2", "3", "5", "8"]
    assert all(r.endswith(",1") for r in rows)


def test_expsum_and_kernel(capsys):
    status, out, _ = run(capsys, "expsum", "--kind", "S", "--k", "1", "--X", "10", "--alpha-grid", "0:0:1")
    assert status == 0 and out.splitlines()[2].startswith("0.000000000000e+00,5.347107530717e+00")
    status, out, _ = run(capsys, "kernel-check", "--eta", "0.5", "--t-grid", "0,1")
    assert status == 0 and len(out.splitlines()) == 4


def test_selberg_and_primes(capsys, tmp_path):
    status, out, _ = run(capsys, "selberg", "--k", "1,1.2", "--X", "100", "--h", "0,10")
    assert status == 0 and len(out.splitlines()) == 6
    cache = tmp_path / "p.dlpt"
    status, out, _ = run(capsys, "--sieve-cache", str(cache), "primes", "--limit", "100", "--x", "10,100")
    assert status == 0 and cache.exists()
    assert out.splitlines()[2].split(",")[1] == "4"


def test_scan(capsys, tmp_path):
    cfg = write(tmp_path, "c.json", {"lambda": ["sqrt(2)", -1, 1], "k": 1.2, "varpi": 3.14159, "eps": 0.05})
    status, out, _ = run(capsys, "scan", "--config", cfg, "--count", "5")
    assert status == 0 and "q,X,eta" in out


def test_manifest_ignores_volatile_flags(capsys, tmp_path):
    a = run(capsys, "lp", "--k", "1.2")[1]
    b = run(capsys, "--threads", "4", "lp", "--k", "1.2")[1]
    c = run(capsys, "lp", "--k", "1.25")[1]
    assert a == b and a.splitlines()[0] != c.splitlines()[0]
