import json

from polycut.canon import canonical_key
from polycut.cli import main
from polycut.families import hypercube_graph


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def stable(out):
    return [line for line in out.splitlines() if not line.startswith("[time]")]


def test_enumerate_prints_counts(tmp_path, capsys):
    out_path = tmp_path / "c.jsonl"
    code, out, _ = run(capsys, "enumerate", "--dim", "3", "--max-facets", "6", "--output", str(out_path))
    assert code == 0
    assert out.splitlines()[0] == "n=4: 1, n=5: 1, n=6: 2"
    assert any(line.startswith("[time]") for line in out.splitlines())
    assert len(out_path.read_text().splitlines()) == 4


def test_enumerate_deterministic_output(tmp_path, capsys):
    a = run(capsys, "enumerate", "--dim", "3", "--max-facets", "7", "--output", str(tmp_path / "a.jsonl"))
    b = run(capsys, "enumerate", "--dim", "3", "--max-facets", "7", "--output", str(tmp_path / "a.jsonl"))
    assert stable(a[1]) == stable(b[1])


def test_enumerate_invalid_range(tmp_path, capsys):
    code, _, err = run(capsys, "enumerate", "--dim", "3", "--max-facets", "3", "--output", str(tmp_path / "x"))
    assert code == 2 and "max-facets" in err


def test_enumerate_bad_arguments(capsys):
    assert run(capsys, "enumerate", "--dim", "x", "--max-facets", "5")[0] == 2
    assert run(capsys, "enumerate", "--dim", "3")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "enumerate", "--dim", "3", "--max-facets", "5", "--format", "png")[0] == 2
    assert run(capsys, "enumerate", "--dim", "3", "--max-facets", "5", "--workers", "0")[0] == 2


def test_enumerate_d4_contains_q4(tmp_path, capsys):
    out_path = tmp_path / "d4.jsonl"
    code, out, _ = run(capsys, "enumerate", "--dim", "4", "--max-facets", "8", "--output", str(out_path),
                       "--format", "jsonl,graph6")
    assert code == 0
    q4 = canonical_key(hypercube_graph(4))
    keys = [json.loads(line)["key"] for line in out_path.read_text().splitlines()
            if json.loads(line)["n"] == 8]
    assert q4 in keys
    assert q4 in (tmp_path / "d4.g6").read_text().split()


def test_cap_exit_code(tmp_path, capsys):
    code, _, err = run(capsys, "enumerate", "--dim", "3", "--max-facets", "6", "--max-cutset-size", "1",
                       "--output", str(tmp_path / "c.jsonl"))
    assert code == 3 and "cap" in err


def test_workers_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("POLYCUT_WORKERS", "2")
    code, out2, _ = run(capsys, "enumerate", "--dim", "4", "--max-facets", "7", "--output", str(tmp_path / "w2.jsonl"))
    monkeypatch.setenv("POLYCUT_WORKERS", "1")
    code1, out1, _ = run(capsys, "enumerate", "--dim", "4", "--max-facets", "7", "--output", str(tmp_path / "w1.jsonl"))
    assert code == code1 == 0
    assert (tmp_path / "w2.jsonl").read_text() == (tmp_path / "w1.jsonl").read_text()
    monkeypatch.setenv("POLYCUT_WORKERS", "many")
    assert run(capsys, "enumerate", "--dim", "3", "--max-facets", "5", "--output", str(tmp_path / "z"))[0] == 2


def test_no_footnote_flag(tmp_path, capsys):
    code, out, _ = run(capsys, "enumerate", "--dim", "3", "--max-facets", "6", "--no-footnote-condition",
                       "--output", str(tmp_path / "c.jsonl"))
    assert code == 0 and out.startswith("n=4: 1, n=5: 1, n=6: 2")


def test_resume_flag(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    run(capsys, "enumerate", "--dim", "3", "--max-facets", "5", "--output", str(path))
    code, out, _ = run(capsys, "enumerate", "--dim", "3", "--max-facets", "7", "--resume", "--output", str(path))
    assert code == 0 and out.startswith("n=4: 1, n=5: 1, n=6: 2, n=7: 5")
    code, _, err = run(capsys, "enumerate", "--dim", "4", "--max-facets", "7", "--resume", "--output", str(path))
    assert code == 2 and "mismatch" in err


def test_analyze(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    run(capsys, "enumerate", "--dim", "3", "--max-facets", "6", "--output", str(path))
    report = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "analyze", str(path), "--output", str(report))
    assert code == 0
    assert "no Hirsch or d-step violations" in out
    recs = [json.loads(line) for line in report.read_text().splitlines()]
    assert len(recs) == 4 and all(r["hirsch_margin"] >= 0 for r in recs)
    cube_key = canonical_key(hypercube_graph(3))
    (cube,) = [r for r in recs if r["key"] == cube_key]
    assert cube["edge_expansion"] == "1/1" and cube["is_dantzig"]


def test_analyze_empty_and_missing(tmp_path, capsys):
    empty = tmp_path / "empty.jsonl"
    empty.write_text("")
    report = tmp_path / "r.jsonl"
    code, _, _ = run(capsys, "analyze", str(empty), "--output", str(report))
    assert code == 0 and report.read_text() == ""
    assert run(capsys, "analyze", str(tmp_path / "missing.jsonl"))[0] == 2


def test_analyze_corrupt(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"d":3}\n')
    code, _, err = run(capsys, "analyze", str(bad))
    assert code == 2 and "line 1" in err


def test_analyze_expansion_cap(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    run(capsys, "enumerate", "--dim", "3", "--max-facets", "6", "--output", str(path))
    report = tmp_path / "r.jsonl"
    assert run(capsys, "analyze", str(path), "--output", str(report), "--expansion-cap", "6")[0] == 0
    recs = [json.loads(line) for line in report.read_text().splitlines()]
    assert [r["edge_expansion"] is None for r in recs] == [False, False, True, True]


def test_export(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    run(capsys, "enumerate", "--dim", "3", "--max-facets", "6", "--output", str(path))
    target = tmp_path / "figs"
    code, _, _ = run(capsys, "export", str(path), "--format", "dot", "--format", "graph6", "--output", str(target))
    assert code == 0
    dots = sorted(target.glob("*.dot"))
    assert len(dots) == 4
    assert all(p.read_text().count("graph ") == 1 for p in dots)
    assert len((tmp_path / "figs.g6").read_text().split()) == 4


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--dim", "3", "--max-facets", "6")
    assert code == 0 and "n=6: catalog 2, oracle 2, ok" in out


def test_verify_eight(capsys):
    code, out, _ = run(capsys, "verify", "--max-facets", "8")
    assert code == 0 and "n=8: catalog 14, oracle 14, ok" in out


def test_verify_gates(capsys):
    code, _, err = run(capsys, "verify", "--dim", "4", "--max-facets", "8")
    assert code == 2 and "oracle unavailable" in err
    assert run(capsys, "verify", "--dim", "3", "--max-facets", "10")[0] == 2


def test_verify_mismatch(capsys, monkeypatch):
    import polycut.oracle as oracle

    real = oracle.oracle_levels

    def short(n_max):
        levels = real(n_max)
        levels[7] = levels[7][:-1]
        return levels

    monkeypatch.setattr(oracle, "oracle_levels", short)
    code, out, _ = run(capsys, "verify", "--max-facets", "7")
    assert code == 1 and "MISMATCH" in out and "extra" in out
