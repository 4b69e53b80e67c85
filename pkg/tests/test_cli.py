import pytest

from stpec.cli import main

Z4_TEXT = "4 4\n0 1\n2 1\n2 3\n0 3\n"
D_TEXT = "4 4\n0 1\n0 2\n1 3\n2 3\n"
C3_TEXT = "3 3\n0 1\n1 2\n2 0\n"


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in [("z4", Z4_TEXT), ("d", D_TEXT), ("c3", C3_TEXT)]:
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        out[name] = str(p)
    out["dir"] = tmp_path
    return out


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_solve_yes_with_witness(files, capsys):
    code, out = run(capsys, "solve", "--input", files["z4"], "-k", "2", "--witness", "--oracle-check")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "YES 2"
    assert lines[1:3] == ["0 2", "1 3"] and "# oracle agrees" in lines


def test_solve_diamond(files, capsys):
    assert run(capsys, "solve", "--input", files["d"], "-k", "0") == (0, "YES 0\n")


def test_solve_no(files, capsys):
    assert run(capsys, "solve", "--input", files["z4"], "-k", "1") == (0, "NO\n")


def test_solve_reject(files, capsys):
    code, out = run(capsys, "solve", "--input", files["c3"], "-k", "9")
    assert code == 3 and "Reject(DirectedCycle)" in out


def test_parse_error_exit(files, capsys):
    bad = files["dir"] / "bad.txt"
    bad.write_text("3 2\n0 1\n0 1\n")
    assert main(["solve", "--input", str(bad), "-k", "1"]) == 2
    assert "line 3" in capsys.readouterr().err
    assert main(["solve", "--input", str(files["dir"] / "missing.txt"), "-k", "1"]) == 2
    assert main(["solve", "--input", files["z4"]]) == 2


def test_ref_edge_and_trace(files, capsys):
    code, out = run(capsys, "solve", "--input", files["z4"], "-k", "2", "--ref-edge", "1", "0", "--trace")
    assert code == 0 and out.splitlines()[0] == "YES 2"
    assert "# ref 0 1: cost 2" in out
    assert main(["solve", "--input", files["z4"], "-k", "2", "--ref-edge", "0", "2"]) == 2


def test_fixed_embedding_and_jobs(files, capsys):
    code, out = run(capsys, "solve", "--input", files["z4"], "-k", "2", "--fixed-embedding", "--trace")
    assert code == 0 and out.startswith("YES 2") and "# external face:" in out
    assert run(capsys, "solve", "--input", files["z4"], "-k", "3", "--jobs", "2") == (0, "YES 2\n")


def test_oracle_disagreement_exit(files, capsys, monkeypatch):
    from stpec import cli
    from stpec.oracle import OracleResult
    monkeypatch.setattr(cli, "brute_force_min_completion", lambda g, k: OracleResult(1, ((0, 2),), 1))
    code, out = run(capsys, "solve", "--input", files["z4"], "-k", "2", "--oracle-check")
    assert code == 4 and "oracle disagrees" in out


def test_verify(files, capsys):
    w = files["dir"] / "w.txt"
    w.write_text("0 2\n1 3\n")
    assert run(capsys, "verify", "--input", files["z4"], "--edges", str(w))[0] == 0
    empty = files["dir"] / "e.txt"
    empty.write_text("")
    code, out = run(capsys, "verify", "--input", files["z4"], "--edges", str(empty))
    assert code == 1 and "(2)" in out
    code, out = run(capsys, "verify", "--input", files["c3"], "--edges", str(empty))
    assert code == 1 and "(1)" in out
    anti = files["dir"] / "a.txt"
    anti.write_text("1 2\n")  # reverses 2 -> 1: a 2-cycle
    code, out = run(capsys, "verify", "--input", files["z4"], "--edges", str(anti))
    assert code == 1 and "(1)" in out


def test_solve_witness_passes_verify(files, capsys):
    code, out = run(capsys, "solve", "--input", files["z4"], "-k", "3", "--witness")
    w = files["dir"] / "sol.txt"
    w.write_text("\n".join(out.splitlines()[1:]) + "\n")
    assert run(capsys, "verify", "--input", files["z4"], "--edges", str(w))[0] == 0


def test_export_dot(files, capsys):
    code, out = run(capsys, "export-dot", "--input", files["d"])
    assert code == 0 and out.count("->") == 4 and "dashed" not in out
    w = files["dir"] / "w.txt"
    w.write_text("0 2\n")
    _, out2 = run(capsys, "export-dot", "--input", files["z4"], "--edges", str(w))
    assert out2.count("->") == 5 and out2.count("dashed") == 1
    assert run(capsys, "export-dot", "--input", files["d"])[1] == out


def test_generate(files, capsys, monkeypatch):
    d = files["dir"]
    assert main(["generate", "--family", "alt-cycle", "--m", "2", "--output", str(d / "a.txt")]) == 0
    assert (d / "a.txt").read_text() == Z4_TEXT
    for name in ("r1", "r2"):
        assert main(["generate", "--family", "random-planar", "--n", "6", "--seed", "1",
                     "--output", str(d / f"{name}.txt")]) == 0
    assert (d / "r1.txt").read_bytes() == (d / "r2.txt").read_bytes()
    monkeypatch.setenv("STPEC_SEED", "1")
    main(["generate", "--family", "random-planar", "--n", "6", "--output", str(d / "r3.txt")])
    assert (d / "r3.txt").read_bytes() == (d / "r1.txt").read_bytes()
    assert "seed=1" in capsys.readouterr().out
    assert main(["generate", "--family", "alt-cycle", "--output", str(d / "x.txt")]) == 2
    assert main(["generate", "--family", "alt-cycle", "--m", "1", "--output", str(d / "x.txt")]) == 2
