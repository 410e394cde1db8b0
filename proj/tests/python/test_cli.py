import json
import os
import subprocess

import pytest

CLI = os.environ.get("GRAPHON_LDP_CLI", "graphon-ldp")


def run(*args, check=True):
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if check and proc.returncode != 0:
        raise AssertionError(f"exit {proc.returncode}: {proc.stderr}")
    return proc


def report(*args):
    return json.loads(run(*args).stdout)


@pytest.fixture
def files(tmp_path):
    def graphon(name, gamma, values):
        path = tmp_path / name
        path.write_text(json.dumps({"gamma": gamma, "values": values}))
        return str(path)

    def graph(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return {
        "bip": graphon("bip.json", ["1/2", "1/2"], [[0.0, 0.5], [0.5, 0.0]]),
        "bip05": graphon("bip05.json", ["1/2", "1/2"], [[0.0, 0.05], [0.05, 0.0]]),
        "const": graphon("const.json", ["1"], [[0.3]]),
        "edge": graph("edge.txt", "2 1\n1 2\n"),
        "c4": graph("c4.txt", "# square\n4 4\n1 2\n2 3\n3 4\n4 1\n"),
        "tmp": tmp_path,
    }


def test_exit_codes(files):
    assert run(check=False).returncode == 1
    assert run("density", "--bogus", check=False).returncode == 1
    assert run("psi", "--p", "1.5", "--d", "2", "--x", "0.1", check=False).returncode == 2
    big = run("enumerate", "--graphon", files["const"], "--graph", files["edge"], "--t", "0.3", "--kn", "8",
              check=False)
    assert big.returncode == 3
    assert run("density", "--graphon", files["const"], "--graph", files["c4"], "--format", "csv",
               check=False).returncode == 2
    bad = files["tmp"] / "bad.txt"
    bad.write_text("3 2\n1 2\n2 2\n")
    proc = run("density", "--graphon", files["const"], "--graph", str(bad), check=False)
    assert proc.returncode == 2
    assert "line 3" in proc.stderr


def test_enumerate_small_example(files):
    out = report("enumerate", "--graphon", files["bip"], "--graph", files["edge"], "--t", "0.25", "--kn", "4")
    assert out["p_hat"] == pytest.approx(11 / 16, abs=1e-15)
    assert out["mode"] == "ExactEnumeration"


def test_density_of_constant_graphon(files):
    out = report("density", "--graphon", files["const"], "--graph", files["c4"])
    assert out["density"] == pytest.approx(0.3**4, rel=1e-14)
    assert out["relevant"] == [[1, 1]]
    assert out["t_max"] == 1.0


def test_phase_matches_psi_profile():
    for r in (0.06, 0.3, 0.5, 0.95):
        phase = report("phase", "--p", "0.05", "--d", "2", "--r", r)
        psi = report("psi", "--p", "0.05", "--d", "2", "--x", r * r)
        gap = psi["psi"] - psi["minorant"]
        assert phase["on_minorant"] == (gap <= 1e-9)
        assert phase["phase"] == ("Symmetric" if phase["on_minorant"] else "Broken")
        lo, hi = phase["window_r"]
        assert (lo < r < hi) != phase["on_minorant"]


def test_witness_graphon_round_trip(files):
    out_path = files["tmp"] / "witness.json"
    w = report("witness", "--kind", "geps", "--p", "0.05", "--r", "0.5", "--graphon-out", out_path)
    assert w["valid"]
    assert json.loads(out_path.read_text()) == w["graphon"]
    density = report("density", "--graphon", out_path, "--graph", files["c4"])
    assert density["density"] == pytest.approx(w["target_witness"], rel=1e-12)
    entropy = report("entropy", "--base", files["bip05"], "--graphon", out_path)
    assert entropy["entropy"] == pytest.approx(w["entropy_witness"], rel=1e-12)


def test_reports_are_deterministic(files):
    args = ("tail", "--graphon", files["bip"], "--graph", files["edge"], "--t", "0.3", "--kn", "6",
            "--samples", "5000", "--seed", "9")
    one = run(*args, "--threads", "1").stdout
    assert one == run(*args, "--threads", "3").stdout
    assert one != run(*args[:-1], "10").stdout
    edges_a = files["tmp"] / "a.txt"
    edges_b = files["tmp"] / "b.txt"
    run("sample", "--graphon", files["bip"], "--kn", "10", "--seed", "4", "--index", "2", "--edges", edges_a)
    run("sample", "--graphon", files["bip"], "--kn", "10", "--seed", "4", "--index", "2", "--edges", edges_b)
    assert edges_a.read_text() == edges_b.read_text()
    header, *lines = edges_a.read_text().splitlines()
    assert header.split() == ["10", str(len(lines))]


def test_scan_csv(files):
    out = files["tmp"] / "scan.csv"
    run("scan", "--p", "0.05", "--d", "2", "--r-min", "0.05", "--r-max", "1", "--points", "25",
        "--format", "csv", "--out", out)
    rows = out.read_text().splitlines()
    assert rows[0] == "r,t_target,on_minorant,symmetric_I,witness_I"
    assert len(rows) == 26


def test_solve_and_concentrate(files):
    solve = report("solve", "--graphon", files["bip"], "--graph", files["c4"], "--t", "0.01")
    assert solve["regime"] == "SymmetricCertified"
    assert solve["lower"] == pytest.approx(solve["upper"])
    conc = report("concentrate", "--graphon", files["bip"], "--graph", files["c4"], "--t", "0.01",
                  "--kn", "8", "--samples", "300", "--seed", "1")
    assert conc["accepted"] > 0
    assert conc["mean"] >= 0
