import json

import numpy as np
import pytest

from blockcut.cli import main
from blockcut.graph import format_edge_list, read_edge_list

from conftest import DATA, complete, random_graph, two_triangles


@pytest.fixture
def bridge_file(tmp_path):
    path = tmp_path / "bridge.txt"
    path.write_text(format_edge_list(two_triangles()))
    return path


def test_generate(tmp_path, capsys):
    out, truth = tmp_path / "g.txt", tmp_path / "t.txt"
    assert main(["generate", "--n1", "50", "--n2", "30", "--cin", "10", "--cout", "2",
                 "--seed", "1", "--out", str(out), "--truth", str(truth)]) == 0
    g = read_edge_list(out)
    assert g.n == 80
    labels = truth.read_text().split()
    assert labels.count("1") == 50 and labels.count("2") == 30
    assert f"m={g.m}" in capsys.readouterr().out


def test_generate_empty(tmp_path):
    out, truth = tmp_path / "g.txt", tmp_path / "t.txt"
    assert main(["generate", "--n1", "3", "--n2", "3", "--cin", "0", "--cout", "0",
                 "--out", str(out), "--truth", str(truth)]) == 0
    assert out.read_text() == "n 6\n"


def test_generate_is_reproducible(tmp_path):
    args = ["generate", "--n1", "200", "--n2", "200", "--cin", "8", "--cout", "2", "--seed", "4"]
    main(args + ["--out", str(tmp_path / "a"), "--truth", str(tmp_path / "ta")])
    main(args + ["--out", str(tmp_path / "b"), "--truth", str(tmp_path / "tb")])
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()


def test_generate_missing_truth(tmp_path, capsys):
    with pytest.raises(SystemExit) as err:
        main(["generate", "--n1", "3", "--n2", "3", "--cin", "1", "--cout", "1", "--out", str(tmp_path / "g")])
    assert err.value.code == 2
    assert "usage" in capsys.readouterr().err


@pytest.mark.parametrize("variant", ["standard", "dc"])
def test_detect_bridge(tmp_path, bridge_file, variant):
    out, csv = tmp_path / "res.json", tmp_path / "sweep.csv"
    assert main(["detect", "--graph", str(bridge_file), "--variant", variant,
                 "--out", str(out), "--sweep-csv", str(csv)]) == 0
    doc = json.loads(out.read_text())
    assert doc["labels"] in ([1, 1, 1, 2, 2, 2], [2, 2, 2, 1, 1, 1])
    assert (doc["n"], doc["m"], doc["m_out"]) == (6, 7, 1)
    rows = csv.read_text().splitlines()
    assert rows[0] == "size,q" and len(rows) == 8
    assert rows[1].split(",")[1] == rows[-1].split(",")[1]


def test_detect_karate(tmp_path):
    out = tmp_path / "res.json"
    assert main(["detect", "--graph", str(DATA / "karate.txt"), "--variant", "dc", "--out", str(out)]) == 0
    labels = np.array(json.loads(out.read_text())["labels"])
    truth = np.loadtxt(DATA / "karate_factions.txt", dtype=int)
    agree = max((labels == truth).sum(), (labels != truth).sum())
    assert agree >= 32


def test_detect_missing_file(tmp_path):
    out = tmp_path / "res.json"
    assert main(["detect", "--graph", str(tmp_path / "nope.txt"), "--out", str(out)]) == 3
    assert not out.exists()


def test_detect_parse_error(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("0 1\n2 2\n")
    assert main(["detect", "--graph", str(bad), "--out", str(tmp_path / "r.json")]) == 3


def test_detect_eigensolver_failure(tmp_path):
    g = random_graph(400, 0.02, np.random.default_rng(2))
    g = g.subgraph(np.flatnonzero(g.degree > 0))
    path = tmp_path / "g.txt"
    path.write_text(format_edge_list(g))
    out = tmp_path / "r.json"
    assert main(["detect", "--graph", str(path), "--variant", "standard", "--max-iter", "2",
                 "--out", str(out)]) == 1
    assert not out.exists()


def test_sweep_command(tmp_path, capsys):
    out = tmp_path / "curves.csv"
    assert main(["sweep", "--n1", "300", "--n2", "700", "--cin-list", "80,60", "--csum", "100",
                 "--seed", "3", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "c_in,size,q"
    assert len(lines) == 1 + 2 * 1001
    q80 = np.array([float(x.split(",")[2]) for x in lines[1:1002]])
    assert q80[0] == q80[-1]
    assert abs(int(np.argmax(q80)) - 300) <= 6
    text = out.read_bytes()
    main(["sweep", "--n1", "300", "--n2", "700", "--cin-list", "80,60", "--csum", "100",
          "--seed", "3", "--out", str(out)])
    assert out.read_bytes() == text


def test_sweep_rejects_cin_above_csum(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["sweep", "--n1", "10", "--n2", "10", "--cin-list", "120", "--csum", "100", "--out", str(tmp_path / "c")])
    assert err.value.code == 2


def test_accuracy_command(tmp_path, capsys):
    out = tmp_path / "acc.csv"
    args = ["accuracy", "--n", "2000", "--cin-from", "80", "--cin-to", "80", "--reps", "1",
            "--csum", "100", "--seed", "2", "--out", str(out)]
    assert main(args) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "c_in,replicate,fraction_correct,eigen_iterations,eigen_converged"
    assert len(lines) == 2
    assert float(lines[1].split(",")[2]) >= 0.98
    summary = (tmp_path / "acc_summary.csv").read_text().splitlines()
    assert summary[0] == "c_in,mean_fraction_correct,reps,c_in_critical"
    assert summary[1].endswith(",57.0710678")
    first = out.read_bytes()
    main(args)
    assert out.read_bytes() == first


def test_accuracy_rejects_odd_n(tmp_path):
    with pytest.raises(SystemExit) as err:
        main(["accuracy", "--n", "9999", "--cin-from", "60", "--cin-to", "80", "--out", str(tmp_path / "a")])
    assert err.value.code == 2


def test_oracle_check(tmp_path, bridge_file, capsys):
    assert main(["oracle-check", "--graph", str(bridge_file), "--variant", "standard"]) == 0
    out = capsys.readouterr().out
    assert "pipeline_q=-4.63001523" in out
    assert "oracle_q=-4.63001523" in out
    assert "pipeline_q_is_sweep_max=True" in out
    assert "fraction_correct_vs_oracle=1" in out


def test_oracle_check_k4(tmp_path, capsys):
    path = tmp_path / "k4.txt"
    path.write_text(format_edge_list(complete(4)))
    assert main(["oracle-check", "--graph", str(path)]) == 0
    out = dict(line.split("=") for line in capsys.readouterr().out.split())
    assert float(out["pipeline_q"]) == pytest.approx(float(out["oracle_q"]))


def test_oracle_check_guard(tmp_path):
    g = random_graph(30, 0.2, np.random.default_rng(0))
    path = tmp_path / "big.txt"
    path.write_text(format_edge_list(g))
    with pytest.raises(SystemExit) as err:
        main(["oracle-check", "--graph", str(path)])
    assert err.value.code == 2
