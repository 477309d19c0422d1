"""End-to-end checks of the command line front end."""

import math

import pytest

from pushpull import cli


def run(argv):
    return cli.main(argv)


def read_rows(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    return [dict(zip(header, line.split(","))) for line in lines[1:]]


def test_simulate_star_sync_mean_is_one(tmp_path):
    out = tmp_path / "star.csv"
    rc = run(
        [
            "simulate",
            "--graph",
            "star:100",
            "--protocol",
            "sync",
            "--trials",
            "50",
            "--seed",
            "1",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    (row,) = read_rows(out)
    assert row["graph"] == "star"
    assert row["params"] == "100"
    assert row["n"] == "100"
    assert row["trials"] == "50"
    assert float(row["mean"]) == 1.0
    assert float(row["stderr"]) == 0.0


def test_simulate_stdout_and_seed_echo(capsys):
    rc = run(["simulate", "--graph", "star:10", "--trials", "5", "--seed", "9"])
    captured = capsys.readouterr()
    assert rc == 0
    assert captured.out.splitlines()[0].startswith("graph,params,protocol")
    assert "seed=9" in captured.err


def test_simulate_rejects_disconnected_edgelist(tmp_path, capsys):
    listing = tmp_path / "two_parts.txt"
    listing.write_text("4 2\n0 1\n2 3\n")
    rc = run(["simulate", "--graph", f"edgelist:{listing}", "--trials", "5"])
    captured = capsys.readouterr()
    assert rc == 2
    assert "error" in captured.err
    assert "not reachable" in captured.err


def test_simulate_reads_valid_edgelist(tmp_path):
    listing = tmp_path / "triangle.txt"
    listing.write_text("3 3\n0 1\n1 2\n0 2\n")
    out = tmp_path / "tri.csv"
    rc = run(
        ["simulate", "--graph", f"edgelist:{listing}", "--trials", "20", "--out", str(out)]
    )
    assert rc == 0
    (row,) = read_rows(out)
    assert row["n"] == "3"


def test_repeat_runs_are_byte_identical(tmp_path):
    argv = [
        "simulate",
        "--graph",
        "diamonds:2,3,1",
        "--protocol",
        "async",
        "--trials",
        "40",
        "--seed",
        "7",
    ]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(argv + ["--out", str(a)]) == 0
    assert run(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_unknown_graph_spec_fails(capsys):
    rc = run(["simulate", "--graph", "torus:9", "--trials", "5"])
    assert rc == 2
    assert "torus" in capsys.readouterr().err


def test_engine_protocol_mismatch_fails(capsys):
    rc = run(
        ["simulate", "--graph", "star:10", "--protocol", "sync", "--engine", "fpp"]
    )
    assert rc == 2


def test_paths_cycle5_length2_row(tmp_path):
    out = tmp_path / "paths.csv"
    rc = run(["paths", "--graph", "cycle:5", "--L", "2", "--out", str(out)])
    assert rc == 0
    rows = read_rows(out)
    qsum_rows = [r for r in rows if r["record"] == "qsum"]
    (row,) = qsum_rows
    assert row["L"] == "2"
    assert row["num_paths"] == "10"
    assert float(row["sum_q"]) == 2.5
    assert math.isclose(float(row["bound"]), (20.0 * math.e) ** 2, rel_tol=1e-12)
    assert row["holds"] == "True"
    walk_rows = [r for r in rows if r["record"] == "walk"]
    assert walk_rows
    assert all(r["ok"] == "True" for r in walk_rows)
    assert all(abs(float(r["walk_sum"]) - 1.0) <= 1e-12 for r in walk_rows)


def test_paths_all_lengths_star(tmp_path):
    out = tmp_path / "paths.csv"
    rc = run(["paths", "--graph", "star:6", "--out", str(out)])
    assert rc == 0
    qsum_rows = [r for r in read_rows(out) if r["record"] == "qsum"]
    assert [r["L"] for r in qsum_rows] == ["1", "2", "3", "4", "5"]
    assert all(r["holds"] == "True" for r in qsum_rows)
    assert [r["num_paths"] for r in qsum_rows][:2] == ["10", "20"]


def test_paths_cap_guidance(capsys):
    rc = run(["paths", "--graph", "complete:12", "--L", "11", "--cap", "1000"])
    captured = capsys.readouterr()
    assert rc == 2
    assert "--cap" in captured.err


def test_compare_requires_family(capsys):
    rc = run(["compare", "--family", "4000"])
    assert rc == 2
    assert "3 sizes" in capsys.readouterr().err


def test_compare_small_family(tmp_path):
    out = tmp_path / "cmp.csv"
    rc = run(
        [
            "compare",
            "--family",
            "64,128,256",
            "--trials",
            "60",
            "--seed",
            "4",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    rows = read_rows(out)
    size_rows = [r for r in rows if r["record"] == "size"]
    assert [r["n"] for r in size_rows] == ["64", "128", "256"]
    assert all(float(r["ratio"]) > 0 for r in size_rows)
    (fit,) = [r for r in rows if r["record"] == "fit"]
    assert math.isfinite(float(fit["slope"]))
    assert math.isfinite(float(fit["r_squared"]))


def test_compare_star_family(tmp_path):
    out = tmp_path / "cmp.csv"
    rc = run(
        [
            "compare",
            "--family",
            "50,100,200",
            "--family-kind",
            "star",
            "--trials",
            "80",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    size_rows = [r for r in read_rows(out) if r["record"] == "size"]
    assert all(float(r["sync_mean"]) <= 2.0 for r in size_rows)


def test_diamonds_small_run(tmp_path):
    out = tmp_path / "dia.csv"
    rc = run(
        [
            "diamonds",
            "--m",
            "2",
            "--k",
            "3",
            "--trials",
            "400",
            "--seed",
            "2",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    (row,) = read_rows(out)
    assert row["sync_in_bracket"] == "True"
    assert row["async_in_band"] == "True"
    assert row["sync_lower"] == "4"
    assert row["sync_upper"] == "9"
    assert float(row["sync_mean"]) >= 2.0


def test_attainability_infeasible_pair(capsys):
    rc = run(["attainability", "--alpha", "0", "--beta", "0.5", "--family", "100,200,400"])
    assert rc == 2
    err = capsys.readouterr().err
    assert "0.5" in err or "attainable" in err


def test_attainability_star_pair(tmp_path):
    out = tmp_path / "att.csv"
    rc = run(
        [
            "attainability",
            "--alpha",
            "0",
            "--beta",
            "0",
            "--family",
            "100,200,400",
            "--trials",
            "60",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    rows = read_rows(out)
    (fit,) = [r for r in rows if r["record"] == "fit"]
    assert abs(float(fit["beta_fit"])) < 0.15
    assert float(fit["alpha_target"]) == 0.0


def test_attainability_diamond_pair(tmp_path):
    out = tmp_path / "att.csv"
    rc = run(
        [
            "attainability",
            "--alpha",
            "0.0",
            "--beta",
            "0.3333333333333333",
            "--family",
            "300,600,1200",
            "--trials",
            "50",
            "--seed",
            "11",
            "--out",
            str(out),
        ]
    )
    assert rc == 0
    rows = read_rows(out)
    size_rows = [r for r in rows if r["record"] == "size"]
    assert all(r["k_clamped"] == "False" for r in size_rows)
    (fit,) = [r for r in rows if r["record"] == "fit"]
    assert 0.1 < float(fit["beta_fit"]) < 0.6


def test_config_file_defaults_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("graph = star:10\ntrials = 77  # small run\nseed = 3\n")
    out_a = tmp_path / "a.csv"
    rc = run(["simulate", "--config", str(cfg), "--out", str(out_a)])
    assert rc == 0
    (row,) = read_rows(out_a)
    assert row["trials"] == "77"
    assert row["seed"] == "3"
    out_b = tmp_path / "b.csv"
    rc = run(["simulate", "--config", str(cfg), "--trials", "11", "--out", str(out_b)])
    assert rc == 0
    (row,) = read_rows(out_b)
    assert row["trials"] == "11"


def test_config_bad_line_reports_position(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("graph = star:10\njust a line\n")
    rc = run(["simulate", "--config", str(cfg)])
    assert rc == 2
    assert "line 2" in capsys.readouterr().err


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("graph = star:10\nbogus = 3\n")
    rc = run(["simulate", "--config", str(cfg)])
    assert rc == 2
    assert "bogus" in capsys.readouterr().err


def test_missing_required_option(capsys):
    rc = run(["simulate", "--trials", "5"])
    assert rc == 2
    assert "--graph" in capsys.readouterr().err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        run(["simulate", "--no-such-flag"])
    assert exc.value.code == 2
