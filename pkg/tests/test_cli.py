import xml.etree.ElementTree as ET

import pytest

from ppm import cli, golden


def run(args, tmp_path, extra=()):
    return cli.main([*args, "--output-dir", str(tmp_path), *extra])


def test_pi_table_verify(tmp_path, capsys):
    code = run(["pi-table", "--checkpoints", "10", "100", "1000", "--verify"], tmp_path)
    assert code == 0
    out = capsys.readouterr().out
    assert "all prime-count cells match" in out
    assert (tmp_path / "pi_table.csv").exists()


def test_pi_table_csv_deterministic(tmp_path):
    run(["pi-table", "--checkpoints", "100", "1000"], tmp_path / "a")
    run(["pi-table", "--checkpoints", "100", "1000"], tmp_path / "b")
    assert (tmp_path / "a" / "pi_table.csv").read_bytes() == \
        (tmp_path / "b" / "pi_table.csv").read_bytes()


def test_pi_table_csv_shape(tmp_path):
    run(["pi-table", "--checkpoints", "100"], tmp_path)
    text = (tmp_path / "pi_table.csv").read_text()
    lines = text.split("\n")
    assert lines[0] == "n,pi,n_over_log_n,li,model1,model2,model2star"
    assert lines[1].startswith("100,25,21.7147,30.126")
    assert lines[1].endswith("27,26,27")
    assert "\r" not in text and text.endswith("\n")


def test_pi_table_verify_mismatch_exit_code(tmp_path, monkeypatch):
    monkeypatch.setattr(golden, "PI_ESTIMATES_MODEL1", (9, 27, 184, 1352, 10602, 86739))
    code = run(["pi-table", "--checkpoints", "10", "--verify"], tmp_path)
    assert code == 1


def test_pi_table_verify_unknown_checkpoint(tmp_path):
    code = run(["pi-table", "--checkpoints", "123", "--verify"], tmp_path)
    assert code == 2


def test_gaps_verify(tmp_path, capsys):
    code = run(["gaps", "--verify"], tmp_path)
    assert code == 0
    assert "misses exactly at (9, 10, 11, 12, 15, 19, 20, 21, 23)" in capsys.readouterr().out


def test_gaps_rows(tmp_path):
    run(["gaps", "--n-max", "13"], tmp_path)
    lines = (tmp_path / "gap_table.csv").read_text().splitlines()
    assert lines[0] == "n,p_n,actual_gap,model1_gap,match"
    assert lines[13] == "13,41,2,2,yes"
    assert lines[9] == "9,23,6,4,no"


def test_usage_error_exit_code(tmp_path):
    with pytest.raises(SystemExit) as exc:
        cli.main(["pi-table", "--checkpoints"])
    assert exc.value.code == 2
    assert run(["gap-census", "--n-from", "5", "--n-to", "1"], tmp_path) == 2


def test_sieve_limit_too_small_exit_code(tmp_path):
    code = run(["twin-stats", "--bound", "100000", "--sieve-limit", "5000"], tmp_path)
    assert code == 3


def test_twin_stats(tmp_path, capsys):
    code = run(["twin-stats", "--bound", "1000"], tmp_path)
    assert code == 0
    out = capsys.readouterr().out
    assert "twin pairs <= 1000: 35; prime-indexed: 12" in out
    assert (tmp_path / "twin_census.csv").exists()
    assert (tmp_path / "co_occurrence.csv").exists()


def test_merit_census_cmd(tmp_path, capsys):
    code = run(["merit-census", "--n-max", "2000"], tmp_path)
    assert code == 0
    assert "census over indices 2..2000" in capsys.readouterr().out


def test_merit_census_magnitude_mode(tmp_path, capsys):
    code = run(["merit-census", "--n-max", "2000", "--range-mode", "magnitude"], tmp_path)
    assert code == 0
    # pi(2000) = 303 indices
    assert "indices 2..303" in capsys.readouterr().out


def test_pq_outputs(tmp_path):
    code = run(["pq", "--bound", "2000", "--stride", "100", "--q-bound", "900"], tmp_path)
    assert code == 0
    for stem in ("p_ratio", "q_ratio"):
        assert (tmp_path / f"{stem}.csv").exists()
        svg = tmp_path / f"{stem}.svg"
        assert svg.exists()
        ET.fromstring(svg.read_text())  # well-formed XML


def test_pq_format_csv_only(tmp_path):
    code = run(["pq", "--bound", "2000", "--format", "csv"], tmp_path)
    assert code == 0
    assert (tmp_path / "p_ratio.csv").exists()
    assert not (tmp_path / "p_ratio.svg").exists()


def test_relerr_outputs(tmp_path, capsys):
    code = run(["relerr", "--model", "1", "--n-max", "2000", "--stride", "500"], tmp_path)
    assert code == 0
    assert (tmp_path / "relerr_model1.csv").exists()
    assert (tmp_path / "relerr_model1.svg").exists()
    assert "relative error at n=2000" in capsys.readouterr().out


def test_gap_census_cmd(tmp_path, capsys):
    code = run(["gap-census", "--n-from", "1", "--n-to", "25"], tmp_path)
    assert code == 0
    lines = (tmp_path / "gap_census.csv").read_text().splitlines()
    assert lines[0] == "m,norm,length,m1,category"
    # all integers from p_1 = 2 through p_26 - 1 = 100 appear exactly once
    assert len(lines) - 1 == 101 - 2
    assert "predicted" in capsys.readouterr().out


def test_verify_inequalities_cmd(tmp_path, capsys):
    code = run(["verify-inequalities", "--max-size", "8", "--max-norm", "60"], tmp_path)
    assert code == 0
    assert "all inequalities hold" in capsys.readouterr().out


def test_config_file_and_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("stride=50\nformat=csv\n# comment\n\ntolerance_pp=0.25\n")
    code = cli.main(["pq", "--bound", "800", "--config", str(cfg),
                     "--output-dir", str(tmp_path)])
    assert code == 0
    lines = (tmp_path / "p_ratio.csv").read_text().splitlines()
    assert lines[1].startswith("50,")  # stride from the config file
    assert not (tmp_path / "p_ratio.svg").exists()  # format=csv from file
    # CLI flag wins over the file
    code = cli.main(["pq", "--bound", "800", "--config", str(cfg), "--stride", "200",
                     "--output-dir", str(tmp_path / "b")])
    assert code == 0
    lines = (tmp_path / "b" / "p_ratio.csv").read_text().splitlines()
    assert lines[1].startswith("200,")


def test_config_env_var(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "env.cfg"
    cfg.write_text("format=csv\n")
    monkeypatch.setenv(cli.CONFIG_ENV_VAR, str(cfg))
    code = cli.main(["pq", "--bound", "500", "--output-dir", str(tmp_path)])
    assert code == 0
    assert not (tmp_path / "p_ratio.svg").exists()


def test_config_file_bad_key(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("wat=1\n")
    code = cli.main(["pq", "--bound", "500", "--config", str(cfg),
                     "--output-dir", str(tmp_path)])
    assert code == 2


def test_config_validation(tmp_path):
    assert run(["pq", "--bound", "500", "--stride", "0"], tmp_path) == 2
    assert run(["pq", "--bound", "500", "--sieve-limit", "50"], tmp_path) == 2
    assert run(["pq", "--bound", "500", "--threads", "0"], tmp_path) == 2


def test_sieve_cache_roundtrip(tmp_path, capsys):
    cache = tmp_path / "sieve.bin"
    assert run(["gaps", "--n-max", "10", "--sieve-cache", str(cache)], tmp_path) == 0
    assert cache.exists()
    first = (tmp_path / "gap_table.csv").read_bytes()
    assert run(["gaps", "--n-max", "10", "--sieve-cache", str(cache)], tmp_path) == 0
    assert (tmp_path / "gap_table.csv").read_bytes() == first


def test_outputs_identical_across_thread_counts(tmp_path):
    run(["pq", "--bound", "1500", "--threads", "1", "--format", "csv"], tmp_path / "t1")
    run(["pq", "--bound", "1500", "--threads", "4", "--format", "csv"], tmp_path / "t4")
    assert (tmp_path / "t1" / "p_ratio.csv").read_bytes() == \
        (tmp_path / "t4" / "p_ratio.csv").read_bytes()
