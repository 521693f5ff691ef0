from __future__ import annotations

import pytest

from pgarcs import build_field, build_plane, conic_arc, format_certificate
from pgarcs.cli import main


def run_record(path):
    """Parse a .run file into an ordered list of (key, value) pairs."""
    pairs = []
    for line in path.read_text().splitlines():
        k, _, v = line.partition(": ")
        pairs.append((k, v))
    return pairs


# ---------------------------------------------------------------------------
# search


def test_search_writes_certificate_and_run_record(tmp_path, capsys):
    out = tmp_path / "q13.arc"
    rc = main(["search", "--q", "13", "--seed", "1", "--restarts", "50",
               "--workers", "1", "--out", str(out)])
    assert rc == 0
    assert "complete arc of size 8 in PG(2,13)" in capsys.readouterr().out
    text = out.read_text()
    assert text.startswith("q=13 p=13 h=1\n")
    assert "n=8" in text

    record = run_record(out.with_name("q13.arc.run"))
    assert [k for k, _ in record] == [
        "command", "field", "q", "seed", "restarts", "budget_secs",
        "candidate_sample", "tie_top_k", "start_size", "workers", "outcome",
        "restarts_used", "size_log", "certificate", "started", "finished",
        "version"]
    d = dict(record)
    assert d["command"].startswith("pgarcs search --q 13")
    assert d["q"] == "13"
    assert d["seed"] == "1"
    assert d["outcome"] == "complete arc of size 8"
    assert d["certificate"] == "q13.arc"


def test_search_stdout_mode(capsys):
    rc = main(["search", "--q", "5", "--seed", "0", "--restarts", "10",
               "--workers", "1"])
    assert rc == 0
    out = capsys.readouterr().out
    assert out.startswith("q=5 p=5 h=1\n")
    assert "n=6" in out


def test_search_rejects_non_prime_power(capsys):
    rc = main(["search", "--q", "10", "--seed", "0"])
    assert rc == 2
    assert "10" in capsys.readouterr().err


def test_search_rejects_bad_poly(capsys):
    rc = main(["search", "--q", "9", "--poly", "1,x,1"])
    assert rc == 2
    rc = main(["search", "--q", "9", "--poly", "1,0,0,1"])  # wrong degree
    assert rc == 2
    rc = main(["search", "--q", "9", "--poly", "1,0,2"])    # reducible
    assert rc == 2


def test_search_custom_poly_recorded(tmp_path):
    out = tmp_path / "q8.arc"
    rc = main(["search", "--q", "8", "--poly", "1,1,0,1", "--seed", "3",
               "--restarts", "20", "--workers", "1", "--out", str(out)])
    assert rc == 0
    d = dict(run_record(out.with_name("q8.arc.run")))
    assert d["field"] == "p=2 h=3 poly=1,1,0,1"
    assert "poly=1,1,0,1" in out.read_text().splitlines()[0]


def test_search_budget_exhausted(capsys):
    rc = main(["search", "--q", "31", "--budget-secs", "1e-9",
               "--restarts", "4", "--workers", "1"])
    assert rc == 3
    assert "budget exhausted" in capsys.readouterr().err


def test_search_deterministic_across_runs_and_workers(tmp_path):
    texts = []
    for name, workers in (("a.arc", "1"), ("b.arc", "1"), ("c.arc", "4")):
        out = tmp_path / name
        rc = main(["search", "--q", "13", "--seed", "7", "--restarts", "20",
                   "--workers", workers, "--out", str(out)])
        assert rc == 0
        texts.append(out.read_text())
    assert texts[0] == texts[1] == texts[2]


# ---------------------------------------------------------------------------
# verify


def test_verify_complete_arc(tmp_path, capsys):
    plane = build_plane(build_field(5, 1))
    cert = tmp_path / "conic5.arc"
    cert.write_text(format_certificate(plane, conic_arc(plane)))
    rc = main(["verify", str(cert)])
    out = capsys.readouterr().out
    assert rc == 0
    assert "is_arc: true" in out
    assert "is_complete: true" in out
    assert "size: 6" in out
    assert "violation:" not in out


def test_verify_collinear_points(tmp_path, capsys):
    plane = build_plane(build_field(5, 1))
    cert = tmp_path / "bad.arc"
    # (0,0,1), (1,0,1), (2,0,1) all lie on the line y = 0
    text = ("q=5 p=5 h=1\n"
            "n=3\n"
            "0 0 1\n"
            "1 0 1\n"
            "2 0 1\n")
    cert.write_text(text)
    rc = main(["verify", str(cert)])
    out = capsys.readouterr().out
    assert rc == 1
    assert "is_arc: false" in out
    assert "violation: line" in out


def test_verify_incomplete_arc(tmp_path, capsys):
    cert = tmp_path / "partial.arc"
    cert.write_text("q=5 p=5 h=1\n"
                    "n=3\n"
                    "0 0 1\n"
                    "1 1 1\n"
                    "0 1 0\n")
    rc = main(["verify", str(cert)])
    out = capsys.readouterr().out
    assert rc == 1
    assert "is_arc: true" in out
    assert "is_complete: false" in out
    assert "uncovered:" in out


def test_verify_malformed_certificate(tmp_path, capsys):
    cert = tmp_path / "trunc.arc"
    cert.write_text("q=5 p=5 h=1\nn=6\n0 0 1\n")
    assert main(["verify", str(cert)]) == 2
    assert capsys.readouterr().err


def test_verify_missing_file(tmp_path, capsys):
    assert main(["verify", str(tmp_path / "nope.arc")]) == 2
    assert "cannot read" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# spectrum


def test_spectrum_full_band(tmp_path, capsys):
    out_dir = tmp_path / "spec9"
    rc = main(["spectrum", "--q", "9", "--kmin", "6", "--kmax", "8",
               "--seed", "11", "--restarts", "400", "--workers", "1",
               "--out", str(out_dir)])
    assert rc == 0
    assert "achieved 3/3 sizes in [6, 8]" in capsys.readouterr().out
    for k in (6, 7, 8):
        assert (out_dir / f"k{k:03d}.arc").exists()
    d = dict(run_record(out_dir / "spectrum.run"))
    assert d["kmin"] == "6"
    assert d["kmax"] == "8"
    assert d["achieved"] == "6,7,8"
    assert d["missed"] == "-"


def test_spectrum_miss_is_not_a_failure(tmp_path, capsys):
    # PG(2,7) has no complete 7-arc; a miss is reported, exit stays 0
    out_dir = tmp_path / "spec7"
    rc = main(["spectrum", "--q", "7", "--kmin", "6", "--kmax", "7",
               "--seed", "2", "--restarts", "12", "--workers", "1",
               "--out", str(out_dir)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "k=7: not found in 12 attempts" in out
    assert (out_dir / "k006.arc").exists()
    assert not (out_dir / "k007.arc").exists()
    d = dict(run_record(out_dir / "spectrum.run"))
    assert d["achieved"] == "6"
    assert d["missed"] == "7"


def test_spectrum_range_validation(tmp_path, capsys):
    rc = main(["spectrum", "--q", "9", "--kmin", "8", "--kmax", "6",
               "--out", str(tmp_path / "x")])
    assert rc == 2
    rc = main(["spectrum", "--q", "9", "--kmax", "12",
               "--out", str(tmp_path / "y")])
    assert rc == 2  # beyond the largest arc size q+1 = 10
    capsys.readouterr()


# ---------------------------------------------------------------------------
# tables


def test_tables_check_reports_the_two_pinned_outliers(capsys):
    rc = main(["tables", "--check"])
    out = capsys.readouterr().out
    assert rc == 1
    assert "rows checked: 292" in out
    assert "mismatch" not in out
    assert "range violation q=1783" in out
    assert "range violation q=2659" in out
    assert "2 discrepancies" in out


def test_tables_row_output(capsys):
    rc = main(["tables", "--row", "2401"])
    out = capsys.readouterr().out
    assert rc == 0
    lines = out.splitlines()
    assert lines[0] == "q: 2401"
    assert lines[1] == "t_bar: 192"
    assert lines[2] == "slack_45: 28"
    assert lines[3] == "slack_5: 53"
    assert lines[4] == "sqrt_ratio: 3.92"
    assert lines[5].startswith("log_ratio_1: 0.348937")
    bound_lines = [l for l in lines if l.startswith("bound ")]
    assert len(bound_lines) == 10
    assert all("holds, in stated region" in l for l in bound_lines)


def test_tables_row_unknown_order(capsys):
    assert main(["tables", "--row", "854"]) == 2
    assert capsys.readouterr().err


def test_tables_emit_to_file(tmp_path):
    out = tmp_path / "pct.csv"
    rc = main(["tables", "--emit", "pct", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == "q,value"
    assert len(lines) == 280


def test_tables_emit_to_stdout(capsys):
    rc = main(["tables", "--emit", "d075"])
    out = capsys.readouterr().out
    assert rc == 0
    assert out.startswith("q,value\n")


def test_tables_emit_unknown_kind_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["tables", "--emit", "sigma"])
    assert exc.value.code == 2


def test_tables_flags_mutually_exclusive():
    with pytest.raises(SystemExit) as exc:
        main(["tables", "--check", "--row", "853"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# oracle


def test_oracle_smallest_plane(capsys):
    rc = main(["oracle", "--q", "2"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "minimum complete arc size in PG(2,2): 4" in out
    assert "q=2 p=2 h=1" in out


def test_oracle_writes_witness(tmp_path, capsys):
    out = tmp_path / "q3min.arc"
    rc = main(["oracle", "--q", "3", "--out", str(out)])
    assert rc == 0
    assert "minimum complete arc size in PG(2,3): 4" in capsys.readouterr().out
    assert out.read_text().startswith("q=3 p=3 h=1\n")
    d = dict(run_record(out.with_name("q3min.arc.run")))
    assert d["outcome"] == "exact minimum 4"


def test_oracle_guard_rejects_large_order(capsys):
    assert main(["oracle", "--q", "101"]) == 2
    assert "guard" in capsys.readouterr().err


# ---------------------------------------------------------------------------
# top level


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip()


def test_missing_subcommand_rejected():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2
