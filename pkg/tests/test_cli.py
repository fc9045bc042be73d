import subprocess
import sys

import pytest

from extph.cli import main

CYCLE = "a\tb\t1\nb\tc\t1\nc\td\t1\nd\ta\t1\n"
TWO_STAGE = "a\tb\t1\nb\tc\t2\n"
HYPER = "1\ta\n1\tb\n1\ta,b\n"


def run(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# pph / hyper
# ---------------------------------------------------------------------------


def test_pph_cycle_has_one_dim1_extended_point(tmp_path, capsys):
    src = tmp_path / "cycle.tsv"
    src.write_text(CYCLE)
    out = tmp_path / "diagram.tsv"
    code, _, _ = run(["pph", str(src), "--out", str(out)], capsys)
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "dim\ttype\tbirth\tdeath"
    assert sum(1 for l in lines[1:] if l.startswith("1\text")) == 1


def test_pph_empty_file_gives_empty_diagram(tmp_path, capsys):
    src = tmp_path / "empty.tsv"
    src.write_text("# nothing here\n")
    code, out, err = run(["pph", str(src)], capsys)
    assert code == 0
    assert out == "dim\ttype\tbirth\tdeath\n"


def test_pph_malformed_line_exits_2(tmp_path, capsys):
    src = tmp_path / "bad.tsv"
    src.write_text("a\tb\t1\nnot a record\n")
    code, _, err = run(["pph", str(src)], capsys)
    assert code == 2
    assert "line 2" in err


def test_pph_missing_file_exits_2(tmp_path, capsys):
    code, _, err = run(["pph", str(tmp_path / "nope.tsv")], capsys)
    assert code == 2


def test_pph_oracle_check_passes(tmp_path, capsys):
    src = tmp_path / "g.tsv"
    src.write_text(TWO_STAGE)
    code, _, _ = run(["pph", str(src), "--oracle-check"], capsys)
    assert code == 0


def test_hyper_round_trip(tmp_path, capsys):
    src = tmp_path / "h.tsv"
    src.write_text(HYPER)
    code, out, _ = run(["hyper", str(src), "--oracle-check"], capsys)
    assert code == 0
    assert any(l.startswith("0\text") for l in out.splitlines())


def test_hyper_malformed_exits_2(tmp_path, capsys):
    src = tmp_path / "h.tsv"
    src.write_text("1\ta\nbroken\n")
    code, _, err = run(["hyper", str(src)], capsys)
    assert code == 2 and "line 2" in err


# ---------------------------------------------------------------------------
# distance
# ---------------------------------------------------------------------------


def test_distance_of_identical_diagrams_is_zero(tmp_path, capsys):
    src = tmp_path / "g.tsv"
    src.write_text(CYCLE)
    d = tmp_path / "d.tsv"
    run(["pph", str(src), "--out", str(d)], capsys)
    code, out, _ = run(["distance", str(d), str(d)], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "max\t0.0"


def test_distance_reports_inf_on_extended_mismatch(tmp_path, capsys):
    d1 = tmp_path / "d1.tsv"
    d2 = tmp_path / "d2.tsv"
    d1.write_text("dim\ttype\tbirth\tdeath\n0\text\t1.0\t2.0\n")
    d2.write_text("dim\ttype\tbirth\tdeath\n")
    code, out, _ = run(["distance", str(d1), str(d2)], capsys)
    assert code == 0
    assert out.splitlines()[-1] == "max\tinf"


def test_distance_matches_the_exhaustive_oracle(tmp_path, capsys):
    from oracles import bottleneck_oracle
    from extph import read_diagram

    d1 = tmp_path / "d1.tsv"
    d2 = tmp_path / "d2.tsv"
    d1.write_text("dim\ttype\tbirth\tdeath\n0\tord\t1.0\t4.0\n0\text\t0.0\t5.0\n")
    d2.write_text("dim\ttype\tbirth\tdeath\n0\tord\t1.5\t3.0\n0\text\t1.0\t5.5\n")
    code, out, _ = run(["distance", str(d1), str(d2)], capsys)
    assert code == 0
    got = float(out.splitlines()[-1].split("\t")[1])
    want = bottleneck_oracle(read_diagram(d1.read_text()), read_diagram(d2.read_text()), 0)
    assert got == pytest.approx(want, abs=1e-9)


# ---------------------------------------------------------------------------
# stability
# ---------------------------------------------------------------------------


def test_stability_zero_delta_all_pass(tmp_path, capsys):
    src = tmp_path / "g.tsv"
    src.write_text(TWO_STAGE)
    code, out, _ = run(["stability", str(src), "--delta", "0", "--trials", "3"], capsys)
    assert code == 0
    rows = [l for l in out.splitlines() if l and l[0].isdigit()]
    assert len(rows) == 3
    assert all(row.endswith("pass") for row in rows)


def test_stability_detects_hypergraph_input(tmp_path, capsys):
    src = tmp_path / "h.tsv"
    src.write_text(HYPER)
    code, out, _ = run(["stability", str(src), "--delta", "0.2", "--trials", "3"], capsys)
    assert code == 0
    assert "3/3 trials" in out


def test_stability_digraph_run_passes(tmp_path, capsys):
    src = tmp_path / "g.tsv"
    src.write_text(CYCLE)
    code, out, _ = run(
        ["stability", str(src), "--delta", "0.3", "--trials", "5", "--seed", "9"], capsys
    )
    assert code == 0
    assert "5/5 trials" in out


# ---------------------------------------------------------------------------
# determinism and config validation
# ---------------------------------------------------------------------------


def test_outputs_are_byte_identical_across_runs(tmp_path, capsys):
    src = tmp_path / "g.tsv"
    src.write_text(TWO_STAGE)
    outs = []
    for name in ("first", "second"):
        out = tmp_path / name
        code, _, _ = run(["pph", str(src), "--out", str(out)], capsys)
        assert code == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]

    reports = []
    for name in ("r1", "r2"):
        out = tmp_path / name
        code, _, _ = run(
            ["stability", str(src), "--delta", "0.2", "--trials", "4", "--seed", "5", "--out", str(out)],
            capsys,
        )
        assert code == 0
        reports.append(out.read_bytes())
    assert reports[0] == reports[1]


def test_bad_field_modulus_exits_2(tmp_path, capsys):
    src = tmp_path / "g.tsv"
    src.write_text(TWO_STAGE)
    code, _, err = run(["pph", str(src), "--field", "4"], capsys)
    assert code == 2
    assert "prime" in err


def test_negative_pmax_exits_2(tmp_path, capsys):
    src = tmp_path / "g.tsv"
    src.write_text(TWO_STAGE)
    code, _, _ = run(["pph", str(src), "--pmax", "-1"], capsys)
    assert code == 2


def test_console_module_entry_point(tmp_path):
    src = tmp_path / "g.tsv"
    src.write_text(CYCLE)
    proc = subprocess.run(
        [sys.executable, "-m", "extph.cli", "pph", str(src)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("dim\ttype\tbirth\tdeath")
