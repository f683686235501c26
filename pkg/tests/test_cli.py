import json

import pytest

from primdeg import VerificationError, parse_document, render_document, wielandt_tensor
from primdeg.cli import main
from primdeg.formats import render_pattern


@pytest.fixture
def wielandt_file(tmp_path):
    path = tmp_path / "a0.txt"
    path.write_text(render_pattern(wielandt_tensor(5, 5)))
    return path


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def json_records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


class TestAnalyze:
    def test_primitive_document(self, capsys, wielandt_file):
        code, out, err = run(capsys, ["analyze", str(wielandt_file)])
        assert code == 0
        assert "document: pattern order=5 dim=5" in out
        assert "conditions: ok" in out
        assert "primitive: yes" in out
        assert "gamma: 17" in out
        assert "sha256:" in out
        assert "elapsed" in err

    def test_per_column_table(self, capsys, wielandt_file):
        code, out, _ = run(capsys, ["analyze", str(wielandt_file), "--per-column"])
        assert code == 0
        assert "column 4: gamma_j=13 reached step=13" in out
        assert "column 5: gamma_j=17 reached step=17" in out

    def test_json_lines_carry_same_values(self, capsys, wielandt_file):
        code, out, _ = run(
            capsys,
            ["analyze", str(wielandt_file), "--per-column", "--format", "json-lines"],
        )
        assert code == 0
        records = json_records(out)
        by_kind = {}
        for r in records:
            by_kind.setdefault(r["record"], []).append(r)
        analysis = by_kind["analysis"][0]
        assert analysis["gamma"] == 17
        assert analysis["primitive"] is True
        assert analysis["bound"] == 17 == analysis["max_steps"]
        cols = {r["j"]: r for r in by_kind["column"]}
        assert [cols[j]["gamma_j"] for j in range(1, 6)] == [16, 15, 14, 13, 17]
        assert all(r["outcome"] == "reached" for r in by_kind["column"])

    def test_not_primitive_still_exits_zero(self, capsys, tmp_path):
        path = tmp_path / "cycle.txt"
        path.write_text(
            "tensor-pattern v1\norder 2\ndim 3\nrow 1: {2}\nrow 2: {3}\nrow 3: {1}\n"
        )
        code, out, _ = run(capsys, ["analyze", str(path)])
        assert code == 0
        assert "primitive: no" in out
        assert "gamma: -" in out
        assert "cycled" in out or "column" not in out  # cycle note only with table

    def test_budget_override(self, capsys, wielandt_file):
        code, out, _ = run(capsys, ["analyze", str(wielandt_file), "--max-k", "5"])
        assert code == 0
        assert "primitive: no" in out

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, ["analyze", str(tmp_path / "nope.txt")])
        assert code == 1
        assert "error:" in err

    def test_parse_error_reports_line(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("tensor-pattern v1\norder 3\ndim 3\nrow 1: {9}\n")
        code, _, err = run(capsys, ["analyze", str(path)])
        assert code == 1
        assert "error: line 4: index 9 out of range 1..3" in err

    def test_violations_reported(self, capsys, tmp_path):
        path = tmp_path / "stuck.txt"
        path.write_text(
            "tensor-pattern v1\norder 2\ndim 2\nrow 1: {1}\nrow 2: {1}\n"
        )
        code, out, _ = run(capsys, ["analyze", str(path)])
        assert code == 0
        assert "conditions: violation zero-out-degree vertex=2" in out
        assert "primitive: no" in out

    def test_help_exits_zero(self, capsys):
        code, out, _ = run(capsys, ["analyze", "--help"])
        assert code == 0
        assert "usage" in out


class TestConstruct:
    def test_wielandt_matrix_to_stdout(self, capsys):
        code, out, err = run(capsys, ["construct", "wielandt", "--n", "5"])
        assert code == 0
        assert out.startswith("matrix v1\ndim 5\n")
        assert "gamma=17" in err

    def test_a0_round_trips_through_analyze(self, capsys, tmp_path):
        out_path = tmp_path / "a0.txt"
        code, out, _ = run(
            capsys,
            ["construct", "a0", "--n", "5", "--m", "5", "--out", str(out_path)],
        )
        assert code == 0
        assert "gamma=17" in out
        doc = parse_document(out_path.read_text())
        assert doc.kind == "pattern"
        code2, out2, _ = run(capsys, ["analyze", str(out_path)])
        assert code2 == 0 and "gamma: 17" in out2

    def test_ak_document(self, capsys, tmp_path):
        out_path = tmp_path / "ak.txt"
        code, out, _ = run(
            capsys,
            ["construct", "ak", "--n", "5", "--m", "5", "--k", "3", "--out", str(out_path)],
        )
        assert code == 0
        assert "gamma=8" in out

    def test_bt_document(self, capsys, tmp_path):
        out_path = tmp_path / "bt.txt"
        code, out, _ = run(
            capsys,
            ["construct", "bt", "--n", "5", "--m", "5", "--t", "11", "--out", str(out_path)],
        )
        assert code == 0
        assert "gamma=11" in out

    def test_small_matrix(self, capsys):
        code, out, err = run(capsys, ["construct", "small-matrix", "--n", "4", "--t", "3"])
        assert code == 0
        assert out.startswith("matrix v1\ndim 4\n")
        assert "gamma=3" in err

    def test_missing_parameter_message(self, capsys):
        code, _, err = run(capsys, ["construct", "ak", "--n", "5", "--m", "5"])
        assert code == 1
        assert "error: kind 'ak' requires --k" in err
        code, _, err = run(capsys, ["construct", "a0", "--n", "5"])
        assert code == 1
        assert "requires --m" in err

    def test_out_of_range_parameter(self, capsys):
        code, _, err = run(
            capsys, ["construct", "ak", "--n", "5", "--m", "5", "--k", "13"]
        )
        assert code == 1
        assert "error:" in err

    def test_unknown_kind_rejected(self, capsys):
        code, _, _ = run(capsys, ["construct", "b0", "--n", "5"])
        assert code == 1


class TestExponentSet:
    def test_covers_interval(self, capsys):
        code, out, _ = run(capsys, ["exponent-set", "--m", "4", "--n", "4"])
        assert code == 0
        assert "t=4 kind=monomial-lift" in out
        assert "t=5 kind=wielandt-frontier k=1 gamma=5 ok" in out
        assert "achieved == expected (1..10)" in out

    def test_witness_files_parse_and_verify(self, capsys, tmp_path):
        wdir = tmp_path / "w"
        code, out, _ = run(
            capsys,
            ["exponent-set", "--m", "3", "--n", "3", "--emit-witnesses", str(wdir)],
        )
        assert code == 0
        files = sorted(wdir.iterdir())
        assert [f.name for f in files] == [
            "witness-t001.txt",
            "witness-t002.txt",
            "witness-t003.txt",
            "witness-t004.txt",
            "witness-t005.txt",
        ]
        from primdeg import analyze

        for i, f in enumerate(files, 1):
            doc = parse_document(f.read_text())
            assert analyze(doc.as_pattern_tensor()).gamma == i

    def test_json_lines_summary(self, capsys):
        code, out, _ = run(
            capsys, ["exponent-set", "--m", "3", "--n", "3", "--format", "json-lines"]
        )
        assert code == 0
        records = json_records(out)
        summary = [r for r in records if r["record"] == "degree-summary"][0]
        assert summary["complete"] is True
        assert summary["missing"] == []
        assert summary["expected_max"] == 5
        oks = [r["t"] for r in records if r["record"] == "degree" and r["status"] == "ok"]
        assert oks == [1, 2, 3, 4, 5]

    def test_dimension_guard(self, capsys):
        code, _, err = run(capsys, ["exponent-set", "--m", "20", "--n", "20"])
        assert code == 1
        assert "max-n" in err

    def test_verification_failure_exit_code(self, capsys, monkeypatch):
        import primdeg.cli as cli_mod

        def boom(order, dim):
            raise VerificationError("forced mismatch")

        monkeypatch.setattr(cli_mod, "exponent_set", boom)
        code, _, err = run(capsys, ["exponent-set", "--m", "3", "--n", "3"])
        assert code == 2
        assert "forced mismatch" in err


class TestOracleCheck:
    def test_all_trials_agree(self, capsys):
        code, out, _ = run(
            capsys,
            ["oracle-check", "--m", "3", "--n", "3", "--trials", "10", "--seed", "1"],
        )
        assert code == 0
        assert "10/10 agree" in out

    def test_matrix_mode_includes_gamma_cross_check(self, capsys):
        code, out, _ = run(
            capsys,
            ["oracle-check", "--m", "2", "--n", "4", "--trials", "8", "--seed", "2"],
        )
        assert code == 0
        assert "8/8 agree" in out

    def test_json_summary_counts(self, capsys):
        code, out, _ = run(
            capsys,
            [
                "oracle-check",
                "--m",
                "3",
                "--n",
                "2",
                "--trials",
                "12",
                "--format",
                "json-lines",
            ],
        )
        assert code == 0
        summary = [r for r in json_records(out) if r["record"] == "oracle-summary"][0]
        assert summary["trials"] == 12
        assert summary["agreements"] == 12
        assert summary["associativity_triples"] == 12


class TestScan:
    def test_requires_order_below_dim(self, capsys):
        code, _, err = run(capsys, ["scan-open-problem", "--m", "4", "--n", "4"])
        assert code == 1
        assert "requires 3 <= order < dim" in err

    def test_header_marks_non_exhaustive(self, capsys):
        code, out, _ = run(
            capsys,
            ["scan-open-problem", "--m", "3", "--n", "4", "--budget", "20", "--seed", "0"],
        )
        assert code == 0
        assert "NON-EXHAUSTIVE random sample" in out
        assert "not evidence of a gap" in out

    def test_deterministic_for_fixed_seed(self, capsys):
        argv = ["scan-open-problem", "--m", "3", "--n", "4", "--budget", "15", "--seed", "9"]
        _, out1, _ = run(capsys, argv)
        _, out2, _ = run(capsys, argv)
        assert out1 == out2

    def test_seed_changes_sample(self, capsys):
        base = ["scan-open-problem", "--m", "3", "--n", "5", "--budget", "25"]
        _, out1, _ = run(capsys, base + ["--seed", "1"])
        _, out2, _ = run(capsys, base + ["--seed", "2"])
        assert out1 != out2

    def test_dim_guard(self, capsys):
        code, _, err = run(capsys, ["scan-open-problem", "--m", "3", "--n", "30"])
        assert code == 1
        assert "error:" in err


class TestTopLevel:
    def test_no_command_shows_usage(self, capsys):
        code, _, err = run(capsys, [])
        assert code == 1

    def test_unknown_flag(self, capsys):
        code, _, err = run(capsys, ["analyze", "--wat"])
        assert code == 1

    def test_version_like_help(self, capsys):
        code, out, _ = run(capsys, ["--help"])
        assert code == 0
        assert "analyze" in out and "construct" in out
