"""End-to-end tests for the command-line interface."""

import json

import pytest

from safevote import cli

PROFILE_94 = """\
alternatives: A B C
17: A > B > C
15: A > C > B
18: B > A > C
16: B > C > A
14: C > A > B
14: C > B > A
"""

PROFILE_FOUR = """\
alternatives: A B C
voter 1: A > B > C
voter 2: B > A > C
voter 3: C > A > B
voter 4: C > B > A
"""

RULE_BORDA_94 = "rule: scoring\nscores: 2 1 0\ntiebreak: B > A > C\n"
RULE_PLURALITY = "rule: scoring\nscores: 1 0 0\ntiebreak: A > B > C\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in (
        ("profile94", PROFILE_94),
        ("profile4", PROFILE_FOUR),
        ("borda", RULE_BORDA_94),
        ("plurality", RULE_PLURALITY),
    ):
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    paths["tmp"] = tmp_path
    return paths


def run(args):
    return cli.main(args)


class TestAnalyze:
    def test_text_report(self, files, capsys):
        code = run(["analyze", "--profile", files["profile94"], "--rule", files["borda"]])
        out = capsys.readouterr().out
        assert code == 0
        assert "winner: B" in out
        assert "A=96" in out and "B=99" in out and "C=87" in out

    def test_json_report(self, files, capsys):
        code = run(
            ["analyze", "--profile", files["profile94"], "--rule", files["borda"], "--format", "json"]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["winner"] == "B"
        assert report["scores"] == {"A": "96", "B": "99", "C": "87"}

    def test_blocked_manipulators_profile(self, files, capsys):
        code = run(
            ["analyze", "--profile", files["profile4"], "--rule", files["plurality"], "--format", "json"]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["winner"] == "C"
        with_incentive = [t["type"] for t in report["types"] if t["incentives"]]
        assert with_incentive == ["ABC", "BAC"]
        # Both losing types rank the winner last and can improve: two escapes.
        assert len(report["escapes"]) == 2

    def test_out_file(self, files):
        out = files["tmp"] / "report.json"
        code = run(
            [
                "analyze", "--profile", files["profile94"], "--rule", files["borda"],
                "--format", "json", "--out", str(out),
            ]
        )
        assert code == 0
        assert json.loads(out.read_text())["winner"] == "B"


class TestSafety:
    def test_unsafe_overshoot(self, files, capsys):
        code = run(
            [
                "safety", "--profile", files["profile94"], "--rule", files["borda"],
                "--type", "A>B>C", "--strategic", "A>C>B", "--format", "json",
            ]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["status"] == "Unsafe"
        assert report["kind"] == "Overshoot"
        assert len(report["good"]) == 4
        assert len(report["bad"]) == 10
        assert report["thresholds"]["0"] == "B"
        assert report["thresholds"]["4"] == "A"
        assert report["thresholds"]["10"] == "C"

    def test_safe_vote(self, files, capsys):
        code = run(
            [
                "safety", "--profile", files["profile94"], "--rule", files["borda"],
                "--type", "ACB", "--strategic", "CAB",
            ]
        )
        assert code == 0
        assert "Safe" in capsys.readouterr().out

    def test_no_incentive_reported_distinctly(self, files, capsys):
        code = run(
            [
                "safety", "--profile", files["profile94"], "--rule", files["borda"],
                "--type", "BAC", "--strategic", "ABC",
            ]
        )
        assert code == 0
        assert "no incentive" in capsys.readouterr().out

    def test_absent_type_fails(self, files, capsys):
        code = run(
            [
                "safety", "--profile", files["profile4"], "--rule", files["plurality"],
                "--type", "ACB", "--strategic", "CAB",
            ]
        )
        assert code == cli.EXIT_FAILURE

    def test_strategic_equal_to_type_fails(self, files):
        code = run(
            [
                "safety", "--profile", files["profile94"], "--rule", files["borda"],
                "--type", "ABC", "--strategic", "ABC",
            ]
        )
        assert code == cli.EXIT_FAILURE


class TestVerify:
    def test_small_campaign_all_certificates(self, capsys):
        code = run(["verify", "--samples", "5", "--seed", "1", "--format", "json"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["failures"] == 0
        assert report["inconclusive"] == 0
        assert len(report["rules"]) == 5
        for entry in report["rules"]:
            assert entry["gs"] == "certificate"
            assert entry["safely_manipulable"] == "certificate"
            assert entry["safe_pivotal"] == "certificate"

    def test_zero_samples_is_success(self, capsys):
        code = run(["verify", "--samples", "0", "--seed", "1", "--format", "json"])
        assert code == 0
        assert json.loads(capsys.readouterr().out)["rules"] == []

    def test_tiny_budget_is_inconclusive_exit(self, capsys):
        code = run(["verify", "--samples", "3", "--seed", "1", "--budget", "1", "--format", "json"])
        assert code == cli.EXIT_INCONCLUSIVE
        report = json.loads(capsys.readouterr().out)
        assert report["failures"] == 0
        assert report["inconclusive"] > 0

    def test_wall_time_kept_out_of_json(self, capsys):
        run(["verify", "--samples", "2", "--seed", "9", "--format", "json"])
        captured = capsys.readouterr()
        assert "wall-time" in captured.err
        assert "wall-time" not in captured.out

    def test_budget_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv("SAFEVOTE_BUDGET", "1")
        code = run(["verify", "--samples", "3", "--seed", "1", "--format", "json"])
        assert code == cli.EXIT_INCONCLUSIVE

    def test_bad_budget_env_var(self, capsys, monkeypatch):
        monkeypatch.setenv("SAFEVOTE_BUDGET", "lots")
        code = run(["verify", "--samples", "1", "--seed", "1"])
        assert code == cli.EXIT_FAILURE


class TestFigure:
    def test_svg_written(self, files):
        out = files["tmp"] / "figure.svg"
        code = run(
            [
                "figure", "--profile", files["profile94"], "--rule", files["borda"],
                "--trajectory", "ABC:ACB:17", "--trajectory", "ACB:CAB:15",
                "--out", str(out),
            ]
        )
        assert code == 0
        svg = out.read_text()
        assert svg.startswith("<?xml")
        assert svg.count('class="trajectory"') == 2

    def test_bad_trajectory_spec(self, files):
        code = run(
            [
                "figure", "--profile", files["profile94"], "--rule", files["borda"],
                "--trajectory", "ABC-ACB-17",
            ]
        )
        assert code == cli.EXIT_FAILURE


class TestExamples:
    def test_all_fixtures_pass(self, capsys):
        code = run(["examples"])
        out = capsys.readouterr().out
        assert code == 0
        assert "5/5 fixtures pass" in out
        assert "corrected from EBCAD" in out

    def test_json_format(self, capsys):
        code = run(["examples", "--format", "json"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert len(report["fixtures"]) == 5
        assert all(f["passed"] for f in report["fixtures"])


class TestErrors:
    def test_parse_error_exit_code(self, files, capsys):
        bad = files["tmp"] / "bad.txt"
        bad.write_text("no header here\n")
        code = run(["analyze", "--profile", str(bad), "--rule", files["borda"]])
        assert code == cli.EXIT_PARSE

    def test_missing_file_exit_code(self, files):
        code = run(["analyze", "--profile", "/nonexistent.txt", "--rule", files["borda"]])
        assert code == cli.EXIT_FAILURE
