import argparse
import json

import pytest

from app import cli


class TestRootDataCommand:
    """Tests for `rootdata`"""

    def test_cartan_b2(self, capsys):
        """Test that B2 at p = 7 dumps four positive roots"""
        assert cli.main(["rootdata", "--cartan", "B2", "--p", "7"]) == cli.EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert len(data["positive_roots"]) == 4

    def test_bad_prime(self, capsys):
        """Test that p = 2 exits with the input error code"""
        assert cli.main(["rootdata", "--gl", "2", "--p", "2"]) == cli.EXIT_INPUT
        assert '"code": "bad_prime"' in capsys.readouterr().err

    def test_gl_and_cartan_are_exclusive(self):
        """Test that argparse rejects both datum flags"""
        with pytest.raises(SystemExit):
            cli.main(["rootdata", "--gl", "2", "--cartan", "B2"])

    def test_output_file(self, tmp_path):
        """Test that --out writes the dump to disk"""
        out = tmp_path / "sub" / "gl2.json"
        assert cli.main(["rootdata", "--gl", "2", "--p", "3", "--out", str(out)]) == cli.EXIT_OK
        assert json.loads(out.read_text())["rank"] == 2


class TestConfigFile:
    """Tests for JSON configuration files"""

    def test_flags_override_file(self, tmp_path, capsys):
        """Test that command-line flags win over file values"""
        path = tmp_path / "config.json"
        path.write_text(json.dumps({"gl": 3, "p": 5}))
        assert cli.main(["rootdata", "--config", str(path), "--gl", "2"]) == cli.EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["rank"] == 2
        assert data["p"] == 5

    def test_unreadable_file(self, tmp_path):
        """Test that a broken config file is an input error"""
        path = tmp_path / "config.json"
        path.write_text("{not json")
        assert cli.main(["rootdata", "--config", str(path)]) == cli.EXIT_INPUT

    def test_unknown_suite(self):
        """Test that unknown suite names are an input error"""
        assert cli.main(["verify", "--suite", "nonsense"]) == cli.EXIT_INPUT


class TestOtherCommands:
    """Tests for `orbits`, `module`, `table` and `verify`"""

    def test_orbits_csv(self, capsys):
        """Test the orbit table of [-1, 1]^2"""
        assert cli.main(["orbits", "--gl", "2", "--p", "3", "--window=-1..1", "--format", "csv"]) == cli.EXIT_OK
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "weight,orbit_id,representative"
        assert len(lines) == 10

    def test_module_summary(self, capsys):
        """Test the summary of a baby Verma"""
        assert cli.main(["module", "verma", "1,0", "--gl", "2", "--p", "3", "--summary"]) == cli.EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["dim"] == 3
        assert "data" not in data

    def test_empty_window_table(self, capsys):
        """Test that an empty window gives a header-only CSV"""
        assert cli.main(["table", "ZL", "--gl", "2", "--p", "3", "--window", "1..0"]) == cli.EXIT_OK
        assert capsys.readouterr().out == "kind,row,column,value\n"

    def test_verify(self, capsys):
        """Test a passing suite run"""
        code = cli.main(["verify", "--gl", "2", "--p", "3", "--window", "0..1", "--suite", "conditions",
                         "--samples", "1", "--workers", "1"])
        assert code == cli.EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["ok"] is True
        assert "seconds" not in report["suites"][0]

    def test_negative_window_as_separate_argument(self, capsys):
        """Test that `--window -1..1` parses like `--window=-1..1`"""
        assert cli.main(["orbits", "--gl", "2", "--p", "3", "--window", "-1..1", "--format", "csv"]) == cli.EXIT_OK
        assert len(capsys.readouterr().out.strip().split("\n")) == 10

    def test_verify_negative_window_with_one_sample(self, capsys):
        """Test that ext-vanishing finds its nonzero Ext¹ even with a single sample"""
        code = cli.main(["verify", "--gl", "2", "--p", "3", "--window", "-1..1", "--suite", "ext-vanishing",
                         "--samples", "1", "--workers", "1"])
        assert code == cli.EXIT_OK
        assert json.loads(capsys.readouterr().out)["ok"] is True

    def test_default_verify_passes(self, capsys):
        """Test that every suite passes under the default configuration"""
        assert cli.main(["verify", "--workers", "1"]) == cli.EXIT_OK
        report = json.loads(capsys.readouterr().out)
        assert report["ok"] is True
        assert all(suite["failed"] == 0 for suite in report["suites"])


def test_parse_window():
    """Test the a..b window syntax"""
    assert cli.parse_window("-2..3") == [-2, 3]
    with pytest.raises(argparse.ArgumentTypeError):
        cli.parse_window("2")


def test_attach_window():
    """Test that only the token after --window is glued to it"""
    assert cli.attach_window(["verify", "--window", "-2..2", "--p", "3"]) == ["verify", "--window=-2..2", "--p", "3"]
    assert cli.attach_window(["orbits", "--window=-1..1"]) == ["orbits", "--window=-1..1"]
