# tests/test_main.py
import argparse
import csv
import json

import pytest

from krein_weyl.io_handler import CSV_HEADER
from krein_weyl.main import (
    EXIT_IO,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_VALIDATION,
    main,
    parse_lambda,
    parse_numbers,
)

ATOM_SPEC = {
    "name": "atom",
    "r1": {"tail_density": 1, "b_rep": 0},
    "r2": {"atoms": [[0, 2]]},
    "allow_indefinite": True,
}


@pytest.fixture(autouse=True)
def single_process(monkeypatch):
    monkeypatch.setenv("KW_THREADS", "1")


@pytest.fixture
def atom_spec(tmp_path):
    path = tmp_path / "atom.json"
    path.write_text(json.dumps(ATOM_SPEC), encoding="utf-8")
    return str(path)


def _read_csv(text: str):
    return list(csv.DictReader(text.splitlines()))


class TestArguments:
    @pytest.mark.parametrize(
        "text, expected",
        [("-1", -1), ("1+1j", 1 + 1j), ("2i", 2j), ("i", 1j), ("1-i", 1 - 1j), (" -0.5 ", -0.5)],
    )
    def test_parse_lambda(self, text, expected):
        assert parse_lambda(text) == expected

    def test_parse_lambda_rejects_garbage(self):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_lambda("one")

    def test_parse_numbers(self):
        assert parse_numbers("0.5,2,3", 3) == [0.5, 2.0, 3.0]
        with pytest.raises(argparse.ArgumentTypeError):
            parse_numbers("0.5,2", 3)

    def test_unknown_command(self):
        assert main(["frobnicate"]) == EXIT_PARSE


class TestCommands:
    def test_validate(self, atom_spec, capsys):
        assert main(["validate", atom_spec]) == EXIT_OK
        out = capsys.readouterr().out
        assert "OK: atom" in out
        assert "definite: false" in out

    def test_classify(self, atom_spec, capsys):
        assert main(["classify", atom_spec]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "Singular, LimitCircle"

    def test_common_atom_is_validation_error(self, tmp_path, capsys):
        path = tmp_path / "common.json"
        path.write_text(
            json.dumps({"r1": {"atoms": [[1, 1]]}, "r2": {"atoms": [[1, 2], [0, 1]]}}),
            encoding="utf-8",
        )
        assert main(["classify", str(path)]) == EXIT_VALIDATION
        assert "CommonAtomError" in capsys.readouterr().err

    def test_indefinite_without_flag(self, tmp_path):
        spec = dict(ATOM_SPEC)
        del spec["allow_indefinite"]
        path = tmp_path / "strict.json"
        path.write_text(json.dumps(spec), encoding="utf-8")
        assert main(["validate", str(path)]) == EXIT_VALIDATION
        assert main(["validate", "--allow-indefinite", str(path)]) == EXIT_OK

    def test_malformed_spec(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{", encoding="utf-8")
        assert main(["validate", str(path)]) == EXIT_PARSE
        assert main(["validate", str(tmp_path / "absent.json")]) == EXIT_PARSE

    def test_q(self, atom_spec, capsys):
        assert main(["q", atom_spec, "--lambda=-1", "--lambda=0"]) == EXIT_OK
        rows = _read_csv(capsys.readouterr().out)
        assert list(rows[0]) == CSV_HEADER
        assert float(rows[0]["q_re"]) == 0.5
        assert float(rows[0]["q_im"]) == 0.0
        assert rows[0]["regime"] == "LimitCircleClosedForm"
        assert rows[1]["q_re"] == "nan"
        assert rows[1]["regime"] == "error: excluded point"

    def test_q_all_rows_failing(self, atom_spec, capsys):
        assert main(["q", atom_spec, "--lambda=0"]) == 1

    def test_dual_check(self, atom_spec, capsys):
        assert main(["dual-check", atom_spec, "--lambda=-1", "--lambda=1j"]) == EXIT_OK
        rows = _read_csv(capsys.readouterr().out)
        assert [row["status"] for row in rows] == ["PASS", "PASS"]
        assert float(rows[0]["q_dual_re"]) == pytest.approx(2.0, abs=1e-7)

    def test_suite(self, atom_spec, capsys):
        assert main(["suite", atom_spec]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[-1] == "PASS"

    def test_sweep(self, atom_spec, tmp_path):
        out = tmp_path / "sweep.csv"
        args = ["sweep", atom_spec, "--log-grid", "0.5,2,3", "--out", str(out)]
        assert main(args) == EXIT_OK
        rows = _read_csv(out.read_text(encoding="utf-8"))
        assert [float(row["lambda_re"]) for row in rows] == pytest.approx([-0.5, -1.0, -2.0])
        for row in rows:
            assert float(row["q_re"]) == pytest.approx(-1 / (2 * float(row["lambda_re"])))

    def test_sweep_linear_grid(self, atom_spec, tmp_path):
        out = tmp_path / "linear.csv"
        args = ["sweep", atom_spec, "--grid=-1,1,5,0.5", "--out", str(out)]
        assert main(args) == EXIT_OK
        rows = _read_csv(out.read_text(encoding="utf-8"))
        assert len(rows) == 5
        assert all(float(row["lambda_im"]) == 0.5 for row in rows)

    def test_sweep_requires_out(self, atom_spec):
        assert main(["sweep", atom_spec, "--log-grid", "0.5,2,3"]) == EXIT_PARSE

    def test_sweep_unwritable_output(self, atom_spec, tmp_path):
        out = tmp_path / "missing" / "sweep.csv"
        assert main(["sweep", atom_spec, "--log-grid", "0.5,2,3", "--out", str(out)]) == EXIT_IO

    def test_canonicalize(self, atom_spec, tmp_path, capsys):
        assert main(["canonicalize", atom_spec]) == EXIT_OK
        printed = json.loads(capsys.readouterr().out)
        assert printed["allow_indefinite"] is True
        assert printed["r1"]["tail_density"] == 1.0

        out = tmp_path / "canonical.json"
        assert main(["canonicalize", atom_spec, "--out", str(out)]) == EXIT_OK
        assert json.loads(out.read_text(encoding="utf-8")) == printed
