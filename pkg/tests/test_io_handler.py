# tests/test_io_handler.py
import csv
import io
import json

import pytest

from krein_weyl.controllers.system_controller import validate
from krein_weyl.errors import SpecFormatError
from krein_weyl.io_handler import CSV_HEADER, IOHandler, format_real
from krein_weyl.models.stieltjes_measure import StieltjesMeasure

from conftest import random_measures


def _write(path, data) -> str:
    path.write_text(json.dumps(data) if not isinstance(data, str) else data, encoding="utf-8")
    return str(path)


ATOM_SPEC = {
    "name": "atom",
    "r1": {"tail_density": 1, "b_rep": 0},
    "r2": {"atoms": [[0, 2]]},
    "allow_indefinite": True,
}


class TestReadSpec:
    def test_parse_system(self, tmp_path):
        handler = IOHandler()
        path = _write(tmp_path / "atom.json", ATOM_SPEC)
        r1, r2, metadata = handler.parse_system(handler.read_spec(path), path)
        assert r1 == StieltjesMeasure.lebesgue()
        assert r2 == StieltjesMeasure.single_atom(0.0, 2.0)
        assert metadata == {
            "name": "atom",
            "notes": None,
            "endpoint": None,
            "allow_indefinite": True,
        }
        assert handler.warnings == []

    def test_latin1_file(self, tmp_path):
        handler = IOHandler()
        path = tmp_path / "latin.json"
        spec = dict(ATOM_SPEC, notes="medida de referência")
        path.write_bytes(json.dumps(spec, ensure_ascii=False).encode("iso-8859-1"))
        data = handler.read_spec(str(path))
        assert data["notes"] == "medida de referência"

    def test_unknown_keys_are_warned(self, tmp_path):
        handler = IOHandler()
        spec = dict(ATOM_SPEC, color="red")
        spec["r2"] = {"atoms": [[0, 2]], "weight": 3}
        path = _write(tmp_path / "extra.json", spec)
        handler.parse_system(handler.read_spec(path), path)
        assert len(handler.warnings) == 2
        assert any("r2.weight" in w for w in handler.warnings)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            IOHandler().read_spec(str(tmp_path / "absent.json"))

    @pytest.mark.parametrize("content", ["{not json", "[1, 2]"])
    def test_malformed_content(self, tmp_path, content):
        path = _write(tmp_path / "bad.json", content)
        with pytest.raises(SpecFormatError) as info:
            IOHandler().read_spec(path)
        assert info.value.path == path

    @pytest.mark.parametrize(
        "spec",
        [
            {"r1": {"atoms": [[0, 1]]}},
            {"r1": {"atoms": [[0, -1]]}, "r2": {"atoms": [[1, 1]]}},
            {"r1": {"segments": [[1, 0, 1]]}, "r2": {"atoms": [[1, 1]]}},
            {"r1": [], "r2": {}},
            {"r1": {}, "r2": {}, "allow_indefinite": "yes"},
            {"r1": {}, "r2": {}, "endpoint": "far"},
        ],
    )
    def test_invalid_systems(self, tmp_path, spec):
        handler = IOHandler()
        path = _write(tmp_path / "invalid.json", spec)
        with pytest.raises(SpecFormatError):
            handler.parse_system(handler.read_spec(path), path)


class TestWriteSpec:
    def test_canonical_round_trip(self, tmp_path, rng):
        handler = IOHandler()
        r1, r2 = random_measures(rng, r1_tail=True)
        system = validate(r1, r2, name="random")
        path = str(tmp_path / "canonical.json")
        assert handler.write_spec(path, system, notes="gerado")

        data = handler.read_spec(path)
        parsed_r1, parsed_r2, metadata = handler.parse_system(data, path)
        assert parsed_r1 == r1
        assert parsed_r2 == r2
        assert metadata["name"] == "random"
        assert metadata["notes"] == "gerado"
        assert "allow_indefinite" not in data

    def test_canonical_text_is_stable(self, tmp_path):
        handler = IOHandler()
        path = _write(tmp_path / "atom.json", ATOM_SPEC)
        r1, r2, metadata = handler.parse_system(handler.read_spec(path), path)
        system = validate(r1, r2, name=metadata["name"], allow_indefinite=True)
        first = json.dumps(handler.system_to_dict(system), sort_keys=True)
        second = json.dumps(handler.system_to_dict(system), sort_keys=True)
        assert first == second
        assert handler.system_to_dict(system)["r2"] == {
            "atoms": [[0.0, 2.0]],
            "segments": [],
            "tail_density": 0.0,
            "b_rep": 0.0,
        }

    def test_write_failure_returns_false(self, tmp_path, lebesgue_system):
        assert not IOHandler().write_spec(str(tmp_path / "missing" / "x.json"), lebesgue_system)


class TestCsv:
    def test_seventeen_digits(self):
        assert format_real(1 / 3) == "0.33333333333333331"
        assert float(format_real(0.1)) == 0.1

    def test_q_rows(self, tmp_path):
        path = str(tmp_path / "q.csv")
        rows = [
            (-1 + 0j, 0.5 + 0j, 0.0, "LimitCircleClosedForm"),
            (0j, None, None, "error: excluded point"),
        ]
        assert IOHandler().write_q_csv(path, rows)
        with open(path, newline="", encoding="utf-8") as f:
            table = list(csv.reader(f))
        assert table[0] == CSV_HEADER
        assert table[1] == ["-1", "0", "0.5", "0", "0", "LimitCircleClosedForm"]
        assert table[2] == ["0", "0", "nan", "nan", "nan", "error: excluded point"]

    def test_empty_grid_writes_header_only(self, tmp_path):
        path = str(tmp_path / "empty.csv")
        assert IOHandler().write_q_csv(path, [])
        with open(path, newline="", encoding="utf-8") as f:
            assert list(csv.reader(f)) == [CSV_HEADER]

    def test_write_table_to_stream(self):
        stream = io.StringIO()
        IOHandler().write_table(stream, ["a", "b"], [["1", "2"]])
        assert stream.getvalue().splitlines() == ["a,b", "1,2"]
