"""Tests for storage.py — sequence, mask and CSV files."""

import csv
import json
import math

import numpy as np
import pytest

from sidelobe.seqcore import Trace, random_unimodular
from sidelobe.storage import (
    MaskFile,
    read_mask,
    read_sequence,
    write_correlation_level,
    write_sequence,
    write_trace,
)


def _rows(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestSequenceFiles:
    @pytest.mark.parametrize("name", ["x.json", "x.txt"])
    def test_round_trip_is_exact(self, tmp_path, name):
        x = random_unimodular(17, 5)
        write_sequence(tmp_path / name, x)
        assert np.array_equal(read_sequence(tmp_path / name).phases, x.phases)

    def test_json_layout(self, tmp_path):
        write_sequence(tmp_path / "x.json", random_unimodular(3, 0))
        payload = json.loads((tmp_path / "x.json").read_text())
        assert payload["n"] == 3
        assert len(payload["phases"]) == 3

    def test_json_length_mismatch(self, tmp_path):
        (tmp_path / "bad.json").write_text('{"n": 3, "phases": [0.0, 1.0]}')
        with pytest.raises(ValueError, match="Invalid sequence file"):
            read_sequence(tmp_path / "bad.json")

    def test_text_garbage(self, tmp_path):
        (tmp_path / "bad.txt").write_text("0.1\nnot-a-number\n")
        with pytest.raises(ValueError, match="Invalid sequence file"):
            read_sequence(tmp_path / "bad.txt")

    def test_empty_text_file(self, tmp_path):
        (tmp_path / "empty.txt").write_text("")
        with pytest.raises(ValueError, match="at least 1"):
            read_sequence(tmp_path / "empty.txt")

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            read_sequence(tmp_path / "missing.json")


class TestMaskFiles:
    def test_bands(self, tmp_path):
        path = tmp_path / "mask.json"
        path.write_text(json.dumps({"lambda": 1e4, "bands": [[math.pi / 4, math.pi / 2]]}))
        mask = read_mask(path, 1000)
        assert mask.lam == 1e4
        assert mask.omega == tuple(range(250, 500))

    def test_indices(self, tmp_path):
        path = tmp_path / "mask.json"
        path.write_text(json.dumps({"lambda": 2.5, "indices": [4, 1, 1]}))
        assert read_mask(path, 4).omega == (1, 4)

    def test_shipped_mask(self):
        from pathlib import Path

        mask = read_mask(Path(__file__).parent.parent / "masks" / "three_bands.json", 1000)
        assert len(mask.omega) == 750

    @pytest.mark.parametrize(
        "payload",
        [
            {"lambda": 1.0},
            {"lambda": 1.0, "bands": [[0, 1]], "indices": [0]},
            {"lambda": -1.0, "indices": [0]},
            {"bands": [[0, 1]]},
        ],
    )
    def test_invalid_payloads(self, tmp_path, payload):
        path = tmp_path / "mask.json"
        path.write_text(json.dumps(payload))
        with pytest.raises(ValueError):
            read_mask(path, 8)

    def test_indices_out_of_range(self, tmp_path):
        path = tmp_path / "mask.json"
        path.write_text(json.dumps({"lambda": 1.0, "indices": [16]}))
        with pytest.raises(ValueError, match="Bin indices"):
            read_mask(path, 8)

    def test_model_accepts_field_name(self):
        assert MaskFile(lam=3.0, indices=[0]).lam == 3.0


class TestCsvExports:
    def test_trace_columns(self, tmp_path):
        trace = Trace(objective_name="isl")
        trace.record(0, 10.0)
        trace.record(1, 5.0, alpha=-1.5, halvings=2)
        write_trace(tmp_path / "t.csv", trace)
        rows = _rows(tmp_path / "t.csv")
        assert rows[0] == ["iteration", "isl", "alpha", "halvings"]
        assert rows[1] == ["0", "10.0", "", ""]
        assert rows[2] == ["1", "5.0", "-1.5", "2"]

    def test_correlation_level_writes_minus_inf(self, tmp_path):
        lags = np.array([-1, 0, 1])
        levels = np.array([-math.inf, 0.0, -math.inf])
        write_correlation_level(tmp_path / "c.csv", lags, levels)
        rows = _rows(tmp_path / "c.csv")
        assert rows[0] == ["lag", "value_db"]
        assert rows[1] == ["-1", "-inf"]
        assert rows[2] == ["0", "0.0"]
