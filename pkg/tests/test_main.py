"""Tests for the command line."""

import csv
import json
import math

import pytest

from sidelobe.main import build_parser, main


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestDesign:
    def test_writes_artifacts(self, tmp_path, capsys):
        code = main(["design", "--variant", "accel-misl", "-n", "16", "--seed", "3",
                     "--max-iters", "50", "--out-dir", str(tmp_path)])
        assert code == 0
        stem = "accel-misl-aperiodic-n16-seed3"
        names = {p.name for p in tmp_path.iterdir()}
        assert names == {
            f"{stem}.json", f"{stem}-trace.csv", f"{stem}-correlation.csv", f"{stem}-spectrum.csv",
        }
        payload = json.loads((tmp_path / f"{stem}.json").read_text())
        assert payload["n"] == 16
        trace = _read_csv(tmp_path / f"{stem}-trace.csv")
        assert trace[0][:2] == ["iteration", "isl"]
        assert trace[1][0] == "0"
        assert len(_read_csv(tmp_path / f"{stem}-correlation.csv")) == 1 + 31
        assert len(_read_csv(tmp_path / f"{stem}-spectrum.csv")) == 1 + 32
        out = capsys.readouterr().out
        assert "merit factor" in out

    @pytest.mark.slow
    def test_long_sequence_smoke_run(self, tmp_path, capsys):
        code = main(["design", "--variant", "accel-misl", "-n", "4096", "--out-dir", str(tmp_path)])
        assert code == 0
        stem = "accel-misl-aperiodic-n4096-seed0"
        for suffix in (".json", "-trace.csv", "-correlation.csv", "-spectrum.csv"):
            assert (tmp_path / f"{stem}{suffix}").stat().st_size > 0
        payload = json.loads((tmp_path / f"{stem}.json").read_text())
        assert len(payload["phases"]) == 4096
        assert len(_read_csv(tmp_path / f"{stem}-spectrum.csv")) == 1 + 8192
        assert "merit factor" in capsys.readouterr().out

    def test_periodic_has_no_spectrum(self, tmp_path):
        code = main(["design", "--variant", "pecan", "-n", "9", "--init", "frank",
                     "--max-iters", "5", "--out-dir", str(tmp_path)])
        assert code == 0
        names = {p.name for p in tmp_path.iterdir()}
        assert not any(n.endswith("-spectrum.csv") for n in names)
        assert "pecan-periodic-n9-seed0.json" in names

    def test_zero_length_exits_nonzero_without_artifacts(self, tmp_path):
        out_dir = tmp_path / "out"
        assert main(["design", "-n", "0", "--out-dir", str(out_dir)]) == 1
        assert not out_dir.exists()

    def test_missing_length(self, tmp_path):
        assert main(["design", "--out-dir", str(tmp_path)]) == 1

    def test_seed_env_override(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SIDELOBE_SEED", "7")
        assert main(["design", "--variant", "misl", "-n", "8", "--seed", "1",
                     "--max-iters", "3", "--out-dir", str(tmp_path)]) == 0
        assert (tmp_path / "misl-aperiodic-n8-seed7.json").exists()

    def test_init_from_file(self, tmp_path):
        seq = tmp_path / "start.txt"
        seq.write_text("0.0\n0.0\n")
        out_dir = tmp_path / "out"
        assert main(["design", "--variant", "misl", "--init", str(seq),
                     "--out-dir", str(out_dir)]) == 0
        trace = _read_csv(out_dir / "misl-aperiodic-n2-seed0-trace.csv")
        assert float(trace[-1][1]) == pytest.approx(1.0)

    def test_init_length_mismatch(self, tmp_path):
        seq = tmp_path / "start.txt"
        seq.write_text("0.0\n0.0\n")
        assert main(["design", "--init", str(seq), "-n", "3", "--out-dir", str(tmp_path)]) == 1

    def test_spectral_design(self, tmp_path, capsys):
        mask = tmp_path / "mask.json"
        mask.write_text(json.dumps({"lambda": 100.0, "bands": [[math.pi / 4, math.pi / 2]]}))
        code = main(["design", "--variant", "spectral-misl", "-n", "20", "--mask", str(mask),
                     "--accelerate", "--max-iters", "20", "--out-dir", str(tmp_path / "out")])
        assert code == 0
        assert "stopband" in capsys.readouterr().out

    def test_spectral_without_mask(self, tmp_path):
        assert main(["design", "--variant", "spectral-misl", "-n", "8",
                     "--out-dir", str(tmp_path)]) == 1

    def test_bad_tolerance_is_usage_error(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["design", "-n", "4", "--tol", "0"])


class TestCompare:
    def test_report_files(self, tmp_path, capsys):
        code = main(["compare", "--variant", "misl", "can", "-n", "8", "12", "--trials", "2",
                     "--max-iters", "10", "--out-dir", str(tmp_path)])
        assert code == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert len(report["records"]) == 8
        rows = _read_csv(tmp_path / "report.csv")
        assert rows[0][0] == "variant"
        assert len(rows) == 1 + 4

    def test_cross_init(self, tmp_path):
        code = main(["compare", "--variant", "can", "misl", "-n", "8", "--cross-init",
                     "--max-iters", "20", "--out-dir", str(tmp_path)])
        assert code == 0
        names = {p.name for p in tmp_path.iterdir()}
        assert "cross-misl-from-can-n8-trace.csv" in names
        assert "cross-can-from-misl-n8-trace.csv" in names

    def test_cross_init_needs_two_variants(self, tmp_path):
        assert main(["compare", "--variant", "misl", "-n", "8", "--cross-init",
                     "--out-dir", str(tmp_path)]) == 1


class TestValidate:
    def test_all_checks_pass(self, capsys):
        assert main(["validate"]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out
        assert "PASS" in out
