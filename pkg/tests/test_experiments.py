"""Tests for experiments.py — dispatch, paired trials and cross-initialization."""

import math

import pytest

from sidelobe.experiments import (
    ExperimentReport,
    REPORT_COLUMNS,
    compare,
    cross_initialize,
    report_rows,
    run_design,
    run_trial,
)
from sidelobe.seqcore import DesignRun, Variant, random_unimodular
from sidelobe.storage import MaskFile, write_json


class TestRunDesign:
    @pytest.mark.parametrize("variant", [Variant.MISL, Variant.ACCEL_MISL, Variant.CAN])
    def test_dispatch(self, variant):
        run = DesignRun(variant=variant, n=16, max_iters=5)
        x, trace = run_design(run, random_unimodular(16, 0))
        assert x.n == 16
        assert run.trace == trace.as_pairs()

    def test_spectral_dispatch(self):
        mask = MaskFile(lam=10.0, indices=[3, 4, 5]).to_mask(8)
        run = DesignRun(variant=Variant.SPECTRAL_MISL, n=8, mask=mask, max_iters=5)
        _, trace = run_design(run, random_unimodular(8, 0))
        assert trace.objective_name == "penalized"


class TestRunTrial:
    def test_record_fields(self):
        record = run_trial(Variant.ACCEL_MISL, 16, 3, max_iters=50)
        assert record.variant == "accel-misl"
        assert record.mode == "aperiodic"
        assert record.seed == 3
        assert 1 <= record.iterations <= 50
        assert record.merit_factor == pytest.approx(16**2 / (2 * record.aperiodic_isl))
        assert record.wall_time >= 0

    def test_pecan_record_reports_periodic(self):
        record = run_trial(Variant.PECAN, 16, 0, max_iters=20)
        assert record.mode == "periodic"


class TestCompare:
    def test_single_trial(self):
        report = compare([Variant.MISL], [8], trials=1, max_iters=20)
        assert len(report.records) == 1
        assert report.records[0].seed == 0
        summary = report.summary("misl", 8)
        assert summary.trials == 1
        assert summary.mean_merit_factor == pytest.approx(report.records[0].merit_factor)

    def test_pairing_shares_initial_sequence(self):
        report = compare(
            [Variant.MISL, Variant.CAN], [16], trials=3, base_seed=10, max_iters=1
        )
        seeds = {(r.variant, r.seed) for r in report.records}
        assert seeds == {(v, s) for v in ("misl", "can") for s in (10, 11, 12)}

    def test_deterministic(self):
        first = compare([Variant.ACCEL_MISL], [16, 24], trials=2, max_iters=30)
        second = compare([Variant.ACCEL_MISL], [16, 24], trials=2, max_iters=30)
        assert [r.final_objective for r in first.records] == [
            r.final_objective for r in second.records
        ]

    def test_worker_pool_matches_serial(self):
        serial = compare([Variant.MISL, Variant.CAN], [8, 12], trials=2, max_iters=20)
        pooled = compare([Variant.MISL, Variant.CAN], [8, 12], trials=2, max_iters=20, jobs=2)
        assert [(r.variant, r.n, r.seed, r.final_objective) for r in pooled.records] == [
            (r.variant, r.n, r.seed, r.final_objective) for r in serial.records
        ]

    def test_infinite_merit_factor_survives_json(self, tmp_path):
        report = compare([Variant.MISL], [1], trials=1, max_iters=5)
        assert report.records[0].merit_factor == math.inf
        write_json(tmp_path / "report.json", report)
        text = (tmp_path / "report.json").read_text()
        assert "Infinity" in text
        restored = ExperimentReport.model_validate_json(text)
        assert restored.records[0].merit_factor == math.inf
        assert restored.summary("misl", 1).mean_merit_factor == math.inf

    def test_report_rows(self):
        report = compare([Variant.MISL, Variant.CAN], [8], trials=2, max_iters=10)
        rows = list(report_rows(report))
        assert len(rows) == 2
        assert all(len(row) == len(REPORT_COLUMNS) for row in rows)

    def test_missing_summary(self):
        report = compare([Variant.MISL], [8], trials=1, max_iters=5)
        with pytest.raises(KeyError):
            report.summary("can", 8)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"variants": [Variant.MISL], "lengths": [8], "trials": 0},
            {"variants": [], "lengths": [8], "trials": 1},
            {"variants": [Variant.MISL], "lengths": [0], "trials": 1},
            {"variants": [Variant.SPECTRAL_MISL], "lengths": [8], "trials": 1},
        ],
    )
    def test_invalid_arguments(self, kwargs):
        with pytest.raises(ValueError):
            compare(**kwargs)

    def test_spectral_with_mask(self):
        mask_file = MaskFile(lam=1.0, bands=[(0.5, 1.0)])
        report = compare(
            [Variant.SPECTRAL_MISL], [12], trials=1, max_iters=10, mask_file=mask_file
        )
        assert report.records[0].variant == "spectral-misl"


class TestCrossInitialize:
    def test_keys_and_restart(self):
        traces = cross_initialize(Variant.CAN, Variant.ACCEL_MISL, 16, 0, max_iters=200)
        assert set(traces) == {"can", "accel-misl", "accel-misl<-can", "can<-accel-misl"}
        # the restart begins where the first run ended
        assert traces["accel-misl<-can"].objectives[0] == pytest.approx(
            traces["can"].final_objective, rel=1e-9
        )
        assert traces["can<-accel-misl"].objectives[0] == pytest.approx(
            traces["accel-misl"].final_objective, rel=1e-9
        )

    def test_misl_from_can_does_not_increase(self):
        traces = cross_initialize(Variant.CAN, Variant.MISL, 32, 1, max_iters=300)
        restart = traces["misl<-can"]
        assert restart.final_objective <= restart.objectives[0] * (1 + 1e-9)
