# tests/test_services.py
import math

import pytest

from krein_weyl.controllers.system_controller import validate
from krein_weyl.services.suite_service import SuiteCheck, SuiteResult, SuiteService
from krein_weyl.services.sweep_service import (
    SweepService,
    evaluate_point,
    linear_grid,
    log_negative_grid,
)
from krein_weyl.settings import SolverSettings

from conftest import random_atomic_measures


class TestGrids:
    def test_linear_grid(self):
        grid = linear_grid(-1.0, 1.0, 3, 0.5)
        assert grid == [complex(-1, 0.5), complex(0, 0.5), complex(1, 0.5)]

    def test_log_negative_grid(self):
        grid = log_negative_grid(0.01, 100.0, 5)
        assert [lam.real for lam in grid] == pytest.approx([-0.01, -0.1, -1.0, -10.0, -100.0])
        assert all(lam.imag == 0 for lam in grid)

    def test_empty_and_invalid_grids(self):
        assert linear_grid(0.0, 1.0, 0, 1.0) == []
        with pytest.raises(ValueError):
            linear_grid(0.0, 1.0, -1, 1.0)
        with pytest.raises(ValueError):
            log_negative_grid(0.0, 1.0, 3)


class TestSweepService:
    def test_error_rows(self, atom_system):
        lam, q, error, label = evaluate_point((atom_system, 0j, 1e-8, 10, SolverSettings(threads=1)))
        assert q is None and error is None
        assert label == "error: excluded point"

    def test_sequential_rows_follow_grid(self, atom_system):
        grid = [-1.0, 1j, 0.0, -4.0]
        rows = SweepService(SolverSettings(threads=1)).evaluate(atom_system, grid)
        assert [row[0] for row in rows] == [complex(lam) for lam in grid]
        assert rows[0][1] == pytest.approx(0.5)
        assert rows[2][3] == "error: excluded point"
        assert rows[3][1] == pytest.approx(0.125)

    def test_parallel_matches_sequential(self, lebesgue_system):
        grid = log_negative_grid(0.5, 8.0, 4)
        sequential = SweepService(SolverSettings(threads=1)).evaluate(lebesgue_system, grid)
        parallel = SweepService(SolverSettings(threads=2)).evaluate(lebesgue_system, grid)
        assert [row[0] for row in parallel] == [row[0] for row in sequential]
        for a, b in zip(parallel, sequential):
            assert a[1] == pytest.approx(b[1])
            assert a[1].real == pytest.approx(1 / math.sqrt(-a[0].real), abs=1e-7)

    def test_empty_grid(self, lebesgue_system):
        assert SweepService().evaluate(lebesgue_system, []) == []


class TestSuiteService:
    def test_fleet_passes(self, fleet):
        service = SuiteService()
        for system in fleet:
            result = service.run(system)
            assert result.passed, result.failures

    def test_atomic_string_runs_exact_checks(self, rng):
        r1, r2 = random_atomic_measures(rng)
        system = validate(r1, r2, name="string")
        assert SuiteService.is_atomic(system)
        result = SuiteService().run(system)
        names = {check.name for check in result.checks}
        assert {"exact_polynomial", "exact_conjugation"} <= names
        assert result.passed, result.failures

    def test_sample_points(self, regular_system, lebesgue_system):
        assert SuiteService.sample_points(regular_system) == [0.0, 1.0, 2.0]
        assert SuiteService.sample_points(lebesgue_system) == [0.0, 1.0, 2.5, 5.0]

    def test_identities_reach_into_the_tail(self, lebesgue_system):
        result = SuiteService().run(lebesgue_system)
        wronskian = [check for check in result.checks if check.name == "wronskian"]
        assert {check.detail.split(",")[0] for check in wronskian} == {"x=0", "x=1", "x=2.5", "x=5"}
        assert all(check.passed for check in wronskian)

    def test_result_reports_failures(self):
        result = SuiteResult("s", [SuiteCheck("a", 1e-12, 1e-10), SuiteCheck("b", 1.0, 1e-3)])
        assert not result.passed
        assert [check.name for check in result.failures] == ["b"]
