# tests/test_duality_controller.py
import cmath

import numpy as np
import pytest

from krein_weyl.controllers import duality_controller
from krein_weyl.controllers.duality_controller import (
    check_duality_identity,
    check_fundamental_conjugation,
    conjugated_entries,
)
from krein_weyl.controllers.system_controller import dual
from krein_weyl.errors import ExcludedPointError
from krein_weyl.models.duality_report import DualityReport
from krein_weyl.models.integral_system import IntegralSystem
from krein_weyl.models.weyl_disc import QEnclosure, Regime

from conftest import random_atomic_measures


class TestConjugation:
    def test_conjugated_entries_match_matrix_product(self, rng):
        lam = 0.7 - 1.3j
        u = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        d = np.array([[0, -1 / lam], [1, 0]], dtype=complex)
        expected = np.linalg.inv(d) @ u @ d
        assert conjugated_entries(u, lam) == pytest.approx(expected)

    @pytest.mark.parametrize("lam", [1j, -2.0, 1 + 1j])
    def test_numeric_conjugation(self, fleet, lam):
        for system in fleet:
            for x in (0.5, 1.25, 2.0):
                assert check_fundamental_conjugation(system, x, lam) <= 1e-10

    def test_exact_conjugation_on_atomic_string(self, rng):
        r1, r2 = random_atomic_measures(rng)
        system = IntegralSystem(r1, r2)
        assert check_fundamental_conjugation(system, 2.5, 1.0, exact=True) == 0.0

    def test_zero_lambda_excluded(self, lebesgue_system):
        with pytest.raises(ExcludedPointError):
            check_fundamental_conjugation(lebesgue_system, 1.0, 0.0)


class TestDualityIdentity:
    @pytest.mark.parametrize("lam", [-1.0, 1j, -0.5 + 2j])
    def test_atom_dual_is_constant(self, atom_system, lam):
        report = check_duality_identity(atom_system, lam)
        assert report.passed, report
        assert report.q.value == pytest.approx(-1 / (2 * lam))
        assert report.q_dual.regime is Regime.LIMIT_POINT_NESTED
        assert report.q_dual.value == pytest.approx(2.0, abs=1e-7)
        assert report.regular_residual is None

    @pytest.mark.parametrize("lam", [-2.0, 1 + 1j])
    def test_lebesgue_is_self_dual(self, lebesgue_system, lam):
        report = check_duality_identity(lebesgue_system, lam)
        assert report.passed, report
        expected = 1 / cmath.sqrt(-lam)
        assert report.q_dual.contains(expected, slack=1e-9)

    @pytest.mark.parametrize("lam", [-1.0, 2 + 0.5j])
    def test_regular_system(self, regular_system, lam):
        report = check_duality_identity(regular_system, lam)
        assert report.passed, report
        assert report.q_dual.regime is Regime.LIMIT_CIRCLE_CLOSED_FORM
        assert report.regular_residual <= report.tolerance

    def test_fleet(self, fleet):
        for system in fleet:
            assert check_duality_identity(system, -1 + 1j).passed

    @pytest.mark.parametrize("lam", [1j, 1 + 1j, -2.0])
    def test_random_fleet(self, random_fleet, lam):
        systems = random_fleet[:12]
        assert {s.name for s in systems} == {"random[00]", "random[10]", "random[01]", "random[11]"}
        for system in systems:
            report = check_duality_identity(system, lam)
            assert report.passed, (system, report)
            assert report.identity_residual <= report.tolerance
            assert report.conjugation_residual <= 1e-10

    @pytest.mark.parametrize("fixture", ["lebesgue_system", "atom_system", "regular_system"])
    @pytest.mark.parametrize("lam", [1j, -2.0])
    def test_identity_is_symmetric_under_dual(self, request, fixture, lam):
        system = request.getfixturevalue(fixture)
        forward = check_duality_identity(system, lam, tol=1e-12)
        backward = check_duality_identity(dual(system), lam, tol=1e-12)
        assert abs(forward.identity_residual - backward.identity_residual) <= 1e-10

    def test_conjugation_is_checked_inside_the_tail(self, atom_system, monkeypatch):
        assert check_duality_identity(atom_system, 1j).passed
        # par não trocado: Û = U difere de D⁻¹UD para x > 0
        monkeypatch.setattr(duality_controller, "swapped_system", lambda system: system)
        report = check_duality_identity(atom_system, 1j)
        assert report.conjugation_residual > 1e-3
        assert not report.passed

    @pytest.mark.parametrize("lam", [0.0, 3.0])
    def test_excluded_points(self, lebesgue_system, lam):
        with pytest.raises(ExcludedPointError):
            check_duality_identity(lebesgue_system, lam)


class TestDualityReport:
    def _report(self, conjugation: float) -> DualityReport:
        q = QEnclosure(1j, 0.0, Regime.REGULAR_CLOSED_FORM)
        return DualityReport(1j, q, q, 0.0, conjugation, 1e-8)

    def test_passed(self):
        report = self._report(1e-12)
        assert report.passed
        assert "PASS" in repr(report)

    def test_conjugation_failure(self):
        report = self._report(1e-6)
        assert not report.passed
        assert "FAIL" in repr(report)

    def test_negative_residual_rejected(self):
        with pytest.raises(ValueError):
            self._report(-1.0)
