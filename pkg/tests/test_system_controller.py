# tests/test_system_controller.py
import math

import pytest

from krein_weyl.controllers.system_controller import (
    canonical_continuation,
    classify,
    definiteness_scan,
    dual,
    find_common_atom,
    sample_points,
    validate,
)
from krein_weyl.errors import CommonAtomError, IndefiniteSystemError, NotRegularError
from krein_weyl.models.integral_system import IntegralSystem
from krein_weyl.models.stieltjes_measure import StieltjesMeasure
from krein_weyl.settings import SolverSettings

from conftest import lebesgue_tail, random_measures

EXPECTED_SUMMARY = {
    "random[00]": "Regular, LimitCircle",
    "random[10]": "Singular, LimitCircle",
    "random[01]": "Singular, LimitPoint",
    "random[11]": "Singular, LimitPoint",
}


class TestValidate:
    def test_common_atom_is_rejected(self):
        r1 = StieltjesMeasure(atoms=[(1.0, 1.0)], segments=[(0.0, 2.0, 1.0)])
        r2 = StieltjesMeasure(atoms=[(1.0, 2.0)], segments=[(0.0, 2.0, 1.0)])
        assert find_common_atom(r1, r2) == 1.0
        with pytest.raises(CommonAtomError) as info:
            validate(r1, r2)
        assert info.value.position == 1.0

    def test_single_atom_r2_is_indefinite(self):
        with pytest.raises(IndefiniteSystemError):
            validate(lebesgue_tail(), StieltjesMeasure.single_atom(0.0, 1.0))

    def test_permissive_mode_accepts_indefinite_system(self):
        system = validate(
            lebesgue_tail(), StieltjesMeasure.single_atom(0.0, 1.0), allow_indefinite=True
        )
        assert not system.definite
        assert system.definite_from is None
        assert system.allow_indefinite

    def test_lebesgue_pair_is_definite_from_one(self, lebesgue_system):
        assert lebesgue_system.definite
        assert lebesgue_system.definite_from == pytest.approx(1.0)

    def test_definiteness_scan_reports_first_prefix(self):
        r1 = StieltjesMeasure(segments=[(0.0, 1.0, 1.0)])
        r2 = StieltjesMeasure(atoms=[(0.5, 1.0), (0.9, 1.0)])
        b0, ratio = definiteness_scan(r1, r2, SolverSettings.DEFAULT_DEFINITENESS_THRESHOLD)
        assert b0 == pytest.approx(0.9)
        assert ratio > 0

    def test_endpoint_with_tail_must_be_infinite(self):
        with pytest.raises(ValueError):
            IntegralSystem(lebesgue_tail(), lebesgue_tail(), endpoint=3.0)

    def test_regular_endpoint_defaults_to_described_part(self, regular_system):
        assert regular_system.endpoint == pytest.approx(2.0)
        assert regular_system.regular_end() == pytest.approx(2.0)


class TestClassify:
    def test_atom_system_is_limit_circle(self, atom_system):
        classification = classify(atom_system)
        assert classification.summary() == "Singular, LimitCircle"
        assert str(classification.witnesses[1]) == "finite(0)"

    def test_lebesgue_system_is_limit_point(self, lebesgue_system):
        classification = classify(lebesgue_system)
        assert classification.summary() == "Singular, LimitPoint"
        assert not classification.witnesses[0].finite

    def test_regular_system(self, regular_system):
        classification = classify(regular_system)
        assert classification.is_regular
        assert classification.summary() == "Regular, LimitCircle"

    @pytest.mark.parametrize(
        "r1_tail, r2_tail, expected",
        [
            (False, False, "Regular, LimitCircle"),
            (True, False, "Singular, LimitCircle"),
            (False, True, "Singular, LimitPoint"),
            (True, True, "Singular, LimitPoint"),
        ],
    )
    def test_fleet_classes(self, rng, r1_tail, r2_tail, expected):
        r1, r2 = random_measures(rng, r1_tail, r2_tail)
        assert classify(validate(r1, r2)).summary() == expected


class TestContinuationAndDual:
    def test_continuation_adds_unit_tail_at_b(self, regular_system):
        continued = canonical_continuation(regular_system)
        assert continued.r1 == regular_system.r1
        assert continued.r2.tail_density == 1.0
        assert continued.r2.b_rep == pytest.approx(regular_system.regular_end())
        assert math.isinf(continued.endpoint)
        assert classify(continued).summary() == "Singular, LimitPoint"

    def test_continuation_requires_regular_system(self, lebesgue_system):
        with pytest.raises(NotRegularError):
            canonical_continuation(lebesgue_system)

    def test_dual_swaps_measures(self, rng):
        r1, r2 = random_measures(rng, r1_tail=True, r2_tail=True)
        system = validate(r1, r2, name="s")
        swapped = dual(system)
        assert swapped.r1 == r2
        assert swapped.r2 == r1
        assert swapped.name == "dual(s)"

    def test_dual_of_regular_system_uses_continuation(self, regular_system):
        swapped = dual(regular_system)
        assert swapped.r1 == canonical_continuation(regular_system).r2
        assert classify(swapped).summary() == "Singular, LimitCircle"

    def test_dual_inherits_permissive_mode(self, atom_system):
        swapped = dual(atom_system)
        assert swapped.allow_indefinite
        assert swapped.r2 == lebesgue_tail()


class TestRandomSystems:
    def test_classification_follows_tails(self, random_fleet):
        for system in random_fleet:
            assert classify(system).summary() == EXPECTED_SUMMARY[system.name], system

    def test_regular_systems_have_finite_witnesses(self, random_fleet):
        regular = [s for s in random_fleet if classify(s).is_regular]
        assert len(regular) >= 10
        for system in regular:
            ones, profile = classify(system).witnesses
            assert ones.finite and profile.finite

    def test_continuation_is_limit_point_and_final(self, random_fleet):
        for system in random_fleet:
            if not classify(system).is_regular:
                continue
            continued = canonical_continuation(system)
            assert classify(continued).is_limit_point
            with pytest.raises(NotRegularError):
                canonical_continuation(continued)

    def test_dual_is_involution_on_singular_systems(self, random_fleet):
        for system in random_fleet:
            if classify(system).is_regular:
                continue
            twice = dual(dual(system))
            assert twice == system
            assert twice.r1 == system.r1 and twice.r2 == system.r2

    def test_dual_twice_of_regular_system_is_its_continuation(self, regular_system):
        assert dual(dual(regular_system)) == canonical_continuation(regular_system)


class TestSamplePoints:
    def test_finite_endpoint(self, regular_system):
        assert sample_points(regular_system) == [0.0, 1.0, 2.0]

    def test_points_spread_into_tail(self, lebesgue_system, atom_system):
        assert sample_points(lebesgue_system) == [0.0, 1.0, 2.5, 5.0]
        assert sample_points(atom_system) == [0.0, 1.0, 2.5, 5.0]

    def test_tail_after_described_part(self, rng):
        r1, r2 = random_measures(rng, r2_tail=True)
        system = validate(r1, r2)
        assert sample_points(system) == [0.0, 1.0, 2.0, 3.0, 4.5, 7.0]
