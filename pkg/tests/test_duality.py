import math

import numpy as np
import pytest
from hypothesis import given

from duality_lab.duality import (
    coherence,
    evaluate_point,
    holevo_ceiling,
    knowledge_concatenated,
    knowledge_frio,
    knowledge_me,
    shannon_entropy,
)
from duality_lab.measurements import Strategy
from duality_lab.states import ValidationError, spec_from_probabilities, uniform_spec

from helpers import detector_specs, iter_specs, separation_levels

XI_GRID = [round(0.1 * k, 1) for k in range(11)]


class TestShannonEntropy:
    def test_balanced_bit(self):
        assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0, abs=1e-12)

    def test_deterministic_distribution(self):
        assert shannon_entropy([1.0, 0.0, 0.0]) == 0.0

    def test_six_path_adjacent_distribution(self):
        distribution = [1 / 3, 1 / 4, 1 / 12, 0, 1 / 12, 1 / 4]
        knowledge = 1 - shannon_entropy(distribution) / math.log2(6)
        assert knowledge == pytest.approx(0.178, abs=5e-4)

    def test_negative_entries_rejected(self):
        with pytest.raises(ValidationError):
            shannon_entropy([0.6, 0.5, -0.1])

    def test_bad_normalization_rejected(self):
        with pytest.raises(ValidationError):
            shannon_entropy([0.4, 0.4])

    def test_tiny_negative_roundoff_tolerated(self):
        assert shannon_entropy([1.0, -1e-13, 1e-13]) == pytest.approx(0.0, abs=1e-11)


class TestCoherence:
    def test_single_dimension_is_fully_coherent(self):
        assert coherence(uniform_spec(7, (3,))) == 1.0

    def test_orthogonal_states_kill_coherence(self):
        assert coherence(uniform_spec(5, (0, 1, 2, 3, 4))) == pytest.approx(0.0, abs=1e-12)

    def test_six_path_two_dimensional_value(self):
        assert coherence(uniform_spec(6, (0, 3))) == pytest.approx(0.613, abs=5e-4)


class TestKnowledge:
    def test_six_path_equally_spaced_value(self):
        assert knowledge_frio(uniform_spec(6, (0, 3)), 0.0) == pytest.approx(0.387, abs=5e-4)

    @given(separation_levels)
    def test_orthogonal_states_give_full_knowledge(self, xi):
        spec = uniform_spec(4, (0, 1, 2, 3))
        assert knowledge_frio(spec, xi) == pytest.approx(1.0, abs=1e-9)
        assert knowledge_concatenated(spec, xi) == pytest.approx(1.0, abs=1e-9)

    def test_full_separation_of_independent_states(self):
        spec = spec_from_probabilities(3, (0, 1, 2), (0.5, 0.3, 0.2))
        assert knowledge_frio(spec, 1.0) == pytest.approx(3 * 0.2, abs=1e-10)

    @given(detector_specs())
    def test_concatenated_matches_standard_at_zero_level(self, spec):
        assert knowledge_concatenated(spec, 0.0) == pytest.approx(
            knowledge_frio(spec, 0.0), abs=1e-12
        )

    @given(separation_levels)
    def test_uniform_spec_is_level_independent(self, xi):
        spec = uniform_spec(6, (0, 2))
        assert knowledge_concatenated(spec, xi) == pytest.approx(knowledge_me(spec), abs=1e-12)

    @given(separation_levels)
    def test_identical_failure_states_make_concatenation_ineffective(self, xi):
        spec = spec_from_probabilities(3, (0, 1, 2), (0.6, 0.2, 0.2))
        assert knowledge_concatenated(spec, xi) == pytest.approx(
            knowledge_frio(spec, xi), abs=1e-12
        )

    def test_minimum_error_values(self):
        assert knowledge_me(uniform_spec(6, (0, 1))) == pytest.approx(0.178, abs=5e-4)
        assert knowledge_me(uniform_spec(6, (0, 2))) == pytest.approx(0.129, abs=5e-4)
        assert knowledge_me(uniform_spec(3, (1,))) == 0.0


class TestHolevoCeiling:
    def test_orthogonal_states(self):
        assert holevo_ceiling(uniform_spec(4, (0, 1, 2, 3))) == pytest.approx(1.0, abs=1e-12)

    def test_six_path_two_dimensional(self):
        assert holevo_ceiling(uniform_spec(6, (0, 3))) == pytest.approx(0.387, abs=5e-4)

    def test_ceiling_dominates_minimum_error_knowledge(self):
        for spec in iter_specs(150, seed=4242):
            assert knowledge_me(spec) <= holevo_ceiling(spec) + 1e-9


class TestEvaluatePoint:
    def test_equally_spaced_point_saturates(self):
        point = evaluate_point(uniform_spec(6, (0, 3)), Strategy.ME)
        assert point.knowledge == pytest.approx(0.387, abs=5e-4)
        assert point.coherence == pytest.approx(0.613, abs=5e-4)
        assert point.duality_sum == pytest.approx(1.0, abs=1e-9)

    def test_adjacent_point(self):
        point = evaluate_point(uniform_spec(6, (0, 1)), "me")
        assert point.duality_sum == pytest.approx(0.791, abs=1e-3)

    def test_nonadjacent_point(self):
        point = evaluate_point(uniform_spec(6, (0, 2)), "me")
        assert point.duality_sum == pytest.approx(0.742, abs=1e-3)

    def test_minimum_error_ignores_level(self):
        point = evaluate_point(uniform_spec(6, (0, 1)), Strategy.ME, xi=0.8)
        assert point.xi == 0.0

    def test_unknown_strategy_rejected(self):
        with pytest.raises(ValueError):
            evaluate_point(uniform_spec(6, (0, 1)), "helstrom")


class TestDualityBound:
    @given(detector_specs(), separation_levels)
    def test_bound_holds_for_all_strategies(self, spec, xi):
        c = coherence(spec)
        for knowledge in (
            knowledge_me(spec),
            knowledge_frio(spec, xi),
            knowledge_concatenated(spec, xi),
        ):
            assert 0.0 <= knowledge <= 1.0
            assert c + knowledge <= 1.0 + 1e-9

    def test_bound_over_seeded_grid(self):
        for spec in iter_specs(200, seed=77):
            c = coherence(spec)
            for xi in (0.0, 0.5, 1.0):
                assert c + knowledge_frio(spec, xi) <= 1.0 + 1e-9
                assert c + knowledge_concatenated(spec, xi) <= 1.0 + 1e-9


class TestHierarchy:
    def test_standard_never_beats_concatenated(self):
        for spec in iter_specs(150, seed=901):
            for xi in (0.0, 0.3, 0.7, 1.0):
                assert knowledge_frio(spec, xi) <= knowledge_concatenated(spec, xi) + 1e-9

    def test_concatenated_below_minimum_error_for_generic_independent_states(self):
        # Generic coefficients at full support only; degenerate minimum pairs
        # can violate this even there, see the counterexamples below.
        count = 0
        for spec in iter_specs(400, seed=3000):
            if spec.n != spec.N:
                continue
            count += 1
            k_me = knowledge_me(spec)
            for xi in (0.25, 0.5, 0.75, 1.0):
                assert knowledge_concatenated(spec, xi) <= k_me + 1e-9
        assert count > 50

    def test_dependent_states_can_beat_minimum_error_via_failure_branch(self):
        # For linearly dependent families the failure branch can carry enough
        # information that the two-step strategy extracts more mutual
        # information than the square-root measurement, which is only an
        # error-probability optimum.
        spec = spec_from_probabilities(
            5, (0, 3, 4), (0.3052215992158848, 0.5343124989962247, 0.1604659017878905)
        )
        assert knowledge_concatenated(spec, 1.0) > knowledge_me(spec) + 1e-3

    def test_degenerate_minimum_beats_minimum_error_even_at_full_support(self):
        # A triply degenerate minimum keeps the failure branch uninformative,
        # yet the standard strategy itself overtakes its xi = 0 value in a
        # narrow window of small separation levels.
        spec = spec_from_probabilities(4, (0, 1, 2, 3), (0.76, 0.08, 0.08, 0.08))
        assert knowledge_frio(spec, 0.02) > knowledge_me(spec) + 1e-5


class TestMonotonicity:
    def test_standard_knowledge_never_increases_for_generic_specs(self):
        # Generic draws; near-degenerate minimum coefficients can produce
        # genuine non-monotonic bumps, pinned below.
        checked = 0
        for spec in iter_specs(150, seed=515, min_dim=2):
            if spec.is_uniform:
                continue
            checked += 1
            values = [knowledge_frio(spec, xi) for xi in XI_GRID]
            assert max(b - a for a, b in zip(values, values[1:])) <= 1e-9
        assert checked > 100

    def test_concatenated_knowledge_never_increases_for_generic_independent_states(self):
        checked = 0
        for spec in iter_specs(400, seed=9100):
            if spec.n != spec.N or spec.is_uniform:
                continue
            checked += 1
            values = [knowledge_concatenated(spec, xi) for xi in XI_GRID]
            assert max(b - a for a, b in zip(values, values[1:])) <= 1e-9
        assert checked > 50

    def test_success_probability_never_increases(self):
        from duality_lab.measurements import separation_params

        for spec in iter_specs(150, seed=616):
            values = [separation_params(spec, xi).p_success for xi in XI_GRID]
            assert max(b - a for a, b in zip(values, values[1:])) <= 1e-12

    def test_near_degenerate_minimum_breaks_knowledge_monotonicity(self):
        # Two minimum coefficients 0.5% apart on a three-index support: the
        # standard strategy's knowledge genuinely rises along the grid.
        spec = spec_from_probabilities(
            6, (3, 4, 5),
            (0.08019213712034855, 0.07977445467663835, 0.8400334082030132),
        )
        values = [knowledge_frio(spec, xi) for xi in XI_GRID]
        assert max(b - a for a, b in zip(values, values[1:])) > 1e-5


class TestTrivialSaturation:
    @pytest.mark.parametrize("N", [2, 3, 4, 6])
    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_one_dimensional_support(self, N, strategy):
        point = evaluate_point(uniform_spec(N, (1,)), strategy, xi=0.4)
        assert point.knowledge == pytest.approx(0.0, abs=1e-9)
        assert point.coherence == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize("N", [2, 3, 4, 6])
    @pytest.mark.parametrize("strategy", list(Strategy))
    def test_orthogonal_family(self, N, strategy):
        point = evaluate_point(uniform_spec(N, tuple(range(N))), strategy, xi=0.4)
        assert point.knowledge == pytest.approx(1.0, abs=1e-9)
        assert point.coherence == pytest.approx(0.0, abs=1e-9)


class TestTwoPathTightness:
    def test_minimum_error_meets_the_ceiling_only_at_trivial_points(self):
        grid = np.linspace(0.0, 0.5, 101)
        for p_min in grid:
            if p_min == 0.0:
                spec = uniform_spec(2, (0,))
            else:
                spec = spec_from_probabilities(2, (0, 1), (1 - p_min, p_min))
            gap = holevo_ceiling(spec) - knowledge_me(spec)
            if p_min in (0.0, 0.5):
                assert abs(gap) < 1e-9
            else:
                assert gap > 1e-9
