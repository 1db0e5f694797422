"""Opinion construction, evidence mapping, expectation and fusion operators."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyrep.opinions import (
    DogmaticConflictError,
    EvidenceCounts,
    Opinion,
    consensus,
    expectation,
    from_evidence,
    recommendation,
)

TOL = 1e-9

_unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def opinions(draw, min_uncertainty=0.0):
    """Valid opinions with b + d + u = 1 by construction."""
    belief = draw(_unit)
    disbelief = draw(
        st.floats(min_value=0.0, max_value=1.0 - belief, allow_nan=False, allow_infinity=False)
    )
    committed = belief + disbelief
    limit = 1.0 - min_uncertainty
    if committed > limit and committed > 0.0:
        scale = limit / committed
        belief *= scale
        disbelief *= scale
    uncertainty = 1.0 - belief - disbelief
    return Opinion(belief, disbelief, uncertainty, draw(_unit))


def guarded_opinions():
    # keeps uncertainty far enough from zero for stable chained divisions
    return opinions(min_uncertainty=1e-6)


def assert_opinions_close(first, second, tol=TOL):
    assert first.belief == pytest.approx(second.belief, abs=tol)
    assert first.disbelief == pytest.approx(second.disbelief, abs=tol)
    assert first.uncertainty == pytest.approx(second.uncertainty, abs=tol)


class TestOpinionValidation:
    def test_full_belief_boundary(self):
        opinion = Opinion(1.0, 0.0, 0.0, 0.5)
        assert opinion.belief == 1.0

    def test_vacuous_opinion(self):
        opinion = Opinion(0.0, 0.0, 1.0, 0.5)
        assert opinion.uncertainty == 1.0

    def test_additivity_violation_rejected(self):
        with pytest.raises(ValueError):
            Opinion(0.5, 0.5, 0.5, 0.5)

    @pytest.mark.parametrize("component", range(4))
    def test_out_of_range_component_rejected(self, component):
        values = [0.0, 0.0, 1.0, 0.5]
        values[component] = 1.5
        if component < 3:
            values[2] = -0.5  # keep the sum at 1 so the bound check trips
        with pytest.raises(ValueError):
            Opinion(*values)

    @pytest.mark.parametrize("bad", [float("nan"), float("inf"), -float("inf")])
    def test_non_finite_rejected(self, bad):
        with pytest.raises(ValueError):
            Opinion(bad, 0.0, 1.0, 0.5)

    def test_tolerated_rounding_noise(self):
        Opinion(0.1 + 0.2, 0.7 - 1e-12, 0.0, 0.5)  # sum within 1e-9 of one

    @given(opinions())
    def test_generated_opinions_are_valid(self, opinion):
        assert abs(opinion.belief + opinion.disbelief + opinion.uncertainty - 1.0) <= TOL


class TestEvidenceCounts:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            EvidenceCounts(-1, 0)
        with pytest.raises(ValueError):
            EvidenceCounts(0, -2)

    def test_rejects_non_integer(self):
        with pytest.raises(TypeError):
            EvidenceCounts(1.5, 0)

    def test_total(self):
        assert EvidenceCounts(3, 4).total == 7


class TestFromEvidence:
    def test_no_evidence_is_vacuous(self):
        opinion = from_evidence(EvidenceCounts(0, 0), 0.5)
        assert (opinion.belief, opinion.disbelief, opinion.uncertainty) == (0.0, 0.0, 1.0)

    def test_balanced_evidence(self):
        opinion = from_evidence(EvidenceCounts(2, 2), 0.5)
        assert opinion.belief == 1 / 3
        assert opinion.disbelief == 1 / 3
        assert opinion.uncertainty == 1 / 3

    def test_purely_positive_evidence(self):
        opinion = from_evidence(EvidenceCounts(3, 0), 0.5)
        assert (opinion.belief, opinion.disbelief, opinion.uncertainty) == (0.6, 0.0, 0.4)

    def test_base_rate_must_be_probability(self):
        with pytest.raises(ValueError):
            from_evidence(EvidenceCounts(1, 1), 1.5)

    @given(st.integers(0, 400), st.integers(0, 400))
    def test_additivity_is_exact(self, positive, negative):
        opinion = from_evidence(EvidenceCounts(positive, negative), 0.5)
        assert opinion.belief + opinion.disbelief + opinion.uncertainty == 1.0
        assert opinion.uncertainty == 2.0 / (positive + negative + 2)

    @given(st.integers(0, 400), st.integers(0, 400))
    def test_components_match_quotients(self, positive, negative):
        opinion = from_evidence(EvidenceCounts(positive, negative), 0.5)
        denominator = positive + negative + 2
        assert opinion.belief == pytest.approx(positive / denominator, abs=TOL)
        assert opinion.disbelief == pytest.approx(negative / denominator, abs=TOL)

    @given(st.integers(0, 200), st.integers(0, 200))
    def test_belief_nondecreasing_in_support(self, positive, negative):
        lower = from_evidence(EvidenceCounts(positive, negative), 0.5)
        higher = from_evidence(EvidenceCounts(positive + 1, negative), 0.5)
        assert higher.belief >= lower.belief - TOL

    @given(st.integers(0, 200), st.integers(0, 200))
    def test_uncertainty_strictly_decreasing_in_total(self, positive, negative):
        current = from_evidence(EvidenceCounts(positive, negative), 0.5)
        bigger = from_evidence(EvidenceCounts(positive + 1, negative), 0.5)
        assert bigger.uncertainty < current.uncertainty

    def test_uncertainty_vanishes_with_mass_of_evidence(self):
        assert from_evidence(EvidenceCounts(10**6, 10**6), 0.5).uncertainty < 1e-5


class TestExpectation:
    def test_certainty(self):
        assert expectation(Opinion(1.0, 0.0, 0.0, 0.5)) == 1.0

    def test_vacuous_collapses_to_prior(self):
        assert expectation(Opinion(0.0, 0.0, 1.0, 0.5)) == 0.5

    def test_direct_substitution(self):
        assert expectation(Opinion(0.5, 0.3, 0.2, 0.5)) == pytest.approx(0.6, abs=TOL)

    @given(opinions())
    def test_bounded_by_belief_and_belief_plus_uncertainty(self, opinion):
        value = expectation(opinion)
        assert opinion.belief - TOL <= value <= opinion.belief + opinion.uncertainty + TOL
        assert -TOL <= value <= 1.0 + TOL


class TestConsensus:
    def test_two_vacuous_stay_vacuous(self):
        vacuous = Opinion(0.0, 0.0, 1.0, 0.5)
        assert_opinions_close(consensus(vacuous, vacuous), vacuous)

    def test_worked_example(self):
        fused = consensus(Opinion(0.6, 0.0, 0.4, 0.5), Opinion(0.4, 0.2, 0.4, 0.5))
        assert_opinions_close(fused, Opinion(0.625, 0.125, 0.25, 0.5))

    def test_second_worked_example(self):
        fused = consensus(Opinion(0.6, 0.2, 0.2, 0.5), Opinion(0.4, 0.2, 0.4, 0.5))
        assert fused.belief == pytest.approx(0.32 / 0.52, abs=TOL)
        assert fused.disbelief == pytest.approx(0.12 / 0.52, abs=TOL)
        assert fused.uncertainty == pytest.approx(0.08 / 0.52, abs=TOL)

    def test_base_rate_comes_from_first_operand(self):
        fused = consensus(Opinion(0.2, 0.2, 0.6, 0.3), Opinion(0.1, 0.1, 0.8, 0.9))
        assert fused.base_rate == 0.3

    def test_dogmatic_conflict(self):
        dogmatic = Opinion(0.7, 0.3, 0.0, 0.5)
        with pytest.raises(DogmaticConflictError):
            consensus(dogmatic, Opinion(1.0, 0.0, 0.0, 0.5))

    def test_one_dogmatic_operand_is_fine(self):
        fused = consensus(Opinion(1.0, 0.0, 0.0, 0.5), Opinion(0.0, 0.0, 1.0, 0.5))
        assert_opinions_close(fused, Opinion(1.0, 0.0, 0.0, 0.5))

    @given(opinions(), opinions(min_uncertainty=1e-9))
    def test_additivity_preserved(self, first, second):
        fused = consensus(first, second)
        assert abs(fused.belief + fused.disbelief + fused.uncertainty - 1.0) <= TOL

    @given(opinions(), opinions(min_uncertainty=1e-9))
    def test_commutative(self, first, second):
        assert_opinions_close(consensus(first, second), consensus(second, first))

    @settings(max_examples=300)
    @given(guarded_opinions(), guarded_opinions(), guarded_opinions())
    def test_associative(self, a, b, c):
        left = consensus(consensus(a, b), c)
        right = consensus(a, consensus(b, c))
        assert_opinions_close(left, right)


class TestRecommendation:
    def test_full_trust_passes_advice_through(self):
        advice = Opinion(0.5, 0.3, 0.2, 0.5)
        assert_opinions_close(recommendation(Opinion(1.0, 0.0, 0.0, 0.5), advice), advice)

    def test_full_distrust_yields_vacuous(self):
        fused = recommendation(Opinion(0.0, 1.0, 0.0, 0.5), Opinion(0.5, 0.3, 0.2, 0.5))
        assert_opinions_close(fused, Opinion(0.0, 0.0, 1.0, 0.5))

    def test_worked_example(self):
        fused = recommendation(Opinion(0.8, 0.1, 0.1, 0.5), Opinion(0.5, 0.3, 0.2, 0.5))
        assert_opinions_close(fused, Opinion(0.4, 0.24, 0.36, 0.5))

    def test_base_rate_comes_from_advice(self):
        fused = recommendation(Opinion(0.5, 0.2, 0.3, 0.1), Opinion(0.2, 0.2, 0.6, 0.8))
        assert fused.base_rate == 0.8

    @given(opinions(), opinions())
    def test_additivity_preserved(self, trust, advice):
        fused = recommendation(trust, advice)
        assert abs(fused.belief + fused.disbelief + fused.uncertainty - 1.0) <= TOL

    @settings(max_examples=300)
    @given(opinions(), opinions(), opinions())
    def test_associative(self, a, b, c):
        left = recommendation(recommendation(a, b), c)
        right = recommendation(a, recommendation(b, c))
        assert_opinions_close(left, right)

    def test_not_commutative(self):
        # The belief product is symmetric by construction, so the order gap
        # shows up in disbelief, uncertainty and the expectation.
        x = Opinion(0.9, 0.05, 0.05, 0.5)
        y = Opinion(0.3, 0.5, 0.2, 0.5)
        xy = recommendation(x, y)
        yx = recommendation(y, x)
        assert abs(xy.disbelief - yx.disbelief) > 1e-3
        assert abs(xy.uncertainty - yx.uncertainty) > 1e-3
        assert abs(expectation(xy) - expectation(yx)) > 1e-3
