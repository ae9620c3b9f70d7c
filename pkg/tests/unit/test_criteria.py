"""Test compactness constants and criterion evaluation."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from myers_verify.exceptions import ParameterError
from myers_verify.models.criterion import C3Convention, CriterionParams
from myers_verify.models.profiles import (
    ConstantGrowth,
    LinearWeight,
    LogGrowthWeight,
    PowerLawGrowth,
    PowerSaturatingWeight,
    SaturatingLinearWeight,
    TabulatedGrowth,
)
from myers_verify.services.criteria import (
    DIVERGENT_TAIL_NOTE,
    cgt_diameter,
    const_c1,
    const_c2,
    const_c3,
    const_c4,
    const_c5,
    const_c6,
    constant_report,
    epsilon_optimize,
    evaluate_criterion,
    myers_diameter,
    qiu_delta2,
    tail_integral,
    wan_constant,
)
from myers_verify.services.profiles import (
    euclidean,
    hyperbolic,
    perturbed_linear,
    perturbed_sine,
)
from tests.conftest import QuadraticWeight

INVERSE_SQUARE_SHIFTED = PowerLawGrowth(2.0, 1.0)  # h = 1/(1+s)^2


class TestTailIntegral:
    """Test the tail integral of h."""

    def test_power_law_closed_form(self):
        """Test int_1^inf (1+s)^{-2} ds = 1/2 and the b = 3 case."""
        assert tail_integral(INVERSE_SQUARE_SHIFTED, 1.0) == pytest.approx(0.5)
        assert tail_integral(PowerLawGrowth(3.0, 1.0), 1.0) == pytest.approx(0.125)

    def test_constant_diverges(self):
        """Test constant h has an infinite tail."""
        assert tail_integral(ConstantGrowth(), 1.0) == math.inf

    def test_tabulated_matches_closed_form(self):
        """Test spline head plus power-law extension for sampled (1+s)^{-2}."""
        r = np.linspace(0.0, 64.0, 1025)
        h = TabulatedGrowth(r, (1.0 + r) ** -2)

        assert tail_integral(h, 1.0) == pytest.approx(0.5, rel=1e-2)

    def test_eps_must_be_positive(self):
        """Test eps <= 0 raises."""
        with pytest.raises(ParameterError):
            tail_integral(INVERSE_SQUARE_SHIFTED, 0.0)


class TestConstants:
    """Test the closed-form constants."""

    def test_c1(self):
        """Test C1 for h = 1/(1+s)^2, n = 2, delta = 1/4, eps = 1."""
        assert const_c1(INVERSE_SQUARE_SHIFTED, 2, 0.25, 1.0, 0.01) == pytest.approx(
            8.01
        )

    def test_c1_zero_delta(self):
        """Test delta -> 0 leaves (n-1)/eps over the tail."""
        assert const_c1(INVERSE_SQUARE_SHIFTED, 2, 0.0, 1.0, 0.0) == pytest.approx(2.0)

    def test_c1_divergent_tail_is_eps1(self):
        """Test any positive constant works when the tail diverges."""
        assert const_c1(ConstantGrowth(), 3, 0.5, 1.0, 0.01) == 0.01

    def test_c2(self):
        """Test C2 with b = 2, r0 = 1, delta -> 0, eps = 1."""
        assert const_c2(2, 2.0, 1.0, 0.0, 1.0, 0.0) == pytest.approx(2.0)

    def test_c2_small_b(self):
        """Test b <= 1 collapses to eps1."""
        assert const_c2(3, 1.0, 1.0, 0.1, 1.0, 0.02) == 0.02

    def test_c2_continuous_at_b_one(self):
        """Test the b -> 1+ limit approaches eps1."""
        near = const_c2(3, 1.0 + 1e-9, 1.0, 0.1, 1.0, 0.02)

        assert near == pytest.approx(0.02, abs=1e-6)

    def test_c3_conventions(self):
        """Test the proof (2a) and statement (a) forms."""
        h = INVERSE_SQUARE_SHIFTED
        proof = const_c3(h, 2, 1.0, 1.0, 0.0, C3Convention.PROOF)
        statement = const_c3(h, 2, 1.0, 1.0, 0.0, "statement")

        assert proof == pytest.approx(6.0)
        assert statement == pytest.approx(4.0)

    def test_c4_branches(self):
        """Test the three power-law branches of C4."""
        assert const_c4(2, 2.0, 1.0, 1.0, 1.0, 0.0) == pytest.approx(6.0)
        assert const_c4(3, 3.0, 1.0, 0.0, 1.0, 0.0) == pytest.approx(16.0)
        assert const_c4(3, 0.5, 1.0, 1.0, 1.0, 0.05) == 0.05

    def test_c5(self):
        """Test C5 = ((n+k-1)/eps) / tail."""
        assert const_c5(INVERSE_SQUARE_SHIFTED, 2, 1.0, 1.0, 0.0) == pytest.approx(4.0)

    def test_c6(self):
        """Test C6 for b > 2 and b <= 1."""
        assert const_c6(2, 1.0, 3.0, 1.0, 1.0, 0.01) == pytest.approx(16.0)
        assert const_c6(2, 1.0, 1.0, 1.0, 1.0, 0.01) == 0.01

    def test_wan(self):
        """Test the plain-Ricci constant for b > 2 and b = 2."""
        assert wan_constant(3, 3.0, 1.0) == pytest.approx(16.0)
        assert wan_constant(3, 3.0, 2.0) == pytest.approx(32.0)
        assert wan_constant(2, 2.0, 1.0, eps=1.0) == pytest.approx(2.0)

    def test_wan_requires_b_two(self):
        """Test b < 2 raises."""
        with pytest.raises(ParameterError, match="b >= 2"):
            wan_constant(3, 1.5, 1.0)

    def test_qiu(self):
        """Test delta2 = ((n-1)/eps + 2 delta1) / tail + eps1."""
        assert qiu_delta2(INVERSE_SQUARE_SHIFTED, 2, 1.0, 1.0, 0.0) == pytest.approx(
            6.0
        )

    def test_diameters(self):
        """Test the inverse-square and classical diameter bounds."""
        assert cgt_diameter(1.0, math.pi) == pytest.approx(math.e)
        assert cgt_diameter(2.0, math.pi) == pytest.approx(2 * math.e)
        assert myers_diameter(1.0) == pytest.approx(math.pi)
        assert myers_diameter(0.0) == math.inf

    def test_free_constants_checked(self):
        """Test eps <= 0 and eps1 < 0 raise."""
        with pytest.raises(ParameterError, match="eps must be > 0"):
            const_c5(INVERSE_SQUARE_SHIFTED, 2, 1.0, 0.0, 0.0)
        with pytest.raises(ParameterError, match="eps1"):
            const_c5(INVERSE_SQUARE_SHIFTED, 2, 1.0, 1.0, -0.1)


class TestConstantProperties:
    """Property checks on the constants."""

    @given(
        n=st.integers(min_value=2, max_value=10),
        b=st.floats(min_value=2.1, max_value=8.0),
        r0=st.floats(min_value=0.1, max_value=10.0),
    )
    def test_c6_at_k_zero_is_wan(self, n, b, r0):
        """Test C6 reduces to the plain-Ricci constant as k -> 0."""
        assert const_c6(n, 0.0, b, r0, 1.0, 0.0) == pytest.approx(
            wan_constant(n, b, r0), rel=1e-12
        )

    @given(
        eps1=st.floats(min_value=0.0, max_value=1.0),
        bump=st.floats(min_value=1e-3, max_value=1.0),
    )
    def test_monotone_in_eps1(self, eps1, bump):
        """Test every constant increases strictly with eps1."""
        h = INVERSE_SQUARE_SHIFTED
        assert const_c1(h, 3, 0.1, 1.0, eps1 + bump) > const_c1(h, 3, 0.1, 1.0, eps1)
        assert const_c5(h, 3, 1.0, 1.0, eps1 + bump) > const_c5(h, 3, 1.0, 1.0, eps1)

    @given(delta=st.floats(min_value=0.0, max_value=2.0))
    def test_c1_at_least_classical(self, delta):
        """Test a weight never lowers the constant below the delta = 0 value."""
        h = INVERSE_SQUARE_SHIFTED
        assert const_c1(h, 3, delta, 1.0, 0.0) >= const_c1(h, 3, 0.0, 1.0, 0.0)


class TestEpsilonOptimize:
    """Test the golden-section search over eps."""

    def test_c6_optimum(self):
        """Test eps* = r0/(b-2) = 1 with value 16 for n = 2, k = 1, b = 3."""
        optimum = epsilon_optimize("C6", 2, k=1.0, b=3.0, r0=1.0)

        assert optimum.epsilon == pytest.approx(1.0, rel=1e-4)
        assert optimum.value == pytest.approx(16.0, rel=1e-6)

    def test_c4_never_above_closed_form(self):
        """Test the optimum undercuts the closed form when a > 0."""
        optimum = epsilon_optimize("C4", 3, b=3.0, r0=1.0, a=1.0)

        assert optimum.value <= const_c4(3, 3.0, 1.0, 1.0, 1.0, 0.0)

    def test_requires_b_above_two(self):
        """Test b <= 2 raises."""
        with pytest.raises(ParameterError, match="b > 2"):
            epsilon_optimize("C6", 2, k=1.0, b=2.0)

    def test_other_variants_rejected(self):
        """Test only C4 and C6 have an eps objective."""
        with pytest.raises(ParameterError):
            epsilon_optimize("C1", 2)


class TestConstantReport:
    """Test constant selection and branch labels."""

    def test_c6_cross_check(self):
        """Test the closed form agrees with the optimised eps."""
        params = CriterionParams(variant="C6", n=2, k=1.0, b=3.0, r0=1.0)

        report = constant_report(params)

        assert report.value == pytest.approx(16.0)
        assert report.branch == "b>2"
        assert report.cross_check_delta < 1e-6

    def test_c4_smaller_constant_noted(self):
        """Test a note when the optimised eps beats the closed form."""
        params = CriterionParams(variant="C4", n=3, a=1.0, b=3.0, r0=1.0)

        report = constant_report(params)

        assert any("smaller constant" in note for note in report.notes)

    def test_divergent_tail_note(self):
        """Test the constant collapses to eps1 with a note."""
        params = CriterionParams(variant="C3", n=3, a=0.5, eps1=0.02)

        report = constant_report(params, ConstantGrowth())

        assert report.value == 0.02
        assert report.branch == "divergent-tail/proof"
        assert DIVERGENT_TAIL_NOTE in report.notes

    def test_statement_convention_note(self):
        """Test the statement form is flagged."""
        params = CriterionParams(variant="C3", n=3, a=0.5, convention="statement")

        report = constant_report(params, INVERSE_SQUARE_SHIFTED)

        assert report.branch.endswith("/statement")
        assert any("2a" in note for note in report.notes)

    def test_cgt_constant(self):
        """Test (n-1)(1/4 + nu^2) and the diameter note."""
        params = CriterionParams(variant="CGT", n=3, nu=math.pi, r0=1.0)

        report = constant_report(params)

        assert report.value == pytest.approx(2 * (0.25 + math.pi**2))
        assert any("diameter bound" in note for note in report.notes)

    def test_growth_required(self):
        """Test general-h variants need h."""
        with pytest.raises(ParameterError, match="growth function"):
            constant_report(CriterionParams(variant="C5", n=3, k=1.0))


class TestEvaluateCriterion:
    """Test criteria against manifolds with known compactness."""

    def test_sphere_c1_fails_with_large_constant(self, round_sphere):
        """Test Ric = 2 stays below C1 = 4.25 near the pole for h = 1/(1+s)^2."""
        params = CriterionParams(variant="C1", n=3, delta=0.01, eps1=0.01)

        verdict = evaluate_criterion(round_sphere, params, INVERSE_SQUARE_SHIFTED)

        assert verdict.constant_used == pytest.approx(4.25, rel=1e-3)
        assert not verdict.criterion_met
        assert verdict.min_margin == pytest.approx(-2.25, abs=1e-3)
        assert not verdict.inconsistent

    def test_sphere_c1_met(self, round_sphere):
        """Test h = (2+s)^{-2} lowers the curvature needed below Ric = 2."""
        params = CriterionParams(variant="C1", n=3, delta=0.01, eps1=0.01)

        verdict = evaluate_criterion(round_sphere, params, PowerLawGrowth(2.0, 2.0))

        assert verdict.criterion_met
        assert verdict.predicted_compact
        assert verdict.known_compact is True
        assert not verdict.inconsistent
        assert verdict.cross_check is not None

    @pytest.mark.parametrize("variant", ["C1", "C3", "C5"])
    def test_perturbed_sphere_met(self, variant):
        """Test the perturbed sphere meets the general-h criteria."""
        params = CriterionParams(
            variant=variant, n=3, delta=0.01, a=0.0, k=1.0, eps1=0.01
        )

        verdict = evaluate_criterion(
            perturbed_sine(3, 0.1), params, PowerLawGrowth(2.0, 5.0)
        )

        assert verdict.criterion_met
        assert not verdict.inconsistent

    @pytest.mark.parametrize(
        "manifold",
        [
            euclidean(3),
            hyperbolic(3),
            euclidean(3, LinearWeight(0.5)),
            euclidean(3, LogGrowthWeight(1.0)),
            euclidean(3, SaturatingLinearWeight(0.1)),
            euclidean(3, PowerSaturatingWeight(2.0, 2.0)),
            euclidean(3, LogGrowthWeight(-1.0)),
            perturbed_linear(3, 0.05),
        ],
        ids=[
            "flat",
            "hyperbolic",
            "linear",
            "log",
            "saturating",
            "power-saturating",
            "log-decaying",
            "perturbed-linear",
        ],
    )
    @pytest.mark.parametrize(
        "params",
        [
            CriterionParams(variant="C1", n=3, delta=1.0),
            CriterionParams(variant="C2", n=3, delta=1.0, b=1.0, r0=1.0),
            CriterionParams(variant="C3", n=3, a=1.0),
            CriterionParams(variant="C4", n=3, a=1.0, b=0.5, r0=1.0),
            CriterionParams(variant="C4", n=3, a=0.0, b=4.0, r0=1.0),
            CriterionParams(variant="C2", n=3, delta=0.5, b=1.0, r0=1.0),
            CriterionParams(variant="C5", n=3, k=1.0),
            CriterionParams(variant="C6", n=3, k=1.0, b=1.0, r0=1.0),
            CriterionParams(variant="Wan", n=3, b=2.0, r0=1.0),
            CriterionParams(variant="Qiu", n=3, delta1=1.0),
            CriterionParams(variant="CGT", n=3, nu=1.0, r0=1.0),
        ],
        ids=lambda p: p.variant.value,
    )
    def test_no_alarm_on_catalog(self, manifold, params):
        """Test no criterion fires on a non-compact catalog entry."""
        verdict = evaluate_criterion(manifold, params, ConstantGrowth(1.0))

        assert not verdict.inconsistent

    def test_weight_undefined_near_pole(self):
        """Test a weight singular at the pole never lets a criterion fire."""
        params = CriterionParams(variant="C4", n=2, a=0.0, b=4.0, r0=1.0)
        manifold = euclidean(2, PowerSaturatingWeight(2.0, 2.0))

        verdict = evaluate_criterion(manifold, params, ConstantGrowth(1.0))

        assert not verdict.criterion_met
        assert not verdict.inconsistent
        assert any("weight undefined" in note for note in verdict.notes)

    def test_decaying_curvature_caught_in_tail(self):
        """Test Ric_f = (1+r)^{-2} fails C2 with b = 1 beyond the test radius.

        The decay undercuts delta (1+r)^{-1} only for r > 99, past r_max_test.
        """
        params = CriterionParams(variant="C2", n=2, delta=0.5, b=1.0, r0=1.0)
        manifold = euclidean(2, LogGrowthWeight(-1.0))

        verdict = evaluate_criterion(manifold, params, ConstantGrowth(1.0))

        assert not verdict.criterion_met
        assert not verdict.inconsistent
        assert verdict.min_margin < 0
        assert any("tail checked" in note for note in verdict.notes)

    def test_tail_stops_before_overflow(self, hyperbolic_space):
        """Test the tail on hyperbolic space ends where sinh r is still finite."""
        params = CriterionParams(variant="C3", n=3, a=1.0)

        verdict = evaluate_criterion(hyperbolic_space, params, ConstantGrowth(1.0))

        assert math.isfinite(verdict.min_margin)
        expected = -2.0 - verdict.constant_used
        assert verdict.min_margin == pytest.approx(expected, rel=1e-6)
        assert any("tail checked" in note for note in verdict.notes)

    def test_weight_free_variant_ignores_weight_domain(self):
        """Test Wan bounds plain Ric, so a singular weight does not block it."""
        params = CriterionParams(variant="Wan", n=3, b=2.0, r0=1.0)
        manifold = euclidean(3, PowerSaturatingWeight(2.0, 2.0))

        verdict = evaluate_criterion(manifold, params, ConstantGrowth(1.0))

        assert not any("weight undefined" in note for note in verdict.notes)
        assert not verdict.inconsistent

    def test_gaussian_soliton_alarm(self, gaussian_soliton):
        """Test f' >= -a does not rule out the Gaussian soliton.

        Ric_f = 2 exceeds C3 = eps1 for a divergent tail, so the criterion
        fires on a non-compact manifold.
        """
        params = CriterionParams(variant="C3", n=2, a=1.0, eps1=0.01)

        verdict = evaluate_criterion(gaussian_soliton, params, ConstantGrowth(1.0))

        assert verdict.criterion_met
        assert verdict.inconsistent
        assert any("non-compact" in note for note in verdict.notes)

    def test_dimension_mismatch(self, round_sphere):
        """Test the criterion and manifold must agree on n."""
        params = CriterionParams(variant="C3", n=4, a=1.0)

        with pytest.raises(ParameterError, match="dimension"):
            evaluate_criterion(round_sphere, params, ConstantGrowth())

    def test_hypothesis_failure_reported(self):
        """Test |f| <= delta (r+1) failing blocks the criterion."""
        params = CriterionParams(variant="C1", n=3, delta=0.1)
        m = euclidean(3, QuadraticWeight(1.0))

        verdict = evaluate_criterion(m, params, ConstantGrowth())

        assert verdict.hypothesis_margin < 0
        assert not verdict.criterion_met
        assert any("hypothesis" in note for note in verdict.notes)
