"""Test curvature along the radial geodesic."""

import math

import numpy as np
import pytest

from myers_verify.exceptions import DomainError, ParameterError
from myers_verify.models.profiles import (
    BoundedSineWeight,
    LinearWeight,
    LogGrowthWeight,
    SaturatingLinearWeight,
    TabulatedProfile,
)
from myers_verify.models.manifold import RadialManifold
from myers_verify.services import radial_manifold as rm
from myers_verify.services.profiles import (
    euclidean,
    hyperbolic,
    perturbed_linear,
    perturbed_sine,
    space_form,
    sphere,
)
from myers_verify.services.radial_manifold import RicciKind, ray_ricci
from tests.conftest import QuadraticWeight

ANALYTIC_CATALOG = [
    sphere(3),
    euclidean(3),
    hyperbolic(3),
    space_form(4, 0.5),
    space_form(4, -0.5),
    perturbed_sine(3, 0.1),
    perturbed_sine(7, -0.15),
    perturbed_linear(3, 0.05),
    perturbed_linear(2, -0.5),
]
ANALYTIC_IDS = [
    "sphere",
    "euclidean",
    "hyperbolic",
    "space-form-positive",
    "space-form-negative",
    "perturbed-sine",
    "perturbed-sine-7",
    "perturbed-linear",
    "perturbed-linear-negative",
]


def _derivative(func, r, h=1e-4):
    """Five-point central difference."""
    return (-func(r + 2 * h) + 8 * func(r + h) - 8 * func(r - h) + func(r - 2 * h)) / (
        12 * h
    )


def _check_grid(m):
    """r in [0.05, 0.95 r_dom], or [0.05, 10] on unbounded rays."""
    end = 0.95 * m.r_dom if m.is_bounded else 10.0
    return np.linspace(0.05, end, 400)


class TestCurvature:
    """Test Ric, m, m_f and the Bakry-Emery tensors."""

    def test_sphere(self, round_sphere):
        """Test Ric = n - 1 and m = (n-1) cot r on the unit sphere."""
        r = np.array([0.1, 1.0, 2.0])

        np.testing.assert_allclose(rm.ricci_radial(round_sphere, r), 2.0)
        np.testing.assert_allclose(rm.mean_curv(round_sphere, r), 2.0 / np.tan(r))

    def test_hyperbolic(self, hyperbolic_space):
        """Test Ric = -(n-1) on hyperbolic space."""
        assert rm.ricci_radial(hyperbolic_space, 3.0) == pytest.approx(-2.0)

    def test_flat_with_linear_weight(self):
        """Test m_f = (n-1)/r - delta and Ric_f = 0."""
        m = euclidean(3, LinearWeight(0.5))

        assert rm.m_f(m, 2.0) == pytest.approx(0.5)
        assert rm.ric_f(m, 2.0) == 0.0

    def test_gaussian_soliton(self, gaussian_soliton):
        """Test Ric_f = 2 and Ric_f^k = 2 - 4r^2/k for f = r^2."""
        assert rm.ric_f(gaussian_soliton, 5.0) == pytest.approx(2.0)
        assert rm.ric_f_k(gaussian_soliton, 4.0, 1.0) == pytest.approx(1.0)

    def test_ric_f_k_requires_positive_k(self, round_sphere):
        """Test k <= 0 raises."""
        with pytest.raises(ParameterError):
            rm.ric_f_k(round_sphere, 0.0, 1.0)

    def test_perturbed_sine_is_not_constant(self):
        """Test the perturbation changes the curvature away from the poles."""
        m = perturbed_sine(3, 0.1)

        assert rm.ricci_radial(m, 1.0) != pytest.approx(2.0, abs=1e-3)

    def test_tabulated_matches_sphere(self):
        """Test a sampled sin profile reproduces Ric = 2 away from the ends."""
        r = np.linspace(0.0, 3.0, 301)
        m = RadialManifold(n=3, profile=TabulatedProfile(r, np.sin(r)))

        grid = np.linspace(0.5, 2.5, 9)
        np.testing.assert_allclose(rm.ricci_radial(m, grid), 2.0, atol=1e-2)


class TestIdentities:
    """Test the equalities that rotational symmetry forces along the ray."""

    @pytest.mark.parametrize("m", ANALYTIC_CATALOG, ids=ANALYTIC_IDS)
    def test_riccati_equality(self, m):
        """Test m' + m^2/(n-1) + Ric = 0 on warped products."""
        r = _check_grid(m)

        def mean(x):
            return rm.mean_curv(m, x)

        residual = (
            _derivative(mean, r) + mean(r) ** 2 / (m.n - 1) + rm.ricci_radial(m, r)
        )

        assert np.max(np.abs(residual)) < 1e-6

    @pytest.mark.parametrize(
        "weight",
        [
            BoundedSineWeight(0.1),
            LinearWeight(0.5),
            LogGrowthWeight(1.0),
            SaturatingLinearWeight(0.2),
            QuadraticWeight(1.0),
        ],
        ids=["bounded-sine", "linear", "log", "saturating", "quadratic"],
    )
    @pytest.mark.parametrize("profile", ["sphere", "perturbed_linear"])
    def test_bochner_identity(self, profile, weight):
        """Test m_f' + m^2/(n-1) + Ric_f = 0 with a radial weight."""
        if profile == "sphere":
            m = sphere(3, weight)
        else:
            m = perturbed_linear(3, 0.05, weight)
        r = _check_grid(m)

        def weighted_mean(x):
            return rm.m_f(m, x)

        residual = (
            _derivative(weighted_mean, r)
            + np.asarray(rm.mean_curv(m, r)) ** 2 / (m.n - 1)
            + rm.ric_f(m, r)
        )

        assert np.max(np.abs(residual)) < 1e-6

    @pytest.mark.parametrize("n", [2, 3, 7])
    @pytest.mark.parametrize("H", [-1.0, 0.0, 0.5, 1.0, 4.0])
    def test_space_form_constant_ricci(self, n, H):
        """Test Ric = (n-1) H across the whole ray of a space form."""
        m = space_form(n, H)
        r = _check_grid(m)

        np.testing.assert_allclose(
            rm.ricci_radial(m, r), (n - 1) * H, rtol=1e-12, atol=1e-12
        )


class TestDomain:
    """Test evaluation outside the radial domain."""

    def test_below_r_min(self, round_sphere):
        """Test the pole itself is excluded."""
        with pytest.raises(DomainError, match="radius must lie"):
            rm.mean_curv(round_sphere, 0.0)

    def test_beyond_far_pole(self, round_sphere):
        """Test r >= pi is excluded on the sphere."""
        with pytest.raises(DomainError):
            rm.ricci_radial(round_sphere, math.pi)


class TestRayRicci:
    """Test the scalar Ricci input for the comparison ODE."""

    def test_clamps_at_the_poles(self, round_sphere):
        """Test the callable extends continuously to both poles."""
        ric = ray_ricci(round_sphere, RicciKind.PLAIN)

        assert ric(0.0) == pytest.approx(2.0)
        assert ric(math.pi) == pytest.approx(2.0)

    def test_weighted_kinds(self, gaussian_soliton):
        """Test the f and f-k kinds."""
        assert ray_ricci(gaussian_soliton, "f")(1.0) == pytest.approx(2.0)
        assert ray_ricci(gaussian_soliton, "f_k", k=2.0)(1.0) == pytest.approx(0.0)

    def test_f_k_needs_k(self, round_sphere):
        """Test the f-k kind without k raises."""
        with pytest.raises(ParameterError):
            ray_ricci(round_sphere, RicciKind.F_K)
