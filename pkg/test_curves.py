#!/usr/bin/env python3

import sys

import numpy as np
import pytest

sys.path.append('.')

from core.registry_loader import golden_pair
from services.curves import (
    GENERAL_CURVES,
    Curve,
    CurveKind,
    projected_co_arrays,
    univariate_fr_arrays,
    univariate_fr_circle,
    univariate_fr_geodesic,
)
from services.gaussmodel import Gaussian, fisher_ds2_batch, jeffreys
from services.generate_random import random_pair
from utils.error_handler import CurveEvaluationError, DimensionMismatch, InputValidationError


def test_parse_aliases():
    assert CurveKind.parse("mixture") == CurveKind.MIXTURE
    assert CurveKind.parse(" CO ") == CurveKind.PROJECTED_CO
    assert CurveKind.parse("em-mid") == CurveKind.EM_MID
    with pytest.raises(InputValidationError):
        CurveKind.parse("spline")


@pytest.mark.parametrize("kind", GENERAL_CURVES)
def test_endpoints(han_park, kind):
    n1, n2 = han_park
    samples = Curve(kind=kind, n1=n1, n2=n2).sample([0.0, 1.0])
    assert samples.gaussian(0).allclose(n1, atol=1e-10)
    assert samples.gaussian(1).allclose(n2, atol=1e-10)


@pytest.mark.parametrize("kind", [CurveKind.MIXTURE, CurveKind.EXPONENTIAL, CurveKind.PROJECTED_CO])
def test_geodesics_are_reversible(rng, kind):
    n1, n2 = random_pair(rng, 2)
    ts = np.linspace(0.0, 1.0, 7)
    forward = Curve(kind=kind, n1=n1, n2=n2).sample(ts)
    backward = Curve(kind=kind, n1=n2, n2=n1).sample(1.0 - ts)
    np.testing.assert_allclose(forward.means, backward.means, atol=1e-8)
    np.testing.assert_allclose(forward.covs, backward.covs, atol=1e-8)


def test_mixture_midpoint_of_centered_pair():
    n1 = Gaussian(mean=[0.0, 0.0], cov=[[2.0, 0.5], [0.5, 1.0]])
    n2 = Gaussian(mean=[0.0, 0.0], cov=[[1.0, 0.0], [0.0, 3.0]])
    mid = Curve.of("m", n1, n2).evaluate(0.5)
    np.testing.assert_allclose(mid.cov, 0.5 * (n1.cov + n2.cov), atol=1e-14)


def test_exponential_midpoint_is_harmonic_mean():
    n1 = Gaussian(mean=[0.0], cov=[[1.0]])
    n2 = Gaussian(mean=[0.0], cov=[[4.0]])
    mid = Curve.of("e", n1, n2).evaluate(0.5)
    assert mid.cov[0, 0] == pytest.approx(1.6)


def test_projected_co_keeps_determinant_for_shared_covariance(example1):
    n1, n2 = example1
    _, _, _, path = projected_co_arrays(n1, n2, np.linspace(0.0, 1.0, 11))
    np.testing.assert_allclose(np.linalg.det(path), np.linalg.det(n1.cov), rtol=1e-9)


def test_projected_co_reports_defects(han_park):
    samples = Curve(kind=CurveKind.PROJECTED_CO, n1=han_park[0], n2=han_park[1]).grid(10)
    assert samples.defects.shape == (11,)
    assert samples.defects[0] == pytest.approx(0.0, abs=1e-12)
    assert samples.defects[-1] == pytest.approx(0.0, abs=1e-12)
    assert np.max(samples.defects) > 0.0


def test_univariate_fr_rejects_multivariate(han_park):
    with pytest.raises(DimensionMismatch):
        Curve.of("univariate-fr", *han_park)


def test_univariate_fr_vertical_segment():
    n1 = Gaussian(mean=[1.0], cov=[[1.0]])
    n2 = Gaussian(mean=[1.0], cov=[[9.0]])
    point = univariate_fr_geodesic(n1, n2, 0.25)
    assert point.mean[0] == pytest.approx(1.0)
    assert np.sqrt(point.cov[0, 0]) == pytest.approx(1.5)


def test_univariate_fr_apex_for_equal_spreads():
    n1 = Gaussian(mean=[0.0], cov=[[1.0]])
    n2 = Gaussian(mean=[3.0], cov=[[1.0]])
    circle = univariate_fr_circle(n1, n2)
    assert circle["r1"] == pytest.approx(circle["r2"], abs=1e-10)
    apex = univariate_fr_geodesic(n1, n2, 0.5)
    assert apex.mean[0] == pytest.approx(1.5)
    assert np.sqrt(apex.cov[0, 0]) == pytest.approx(circle["r1"])


def test_univariate_fr_points_lie_on_circle():
    n1 = Gaussian(mean=[0.0], cov=[[1.0]])
    n2 = Gaussian(mean=[2.0], cov=[[6.25]])
    circle = univariate_fr_circle(n1, n2)
    assert circle["r1"] == pytest.approx(circle["r2"], rel=1e-10)
    mu, sigma, theta = univariate_fr_arrays(0.0, 1.0, 2.0, 2.5, np.linspace(0.0, 1.0, 21))
    np.testing.assert_allclose((mu / np.sqrt(2.0) - circle["c"]) ** 2 + sigma ** 2, circle["r1"] ** 2, rtol=1e-10)
    steps = np.diff(theta)
    assert np.all(steps > 0) or np.all(steps < 0)
    assert mu[0] == 0.0 and sigma[-1] == 2.5


@pytest.mark.parametrize("pair", ["uni_12", "uni_34", "uni_23", "uni_24", "uni_13"])
def test_univariate_fr_angle_is_monotone(pair):
    n1, n2 = golden_pair(pair)
    m1, s1 = n1.mean[0], np.sqrt(n1.cov[0, 0])
    m2, s2 = n2.mean[0], np.sqrt(n2.cov[0, 0])
    _, _, theta = univariate_fr_arrays(m1, s1, m2, s2, np.linspace(0.0, 1.0, 101))
    steps = np.diff(theta)
    assert np.all(steps > 0) or np.all(steps < 0)


@pytest.mark.parametrize("kind", [CurveKind.MIXTURE, CurveKind.EXPONENTIAL])
def test_tangents_match_finite_differences(rng, kind):
    n1, n2 = random_pair(rng, 2)
    curve = Curve(kind=kind, n1=n1, n2=n2)
    t, h = 0.4, 1e-6
    ahead, behind = curve.evaluate(t + h), curve.evaluate(t - h)
    tangent = curve.tangent(t)
    np.testing.assert_allclose(tangent.d_mu, (ahead.mean - behind.mean) / (2 * h), rtol=1e-5, atol=1e-6)
    np.testing.assert_allclose(tangent.d_sigma, (ahead.cov - behind.cov) / (2 * h), rtol=1e-5, atol=1e-6)


def test_projected_co_has_no_closed_form_tangent(han_park):
    with pytest.raises(InputValidationError):
        Curve.of("co", *han_park).tangent(0.5)


@pytest.mark.slow
@pytest.mark.parametrize("kind", [CurveKind.MIXTURE, CurveKind.EXPONENTIAL])
def test_fisher_energy_along_dual_geodesics_is_jeffreys(han_park, kind):
    n1, n2 = han_park
    T = 10_000
    curve = Curve(kind=kind, n1=n1, n2=n2)
    ts = (np.arange(T) + 0.5) / T
    samples = curve.sample(ts)
    d_mus, d_sigmas = curve.tangents(ts)
    energy = float(np.mean(fisher_ds2_batch(samples.means, samples.covs, d_mus, d_sigmas)))
    assert energy == pytest.approx(jeffreys(n1, n2), rel=1e-3)


def test_sample_check_names_curve_and_t(han_park):
    n1, n2 = han_park
    curve = Curve(kind=CurveKind.MIXTURE, n1=n1, n2=n2)
    covs = np.stack([np.eye(2), np.array([[1.0, 2.0], [2.0, 1.0]])])
    with pytest.raises(CurveEvaluationError) as info:
        curve._check_samples(np.array([0.0, 0.25]), covs)
    assert info.value.kind == "m"
    assert info.value.t == 0.25
    assert info.value.exit_code == 3
