#!/usr/bin/env python3

import sys

import numpy as np
import pytest

sys.path.append('.')

from core.matcore import spd_sqrt
from services.embed import co_distance
from services.gaussmodel import Gaussian
from services.generate_random import random_invertible, random_spd
from services.minimax import fr_circumcenter, k_center, rieseb_spd, spd_distances
from services.spdgeom import rho_spd, spd_geodesic
from utils.error_handler import DimensionMismatch, EmptyInput, InputValidationError, KTooLarge


def test_spd_distances_match_rho(rng):
    points = np.stack([random_spd(rng, 3) + np.eye(3) for _ in range(4)])
    center = random_spd(rng, 3) + np.eye(3)
    expected = [rho_spd(center, p) for p in points]
    np.testing.assert_allclose(spd_distances(center, points), expected, rtol=1e-10)


def test_singleton_is_its_own_center():
    p = np.array([[2.0, 0.3], [0.3, 1.0]])
    np.testing.assert_allclose(rieseb_spd([p], 50), p, atol=1e-12)


def test_single_iterate_is_first_point():
    p, q = np.eye(2), 4.0 * np.eye(2)
    np.testing.assert_allclose(rieseb_spd([p, q], 1), p)


def test_second_iterate_is_midpoint():
    p, q = np.eye(2), np.diag([4.0, 9.0])
    np.testing.assert_allclose(rieseb_spd([p, q], 2), spd_geodesic(p, q, 0.5), atol=1e-12)


@pytest.mark.slow
def test_pair_center_is_equidistant(rng):
    p, q = random_spd(rng, 3) + np.eye(3), random_spd(rng, 3) + np.eye(3)
    center = rieseb_spd([p, q], 10_000)
    half = 0.5 * rho_spd(p, q)
    assert rho_spd(center, p) == pytest.approx(half, rel=1e-2)
    assert rho_spd(center, q) == pytest.approx(half, rel=1e-2)


def test_center_moves_with_congruence(rng):
    points = [random_spd(rng, 2) + np.eye(2) for _ in range(5)]
    a = random_invertible(rng, 2)
    center = rieseb_spd(points, 200)
    moved = rieseb_spd([a @ p @ a.T for p in points], 200)
    np.testing.assert_allclose(moved, a @ center @ a.T, rtol=1e-7, atol=1e-9)


def test_center_improves_on_either_endpoint(rng):
    p, q = random_spd(rng, 3) + np.eye(3), random_spd(rng, 3) + np.eye(3)
    points = np.stack([p, q])
    reach = spd_distances(rieseb_spd([p, q], 200), points).max()
    for endpoint in (p, q):
        assert reach < spd_distances(endpoint, points).max()
    assert reach == pytest.approx(0.5 * rho_spd(p, q), rel=2e-2)


def test_rieseb_rejects_bad_input():
    with pytest.raises(EmptyInput):
        rieseb_spd([], 10)
    with pytest.raises(DimensionMismatch):
        rieseb_spd([np.eye(2), np.eye(3)], 10)
    with pytest.raises(InputValidationError):
        rieseb_spd([np.eye(2)], 0)


def test_circumcenter_of_singleton():
    n = Gaussian(mean=[1.0, -1.0], cov=[[2.0, 0.5], [0.5, 1.0]])
    ball = fr_circumcenter([n], 20)
    assert ball.center.allclose(n, atol=1e-10)
    assert ball.radius == pytest.approx(0.0, abs=1e-10)
    assert ball.projection_gap == pytest.approx(0.0, abs=1e-12)
    assert ball.iterations == 20


def test_circumcenter_of_symmetric_means():
    cov = np.eye(2)
    gaussians = [Gaussian(mean=m, cov=cov) for m in ([1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0])]
    ball = fr_circumcenter(gaussians, 2000)
    np.testing.assert_allclose(ball.center.mean, [0.0, 0.0], atol=5e-2)
    radii = [co_distance(ball.center, g) for g in gaussians]
    assert max(radii) == pytest.approx(ball.radius)
    assert max(radii) - min(radii) < 0.1


@pytest.mark.slow
@pytest.mark.parametrize("pair", ["han_park", "same_mean"])
def test_pair_circumcenter_is_equidistant(request, pair):
    if pair == "same_mean":
        gaussians = [
            Gaussian(mean=[1.0, 2.0], cov=[[1.0, 0.2], [0.2, 0.5]]),
            Gaussian(mean=[1.0, 2.0], cov=[[3.0, -0.4], [-0.4, 2.0]]),
        ]
    else:
        gaussians = list(request.getfixturevalue(pair))
    ball = fr_circumcenter(gaussians, 10_000)
    first, second = (co_distance(ball.center, g) for g in gaussians)
    assert first == pytest.approx(second, rel=1e-2)


@pytest.mark.slow
def test_same_mean_pair_radius_is_half_the_distance():
    n1 = Gaussian(mean=[1.0, 2.0], cov=[[1.0, 0.2], [0.2, 0.5]])
    n2 = Gaussian(mean=[1.0, 2.0], cov=[[3.0, -0.4], [-0.4, 2.0]])
    ball = fr_circumcenter([n1, n2], 10_000)
    assert ball.projection_gap == pytest.approx(0.0, abs=1e-9)
    assert ball.radius <= 1.05 * co_distance(n1, n2) / 2


@pytest.mark.slow
def test_shared_covariance_center_is_whitened_euclidean_center():
    cov = np.array([[2.0, 0.6], [0.6, 1.0]])
    root = spd_sqrt(cov)
    offset = np.array([1.0, -0.5])
    angles = np.deg2rad([90.0, 210.0, 330.0])
    # equilateral in whitened coordinates: the enclosing ball is centered at the origin
    whitened = 0.5 * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    gaussians = [Gaussian(mean=offset + root @ w, cov=cov) for w in whitened]
    ball = fr_circumcenter(gaussians, 10_000)
    center = np.linalg.solve(root, ball.center.mean - offset)
    np.testing.assert_allclose(center, [0.0, 0.0], atol=1e-2)


def test_circumcenter_payload_round_trips_center():
    gaussians = [Gaussian(mean=[0.0], cov=[[1.0]]), Gaussian(mean=[2.0], cov=[[4.0]])]
    payload = fr_circumcenter(gaussians, 100).to_payload()
    assert set(payload) == {"center", "center_spd", "radius", "projection_gap", "iterations"}
    assert len(payload["center"]["mean"]) == 1
    assert np.array(payload["center_spd"]).shape == (2, 2)


def clusters():
    near = [Gaussian(mean=[x, 0.0], cov=np.eye(2)) for x in (0.0, 0.2, 0.4)]
    far = [Gaussian(mean=[20.0 + x, 0.0], cov=np.eye(2)) for x in (0.0, 0.2)]
    return near + far


def test_k_center_separates_two_clusters():
    gaussians = clusters()
    result = k_center(gaussians, 2)
    assert result.center_indices[0] == 0
    assert result.center_indices[1] in (3, 4)
    assert result.assignment == [0, 0, 0, 1, 1]
    assert result.radius < 1.0


def test_k_center_single_center():
    gaussians = clusters()
    result = k_center(gaussians, 1)
    assert result.center_indices == [0]
    assert result.assignment == [0] * 5
    assert result.radius == pytest.approx(max(co_distance(gaussians[0], g) for g in gaussians))


def test_k_center_every_point_a_center():
    gaussians = clusters()
    result = k_center(gaussians, len(gaussians))
    assert sorted(result.center_indices) == list(range(5))
    assert result.radius == pytest.approx(0.0, abs=1e-12)
    for i, a in enumerate(result.assignment):
        assert result.center_indices[a] == i


def test_k_center_seed_is_reproducible():
    gaussians = clusters()
    first = k_center(gaussians, 2, seed=5)
    second = k_center(gaussians, 2, seed=5)
    assert first.center_indices == second.center_indices
    assert first.radius == second.radius


def test_k_center_rejects_bad_k():
    with pytest.raises(KTooLarge):
        k_center(clusters(), 6)
    with pytest.raises(InputValidationError):
        k_center(clusters(), 0)
    with pytest.raises(EmptyInput):
        k_center([], 1)
