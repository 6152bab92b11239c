#!/usr/bin/env python3

import sys

import numpy as np
import pytest

sys.path.append('.')

from services.generate_random import random_invertible, random_spd
from services.spdgeom import (
    SiegelPoint,
    hilbert_projective,
    relative_eigenvalues,
    rho_spd,
    siegel_cross_ratio,
    siegel_distance,
    spd_geodesic,
    spd_geodesic_path,
)


def spd_pair(rng, d=3):
    return random_spd(rng, d) + 0.5 * np.eye(d), random_spd(rng, d) + 0.5 * np.eye(d)


def test_rho_spd_diagonal():
    p = np.diag([1.0, 1.0])
    q = np.diag([np.e, np.e ** 2])
    assert rho_spd(p, q) == pytest.approx(np.sqrt(5.0))


def test_rho_spd_invariances(rng):
    p, q = spd_pair(rng)
    a = random_invertible(rng, 3)
    base = rho_spd(p, q)
    assert rho_spd(q, p) == pytest.approx(base, rel=1e-10)
    assert rho_spd(a @ p @ a.T, a @ q @ a.T) == pytest.approx(base, rel=1e-9)
    assert rho_spd(np.linalg.inv(p), np.linalg.inv(q)) == pytest.approx(base, rel=1e-9)


def test_relative_eigenvalues_sorted(rng):
    p, q = spd_pair(rng)
    lam = relative_eigenvalues(p, q)
    assert np.all(np.diff(lam) <= 0)
    np.testing.assert_allclose(np.sort(lam), np.sort(np.linalg.eigvals(np.linalg.solve(p, q)).real), rtol=1e-9)


def test_geodesic_endpoints_and_midpoint(rng):
    p, q = spd_pair(rng)
    path = spd_geodesic_path(p, q, [0.0, 1.0])
    np.testing.assert_allclose(path[0], p, atol=1e-10)
    np.testing.assert_allclose(path[1], q, atol=1e-10)
    mid = spd_geodesic(p, q, 0.5)
    half = 0.5 * rho_spd(p, q)
    assert rho_spd(p, mid) == pytest.approx(half, rel=1e-8)
    assert rho_spd(mid, q) == pytest.approx(half, rel=1e-8)


def test_geodesic_of_commuting_matrices():
    p = np.diag([1.0, 4.0])
    q = np.diag([9.0, 1.0])
    np.testing.assert_allclose(spd_geodesic(p, q, 0.5), np.diag([3.0, 2.0]), atol=1e-12)


def test_hilbert_projective_ignores_scale(rng):
    p, q = spd_pair(rng)
    assert hilbert_projective(p, 7.0 * q) == pytest.approx(hilbert_projective(p, q), rel=1e-10)
    assert hilbert_projective(p, 3.0 * p) == pytest.approx(0.0, abs=1e-12)


def test_siegel_vertical_line():
    z1 = SiegelPoint(X=[[0.0]], Y=[[1.0]])
    z2 = SiegelPoint(X=[[0.0]], Y=[[5.0]])
    assert siegel_distance(z1, z2) == pytest.approx(np.log(5.0), rel=1e-10)


def test_siegel_matches_half_plane_distance():
    x1, y1, x2, y2 = 0.3, 0.7, -1.2, 2.0
    z1 = SiegelPoint(X=[[x1]], Y=[[y1]])
    z2 = SiegelPoint(X=[[x2]], Y=[[y2]])
    expected = np.arccosh(1.0 + ((x1 - x2) ** 2 + (y1 - y2) ** 2) / (2.0 * y1 * y2))
    assert siegel_distance(z1, z2) == pytest.approx(expected, rel=1e-9)


def test_siegel_distance_of_point_to_itself():
    z = SiegelPoint(X=[[1.0, 0.2], [0.2, 0.0]], Y=[[2.0, 0.3], [0.3, 1.0]])
    assert siegel_distance(z, z) == pytest.approx(0.0, abs=1e-12)


def test_siegel_reduces_to_spd_on_imaginary_axis(rng):
    p, q = spd_pair(rng, 2)
    zero = np.zeros((2, 2))
    value = siegel_distance(SiegelPoint(X=zero, Y=p), SiegelPoint(X=zero, Y=q))
    assert value == pytest.approx(rho_spd(p, q), rel=1e-7)


def test_rho_spd_triangle_inequality(rng):
    for _ in range(20):
        p, q = spd_pair(rng)
        r = random_spd(rng, 3) + 0.5 * np.eye(3)
        assert rho_spd(p, r) <= rho_spd(p, q) + rho_spd(q, r) + 1e-10


def test_geodesic_log_determinant_is_linear(rng):
    p, q = spd_pair(rng)
    ts = np.linspace(0.0, 1.0, 11)
    logdets = np.linalg.slogdet(spd_geodesic_path(p, q, ts))[1]
    expected = (1.0 - ts) * np.linalg.slogdet(p)[1] + ts * np.linalg.slogdet(q)[1]
    np.testing.assert_allclose(logdets, expected, atol=1e-10)


@pytest.mark.parametrize("y1,y2", [(1.0, 5.0), (0.3, 0.2), (2.0, 2.0)])
def test_cross_ratio_on_imaginary_axis(y1, y2):
    z1 = SiegelPoint(X=[[0.0]], Y=[[y1]])
    z2 = SiegelPoint(X=[[0.0]], Y=[[y2]])
    r = siegel_cross_ratio(z1, z2)
    assert r.shape == (1, 1)
    assert r[0, 0].imag == pytest.approx(0.0, abs=1e-14)
    assert r[0, 0].real == pytest.approx(((y1 - y2) / (y1 + y2)) ** 2, abs=1e-14)


def test_scalar_cross_ratio_is_squared_modulus_ratio():
    a, b = 0.7 + 1.2j, -0.4 + 0.3j
    r = siegel_cross_ratio(SiegelPoint(X=[[a.real]], Y=[[a.imag]]), SiegelPoint(X=[[b.real]], Y=[[b.imag]]))
    assert r[0, 0].real == pytest.approx(abs(a - b) ** 2 / abs(a - b.conjugate()) ** 2, rel=1e-12)
