import numpy as np
import pytest

from legcable.errors import CurvesIntersect
from legcable.geometry import (
    DEFAULT_POLES, alpha0, frame, gauss_linking, hopf_fibre, jacobian_f, jacobian_f_fd, k0,
    k0_parallel, map_f, midpoint_linking, pole_rotation, pushforward_dp, pushforward_dp_residual,
    sample_curve, sphere_residual, stereographic, verify_geometry, verify_hopf_fibre_linking,
    verify_k0_linking,
)


def circle(center, u, v, n=400):
    t = 2 * np.pi * np.arange(n) / n
    return np.asarray(center) + np.outer(np.cos(t), u) + np.outer(np.sin(t), v)


def test_map_f_origin():
    assert np.allclose(map_f(0, 0, 0), (0, 1, 0, 0), atol=1e-15)


def test_map_f_zero_section_is_a_great_circle():
    q = np.linspace(0, 1, 17)
    th = 2 * np.pi * q
    want = np.stack([0 * q, np.cos(th), np.sin(th), 0 * q], axis=-1)
    assert np.allclose(map_f(q, 0, 0), want, atol=1e-15)


def test_norm_on_many_points():
    rng = np.random.default_rng(1)
    q, p, z = rng.random(100000), rng.uniform(-10, 10, 100000), rng.uniform(-10, 10, 100000)
    assert sphere_residual(q, p, z).max() < 1e-12


def test_jacobian_matches_finite_differences():
    rng = np.random.default_rng(2)
    q, p, z = rng.random(50), rng.uniform(-5, 5, 50), rng.uniform(-5, 5, 50)
    assert np.abs(jacobian_f(q, p, z) - jacobian_f_fd(q, p, z)).max() < 1e-6


def test_pullback_along_theta():
    # at (q, p, z) = (0, 1, 0): lam^2 = 4/5 and (dz - p dtheta)(d/dtheta) = -p
    J = jacobian_f(0, 1, 0)
    x = map_f(0, 1, 0)
    assert alpha0(x, J[:, 0]) == pytest.approx(-0.8, abs=1e-14)


def test_pushforward_dp_at_origin():
    lhs, rhs = pushforward_dp(0, 0, 0)
    assert np.allclose(lhs, (0, 0, 0, 0.5), atol=1e-15)
    assert np.allclose(rhs, (0, 0, 0, 0.5), atol=1e-15)
    assert pushforward_dp_residual(0, 0, 0) < 1e-15


def test_frame_is_orthonormal_and_section_nonvanishing():
    rng = np.random.default_rng(4)
    q, p, z = rng.random(200), rng.uniform(-10, 10, 200), rng.uniform(-10, 10, 200)
    x = map_f(q, p, z)
    e1, e2 = frame(x)
    assert np.allclose(np.einsum("ij,ij->i", e1, e2), 0)
    assert np.allclose(np.linalg.norm(e1, axis=1), 1)
    lam2 = 1 / (1 + p * p / 4 + z * z)
    _, rhs = pushforward_dp(q, p, z)
    assert np.allclose(np.linalg.norm(rhs, axis=1), lam2 / 2 * np.sqrt(1 + z * z))


def test_report_passes():
    rep = verify_geometry(10000, 7)
    assert rep.passed
    assert {c.name for c in rep.checks} >= {"sphere constraint", "pullback of alpha0", "pushforward of d/dp"}


def test_split_circles_unlinked():
    a = circle((0, 0, 0), (1, 0, 0), (0, 1, 0))
    b = circle((5, 0, 0), (1, 0, 0), (0, 1, 0))
    est, r = gauss_linking(a, b)
    assert r == 0 and abs(est) < 1e-9


def test_hopf_pair_agrees_with_midpoint_sum():
    a = circle((0, 0, 0), (1, 0, 0), (0, 1, 0))
    b = circle((1, 0, 0), (1, 0, 0), (0, 0, 1))
    est, r = gauss_linking(a, b)
    assert r == -1
    assert midpoint_linking(a, b) == pytest.approx(est, abs=1e-3)
    assert gauss_linking(a, b[::-1])[1] == 1


def test_intersecting_curves_rejected():
    a = circle((0, 0, 0), (1, 0, 0), (0, 1, 0))
    with pytest.raises(CurvesIntersect):
        gauss_linking(a, a.copy())


def test_pole_rotation_is_special_orthogonal():
    for pole in DEFAULT_POLES:
        R = pole_rotation(pole)
        n = np.asarray(pole) / np.linalg.norm(pole)
        assert np.allclose(R @ R.T, np.eye(4))
        assert np.linalg.det(R) == pytest.approx(1.0)
        assert np.allclose(R @ n, (0, 0, 0, 1))


def test_k0_pushoff_links_minus_one():
    res = verify_k0_linking(512)
    assert res.rounded == -1 and res.distance < 0.05


@pytest.mark.parametrize("a,b", [((0, 0), (1, 0)), ((0, 0), (0, 1))])
def test_hopf_fibres_link_minus_one(a, b):
    res = verify_hopf_fibre_linking(a, b, 512)
    assert res.rounded == -1 and res.distance < 0.05


def test_fibre_with_itself():
    with pytest.raises(CurvesIntersect):
        verify_hopf_fibre_linking((0, 0), (0, 0))


def test_projection_keeps_linking_with_midpoint_oracle():
    c1, c2 = sample_curve(k0, 512), sample_curve(k0_parallel, 512)
    x1, x2 = stereographic(c1, DEFAULT_POLES[0]), stereographic(c2, DEFAULT_POLES[0])
    assert midpoint_linking(x1, x2) == pytest.approx(-1, abs=0.05)


def test_hopf_fibre_samples_lie_on_sphere():
    c = sample_curve(hopf_fibre(2.0, -1.0), 128)
    assert np.abs(np.linalg.norm(c, axis=1) - 1).max() < 1e-12
