import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from alemass import kahlergeo, metrics
from alemass.metrics import (ChartDomainError, GibbonsHawkingData, PositivityViolation, RadialKahlerFamily,
                             finite_difference_dg, gibbons_hawking_chart, radial_kahler_chart,
                             schwarzschild_chart)

direction = st.lists(st.floats(-1, 1), min_size=6, max_size=6).filter(
    lambda v: np.linalg.norm(v[:3]) > 0.1)


def _point(v, n, r):
    v = np.resize(np.asarray(v, dtype=float), n)
    if np.linalg.norm(v) < 1e-3:
        v[0] = 1.0
    return r * v / np.linalg.norm(v)


def assert_gradient_matches(chart, x, rtol=1e-6):
    exact = chart.dg(x)
    fd = finite_difference_dg(chart.g, x)
    scale = max(1.0, float(np.max(np.abs(exact))))
    assert np.max(np.abs(exact - fd)) <= rtol * scale


def test_euclidean_is_identity():
    chart = metrics.euclidean_chart(5)
    x = np.random.default_rng(0).normal(size=(7, 5))
    assert np.array_equal(chart.g(x), np.broadcast_to(np.eye(5), (7, 5, 5)))
    assert not np.any(chart.dg(x))


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 6), st.floats(0.5, 4.0), direction, st.floats(3.0, 40.0))
def test_schwarzschild_gradient(n, A, v, r):
    chart = schwarzschild_chart(n, A)
    assert_gradient_matches(chart, _point(v, n, r + chart.inner_radius))


def test_schwarzschild_is_radially_stretched():
    chart = schwarzschild_chart(3, 2.0)
    x = np.array([0.0, 0.0, 8.0])
    assert chart.g(x)[2, 2] == pytest.approx(1.0 / (1.0 - 2.0 / 8.0))
    assert chart.g(x)[0, 0] == pytest.approx(1.0)
    with pytest.raises(ChartDomainError):
        chart.g(np.array([1.0, 0.0, 0.0]))


@pytest.mark.parametrize("n,tau", [(3, 1), (4, 2), (5, 3)])
def test_schwarzschild_decay_rate(n, tau):
    chart = schwarzschild_chart(n, 1.0)
    rs = np.array([20.0, 40.0, 80.0])
    dev = [np.max(np.abs(chart.g(np.array([r] + [0.0] * (n - 1))) - np.eye(n))) for r in rs]
    slope = -np.polyfit(np.log(rs), np.log(dev), 1)[0]
    assert slope == pytest.approx(tau, rel=0.10)


def test_orbit_frequency_matches_newtonian_mass():
    w = metrics.schwarzschild_orbit_frequency(4, 2.0, 5.0)
    assert w == pytest.approx(metrics.circular_orbit_frequency(4, 1.0, 5.0), rel=1e-14)
    with pytest.raises(ValueError):
        metrics.circular_orbit_frequency(3, -1.0, 2.0)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(-3, 3), min_size=3, max_size=3), st.lists(st.floats(-1, 1), min_size=3, max_size=3))
def test_monopole_curl_is_gradient_of_potential(x, s):
    x = np.asarray(x)
    s = np.asarray(s)
    if np.linalg.norm(s) < 0.2 or np.linalg.norm(x) < 0.3:
        return
    s = s / np.linalg.norm(s)
    w = x / np.linalg.norm(x)
    if w @ s > 0.9:  # near the string
        return
    _, jac = metrics.monopole_potential(x, np.zeros(3), s, with_jacobian=True)
    curl = np.array([jac[2, 1] - jac[1, 2], jac[0, 2] - jac[2, 0], jac[1, 0] - jac[0, 1]])
    r = np.linalg.norm(x)
    grad_v = -x / (2.0 * r**3)
    assert np.allclose(curl, grad_v, atol=1e-10 * max(1.0, np.max(np.abs(grad_v))))
    # analytic jacobian against central differences
    h = 1e-6
    fd = np.stack([(metrics.monopole_potential(x + h * e, np.zeros(3), s)
                    - metrics.monopole_potential(x - h * e, np.zeros(3), s)) / (2 * h) for e in np.eye(3)], axis=1)
    assert np.allclose(jac, fd, atol=1e-6 * max(1.0, np.max(np.abs(jac))))


def test_single_centre_gibbons_hawking_is_flat_space():
    chart = gibbons_hawking_chart(GibbonsHawkingData([(0.0, 0.0, 0.0)]))
    x = np.random.default_rng(1).normal(size=(10, 4)) * 3
    assert np.allclose(chart.g(x), np.eye(4), atol=1e-13)


def test_displaced_single_centre_is_flat():
    chart = gibbons_hawking_chart(GibbonsHawkingData([(0.3, -0.2, 0.4)]))
    R = metrics.riemann_tensor(chart, np.array([2.0, -1.0, 1.5, 0.5]))
    assert np.max(np.abs(R)) < 1e-7


@settings(max_examples=15, deadline=None)
@given(st.integers(2, 3), st.integers(0, 10**6), direction, st.floats(4.0, 30.0))
def test_gibbons_hawking_gradient(k, seed, v, r):
    rng = np.random.default_rng(seed)
    centers = [tuple(rng.uniform(-0.5, 0.5, 3)) for _ in range(k)]
    chart = gibbons_hawking_chart(GibbonsHawkingData(centers))
    assert_gradient_matches(chart, _point(v, 4, r + chart.inner_radius), rtol=1e-5)


def test_gibbons_hawking_validation():
    with pytest.raises(ValueError):
        GibbonsHawkingData([(0, 0, 0), (0, 0, 0)])
    with pytest.raises(ValueError):
        GibbonsHawkingData([])
    assert GibbonsHawkingData([(0, 0, 0), (1, 0, 0)]).k == 2


def b_family(A=1.0, B=0.5, m=2):
    return RadialKahlerFamily.from_expression("u + A*log(u) + B*log(1+u)", m, A=A, B=B)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 3), st.floats(0.1, 2.0), st.floats(0.0, 2.0), direction, st.floats(1.5, 20.0))
def test_radial_kahler_gradient_and_determinant(m, A, B, v, r):
    fam = b_family(A, B, m)
    chart = radial_kahler_chart(fam)
    x = _point(v, 2 * m, r)
    assert_gradient_matches(chart, x)
    u = float(x @ x)
    expect = (fam.radial(u) * fam.tangential(u) ** (m - 1)) ** 2
    assert np.linalg.det(chart.g(x)) == pytest.approx(expect, rel=1e-10)


def test_flat_potential_gives_identity():
    chart = radial_kahler_chart(RadialKahlerFamily.from_expression("u", 3))
    x = np.random.default_rng(3).normal(size=(5, 6))
    assert np.allclose(chart.g(x), np.eye(6), atol=1e-15)


def test_radial_kahler_metric_is_hermitian():
    chart = radial_kahler_chart(b_family())
    J = metrics.complex_structure(4)
    g = chart.g(np.array([0.7, -1.2, 0.4, 2.0]))
    assert np.allclose(J.T @ g @ J, g, atol=1e-14)


def test_positivity_violation():
    fam = RadialKahlerFamily.from_expression("u + A*log(u)", 2, A=-4.0)
    with pytest.raises(PositivityViolation):
        radial_kahler_chart(fam).g(np.array([1.5, 0.0, 0.0, 0.0]))


@pytest.mark.parametrize("m", [2, 3])
def test_scalar_curvature_reduction_matches_riemann_tensor(m):
    fam = b_family(0.7, 0.9, m)
    chart = radial_kahler_chart(fam)
    x = np.array([0.9, -0.4, 0.6, 0.3, 0.2, -0.5][: 2 * m])
    s_num = metrics.scalar_curvature(chart, x)
    s_red = kahlergeo.radial_scalar_curvature(fam, float(x @ x))
    assert s_num == pytest.approx(s_red, rel=1e-5, abs=1e-7)


def test_registry():
    assert set(metrics.FAMILIES) >= {"euclidean", "schwarzschild", "gibbons-hawking", "burns"}
    assert metrics.build_chart("burns", A=2).expected_mass == pytest.approx(2 / 3)
    with pytest.raises(ValueError, match="unknown family"):
        metrics.build_chart("nope")
    with pytest.raises(ValueError, match="mass lebrun"):
        metrics.build_chart("lebrun")
    one = metrics.build_chart("gibbons-hawking", centers=[0.0, 0.0, 0.0])
    assert one.gamma_order == 1
