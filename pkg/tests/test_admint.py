import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from alemass import admint, homcalc, kahlergeo, metrics
from alemass.metrics import GibbonsHawkingData, RadialKahlerFamily, gibbons_hawking_chart, radial_kahler_chart


def test_normalization_three_dimensions():
    assert admint.adm_normalization(3) == pytest.approx(1 / (16 * math.pi), rel=1e-15)


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 7), st.floats(0.1, 5.0), st.floats(1.5, 50.0))
def test_schwarzschild_mass_at_finite_radius(n, A, scale):
    # the flux through S_rho is (A/2) / (1 - A rho^(2-n)) exactly
    chart = metrics.schwarzschild_chart(n, A)
    rho = scale * chart.inner_radius
    got = admint.mass_at_radius(chart, rho, 4)
    assert got == pytest.approx((A / 2) / (1 - A * rho ** (2 - n)), rel=1e-12)


@pytest.mark.parametrize("n,A", [(3, 2.0), (4, 1.0), (5, 4.0), (6, 2.0)])
def test_schwarzschild_extrapolated(n, A):
    est = admint.adm_mass(metrics.schwarzschild_chart(n, A))
    assert est.converged
    assert est.value == pytest.approx(A / 2, abs=1e-6)
    assert abs(est.value - A / 2) <= max(est.error_estimate, 1e-12)


@pytest.mark.parametrize("n", [3, 4])
def test_fitted_decay_exponent(n):
    chart = metrics.schwarzschild_chart(n, 1.0)
    est = admint.adm_mass(chart)
    assert est.fitted_exponent == pytest.approx(admint.default_exponent(chart), rel=0.15)


def test_quadrature_refinement_does_not_move_gibbons_hawking_flux():
    chart = gibbons_hawking_chart(GibbonsHawkingData([(0.2, 0.0, 0.1), (-0.3, 0.2, 0.0)]))
    rho = 6.0
    coarse = admint.mass_at_radius(chart, rho, 16)
    fine = admint.mass_at_radius(chart, rho, 32)
    assert fine == pytest.approx(coarse, abs=1e-10)


@pytest.mark.parametrize("k", [2, 3])
def test_quotient_divides_by_group_order(k):
    rng = np.random.default_rng(k)
    chart = gibbons_hawking_chart(GibbonsHawkingData([tuple(rng.uniform(-0.5, 0.5, 3)) for _ in range(k)]))
    assert chart.gamma_order == k
    rho = 2 * chart.inner_radius + 1
    cover = admint.mass_at_radius(chart.with_gamma_order(1), rho)
    assert cover == pytest.approx(k * admint.mass_at_radius(chart, rho), rel=1e-12)


def test_euclidean_zero():
    for n in (3, 4, 5, 6):
        est = admint.adm_mass(metrics.euclidean_chart(n))
        assert est.value == 0.0 and est.converged


def test_extrapolation_recovers_polynomial_limit():
    rhos = 4.0 * 2.0 ** (np.arange(6) / 2)
    h = rhos**-1.0
    vals = 0.25 + 3.0 * h - 7.0 * h**2 + 2.0 * h**3
    value, err = admint.extrapolate(rhos, vals, 1.0)
    assert value == pytest.approx(0.25, abs=1e-12)
    lin, _ = admint.extrapolate(rhos, 0.25 + 3.0 * h, 1.0, method="linear")
    assert lin == pytest.approx(0.25, abs=1e-13)
    with pytest.raises(ValueError):
        admint.extrapolate(rhos, vals, 1.0, method="spline")


def test_nonconvergence_is_reported_not_raised():
    est = admint.adm_mass(metrics.schwarzschild_chart(3, 2.0), schedule=[4.0, 5.0, 6.0], tol=1e-12)
    assert not est.converged
    assert est.error_estimate > 1e-12


def test_schedule_validation():
    chart = metrics.schwarzschild_chart(3, 2.0)
    with pytest.raises(ValueError):
        admint.adm_mass(chart, schedule=[10.0, 20.0])
    with pytest.raises(ValueError):
        admint.adm_mass(chart, schedule=[10.0, 30.0, 20.0])
    with pytest.raises(metrics.ChartDomainError):
        admint.mass_at_radius(chart, 1.0)


def test_logdet_refuses_non_kahler_chart():
    with pytest.raises(ValueError, match="Kähler"):
        admint.kahler_logdet_mass(metrics.schwarzschild_chart(4, 1.0))


@pytest.mark.parametrize("A", [0.5, 1.0, 2.0])
def test_burns_both_pipelines_give_a_third(A):
    chart = metrics.build_chart("burns", A=A)
    adm = admint.adm_mass(chart)
    logdet = admint.kahler_logdet_mass(chart)
    assert adm.value == pytest.approx(A / 3, abs=1e-9)
    assert logdet.value == pytest.approx(A / 3, abs=1e-9)


def test_burns_adm_flux_is_exact_at_every_radius():
    chart = metrics.build_chart("burns", A=1.5)
    for rho in (2.0, 7.0, 30.0):
        assert admint.mass_at_radius(chart, rho) == pytest.approx(0.5, rel=1e-12)
    # the log-det flux only reaches the limit asymptotically
    assert admint.logdet_mass_at_radius(chart, 2.0) < 0.4


@pytest.mark.parametrize("A,B", [(1.0, 0.5), (0.3, 2.0), (2.0, 0.0)])
def test_three_routes_agree(A, B):
    fam = RadialKahlerFamily.from_expression("u + A*log(u) + B*log(1+u)", 2, A=A, B=B)
    chart = radial_kahler_chart(fam)
    adm = admint.adm_mass(chart).value
    logdet = admint.kahler_logdet_mass(chart).value
    # the collapsed curve is a (-1)-curve with c1 = 1, so the pairing is minus its area
    pairing = -kahlergeo.exceptional_area(fam)
    topo = homcalc.topological_mass_general(2, pairing, kahlergeo.scalar_integral(fam, 0.0))
    assert adm == pytest.approx((A + B) / 3, abs=1e-8)
    assert logdet == pytest.approx(adm, abs=1e-8)
    assert topo == pytest.approx(adm, abs=1e-8)


def test_convergence_table_csv():
    est = admint.adm_mass(metrics.schwarzschild_chart(4, 1.0))
    lines = admint.convergence_table_csv(est).splitlines()
    assert lines[0] == "rho,mass_at_radius,extrapolant,error_estimate"
    assert len(lines) == 1 + len(est.samples)
    assert lines[1].split(",")[0] == "4"
    assert est.to_dict()["method"] == "richardson"


def test_mass_estimate_rejects_unsorted_samples():
    with pytest.raises(ValueError):
        admint.MassEstimate(0.0, [(2.0, 0.0), (1.0, 0.0)], 0.0, True)
