import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from scipy.optimize import brentq

from alemass import lebrun
from alemass.lebrun import LebrunFamily


@pytest.mark.parametrize("ell", range(3, 11))
def test_zero_mass_instance_is_exactly_zero(ell):
    fam = lebrun.zero_mass_instance(ell)
    mass = lebrun.closed_form_mass(fam)
    assert isinstance(mass, Fraction) and mass == 0
    cross = lebrun.homcalc_cross_check(fam)
    assert cross["on_section"] == pytest.approx(0.0, abs=1e-12)
    assert cross["intersection_matrix"] == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("ell,mass", [(1, 1 / 3), (2, 0.0), (3, -1 / 9), (4, -1 / 6)])
def test_single_centre_mass(ell, mass):
    assert lebrun.closed_form_mass(LebrunFamily(ell)) == pytest.approx(mass, abs=1e-15)


@given(st.integers(1, 12), st.lists(st.floats(0.05, 5.0), max_size=5))
def test_three_mass_computations_agree(ell, dists):
    cross = lebrun.homcalc_cross_check(LebrunFamily(ell, tuple(dists)))
    assert cross["on_section"] == pytest.approx(cross["closed_form"], abs=1e-12)
    assert cross["intersection_matrix"] == pytest.approx(cross["closed_form"], abs=1e-12)


@pytest.mark.parametrize("ell", [3, 4, 7, 12])
def test_sign_change_distance_found_by_bisection(ell):
    def mass(d):
        return lebrun.closed_form_mass(LebrunFamily(ell, (d,)))

    root = brentq(mass, 1e-3, 10.0, xtol=1e-14)
    assert root == pytest.approx(lebrun.sign_change_distance(ell), rel=1e-10)
    assert mass(root * 0.9) > 0 > mass(root * 1.1)


def test_curve_areas_and_potential():
    fam = LebrunFamily(3, (1.0,))
    area_F, areas_E = lebrun.curve_areas(fam)
    assert area_F == math.pi
    assert areas_E[0] == pytest.approx(2 * math.pi / (math.exp(2.0) - 1))
    v = lebrun.potential_V(fam, 0.5, [1.0])
    assert v == pytest.approx(1 + 3 / (math.e - 1) + 1 / (math.e**2 - 1))
    with pytest.raises(ValueError):
        lebrun.potential_V(fam, 0.5, [])


def test_validation():
    with pytest.raises(ValueError):
        LebrunFamily(0)
    with pytest.raises(ValueError):
        LebrunFamily(3, (-1.0,))
    with pytest.raises(ValueError):
        lebrun.zero_mass_instance(2)
    assert LebrunFamily(5, (1.0, 2.0)).b == 3
