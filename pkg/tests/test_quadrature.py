import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from alemass.quadrature import monomial_integral, sphere_grid, sphere_volume


@pytest.mark.parametrize("n,vol", [(2, 2 * math.pi), (3, 4 * math.pi), (4, 2 * math.pi**2)])
def test_sphere_volume(n, vol):
    assert sphere_volume(n) == pytest.approx(vol, rel=1e-15)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_nodes_on_unit_sphere_and_weights_sum_to_area(n):
    grid = sphere_grid(n, 8)
    assert np.allclose(np.linalg.norm(grid.nodes, axis=1), 1.0, atol=1e-14)
    assert grid.integrate(np.ones(len(grid))) == pytest.approx(sphere_volume(n), rel=1e-13)


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 6), st.data())
def test_exact_for_polynomials_up_to_order(n, data):
    order = 8
    alpha = data.draw(st.lists(st.integers(0, 4), min_size=n, max_size=n).filter(lambda a: sum(a) <= order))
    grid = sphere_grid(n, order)
    vals = np.prod(grid.nodes ** np.array(alpha), axis=1)
    assert grid.integrate(vals) == pytest.approx(monomial_integral(alpha), abs=1e-12)


def test_monomial_integral_known_value():
    # int_{S^2} x^2 = 4 pi / 3
    assert monomial_integral([2, 0, 0]) == pytest.approx(4 * math.pi / 3)
    assert monomial_integral([1, 2, 0]) == 0.0


def test_grid_is_cached():
    assert sphere_grid(4, 16) is sphere_grid(4, 16)
