"""Scalar-flat Kähler metrics on blow-ups of O(-ell) from the hyperbolic ansatz.

Only closed-form quantities are computed: the potential V, the areas of the
proper transform of the zero section and of the exceptional curves, and the
mass. The 4-metric itself is never assembled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import homcalc

__all__ = [
    "LebrunFamily",
    "potential_V",
    "curve_areas",
    "closed_form_mass",
    "zero_mass_instance",
    "sign_change_distance",
    "homcalc_cross_check",
]

#: e^(2 log sqrt 5), kept exact
FIVE = Fraction(5)


@dataclass(frozen=True)
class LebrunFamily:
    """``ell`` and the hyperbolic distances from ``p_0`` to ``p_1..p_(b-1)``.

    ``exp2`` optionally carries exact values of ``e^(2 d_j)`` so that the
    closed-form mass can be evaluated in rational arithmetic.
    """

    ell: int
    distances: tuple[float, ...] = ()
    exp2: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if int(self.ell) != self.ell or self.ell < 1:
            raise ValueError(f"ell must be a positive integer, got {self.ell}")
        object.__setattr__(self, "distances", tuple(float(d) for d in self.distances))
        if any(d <= 0 for d in self.distances):
            raise ValueError("hyperbolic distances must be positive")
        if self.exp2 is not None and len(self.exp2) != len(self.distances):
            raise ValueError("exp2 must match distances")

    @property
    def b(self) -> int:
        """Second Betti number: the zero section plus one curve per extra centre."""
        return 1 + len(self.distances)

    def _weights(self):
        """``1/(e^(2 d_j) - 1)`` per centre; exact when ``exp2`` is known."""
        if self.exp2 is not None:
            return [1 / (e - 1) for e in self.exp2]
        return [1.0 / math.expm1(2.0 * d) for d in self.distances]


def potential_V(family: LebrunFamily, r0: float, r_list: Sequence[float]) -> float:
    """``V = 1 + ell/(e^(2 r0) - 1) + sum 1/(e^(2 r_j) - 1)`` at a point with those distances."""
    if len(r_list) != len(family.distances):
        raise ValueError(f"need {len(family.distances)} distances to the extra centres")
    radii = [r0, *r_list]
    if any(r <= 0 for r in radii):
        raise ValueError("distances to the centres must be positive")
    return 1.0 + family.ell / math.expm1(2.0 * r0) + math.fsum(1.0 / math.expm1(2.0 * r) for r in r_list)


def curve_areas(family: LebrunFamily) -> tuple[float, list[float]]:
    """Areas of the proper transform (always pi) and of the exceptional curves."""
    return math.pi, [2.0 * math.pi * float(w) for w in family._weights()]


def closed_form_mass(family: LebrunFamily) -> float | Fraction:
    """``(1/(3 ell)) [2 - ell + 4 sum 1/(e^(2 d_j) - 1)]``; a Fraction when exact."""
    w = family._weights()
    if family.exp2 is not None:
        return Fraction(1, 3 * family.ell) * (2 - family.ell + 4 * sum(w, Fraction(0)))
    return (2 - family.ell + 4.0 * math.fsum(w)) / (3.0 * family.ell)


def zero_mass_instance(ell: int) -> LebrunFamily:
    """``ell - 2`` extra centres at distance ``log sqrt 5``: mass exactly zero."""
    if int(ell) != ell or ell < 3:
        raise ValueError("the zero-mass construction needs ell >= 3")
    count = ell - 2
    return LebrunFamily(ell, (math.log(math.sqrt(5.0)),) * count, (FIVE,) * count)


def sign_change_distance(ell: int) -> float:
    """Distance at which the one-centre family has zero mass: ``(1/2) log(1 + 4/(ell-2))``."""
    if ell < 3:
        raise ValueError("no sign change for ell < 3")
    return 0.5 * math.log1p(4.0 / (ell - 2))


def homcalc_cross_check(family: LebrunFamily) -> dict:
    """Mass via the on-section blow-up formula and via the intersection matrix.

    The basis is ``F~, E_1..E_(b-1)`` with ``F~.F~ = -ell - (b-1)``,
    ``F~.E_j = 1``, ``E_j.E_j = -1``.
    """
    area_F, areas_E = curve_areas(family)
    on_section = homcalc.mass_oell_on_section(family.ell, area_F, areas_E)
    k = len(areas_E)
    Q = [[0] * (k + 1) for _ in range(k + 1)]
    Q[0][0] = -family.ell - k
    for j in range(1, k + 1):
        Q[0][j] = Q[j][0] = 1
        Q[j][j] = -1
    c1 = [2 - family.ell - k] + [1] * k
    data = homcalc.IntersectionData(
        ["F~"] + [f"E{j}" for j in range(1, k + 1)], Q, c1, [area_F, *areas_E]
    )
    return {
        "closed_form": float(closed_form_mass(family)),
        "on_section": on_section,
        "intersection_matrix": homcalc.topological_mass_surface(data),
    }
