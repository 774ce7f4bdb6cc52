"""Curvature of U(m)-invariant Kähler metrics, Penrose and positive-mass checks.

Checkers return verdict records; they never raise on a mathematical
violation, so deliberately bad inputs can be exercised.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import integrate

from .metrics import RadialKahlerFamily
from .quadrature import sphere_volume

__all__ = [
    "DivisorComponent",
    "DivisorData",
    "CurvatureSample",
    "PenroseVerdict",
    "PositiveMassVerdict",
    "radial_scalar_curvature",
    "radial_scalar_curvature_numeric",
    "radial_volume_density",
    "scalar_integral",
    "exceptional_area",
    "penrose_bound",
    "penrose_check",
    "positive_mass_check",
    "divisor_from_json",
]


@dataclass(frozen=True)
class DivisorComponent:
    label: str
    multiplicity: int
    volume: float

    def __post_init__(self):
        if int(self.multiplicity) != self.multiplicity or self.multiplicity < 1:
            raise ValueError(f"{self.label}: multiplicity must be a positive integer")
        if not self.volume >= 0:
            raise ValueError(f"{self.label}: volume must be non-negative")


@dataclass(frozen=True)
class DivisorData:
    """Canonical divisor ``sum n_j D_j`` with (2m-2)-volumes ``Vol(D_j)``."""

    m: int
    components: tuple[DivisorComponent, ...] = ()

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("complex dimension must be >= 2")
        object.__setattr__(self, "components", tuple(
            c if isinstance(c, DivisorComponent) else DivisorComponent(*c) for c in self.components
        ))

    def weighted_volume(self) -> float:
        return math.fsum(c.multiplicity * c.volume for c in self.components)


@dataclass(frozen=True)
class CurvatureSample:
    point: tuple[float, ...]
    scalar_curvature: float
    ricci_form_norm: float = 0.0


def divisor_from_json(obj: dict | str) -> DivisorData:
    """Parse ``{"m": int, "components": [{"label": str, "n": int, "vol": number}]}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    comps = [DivisorComponent(str(c["label"]), int(c["n"]), float(c["vol"]))
             for c in obj.get("components", [])]
    return DivisorData(int(obj["m"]), tuple(comps))


# -- radial curvature --------------------------------------------------------


def _log_det_derivs(family: RadialKahlerFamily, u):
    """``L'`` and ``(u L')'`` for ``L = log[(uF')' (F')^(m-1)]``."""
    if len(family.derivs) < 5:
        raise ValueError("scalar curvature needs the fourth derivative of F")
    m = family.m
    F1, F2, F3, F4 = (family.d(i, u) for i in (1, 2, 3, 4))
    R = F1 + u * F2  # (uF')'
    R1 = 2 * F2 + u * F3
    R2 = 3 * F3 + u * F4
    L1 = R1 / R + (m - 1) * F2 / F1
    L2 = (R2 * R - R1**2) / R**2 + (m - 1) * (F3 * F1 - F2**2) / F1**2
    return L1, L1 + u * L2, R, F1


def radial_scalar_curvature(family: RadialKahlerFamily, u):
    """Scalar curvature at ``|z|^2 = u``.

    With the Ricci form ``-i ddbar log det`` traced against the Kähler form
    ``(i/2) ddbar F``: ``s = -4 [(uL')'/(uF')' + (m-1) L'/F']``.
    """
    u = np.asarray(u, dtype=float)
    family.check_positive(u)
    if family.scalar_fn is not None:
        s = family.scalar_fn(u)
    else:
        s = radial_scalar_curvature_numeric(family, u)
    return float(s) if s.ndim == 0 else s


def radial_scalar_curvature_numeric(family: RadialKahlerFamily, u):
    """Same reduction evaluated from the derivative callables (loses accuracy as u -> 0)."""
    u = np.asarray(u, dtype=float)
    L1, uL1p, R, F1 = _log_det_derivs(family, u)
    return -4.0 * (uL1p / R + (family.m - 1) * L1 / F1)


def radial_volume_density(family: RadialKahlerFamily, u):
    """``dmu = density(u) du``: ``(Vol(S^(2m-1))/2) (uF')' F'^(m-1) u^(m-1)``."""
    u = np.asarray(u, dtype=float)
    m = family.m
    return 0.5 * sphere_volume(2 * m) * family.radial(u) * family.tangential(u) ** (m - 1) * u ** (m - 1)


def scalar_integral(family: RadialKahlerFamily, u_min: float, u_max: float = math.inf) -> float:
    """``int s dmu`` over the annulus ``u_min < |z|^2 < u_max`` (divided by |Gamma|)."""
    if not 0 <= u_min < u_max:
        raise ValueError("need 0 <= u_min < u_max")
    lo = max(u_min, 0.0)

    def f(u):
        return float(radial_scalar_curvature(family, u) * radial_volume_density(family, u))

    def tail(t):  # u = 1/t on (max(lo, 1), oo)
        return f(1.0 / t) / (t * t)

    opts = dict(limit=400, epsabs=1e-11, epsrel=1e-11)
    total = 0.0
    if lo < 1.0:
        total += integrate.quad(f, lo, min(1.0, u_max), **opts)[0]
    if u_max > 1.0:
        a = max(lo, 1.0)
        if math.isinf(u_max):
            total += integrate.quad(tail, 0.0, 1.0 / a, **opts)[0]
        else:
            total += integrate.quad(f, a, u_max, **opts)[0]
    return total / family.gamma_order


def exceptional_area(family: RadialKahlerFamily, u0: float = 0.0) -> float:
    """Area of the curve at ``u = u0`` collapsed by the Hopf fibration: ``pi * lim u F'``."""
    u = max(u0, 1e-300)
    return math.pi * float(u * family.d(1, u))


# -- verdicts ----------------------------------------------------------------


def penrose_bound(divisor: DivisorData) -> float:
    m = divisor.m
    return math.factorial(m - 1) / ((2 * m - 1) * math.pi ** (m - 1)) * divisor.weighted_volume()


@dataclass(frozen=True)
class PenroseVerdict:
    mass: float
    bound: float
    tolerance: float
    holds: bool
    equality: bool
    consistent_with_scalar_flat: bool
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.holds and self.consistent_with_scalar_flat

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in
                ("mass", "bound", "tolerance", "holds", "equality", "consistent_with_scalar_flat", "message")}


def penrose_check(mass: float, divisor: DivisorData, scalar_flat: bool,
                  tol: float | None = None) -> PenroseVerdict:
    """Compare ``mass`` with ``((m-1)!/((2m-1) pi^(m-1))) sum n_j Vol(D_j)``."""
    bound = penrose_bound(divisor)
    if tol is None:
        tol = 1e-9 * max(1.0, abs(mass))
    holds = mass >= bound - tol
    equality = abs(mass - bound) <= tol
    consistent = equality == bool(scalar_flat)
    if not holds:
        msg = f"violation: mass {mass:.12g} below bound {bound:.12g}"
    elif equality:
        msg = "equality (scalar-flat case)" if scalar_flat else \
            "equality but metric declared not scalar-flat"
    else:
        msg = "strict inequality" + ("" if not scalar_flat else
                                     " although metric declared scalar-flat")
    return PenroseVerdict(mass, bound, tol, holds, equality, consistent, msg)


@dataclass(frozen=True)
class PositiveMassVerdict:
    applicable: bool
    holds: bool
    zero_mass: bool
    flat: bool | None
    message: str

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("applicable", "holds", "zero_mass", "flat", "message")}


def positive_mass_check(mass: float, s_nonnegative: bool, is_ae: bool,
                        samples: Sequence[CurvatureSample] = (), tol: float = 1e-9,
                        curvature_tol: float = 1e-8) -> PositiveMassVerdict:
    """AE Kähler with ``s >= 0`` has mass >= 0, and mass 0 only when flat."""
    if not (is_ae and s_nonnegative):
        why = "not asymptotically Euclidean" if not is_ae else "scalar curvature not known to be >= 0"
        return PositiveMassVerdict(False, True, False, None,
                                   f"skipped: {why}; negative mass is allowed here")
    if mass < -tol:
        return PositiveMassVerdict(True, False, False, None,
                                   f"violation: AE mass {mass:.12g} < 0 with s >= 0")
    if abs(mass) <= tol:
        flat = all(abs(c.scalar_curvature) <= curvature_tol and abs(c.ricci_form_norm) <= curvature_tol
                   for c in samples)
        if not samples:
            return PositiveMassVerdict(True, True, True, None,
                                       "zero mass; supply curvature samples to confirm flatness")
        return PositiveMassVerdict(True, flat, True, flat,
                                   "zero mass, flat" if flat else "violation: zero mass but curvature samples nonzero")
    return PositiveMassVerdict(True, True, False, None, "positive mass")
