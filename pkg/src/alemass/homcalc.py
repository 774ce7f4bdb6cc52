"""Topological mass of ALE Kähler manifolds from intersection-form data.

All linear algebra on the intersection matrix is exact (``fractions.Fraction``);
areas may be floats, and the exact/float boundary is the final dot product.

Sign convention: exceptional curves of a point blow-up have self-intersection
``E.E = -1`` and ``c1(E) = 1``.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

__all__ = [
    "SingularIntersectionForm",
    "InvalidDimension",
    "IntersectionData",
    "ChernVector",
    "GeneralMassInput",
    "MinimalResolutionCertificate",
    "solve_chern_coefficients",
    "chern_area_pairing",
    "topological_mass_surface",
    "topological_mass_general",
    "mass_ae_blowup",
    "mass_oell_off_section",
    "mass_oell_on_section",
    "minimal_resolution_certificate",
    "compact_anomaly",
    "rational_inverse",
    "cartan_matrix",
    "intersection_data_from_json",
    "intersection_data_to_json",
]


class SingularIntersectionForm(ValueError):
    """The intersection matrix is not invertible over the rationals."""


class InvalidDimension(ValueError):
    pass


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v.strip())
    if isinstance(v, float):
        if not v.is_integer():
            raise TypeError(f"refusing inexact float {v!r} for an exact-rational field")
        return Fraction(int(v))
    raise TypeError(f"cannot interpret {v!r} as a rational number")


@dataclass(frozen=True)
class IntersectionData:
    """Homology basis with its intersection matrix, Chern pairings and areas.

    ``Q[j][k]`` is ``E_j . E_k``, ``c1_pairings[j]`` is the integral of c1 over
    ``E_j`` and ``areas[j]`` is the integral of the Kähler form over ``E_j``.
    """

    basis_labels: tuple[str, ...]
    Q: tuple[tuple[int, ...], ...]
    c1_pairings: tuple[Fraction, ...]
    areas: tuple[float | Fraction, ...]
    negative_areas: bool = field(default=False, compare=False)

    def __init__(self, basis_labels, Q, c1_pairings, areas):
        b = len(Q)
        q = tuple(tuple(int(e) for e in row) for row in Q)
        for row in q:
            if len(row) != b:
                raise ValueError("intersection matrix must be square")
        for j in range(b):
            for k in range(j):
                if q[j][k] != q[k][j]:
                    raise ValueError("intersection matrix must be symmetric")
        if basis_labels is None:
            basis_labels = [f"E{j + 1}" for j in range(b)]
        labels = tuple(str(s) for s in basis_labels)
        c1 = tuple(_as_fraction(v) for v in c1_pairings)
        ar = tuple(areas)
        if not (len(labels) == len(c1) == len(ar) == b):
            raise ValueError(
                f"dimension mismatch: {len(labels)} labels, {b}x{b} Q, "
                f"{len(c1)} c1 pairings, {len(ar)} areas"
            )
        neg = any(a < 0 for a in ar)
        if neg:
            warnings.warn(
                "negative Kähler area supplied; accepted, but such a class "
                "has no holomorphic representative",
                stacklevel=2,
            )
        object.__setattr__(self, "basis_labels", labels)
        object.__setattr__(self, "Q", q)
        object.__setattr__(self, "c1_pairings", c1)
        object.__setattr__(self, "areas", ar)
        object.__setattr__(self, "negative_areas", neg)

    @property
    def rank(self) -> int:
        return len(self.Q)


@dataclass(frozen=True)
class ChernVector:
    """Coefficients of the cycle sum(a_j E_j) Poincaré dual to c1."""

    a: tuple[Fraction, ...]


@dataclass(frozen=True)
class GeneralMassInput:
    m: int
    pairing: float
    scalar_integral: float

    def __post_init__(self):
        if int(self.m) != self.m or self.m < 2:
            raise InvalidDimension(f"complex dimension must be an integer >= 2, got {self.m}")


@dataclass(frozen=True)
class MinimalResolutionCertificate:
    inverse: tuple[tuple[Fraction, ...], ...]
    a: tuple[Fraction, ...]
    entrywise_nonpositive: bool
    all_a_nonneg: bool
    mass: float
    is_ricci_flat_case: bool


def rational_inverse(Q: Sequence[Sequence]) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals.

    Raises SingularIntersectionForm if ``Q`` has no inverse.
    """
    n = len(Q)
    aug = [
        [Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
        for i, row in enumerate(Q)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise SingularIntersectionForm("intersection matrix is singular (det Q = 0)")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [vr - f * vc for vr, vc in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _matvec(M, v):
    return [sum((Fraction(mij) * vj for mij, vj in zip(row, v)), Fraction(0)) for row in M]


def solve_chern_coefficients(data: IntersectionData) -> ChernVector:
    """Solve ``Q a = c1`` exactly."""
    if data.rank == 0:
        return ChernVector(())
    inv = rational_inverse(data.Q)
    return ChernVector(tuple(_matvec(inv, data.c1_pairings)))


def _dot_areas(a: Sequence[Fraction], areas: Sequence) -> float | Fraction:
    if all(isinstance(x, (int, Fraction)) for x in areas):
        return sum((aj * Fraction(x) for aj, x in zip(a, areas)), Fraction(0))
    return math.fsum(float(aj) * float(x) for aj, x in zip(a, areas))


def chern_area_pairing(data: IntersectionData) -> float | Fraction:
    """``<club c1, [omega]> = sum a_j area_j``; exact when all areas are rational."""
    if data.rank == 0:
        return Fraction(0)
    return _dot_areas(solve_chern_coefficients(data).a, data.areas)


def topological_mass_surface(data: IntersectionData) -> float:
    """Mass of an ALE scalar-flat Kähler surface: ``-(1/3pi) sum a_j area_j``."""
    return -float(chern_area_pairing(data)) / (3.0 * math.pi)


def topological_mass_general(inp: GeneralMassInput | int, pairing: float | None = None,
                             scalar_integral: float | None = None) -> float:
    """Cohomological mass formula in complex dimension ``m``.

    Accepts either a :class:`GeneralMassInput` or ``(m, pairing, scalar_integral)``.
    """
    if not isinstance(inp, GeneralMassInput):
        inp = GeneralMassInput(inp, pairing, scalar_integral)
    m = inp.m
    topo = -inp.pairing / ((2 * m - 1) * math.pi ** (m - 1))
    curv = math.factorial(m - 1) / (4 * (2 * m - 1) * math.pi**m) * inp.scalar_integral
    return topo + curv


def mass_ae_blowup(areas: Sequence[float]) -> float:
    """Mass of an AE scalar-flat Kähler surface, ``Q = -I`` basis of blow-up curves."""
    return math.fsum(float(x) for x in areas) / (3.0 * math.pi)


def _check_ell(ell):
    if int(ell) != ell or ell <= 0:
        raise ValueError(f"line-bundle degree must be a positive integer, got {ell}")


def mass_oell_off_section(ell: int, area_F: float, areas_E: Sequence[float]) -> float:
    """O(-ell) total space blown up at points off the zero section."""
    _check_ell(ell)
    return ((2 - ell) / ell * area_F + math.fsum(areas_E)) / (3.0 * math.pi)


def mass_oell_on_section(ell: int, area_Ftilde: float, areas_E: Sequence[float]) -> float:
    """O(-ell) total space blown up at points on the zero section."""
    _check_ell(ell)
    return ((2 - ell) * area_Ftilde + 2.0 * math.fsum(areas_E)) / (3.0 * math.pi * ell)


def minimal_resolution_certificate(data: IntersectionData) -> MinimalResolutionCertificate:
    """Sign certificate for a minimal resolution: ``Q^-1 <= 0`` entrywise forces mass <= 0."""
    inv = rational_inverse(data.Q) if data.rank else []
    a = tuple(_matvec(inv, data.c1_pairings)) if data.rank else ()
    return MinimalResolutionCertificate(
        inverse=tuple(tuple(r) for r in inv),
        a=a,
        entrywise_nonpositive=all(v <= 0 for row in inv for v in row),
        all_a_nonneg=all(v >= 0 for v in a),
        mass=topological_mass_surface(data),
        is_ricci_flat_case=all(v == 0 for v in a),
    )


def compact_anomaly(m: int, pairing_c1: float, scalar_integral: float) -> float:
    """``4 pi^m (2m-1)/(m-1)! * mass``: the failure of the compact Gauss-Bonnet identity."""
    mass = topological_mass_general(m, pairing_c1, scalar_integral)
    return 4 * math.pi**m * (2 * m - 1) / math.factorial(m - 1) * mass


def cartan_matrix(kind: str, rank: int) -> list[list[int]]:
    """Cartan matrix of the simply-laced type ``A``, ``D`` or ``E``."""
    kind = kind.upper()
    edges: list[tuple[int, int]]
    if kind == "A" and rank >= 1:
        edges = [(i, i + 1) for i in range(rank - 1)]
    elif kind == "D" and rank >= 4:
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    elif kind == "E" and rank in (6, 7, 8):
        # chain 0-1-...-(rank-2), branch node attached to node 2
        edges = [(i, i + 1) for i in range(rank - 2)] + [(2, rank - 1)]
    else:
        raise ValueError(f"no Cartan matrix of type {kind}{rank}")
    C = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        C[i][j] = C[j][i] = -1
    return C


def intersection_data_from_json(obj: dict | str) -> IntersectionData:
    """Parse ``{"basis": [...], "Q": [[...]], "c1": ["p/q", ...], "areas": [...]}``."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    Q = obj["Q"]
    c1 = [_as_fraction(v) for v in obj["c1"]]
    return IntersectionData(obj.get("basis"), Q, c1, [float(v) for v in obj["areas"]])


def intersection_data_to_json(data: IntersectionData) -> dict:
    return {
        "basis": list(data.basis_labels),
        "Q": [list(r) for r in data.Q],
        "c1": [str(v) for v in data.c1_pairings],
        "areas": [float(v) for v in data.areas],
    }
