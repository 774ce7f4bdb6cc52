"""Executable acceptance matrix: one function per criterion.

Each criterion returns a :class:`CriterionResult`; nothing here raises on a
failed check. ``mutation`` temporarily corrupts a convention so that the
matrix can demonstrate it notices.
"""

from __future__ import annotations

import contextlib
import math
import random
import time
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import admint, homcalc, kahlergeo, lebrun, metrics

__all__ = ["CriterionResult", "CRITERIA", "run_criteria", "mutation", "radial_mass_oracle"]


@dataclass
class CriterionResult:
    key: str
    title: str
    citation: str
    passed: bool
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.key:<12} {self.title} ({self.seconds:.2f}s)"


class _Check:
    def __init__(self):
        self.ok = True
        self.details: list[str] = []

    def __call__(self, cond: bool, msg: str):
        cond = bool(cond)
        self.ok &= cond
        self.details.append(("ok    " if cond else "FAILED ") + msg)


@contextlib.contextmanager
def mutation(kind: str | None) -> Iterator[None]:
    """``sign``: negate the mass normalization; ``gamma``: drop the 1/|Gamma| factor."""
    if kind is None:
        yield
        return
    if kind == "sign":
        orig = admint.adm_normalization
        admint.adm_normalization = lambda n: -orig(n)
        try:
            yield
        finally:
            admint.adm_normalization = orig
    elif kind == "gamma":
        orig = admint.quotient_factor
        admint.quotient_factor = lambda chart: 1.0
        try:
            yield
        finally:
            admint.quotient_factor = orig
    else:
        raise ValueError(f"unknown mutation {kind!r}")


def radial_mass_oracle(expr: str = "u + A*log(u)", **params) -> float:
    """ADM flux of a U(2)-invariant chart, reduced symbolically.

    Builds ``g = F' I + ((uF')' - F') P`` in sympy at a rational point, differentiates
    componentwise and multiplies the (rotation invariant) integrand by the area
    of S^3_rho and the n = 4 normalization 1/(12 pi^2); the limit rho -> oo of
    the resulting rational function of rho is the mass.
    """
    import sympy as sp

    x = sp.symbols("x0:4", real=True)
    t = sp.Symbol("t", positive=True)
    us = sp.Symbol("u", positive=True)
    syms = {k: sp.Symbol(k, real=True) for k in params}
    F = sp.sympify(expr, locals={"u": us, **syms})
    F1 = sp.diff(F, us)
    R = sp.diff(us * F1, us)
    u = sum(v**2 for v in x)
    X = sp.Matrix(x)
    JX = sp.Matrix([-x[1], x[0], -x[3], x[2]])
    P = (X * X.T + JX * JX.T) / u
    g = (F1 * sp.eye(4) + (R - F1) * P).subs(us, u)
    integrand = sum((sp.diff(g[k, l], x[k]) - sp.diff(g[k, k], x[l])) * x[l]
                    for k in range(4) for l in range(4)) / sp.sqrt(u)
    direction = (sp.Rational(1, 2), sp.Rational(1, 2), sp.Rational(1, 2), sp.Rational(1, 2))
    at = integrand.subs({xi: t * d for xi, d in zip(x, direction)})
    flux = sp.simplify(at * 2 * sp.pi**2 * t**3 / (12 * sp.pi**2))
    limit = sp.limit(flux, t, sp.oo)
    return float(limit.subs({syms[k]: v for k, v in params.items()}))


# -- criteria ----------------------------------------------------------------


def c1_schwarzschild() -> _Check:
    chk = _Check()
    for n, A in [(3, 2.0), (4, 1.0), (5, 4.0), (6, 2.0)]:
        t0 = time.perf_counter()
        est = admint.adm_mass(metrics.schwarzschild_chart(n, A))
        dt = time.perf_counter() - t0
        chk(len(est.samples) == 8, f"n={n} A={A}: 8 radii")
        chk(abs(est.value - A / 2) <= 1e-6,
            f"n={n} A={A}: mass {est.value:.12g} vs A/2 = {A / 2} (|err| {abs(est.value - A / 2):.2e} <= 1e-6)")
        chk(dt < 10.0, f"n={n} A={A}: runtime {dt:.2f}s < 10s")
    return chk


def c2_euclidean() -> _Check:
    chk = _Check()
    for n in (3, 4, 5, 6):
        chart = metrics.euclidean_chart(n)
        worst = max(abs(admint.mass_at_radius(chart, r)) for r in (1.0, 10.0, 1e3, 1e6))
        chk(worst <= 1e-12, f"n={n}: max |mass(rho)| = {worst:.2e} <= 1e-12")
    return chk


def _random_ball(rng, k):
    pts = []
    while len(pts) < k:
        p = rng.uniform(-1.0, 1.0, 3)
        if np.linalg.norm(p) < 1.0:
            pts.append(tuple(p))
    return pts


def c3_gibbons_hawking(seed: int = 20261016) -> _Check:
    chk = _Check()
    rng = np.random.default_rng(seed)
    for k in (1, 2, 3):
        centers = _random_ball(rng, k)
        axis_a = (0.0, 0.0, -1.0)
        axis_b = tuple(rng.normal(size=3))
        ch = metrics.gibbons_hawking_chart(metrics.GibbonsHawkingData(centers, axis_a))
        order = admint.default_order(4)
        base = admint.adm_mass(ch, grid=order)
        other = admint.adm_mass(metrics.gibbons_hawking_chart(metrics.GibbonsHawkingData(centers, axis_b)), grid=order)
        fine = admint.adm_mass(ch, grid=2 * order)
        chk(abs(base.value) <= 1e-4, f"k={k}: mass {base.value:.3e} within 1e-4 of 0")
        chk(abs(other.value - base.value) <= 1e-4,
            f"k={k}: string axis change shifts mass by {abs(other.value - base.value):.2e} <= 1e-4")
        chk(abs(fine.value - base.value) <= 1e-4,
            f"k={k}: doubling quadrature order shifts mass by {abs(fine.value - base.value):.2e} <= 1e-4")
        # the quotient by Z_k is a definition, so check it directly at finite radius
        rho = base.samples[0][0]
        quot = admint.mass_at_radius(ch, rho, order)
        cover = admint.mass_at_radius(ch.with_gamma_order(1), rho, order)
        ratio = cover / quot if quot != 0 else float("nan")
        chk(math.isclose(ratio, k, rel_tol=1e-12),
            f"k={k}: S_rho / S_rho/Z_k integral ratio {ratio:.15g} == {k}")
    return chk


def c4_kahler_equivalence() -> _Check:
    chk = _Check()
    for A in (0.5, 1.0, 2.0):
        oracle = radial_mass_oracle("u + A*log(u)", A=A)
        chart = metrics.build_chart("burns", A=A)
        e_adm = admint.adm_mass(chart)
        e_log = admint.kahler_logdet_mass(chart)
        tol = 10.0 * (e_adm.error_estimate + e_log.error_estimate)
        diff = abs(e_adm.value - e_log.value)
        chk(diff <= tol, f"A={A}: |adm - logdet| = {diff:.2e} <= 10 x errors = {tol:.2e}")
        chk(abs(e_adm.value - oracle) <= 1e-6, f"A={A}: adm {e_adm.value:.12g} vs oracle {oracle:.12g}")
        chk(abs(e_log.value - oracle) <= 1e-6, f"A={A}: logdet {e_log.value:.12g} vs oracle {oracle:.12g}")
    return chk


def _random_unimodular(rng: random.Random, b: int) -> list[list[int]]:
    P = [[int(i == j) for j in range(b)] for i in range(b)]
    for _ in range(3 * b):
        i, j = rng.sample(range(b), 2) if b > 1 else (0, 0)
        if i == j:
            P = [[-v for v in row] for row in P]
            continue
        c = rng.choice([-2, -1, 1, 2])
        for r in range(b):  # column op: col_j += c col_i
            P[r][j] += c * P[r][i]
        if rng.random() < 0.3:
            for r in range(b):
                P[r][i], P[r][j] = P[r][j], P[r][i]
    return P


def _transpose(M):
    return [list(r) for r in zip(*M)]


def _matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))] for i in range(len(A))]


def _random_form(rng: random.Random, b: int):
    while True:
        Q = [[0] * b for _ in range(b)]
        for i in range(b):
            Q[i][i] = rng.randint(-4, -1)
            for j in range(i):
                Q[i][j] = Q[j][i] = rng.randint(-1, 1)
        try:
            homcalc.rational_inverse(Q)
            return Q
        except homcalc.SingularIntersectionForm:
            continue


def c5_intersection(seed: int = 5) -> _Check:
    chk = _Check()
    rng = random.Random(seed)
    bad = 0
    for _ in range(100):
        b = rng.randint(1, 5)
        Q = _random_form(rng, b)
        c1 = [rng.randint(-3, 3) for _ in range(b)]
        areas = [Fraction(rng.randint(0, 40), rng.randint(1, 9)) for _ in range(b)]
        P = _random_unimodular(rng, b)
        Pt = _transpose(P)
        Q2 = _matmul(_matmul(Pt, Q), P)
        c2 = [sum(Pt[i][k] * c1[k] for k in range(b)) for i in range(b)]
        a2 = [sum(Pt[i][k] * areas[k] for k in range(b)) for i in range(b)]
        d1 = homcalc.IntersectionData(None, Q, c1, areas)
        with warnings.catch_warnings():  # a new basis may pair negatively with omega
            warnings.simplefilter("ignore")
            d2 = homcalc.IntersectionData(None, Q2, c2, a2)
        coeff = homcalc.solve_chern_coefficients(d1).a
        exact = _matmul(Q, [[v] for v in coeff]) == [[Fraction(v)] for v in c1]
        same = homcalc.chern_area_pairing(d1) == homcalc.chern_area_pairing(d2)
        bad += (not same) or (not exact)
    chk(bad == 0, f"100 random unimodular basis changes, b <= 5: {bad} exact-rational mismatches")
    worst = 0.0
    for _ in range(1000):
        ell = rng.randint(1, 12)
        xs = [rng.uniform(0.0, 5.0) for _ in range(rng.randint(0, 6))]
        aFt = rng.uniform(0.0, 5.0)
        aF = aFt + math.fsum(xs)
        off = homcalc.mass_oell_off_section(ell, aF, xs)
        on = homcalc.mass_oell_on_section(ell, aF - math.fsum(xs), xs)
        worst = max(worst, abs(off - on))
    chk(worst <= 1e-12, f"off- and on-section formulas agree on 1000 draws: max diff {worst:.2e} <= 1e-12")
    return chk


def c6_lebrun_zero_mass() -> _Check:
    chk = _Check()
    for ell in range(3, 11):
        fam = lebrun.zero_mass_instance(ell)
        m = lebrun.closed_form_mass(fam)
        chk(m == 0 and isinstance(m, Fraction), f"ell={ell}: closed-form mass is exactly {m}")
        area_F, areas_E = lebrun.curve_areas(fam)
        on = homcalc.mass_oell_on_section(ell, area_F, areas_E)
        chk(abs(on - float(m)) <= 1e-12, f"ell={ell}: on-section formula gives {on:.3e}")
    for ell, want in [(3, -1 / 9), (4, -1 / 6)]:
        m = lebrun.closed_form_mass(lebrun.LebrunFamily(ell, ()))
        chk(abs(m - want) <= 1e-15 and abs(m - (2 - ell) / (3 * ell)) <= 1e-15,
            f"b=1, ell={ell}: mass {m:.15g} == {want:.15g}")
    return chk


ADE = [("A", r) for r in range(1, 9)] + [("D", r) for r in range(4, 9)] + [("E", 6), ("E", 7), ("E", 8)]


def c7_minimal_resolution(seed: int = 7) -> _Check:
    chk = _Check()
    inverses = {}
    for kind, r in ADE:
        Q = [[-v for v in row] for row in homcalc.cartan_matrix(kind, r)]
        inv = homcalc.rational_inverse(Q)
        inverses[(kind, r)] = Q
        chk(all(v <= 0 for row in inv for v in row), f"-{kind}{r}: Q^-1 entrywise <= 0")
    rng = random.Random(seed)
    worst = -math.inf
    for _ in range(500):
        kind, r = rng.choice(ADE)
        Q = inverses[(kind, r)]
        c1 = [rng.randint(-3, 0) for _ in range(r)]
        areas = [rng.uniform(0.0, 10.0) for _ in range(r)]
        cert = homcalc.minimal_resolution_certificate(homcalc.IntersectionData(None, Q, c1, areas))
        worst = max(worst, cert.mass)
        if not (cert.entrywise_nonpositive and cert.all_a_nonneg):
            worst = math.inf
    chk(worst <= 0.0, f"500 draws with c1 <= 0, areas >= 0: max mass {worst:.3e} <= 0")
    return chk


def c8_penrose(seed: int = 8) -> _Check:
    chk = _Check()
    rng = random.Random(seed)
    n_eq = n_strict = n_viol = 0
    trials = 200
    for _ in range(trials):
        areas = [rng.uniform(0.01, 10.0) for _ in range(rng.randint(1, 6))]
        data = homcalc.IntersectionData(None, [[-int(i == j) for j in range(len(areas))] for i in range(len(areas))],
                                        [1] * len(areas), areas)
        mass = homcalc.topological_mass_surface(data)
        div = kahlergeo.DivisorData(2, tuple(kahlergeo.DivisorComponent(f"E{j}", 1, a) for j, a in enumerate(areas)))
        v = kahlergeo.penrose_check(mass, div, scalar_flat=True, tol=1e-9)
        n_eq += v.holds and v.equality and v.consistent_with_scalar_flat
        delta = rng.uniform(1e-6, 1.0)
        up = kahlergeo.penrose_check(mass + delta, div, scalar_flat=False, tol=1e-9)
        n_strict += up.holds and not up.equality
        down = kahlergeo.penrose_check(mass - delta, div, scalar_flat=False, tol=1e-9)
        n_viol += not down.holds
    chk(n_eq == trials, f"equality to 1e-9 in {n_eq}/{trials} AE scalar-flat blow-ups")
    chk(n_strict == trials, f"mass + delta gives strict inequality in {n_strict}/{trials}")
    chk(n_viol == trials, f"mass - delta gives a violation verdict in {n_viol}/{trials}")
    return chk


def c9_mutations() -> _Check:
    chk = _Check()
    with mutation("sign"):
        sign_caught = not c1_schwarzschild().ok
    chk(sign_caught, "negated normalization makes the Schwarzschild criterion fail")
    with mutation("gamma"):
        gamma_caught = not c3_gibbons_hawking().ok
    chk(gamma_caught, "dropping 1/|Gamma| makes the Gibbons-Hawking criterion fail")
    chk(c1_schwarzschild().ok and c3_gibbons_hawking().ok, "both criteria pass again once restored")
    return chk


CRITERIA: list[tuple[str, str, str, Callable[[], _Check]]] = [
    ("schwarzschild", "Schwarzschild slice has mass A/2", "flux normalization and extrapolation",
     c1_schwarzschild),
    ("euclidean", "Euclidean chart has mass 0 at every radius", "integrand vanishes identically",
     c2_euclidean),
    ("gibbons", "Gibbons-Hawking ALE spaces have mass 0", "quotient normalization, gauge independence",
     c3_gibbons_hawking),
    ("kahler", "ADM and log-det pipelines agree on U(2)-invariant charts", "symbolic oracle A/3",
     c4_kahler_equivalence),
    ("intersection", "Intersection-form mass is basis invariant; blow-up formulas consistent",
     "exact rational arithmetic", c5_intersection),
    ("lebrun", "Zero-mass scalar-flat surfaces and negative-mass O(-ell)", "exact rational arithmetic",
     c6_lebrun_zero_mass),
    ("ade", "Minimal resolutions of ADE singularities have mass <= 0", "inverse Cartan sign pattern",
     c7_minimal_resolution),
    ("penrose", "Penrose equality for AE scalar-flat blow-ups of C^2", "mass versus canonical divisor volume",
     c8_penrose),
    ("mutation", "Convention mutations are detected", "normalization sign and 1/|Gamma|", c9_mutations),
]


def run_criteria(only: list[str] | None = None, mutate: str | None = None) -> list[CriterionResult]:
    out = []
    for key, title, cite, fn in CRITERIA:
        if only and key not in only:
            continue
        t0 = time.perf_counter()
        with mutation(mutate):
            chk = fn()
        out.append(CriterionResult(key, title, cite, chk.ok, chk.details, time.perf_counter() - t0))
    return out
