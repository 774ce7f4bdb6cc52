"""Numerical ADM mass: surface integrals on coordinate spheres and the limit.

The mass at radius rho is

    Gamma(n/2) / (4 (n-1) pi^(n/2)) * (1/|Gamma|) * int_{S_rho} [g_kl,k - g_kk,l] n^l da

and the limit rho -> oo is taken by polynomial extrapolation in ``rho^-p``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .metrics import MetricChart
from .quadrature import QuadratureGrid, sphere_grid

__all__ = [
    "MassEstimate",
    "adm_normalization",
    "quotient_factor",
    "adm_integrand",
    "mass_at_radius",
    "logdet_mass_at_radius",
    "default_schedule",
    "default_order",
    "default_exponent",
    "extrapolate",
    "fit_tail_exponent",
    "adm_mass",
    "kahler_logdet_mass",
    "convergence_table_csv",
]


def adm_normalization(n: int) -> float:
    """``Gamma(n/2) / (4 (n-1) pi^(n/2))``; equals 1/(16 pi) for n = 3."""
    return math.gamma(n / 2) / (4.0 * (n - 1) * math.pi ** (n / 2))


def quotient_factor(chart: MetricChart) -> float:
    """Integration over S_rho / Gamma is 1/|Gamma| of the integral over S_rho."""
    return 1.0 / chart.gamma_order


@dataclass
class MassEstimate:
    value: float
    samples: list[tuple[float, float]]
    error_estimate: float
    converged: bool
    exponent: float = float("nan")
    method: str = "richardson"
    running: list[tuple[float, float]] = field(default_factory=list)  # (extrapolant, error) per prefix
    fitted_exponent: float = float("nan")

    def __post_init__(self):
        rhos = [r for r, _ in self.samples]
        if rhos != sorted(rhos):
            raise ValueError("samples must be sorted by increasing radius")
        if not self.error_estimate >= 0:
            raise ValueError("error estimate must be non-negative")

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "error_estimate": self.error_estimate,
            "converged": self.converged,
            "exponent": self.exponent,
            "fitted_exponent": self.fitted_exponent,
            "method": self.method,
            "samples": [[r, v] for r, v in self.samples],
        }


def adm_integrand(chart: MetricChart, x) -> np.ndarray:
    """``[g_kl,k - g_kk,l] n^l`` at points ``x`` (outward Euclidean normal)."""
    x = chart.check_domain(x)
    dg = chart.dg(x)
    v = np.einsum("...klk->...l", dg) - np.einsum("...kkl->...l", dg)
    nu = x / np.linalg.norm(x, axis=-1)[..., None]
    return np.einsum("...l,...l->...", v, nu)


def _grid_for(chart: MetricChart, grid: QuadratureGrid | int | None) -> QuadratureGrid:
    if grid is None:
        grid = default_order(chart.n)
    if isinstance(grid, (int, np.integer)):
        grid = sphere_grid(chart.n, int(grid))
    if grid.n != chart.n:
        raise ValueError(f"quadrature grid is on S^{grid.n - 1}, chart has dimension {chart.n}")
    return grid


def mass_at_radius(chart: MetricChart, rho: float, grid: QuadratureGrid | int | None = None) -> float:
    if rho <= chart.inner_radius:
        from .metrics import ChartDomainError

        raise ChartDomainError(f"radius {rho} not outside inner radius {chart.inner_radius}")
    grid = _grid_for(chart, grid)
    n = chart.n
    vals = adm_integrand(chart, rho * grid.nodes)
    return adm_normalization(n) * quotient_factor(chart) * rho ** (n - 1) * grid.integrate(vals)


def logdet_mass_at_radius(chart: MetricChart, rho: float, grid: QuadratureGrid | int | None = None) -> float:
    """``-((m-1)!/(4(2m-1)pi^m)) int_{S_rho/Gamma} *d log sqrt(det g)`` at one radius."""
    if not chart.kahler_holomorphic:
        raise ValueError(
            f"{chart.name}: log-det formula needs a Kähler chart in holomorphic coordinates"
        )
    if rho <= chart.inner_radius:
        from .metrics import ChartDomainError

        raise ChartDomainError(f"radius {rho} not outside inner radius {chart.inner_radius}")
    grid = _grid_for(chart, grid)
    n = chart.n
    m = n // 2
    x = rho * grid.nodes
    g = chart.g(x)
    dg = chart.dg(x)
    # d_l log sqrt(det g) = 1/2 tr(g^-1 d_l g)
    dlog = 0.5 * np.einsum("...jk,...kjl->...l", np.linalg.inv(g), dg)
    flux = grid.integrate(np.einsum("...l,...l->...", dlog, grid.nodes))
    coeff = math.factorial(m - 1) / (4.0 * (2 * m - 1) * math.pi**m)
    return -coeff * quotient_factor(chart) * rho ** (n - 1) * flux


def default_order(n: int) -> int:
    return 16 if n <= 4 else 8


def default_exponent(chart: MetricChart) -> float:
    """``p = 2 eps`` with ``eps = tau - (n-2)/2``; 1 when no fall-off is declared."""
    if chart.tau is None or math.isinf(chart.tau):
        return 1.0
    eps = chart.tau - (chart.n - 2) / 2.0
    if eps <= 0:
        raise ValueError(f"{chart.name}: declared fall-off tau = {chart.tau} is too slow")
    return 2.0 * eps


def default_schedule(chart: MetricChart, rho0: float | None = None, count: int = 8) -> list[float]:
    """Geometric radii ``rho0 * 2^(k/2)``."""
    if rho0 is None:
        rho0 = max(4.0 * chart.inner_radius, 4.0)
    return [rho0 * 2.0 ** (k / 2.0) for k in range(count)]


def _neville(h: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Neville tableau for the value at h = 0; ``T[i, j]`` uses points i-j..i."""
    N = len(h)
    T = np.full((N, N), np.nan)
    T[:, 0] = y
    for j in range(1, N):
        for i in range(j, N):
            T[i, j] = (h[i - j] * T[i, j - 1] - h[i] * T[i - 1, j - 1]) / (h[i - j] - h[i])
    return T


def extrapolate(rhos: Sequence[float], values: Sequence[float], p: float,
                method: str = "richardson") -> tuple[float, float]:
    """Limit rho -> oo of samples assumed to behave like ``c0 + c1 rho^-p + ...``.

    ``richardson``: polynomial extrapolation in ``h = rho^-p``, picking the
    tableau column whose last two entries agree best. ``linear``: least-squares
    fit of ``c0 + c1 h``. Returns ``(value, error_estimate)``.
    """
    rhos = np.asarray(rhos, dtype=float)
    y = np.asarray(values, dtype=float)
    h = rhos ** (-p)
    if len(y) == 1:
        return float(y[0]), float("inf")
    if method == "linear":
        A = np.stack([np.ones_like(h), h], axis=1)
        coef, *_ = np.linalg.lstsq(A, y, rcond=None)
        resid = y - A @ coef
        err = float(np.max(np.abs(resid))) if len(y) > 2 else abs(float(y[-1] - y[-2]))
        return float(coef[0]), err
    if method != "richardson":
        raise ValueError(f"unknown extrapolation method {method!r}")
    T = _neville(h, y)
    N = len(y)
    best, best_err = float(y[-1]), abs(float(y[-1] - y[-2]))
    for j in range(1, N - 1):
        cand = T[N - 1, j]
        err = max(abs(cand - T[N - 2, j]), abs(cand - T[N - 1, j - 1]))
        if err < best_err:
            best, best_err = float(cand), float(err)
    if N == 2:
        best = float(T[1, 1])
    return best, best_err


def fit_tail_exponent(rhos: Sequence[float], values: Sequence[float]) -> float:
    """Decay exponent of ``value - limit`` from successive differences of the last samples."""
    r = np.asarray(rhos, dtype=float)
    y = np.asarray(values, dtype=float)
    d = np.diff(y)
    if len(d) < 2 or np.any(d[-2:] == 0):
        return float("nan")
    # d_i ~ c rho_i^-p (1 - (rho_{i+1}/rho_i)^-p) for geometric radii
    return float(math.log(abs(d[-2] / d[-1])) / math.log(r[-1] / r[-2]))


def _estimate(rhos, values, p, method, tol) -> MassEstimate:
    running = []
    for i in range(1, len(rhos) + 1):
        if i == 1:
            running.append((float(values[0]), float("inf")))
        else:
            running.append(extrapolate(rhos[:i], values[:i], p, method))
    value, err = running[-1]
    prev = running[-2][0]
    # error bound covers both the tableau estimate and the shift from dropping the last radius
    err = max(err, abs(value - prev)) if np.isfinite(err) else abs(value - prev)
    # nothing is known below the rounding level of the samples
    err = max(err, 8.0 * np.finfo(float).eps * float(np.max(np.abs(values))))
    converged = bool(err <= tol)
    return MassEstimate(
        value=value,
        samples=list(zip(map(float, rhos), map(float, values))),
        error_estimate=float(err),
        converged=converged,
        exponent=p,
        method=method,
        running=running,
        fitted_exponent=fit_tail_exponent(rhos, values),
    )


def _prepare(chart, schedule, grid):
    if schedule is None:
        schedule = default_schedule(chart)
    schedule = [float(r) for r in schedule]
    if len(schedule) < 3:
        raise ValueError("radius schedule needs at least 3 radii")
    if any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("radius schedule must be strictly increasing")
    return schedule, _grid_for(chart, grid)


def adm_mass(chart: MetricChart, schedule: Sequence[float] | None = None,
             extrapolation: str = "richardson", grid: QuadratureGrid | int | None = None,
             p: float | None = None, tol: float = 1e-6) -> MassEstimate:
    """Extrapolated ADM mass. Never raises on non-convergence; see ``converged``."""
    schedule, grid = _prepare(chart, schedule, grid)
    if p is None:
        p = default_exponent(chart)
    values = [mass_at_radius(chart, r, grid) for r in schedule]
    return _estimate(schedule, values, p, extrapolation, tol)


def kahler_logdet_mass(chart: MetricChart, schedule: Sequence[float] | None = None,
                       grid: QuadratureGrid | int | None = None, extrapolation: str = "richardson",
                       p: float | None = None, tol: float = 1e-6) -> MassEstimate:
    """Mass from the flux of ``d log sqrt(det g)``, valid in holomorphic coordinates."""
    if not chart.kahler_holomorphic:
        raise ValueError(
            f"{chart.name}: log-det formula needs a Kähler chart in holomorphic coordinates"
        )
    schedule, grid = _prepare(chart, schedule, grid)
    if p is None:
        p = default_exponent(chart)
    values = [logdet_mass_at_radius(chart, r, grid) for r in schedule]
    return _estimate(schedule, values, p, extrapolation, tol)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def convergence_table_csv(est: MassEstimate) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["rho", "mass_at_radius", "extrapolant", "error_estimate"])
    for (rho, val), (ext, err) in zip(est.samples, est.running):
        w.writerow([_fmt(rho), _fmt(val), _fmt(ext), _fmt(err)])
    return buf.getvalue()
