"""Explicit metric families in asymptotic Cartesian coordinates.

Every evaluator is vectorised: it takes points of shape ``(..., n)`` and
returns ``g`` of shape ``(..., n, n)`` and ``dg`` of shape ``(..., n, n, n)``
with ``dg[..., j, k, l] = d g_jk / d x_l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "ChartDomainError",
    "PositivityViolation",
    "MetricChart",
    "SchwarzschildSlice",
    "GibbonsHawkingData",
    "RadialKahlerFamily",
    "RadialKahlerChart",
    "euclidean_chart",
    "schwarzschild_chart",
    "gibbons_hawking_chart",
    "radial_kahler_chart",
    "circular_orbit_frequency",
    "schwarzschild_orbit_frequency",
    "finite_difference_dg",
    "christoffel",
    "riemann_tensor",
    "scalar_curvature",
    "monopole_potential",
    "complex_structure",
    "FAMILIES",
    "build_chart",
]

Array = np.ndarray


class ChartDomainError(ValueError):
    """A point lies inside the chart's excluded inner region."""


class PositivityViolation(ValueError):
    """A radial Kähler potential fails F' > 0 or (uF')' > 0."""


def finite_difference_dg(eval_g: Callable[[Array], Array], x: Array) -> Array:
    """Central differences with step ``max(1e-4 |x|, 1e-6)`` per point."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    h = np.maximum(1e-4 * np.linalg.norm(x, axis=-1), 1e-6)[..., None]
    cols = []
    for l in range(n):
        e = np.zeros(n)
        e[l] = 1.0
        cols.append((eval_g(x + h * e) - eval_g(x - h * e)) / (2.0 * h[..., None]))
    return np.stack(cols, axis=-1)


@dataclass(frozen=True)
class MetricChart:
    """One asymptotic end in Cartesian coordinates.

    ``gamma_order`` is the order of the group the end is a quotient by; the
    chart itself lives on the universal cover ``R^n - ball``. ``tau`` is the
    declared fall-off exponent of ``g - delta`` (``None`` for exactly flat).
    ``kahler_holomorphic`` marks charts whose coordinates are the real and
    imaginary parts of holomorphic coordinates.
    """

    n: int
    gamma_order: int
    inner_radius: float
    eval_g: Callable[[Array], Array]
    eval_dg: Callable[[Array], Array] | None = None
    tau: float | None = None
    name: str = "chart"
    params: dict = field(default_factory=dict)
    kahler_holomorphic: bool = False
    expected_mass: float | None = None

    def __post_init__(self):
        if self.n < 3:
            raise ValueError("real dimension must be >= 3")
        if int(self.gamma_order) != self.gamma_order or self.gamma_order < 1:
            raise ValueError("gamma_order must be a positive integer")

    def check_domain(self, x: Array) -> Array:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.n:
            raise ValueError(f"expected points in R^{self.n}, got shape {x.shape}")
        r = np.linalg.norm(x, axis=-1)
        if np.any(r <= self.inner_radius) or np.any(r == 0):
            raise ChartDomainError(
                f"{self.name}: point with |x| = {float(np.min(r)):.6g} inside "
                f"inner radius {self.inner_radius:.6g}"
            )
        return x

    def g(self, x: Array) -> Array:
        return self.eval_g(self.check_domain(x))

    def dg(self, x: Array) -> Array:
        x = self.check_domain(x)
        if self.eval_dg is None:
            return finite_difference_dg(self.eval_g, x)
        return self.eval_dg(x)

    def with_gamma_order(self, k: int) -> "MetricChart":
        from dataclasses import replace

        return replace(self, gamma_order=k)


# -- Euclidean ---------------------------------------------------------------


def euclidean_chart(n: int = 4) -> MetricChart:
    def g(x):
        x = np.asarray(x, dtype=float)
        return np.broadcast_to(np.eye(n), x.shape[:-1] + (n, n)).copy()

    def dg(x):
        x = np.asarray(x, dtype=float)
        return np.zeros(x.shape[:-1] + (n, n, n))

    return MetricChart(n, 1, 0.0, g, dg, tau=None, name="euclidean",
                       params={"n": n}, kahler_holomorphic=(n % 2 == 0),
                       expected_mass=0.0)


# -- Schwarzschild -----------------------------------------------------------


@dataclass(frozen=True)
class SchwarzschildSlice:
    n: int
    A: float

    @property
    def expected_mass(self) -> float:
        return self.A / 2.0


def schwarzschild_chart(n: int, A: float) -> MetricChart:
    """Time-symmetric slice ``(1 - A/rho^(n-2))^-1 drho^2 + rho^2 h`` in Cartesian form.

    ``g_jk = delta_jk + f nu_j nu_k`` with ``f = a/(1-a)``, ``a = A rho^(2-n)``.
    """
    if n < 3:
        raise ValueError("n must be >= 3")
    inner = max(A, 0.0) ** (1.0 / (n - 2))
    eye = np.eye(n)

    def _parts(x):
        x = np.asarray(x, dtype=float)
        rho = np.linalg.norm(x, axis=-1)
        a = A * rho ** (2 - n)
        if np.any(a >= 1.0):
            raise ChartDomainError("Schwarzschild chart invalid where rho^(n-2) <= A")
        f = a / (1.0 - a)
        nu = x / rho[..., None]
        return x, rho, a, f, nu

    def g(x):
        x, rho, a, f, nu = _parts(x)
        return eye + f[..., None, None] * nu[..., :, None] * nu[..., None, :]

    def dg(x):
        x, rho, a, f, nu = _parts(x)
        fp = (2 - n) * a / rho / (1.0 - a) ** 2
        dnu = (eye - nu[..., :, None] * nu[..., None, :]) / rho[..., None, None]  # [j, l]
        out = fp[..., None, None, None] * np.einsum("...j,...k,...l->...jkl", nu, nu, nu)
        out += f[..., None, None, None] * (
            np.einsum("...jl,...k->...jkl", dnu, nu) + np.einsum("...j,...kl->...jkl", nu, dnu)
        )
        return out

    return MetricChart(n, 1, inner, g, dg, tau=float(n - 2), name="schwarzschild",
                       params={"n": n, "A": A}, expected_mass=A / 2.0)


def circular_orbit_frequency(n: int, M: float, rho: float) -> float:
    """Angular frequency of a circular orbit in the n-dimensional Newtonian field of mass M."""
    if rho <= 0 or n < 3:
        raise ValueError("need rho > 0 and n >= 3")
    rad = (n - 2) * M / rho**n
    if rad < 0:
        raise ValueError("negative mass has no circular orbits (negative radicand)")
    return math.sqrt(rad)


def schwarzschild_orbit_frequency(n: int, A: float, rho: float) -> float:
    """Frequency of circular geodesics of the generalized Schwarzschild metric."""
    if rho <= 0 or n < 3:
        raise ValueError("need rho > 0 and n >= 3")
    rad = (n - 2) / 2.0 * A / rho**n
    if rad < 0:
        raise ValueError("negative radicand")
    omega = math.sqrt(rad)
    newton = circular_orbit_frequency(n, A / 2.0, rho)
    assert math.isclose(omega, newton, rel_tol=1e-14, abs_tol=0.0), (omega, newton)
    return omega


# -- Gibbons-Hawking ---------------------------------------------------------


def _cross_matrix(s: Array) -> Array:
    return np.array([[0.0, -s[2], s[1]], [s[2], 0.0, -s[0]], [-s[1], s[0], 0.0]])


def monopole_potential(x: Array, p: Array, s: Array, with_jacobian: bool = False):
    """Connection 1-form of the monopole ``V = 1/(2|x-p|)`` with Dirac string along ``s``.

    ``A = (s x w) / (2|w|(|w| - s.w))`` with ``w = x - p``; ``curl A = grad V``
    away from the ray ``p + t s``, ``t >= 0``. The Jacobian has ``[a, b] = dA_a/dx_b``.
    """
    w = np.asarray(x, dtype=float) - np.asarray(p, dtype=float)
    s = np.asarray(s, dtype=float)
    r = np.linalg.norm(w, axis=-1)
    sw = w @ s
    D = 2.0 * r * (r - sw)
    N = np.cross(s, w)
    A = N / D[..., None]
    if not with_jacobian:
        return A
    what = w / r[..., None]
    dD = 2.0 * what * (r - sw)[..., None] + 2.0 * (w - r[..., None] * s)
    jac = _cross_matrix(s) / D[..., None, None] - N[..., :, None] * dD[..., None, :] / (D**2)[..., None, None]
    return A, jac


def _rotation_taking(a: Array, b: Array) -> Array:
    """Proper rotation taking unit vector ``a`` to unit vector ``b``."""
    a = a / np.linalg.norm(a)
    b = b / np.linalg.norm(b)
    v = np.cross(a, b)
    c = float(a @ b)
    if np.linalg.norm(v) < 1e-14:
        if c > 0:
            return np.eye(3)
        # half-turn about any axis orthogonal to a
        t = np.array([1.0, 0.0, 0.0]) if abs(a[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        axis = np.cross(a, t)
        axis /= np.linalg.norm(axis)
        return 2.0 * np.outer(axis, axis) - np.eye(3)
    vx = _cross_matrix(v)
    return np.eye(3) + vx + vx @ vx / (1.0 + c)


# Hopf map H_a(Y) = Y^T M_a Y with z1 = Y0 + i Y1, z2 = Y2 + i Y3.
_HOPF = np.array(
    [
        [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
        [[0, 0, 0, -1], [0, 0, 1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]],
    ],
    dtype=float,
)


def complex_structure(n: int) -> Array:
    """Multiplication by i on R^n = C^(n/2), pairs ``(x_{2j}, x_{2j+1})``."""
    J = np.zeros((n, n))
    for j in range(0, n, 2):
        J[j + 1, j] = 1.0
        J[j, j + 1] = -1.0
    return J


@dataclass(frozen=True)
class GibbonsHawkingData:
    """Multi-centre Gibbons-Hawking data with ``V = sum 1/(2|x - p_i|)``.

    No constant term in V, so the metric is ALE (not ALF) with group Z_k.
    """

    centers: tuple[tuple[float, float, float], ...]
    string_direction: tuple[float, float, float] = (0.0, 0.0, -1.0)

    def __init__(self, centers, string_direction=(0.0, 0.0, -1.0)):
        c = tuple(tuple(float(v) for v in p) for p in centers)
        if not c:
            raise ValueError("need at least one centre")
        if any(len(p) != 3 for p in c):
            raise ValueError("centres must be points of R^3")
        arr = np.array(c)
        for i in range(len(c)):
            for j in range(i):
                if np.linalg.norm(arr[i] - arr[j]) == 0:
                    raise ValueError("centres must be pairwise distinct")
        s = np.asarray(string_direction, dtype=float)
        s = s / np.linalg.norm(s)
        object.__setattr__(self, "centers", c)
        object.__setattr__(self, "string_direction", tuple(float(v) for v in s))

    @property
    def k(self) -> int:
        return len(self.centers)

    def potential(self, x: Array, with_gradient: bool = False):
        x = np.asarray(x, dtype=float)
        V = np.zeros(x.shape[:-1])
        dV = np.zeros(x.shape)
        for p in self.centers:
            w = x - np.asarray(p)
            r = np.linalg.norm(w, axis=-1)
            V += 0.5 / r
            dV -= 0.5 * w / (r**3)[..., None]
        return (V, dV) if with_gradient else V

    def connection(self, x: Array, with_jacobian: bool = False):
        """Sum of per-centre monopole potentials, every string along ``string_direction``."""
        s = np.asarray(self.string_direction)
        tot = np.zeros(np.shape(x))
        jac = np.zeros(np.shape(x) + (3,))
        for p in self.centers:
            if with_jacobian:
                a, j = monopole_potential(x, p, s, True)
                jac += j
            else:
                a = monopole_potential(x, p, s)
            tot += a
        return (tot, jac) if with_jacobian else tot

    def smooth_connection(self, x: Array, with_jacobian: bool = False):
        """Gauge-equivalent potential ``k A_0 + sum_i (A_{p_i} - A_0)``.

        The i-th correction uses the string through the origin (direction
        ``-p_i``), so its singular set is the segment ``[p_i, 0]``; outside the
        ball containing the centres only the single string of ``k A_0`` remains,
        and that one is absorbed by the fibre coordinate.
        """
        x = np.asarray(x, dtype=float)
        s = np.asarray(self.string_direction)
        a0, j0 = monopole_potential(x, np.zeros(3), s, True)
        corr, cjac = self._dipole_corrections(x)
        if with_jacobian:
            return self.k * a0 + corr, self.k * j0 + cjac
        return self.k * a0 + corr

    def _dipole_corrections(self, x: Array):
        corr = np.zeros(x.shape)
        jac = np.zeros(x.shape + (3,))
        for p in self.centers:
            p = np.asarray(p)
            rp = np.linalg.norm(p)
            if rp == 0:
                continue
            e = -p / rp
            a1, j1 = monopole_potential(x, p, e, True)
            a0, j0 = monopole_potential(x, np.zeros(3), e, True)
            corr += a1 - a0
            jac += j1 - j0
        return corr, jac


def gibbons_hawking_chart(data: GibbonsHawkingData) -> MetricChart:
    """ALE chart ``Y in R^4`` of ``g = V dx.dx + V^-1 (dt + theta)^2``.

    The base point is ``x = R H(Y) / (2k)`` with ``H`` the Hopf map and ``R`` a
    rotation taking ``-e_z`` to the string direction; the fibre 1-form becomes
    ``k Im(conj(z).dz)/|z|^2`` plus the pulled-back dipole corrections. The
    chart covers the universal cover of the end, so ``gamma_order = k``.
    """
    k = data.k
    Rot = _rotation_taking(np.array([0.0, 0.0, -1.0]), np.asarray(data.string_direction))
    M = np.einsum("ab,bjl->ajl", Rot, _HOPF)  # x_a = Y.M_a.Y / (2k)
    T = M / k  # d J[a, j] / d Y_l
    K = complex_structure(4)
    R_c = max(float(np.linalg.norm(p)) for p in data.centers)
    inner = math.sqrt(2.0 * k * R_c) if R_c > 0 else 0.0

    def _base(Y):
        Y = np.asarray(Y, dtype=float)
        x = np.einsum("...j,ajl,...l->...a", Y, M, Y) / (2.0 * k)
        J = np.einsum("ajl,...l->...aj", M, Y) / k
        return Y, x, J

    def _assemble(Y, want_dg):
        Y, x, J = _base(Y)
        V, dV = data.potential(x, with_gradient=True)
        eta, deta = _corrections(x)
        Y2 = np.sum(Y * Y, axis=-1)
        KY = np.einsum("jl,...l->...j", K, Y)
        alpha = KY / Y2[..., None]
        beta = k * alpha + np.einsum("...aj,...a->...j", J, eta)
        JtJ = np.einsum("...aj,...ak->...jk", J, J)
        g = V[..., None, None] * JtJ + beta[..., :, None] * beta[..., None, :] / V[..., None, None]
        if not want_dg:
            return g
        dV_Y = np.einsum("...a,...al->...l", dV, J)
        dJtJ = np.einsum("ajl,...ak->...jkl", T, J)
        dJtJ = dJtJ + np.swapaxes(dJtJ, -3, -2)
        dalpha = K[..., :, :] / Y2[..., None, None] - 2.0 * KY[..., :, None] * Y[..., None, :] / (Y2**2)[..., None, None]
        dbeta = (
            k * dalpha
            + np.einsum("ajl,...a->...jl", T, eta)
            + np.einsum("...aj,...ab,...bl->...jl", J, deta, J)
        )
        dg = dV_Y[..., None, None, :] * JtJ[..., None] + V[..., None, None, None] * dJtJ
        dg -= (dV_Y / (V**2)[..., None])[..., None, None, :] * (beta[..., :, None] * beta[..., None, :])[..., None]
        bdb = beta[..., :, None, None] * dbeta[..., None, :, :]
        dg += (bdb + np.swapaxes(bdb, -3, -2)) / V[..., None, None, None]
        return dg

    def _corrections(x):
        return data._dipole_corrections(x)

    return MetricChart(
        4, k, inner,
        lambda Y: _assemble(Y, False),
        lambda Y: _assemble(Y, True),
        tau=2.0,
        name="gibbons-hawking",
        params={"centers": [list(p) for p in data.centers],
                "string_direction": list(data.string_direction)},
        expected_mass=0.0,
    )


# -- U(m)-invariant Kähler potentials ----------------------------------------


@dataclass(frozen=True)
class RadialKahlerFamily:
    """Kähler potential ``F(u)``, ``u = |z|^2``, on ``C^m`` minus a ball.

    ``derivs[i]`` evaluates the i-th derivative of F (``i = 0..4``). The real
    metric has eigenvalue ``(uF')'`` on span{x, Jx} and ``F'`` on its complement,
    i.e. the Kähler form is ``(i/2) ddbar F`` so that ``F = u`` is Euclidean.
    """

    m: int
    derivs: tuple[Callable[[Array], Array], ...]
    label: str = "F"
    params: dict = field(default_factory=dict)
    gamma_order: int = 1
    inner_radius: float = 1.0
    tau: float | None = 2.0
    expected_mass: float | None = None
    scalar_fn: Callable[[Array], Array] | None = None

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("complex dimension must be >= 2")
        if len(self.derivs) < 4:
            raise ValueError("need F and at least its first three derivatives")

    @classmethod
    def from_expression(cls, expr: str, m: int = 2, *, gamma_order: int = 1,
                        inner_radius: float = 1.0, tau: float | None = 2.0,
                        expected_mass: float | None = None, **params) -> "RadialKahlerFamily":
        """Build a family from a sympy expression in ``u`` and named parameters."""
        import sympy as sp

        u = sp.Symbol("u", positive=True)
        syms = {name: sp.Symbol(name, real=True) for name in params}
        F = sp.sympify(expr, locals={"u": u, **syms})
        F = F.subs({syms[k]: sp.nsimplify(v) if isinstance(v, int) else v for k, v in params.items()})
        fns = []
        d = F
        for _ in range(5):
            fns.append(_vectorised(sp.lambdify(u, d, "numpy")))
            d = sp.diff(d, u)
        # exact radial reduction of the scalar curvature; avoids the 1/u^2
        # cancellation of the numeric formula near a collapsed curve
        F1 = sp.diff(F, u)
        R = sp.diff(u * F1, u)
        L1 = sp.diff(sp.log(R * F1 ** (m - 1)), u)
        s = sp.cancel(sp.together(-4 * (sp.diff(u * L1, u) / R + (m - 1) * L1 / F1)))
        return cls(m, tuple(fns), label=expr, params=dict(params), gamma_order=gamma_order,
                   inner_radius=inner_radius, tau=tau, expected_mass=expected_mass,
                   scalar_fn=_vectorised(sp.lambdify(u, s, "numpy")))

    def d(self, i: int, u):
        return self.derivs[i](np.asarray(u, dtype=float))

    def tangential(self, u):
        return self.d(1, u)

    def radial(self, u):
        u = np.asarray(u, dtype=float)
        return self.d(1, u) + u * self.d(2, u)

    def check_positive(self, u):
        t, r = self.tangential(u), self.radial(u)
        if np.any(t <= 0) or np.any(r <= 0):
            raise PositivityViolation(
                f"{self.label}: need F' > 0 and (uF')' > 0; got min F' = "
                f"{float(np.min(t)):.4g}, min (uF')' = {float(np.min(r)):.4g}"
            )


def _vectorised(f):
    def wrapped(u):
        u = np.asarray(u, dtype=float)
        return np.broadcast_to(np.asarray(f(u), dtype=float), u.shape).copy()

    return wrapped


# alias kept for callers that think of the family as a chart
RadialKahlerChart = RadialKahlerFamily


def radial_kahler_chart(family: RadialKahlerFamily) -> MetricChart:
    n = 2 * family.m
    J = complex_structure(n)
    eye = np.eye(n)

    def _parts(x):
        x = np.asarray(x, dtype=float)
        u = np.sum(x * x, axis=-1)
        family.check_positive(u)
        Jx = np.einsum("jl,...l->...j", J, x)
        P = (x[..., :, None] * x[..., None, :] + Jx[..., :, None] * Jx[..., None, :]) / u[..., None, None]
        return x, u, Jx, P

    def g(x):
        x, u, Jx, P = _parts(x)
        t, r = family.tangential(u), family.radial(u)
        return t[..., None, None] * eye + (r - t)[..., None, None] * P

    def dg(x):
        x, u, Jx, P = _parts(x)
        F1, F2, F3 = family.d(1, u), family.d(2, u), family.d(3, u)
        t, r = F1, F1 + u * F2
        dt = 2.0 * F2[..., None] * x  # d/dx_l of F'(u)
        dr = 2.0 * (2.0 * F2 + u * F3)[..., None] * x
        xx = np.einsum("...j,kl->...jkl", x, eye)
        dxx = xx + np.swapaxes(xx, -3, -2)
        jj = np.einsum("...j,kl->...kjl", Jx, J)  # d_l (Jx)_k = J_kl
        djj = jj + np.swapaxes(jj, -3, -2)
        outer = x[..., :, None] * x[..., None, :] + Jx[..., :, None] * Jx[..., None, :]
        dP = (dxx + djj) / u[..., None, None, None] - 2.0 * outer[..., None] * x[..., None, None, :] / (u**2)[..., None, None, None]
        out = np.einsum("jk,...l->...jkl", eye, dt)
        out += P[..., None] * (dr - dt)[..., None, None, :]
        out += (r - t)[..., None, None, None] * dP
        return out

    return MetricChart(
        n, family.gamma_order, family.inner_radius, g, dg, tau=family.tau,
        name="radial-kahler", params={"F": family.label, "m": family.m, **family.params},
        kahler_holomorphic=True, expected_mass=family.expected_mass,
    )


# -- curvature from a chart (numerical) --------------------------------------


def christoffel(chart: MetricChart, x: Array) -> Array:
    """``Gamma[a, b, c] = Gamma^a_bc`` from ``g`` and ``dg``."""
    g = chart.g(x)
    dg = chart.dg(x)
    ginv = np.linalg.inv(g)
    # low[d, b, c] = 1/2 (g_db,c + g_dc,b - g_bc,d)
    low = 0.5 * (np.einsum("...dbc->...dbc", dg) + np.einsum("...dcb->...dbc", dg)
                 - np.einsum("...bcd->...dbc", dg))
    return np.einsum("...ad,...dbc->...abc", ginv, low)


def riemann_tensor(chart: MetricChart, x: Array, h: float | None = None) -> Array:
    """``R[a, b, c, d] = R^a_bcd`` at a single point; derivatives of Gamma by central differences."""
    x = np.asarray(x, dtype=float)
    n = chart.n
    if h is None:
        h = max(1e-4 * float(np.linalg.norm(x)), 1e-6)
    G = christoffel(chart, x)
    dG = np.empty((n, n, n, n))  # dG[a, b, c, e] = d_e Gamma^a_bc
    for e in range(n):
        step = np.zeros(n)
        step[e] = h
        dG[..., e] = (christoffel(chart, x + step) - christoffel(chart, x - step)) / (2 * h)
    R = (np.einsum("adbc->abcd", dG) - np.einsum("acbd->abcd", dG)
         + np.einsum("ace,edb->abcd", G, G) - np.einsum("ade,ecb->abcd", G, G))
    return R


def scalar_curvature(chart: MetricChart, x: Array, h: float | None = None) -> float:
    R = riemann_tensor(chart, x, h)
    ric = np.einsum("abad->bd", R)
    return float(np.einsum("bd,bd->", np.linalg.inv(chart.g(x)), ric))


# -- registry ----------------------------------------------------------------


def _burns(A=1.0, m=2, gamma_order=1):
    A = float(A)
    fam = RadialKahlerFamily.from_expression(
        "u + A*log(u)", int(m), A=A, gamma_order=int(gamma_order),
        inner_radius=math.sqrt(max(-A, 0.0)) + 1.0,
        expected_mass=A / 3.0 / int(gamma_order) if int(m) == 2 else None,
    )
    return radial_kahler_chart(fam)


def _radial(potential="u + A*log(u)", m=2, gamma_order=1, inner_radius=1.0, tau=2.0, **params):
    fam = RadialKahlerFamily.from_expression(
        potential, int(m), gamma_order=int(gamma_order), inner_radius=float(inner_radius),
        tau=float(tau), **{k: float(v) for k, v in params.items()},
    )
    return radial_kahler_chart(fam)


def _gh(centers=((0.0, 0.0, 0.0),), string_direction=(0.0, 0.0, -1.0)):
    centers = [tuple(map(float, c)) for c in np.atleast_2d(np.asarray(centers, dtype=float))]
    return gibbons_hawking_chart(GibbonsHawkingData(centers, tuple(map(float, string_direction))))


def _lebrun(**params):
    raise ValueError(
        "the lebrun family has closed-form and topological masses only; "
        "use `mass lebrun` (no coordinate chart is available)"
    )


FAMILIES: dict[str, Callable[..., MetricChart]] = {
    "euclidean": lambda n=4: euclidean_chart(int(n)),
    "schwarzschild": lambda n=3, A=2.0: schwarzschild_chart(int(n), float(A)),
    "gibbons-hawking": _gh,
    "radial-kahler": _radial,
    "burns": _burns,
    "lebrun": _lebrun,
}


def build_chart(name: str, **params) -> MetricChart:
    try:
        factory = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(FAMILIES)}") from None
    return factory(**params)
