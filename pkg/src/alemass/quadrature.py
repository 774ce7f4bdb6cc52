"""Product Gauss quadrature on the unit sphere S^(n-1).

Nested polar angles use Gauss-Jacobi rules in ``t = cos(theta)`` with weight
``(1 - t^2)^((d-3)/2)`` on S^(d-1); the innermost circle uses the periodic
trapezoid rule. A grid of ``order`` L integrates every polynomial of degree
<= L in the ambient coordinates exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, roots_jacobi

__all__ = ["QuadratureGrid", "sphere_grid", "sphere_volume", "monomial_integral"]


def sphere_volume(n: int) -> float:
    """Volume of the unit sphere S^(n-1) in R^n."""
    return 2.0 * math.pi ** (n / 2) / math.gamma(n / 2)


def monomial_integral(alpha) -> float:
    """Exact integral of ``prod x_i^alpha_i`` over S^(n-1)."""
    alpha = [int(a) for a in alpha]
    if any(a % 2 for a in alpha):
        return 0.0
    b = [(a + 1) / 2.0 for a in alpha]
    return 2.0 * math.exp(sum(gammaln(bi) for bi in b) - gammaln(sum(b)))


@dataclass(frozen=True)
class QuadratureGrid:
    n: int
    order: int
    nodes: np.ndarray  # (N, n) unit vectors
    weights: np.ndarray  # (N,)

    def integrate(self, values: np.ndarray) -> float:
        # np.sum reduces pairwise in a fixed order
        return float(np.sum(self.weights * values))

    def __len__(self):
        return len(self.weights)


def _circle(order: int):
    M = order + 1
    phi = 2.0 * math.pi * np.arange(M) / M
    return np.stack([np.cos(phi), np.sin(phi)], axis=1), np.full(M, 2.0 * math.pi / M)


def _build(n: int, order: int):
    if n == 2:
        return _circle(order)
    nodes, w = _build(n - 1, order)
    npts = order // 2 + 1
    a = (n - 3) / 2.0
    t, wt = roots_jacobi(npts, a, a)
    s = np.sqrt(1.0 - t * t)
    X = np.concatenate([t[:, None, None].repeat(len(w), 1),
                        s[:, None, None] * nodes[None, :, :]], axis=2)
    W = wt[:, None] * w[None, :]
    return X.reshape(-1, n), W.reshape(-1)


def _self_test(n: int, order: int, nodes: np.ndarray, weights: np.ndarray, tol: float = 1e-12):
    powers = nodes[:, :, None] ** np.arange(order + 1)[None, None, :]  # (N, n, L+1)
    worst = 0.0
    for i in range(n):
        for j in range(i, n):
            if i == j:
                got = np.einsum("p,pa->a", weights, powers[:, i, :])
                for d in range(order + 1):
                    alpha = [0] * n
                    alpha[i] = d
                    exact = monomial_integral(alpha)
                    worst = max(worst, abs(got[d] - exact) / max(abs(exact), 1.0))
                continue
            got = np.einsum("p,pa,pb->ab", weights, powers[:, i, :], powers[:, j, :])
            for da in range(order + 1):
                for db in range(order + 1 - da):
                    alpha = [0] * n
                    alpha[i], alpha[j] = da, db
                    exact = monomial_integral(alpha)
                    worst = max(worst, abs(got[da, db] - exact) / max(abs(exact), 1.0))
    if worst > tol:
        raise AssertionError(f"S^{n - 1} grid of order {order} failed exactness: {worst:.3e}")
    total = float(np.sum(weights))
    if abs(total / sphere_volume(n) - 1.0) > tol:
        raise AssertionError("quadrature weights do not sum to the sphere volume")


@lru_cache(maxsize=64)
def sphere_grid(n: int, order: int) -> QuadratureGrid:
    """Cached grid on S^(n-1), exactness-checked on construction."""
    if n < 2:
        raise ValueError("need n >= 2")
    if order < 0:
        raise ValueError("order must be non-negative")
    nodes, weights = _build(n, order)
    _self_test(n, order, nodes, weights)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureGrid(n, order, nodes, weights)
