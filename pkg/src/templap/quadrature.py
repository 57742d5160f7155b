"""Gauss-Jacobi quadrature via the Golub-Welsch algorithm, plus panel helpers."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .core import gamma_fn

# Default point counts.  The smooth exponential-kernel integrals reach
# machine precision well below 64 points; the reciprocal-exponent
# substitution used by the beta = 1 kernel tail has a boundary layer and
# needs more (128 keeps its node-doubling drift under 1e-12).
GAUSS_JACOBI_POINTS = 64
TAIL_SUBSTITUTION_POINTS = 128


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes/weights on [-1, 1] for the weight (1-x)^alpha_w (1+x)^beta_w."""

    nodes: np.ndarray
    weights: np.ndarray
    weight_exponents: tuple[float, float]

    def integrate(self, values: np.ndarray) -> float:
        """Weighted sum against function values at the nodes."""
        return float(self.weights @ values)


def jacobi_gauss_rule(n: int, alpha_w: float, beta_w: float) -> QuadratureRule:
    """n-point Gauss rule for the Jacobi weight (1-x)^alpha_w (1+x)^beta_w.

    Golub-Welsch: the three-term recurrence coefficients of the monic Jacobi
    polynomials form a symmetric tridiagonal matrix whose eigenvalues are the
    nodes; weights come from the first eigenvector components scaled by the
    zeroth moment.  Nodes are ascending and strictly inside (-1, 1); an
    n-point rule integrates polynomials of degree 2n-1 exactly against the
    weight.

    Requires n >= 1 and alpha_w, beta_w > -1.
    """
    if n < 1:
        raise ValueError(f"need at least one node, got n = {n}")
    if alpha_w <= -1.0 or beta_w <= -1.0:
        raise ValueError(f"Jacobi exponents must exceed -1, got ({alpha_w}, {beta_w})")
    return _cached_rule(int(n), float(alpha_w), float(beta_w))


@lru_cache(maxsize=256)
def _cached_rule(n: int, a: float, b: float) -> QuadratureRule:
    ab = a + b
    mu0 = 2.0 ** (ab + 1.0) * gamma_fn(a + 1.0) * gamma_fn(b + 1.0) / gamma_fn(ab + 2.0)
    if n == 1:
        nodes = np.array([(b - a) / (ab + 2.0)])
        weights = np.array([mu0])
    else:
        i = np.arange(n, dtype=float)
        denom = (2.0 * i + ab) * (2.0 * i + ab + 2.0)
        denom[0] = 1.0  # i = 0 handled explicitly below
        diag = (b * b - a * a) / denom
        diag[0] = (b - a) / (ab + 2.0)
        j = np.arange(1, n, dtype=float)
        sj = 2.0 * j + ab
        off = np.sqrt(4.0 * j * (j + a) * (j + b) * (j + ab) / (sj * sj * (sj * sj - 1.0)))
        nodes, vecs = eigh_tridiagonal(diag, off)
        weights = mu0 * vecs[0, :] ** 2
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return QuadratureRule(nodes=nodes, weights=weights, weight_exponents=(a, b))


def gauss_legendre_rule(n: int) -> QuadratureRule:
    return jacobi_gauss_rule(n, 0.0, 0.0)


def weighted_interval_rule(n: int, beta_w: float, d: float):
    """Points/weights for  int_0^d f(t) t^{beta_w} dt  =  sum w_j f(t_j).

    Maps the (0, beta_w) Jacobi rule from [-1, 1] onto [0, d], absorbing the
    algebraic factor t^{beta_w} into the weights; f only needs to be smooth.
    """
    rule = jacobi_gauss_rule(n, 0.0, beta_w)
    t = (d / 2.0) * (1.0 + rule.nodes)
    w = (d / 2.0) ** (beta_w + 1.0) * rule.weights
    return t, w


def geometric_breakpoints(start: float, stop: float, first_width: float,
                          growth: float = 2.0) -> np.ndarray:
    """Panel edges from start to stop with geometrically growing widths.

    Used to resolve kernels that vary fastest near ``start``.
    """
    if stop <= start:
        return np.array([start, stop]) if stop == start else np.array([start])
    edges = [start]
    width = first_width
    while edges[-1] < stop:
        edges.append(min(stop, edges[-1] + width))
        width *= growth
    return np.array(edges)


def panel_quadrature_points(breaks: np.ndarray, n: int = 32):
    """Concatenated Gauss-Legendre points/weights over consecutive panels."""
    rule = gauss_legendre_rule(n)
    lo = np.asarray(breaks[:-1], dtype=float)
    hi = np.asarray(breaks[1:], dtype=float)
    mid = (hi + lo) / 2.0
    rad = (hi - lo) / 2.0
    pts = (mid[:, None] + rad[:, None] * rule.nodes[None, :]).ravel()
    wts = (rad[:, None] * rule.weights[None, :]).ravel()
    return pts, wts
