"""Exact kernel tail integrals over the two exterior half-lines.

For an interior node at distance d from the nearer endpoint, the tail is

    T(d) = int_d^inf e^{-lam t} t^{-1-beta} dt,

absorbed into the diagonal of the discrete operator.  Evaluation dispatches
on the parameters:

* lam = 0: the closed form d^{-beta} / beta.
* lam > 0, beta != 1: integration by parts twice leaves the incomplete
  integral of e^{-lam t} t^{1-beta} over (0, d), evaluated spectrally by
  Gauss-Jacobi with weight (1+xi)^{1-beta}.
* lam > 0, beta = 1: for d >= 1/(2 lam), substituting w = 1/t maps the tail
  onto int e^{-lam/w} dw over (lam/K, 1/d] (the cutoff K drops an O(e^{-K})
  remainder), done by Gauss-Legendre; for d < 1/(2 lam) the identity
  T(d) = e^{-lam d}/d - lam E1(lam d) is used with the truncated
  alternating series for E1.
"""

from __future__ import annotations

import numpy as np

from .core import (
    TAIL_SUBSTITUTION_CUTOFF,
    Grid,
    SchemeParams,
    e1,
    exp_integral_tail_series,
    gamma_fn,
)
from .quadrature import (
    GAUSS_JACOBI_POINTS,
    TAIL_SUBSTITUTION_POINTS,
    gauss_legendre_rule,
    jacobi_gauss_rule,
)


def tail_profile(distances, params: SchemeParams, n_points: int | None = None) -> np.ndarray:
    """T(d) for an array of positive distances (unnormalized)."""
    d = np.atleast_1d(np.asarray(distances, dtype=float))
    if np.any(d <= 0.0):
        raise ValueError("tail integrals require positive distances")
    beta, lam = params.beta, params.lam
    if lam == 0.0:
        return d ** (-beta) / beta
    if beta != 1.0:
        n = n_points or GAUSS_JACOBI_POINTS
        rule = jacobi_gauss_rule(n, 0.0, 1.0 - beta)
        # int_0^d e^{-lam t} t^{1-beta} dt, algebraic factor in the weight
        expo = np.exp(np.multiply.outer(-(lam * d / 2.0), 1.0 + rule.nodes))
        incomplete = (d / 2.0) ** (2.0 - beta) * (expo @ rule.weights)
        return (np.exp(-lam * d) * d ** (-beta) / beta
                + lam / (beta * (1.0 - beta)) * np.exp(-lam * d) * d ** (1.0 - beta)
                + lam ** beta * gamma_fn(-beta)
                + lam ** 2 / (beta * (1.0 - beta)) * incomplete)
    out = np.empty_like(d)
    near = d < 1.0 / (2.0 * lam)
    if near.any():
        z = lam * d[near]
        out[near] = np.exp(-z) / d[near] - lam * exp_integral_tail_series(z)
    if (~near).any():
        out[~near] = _tail_unit_order_far(d[~near], lam, n_points)
    return out


def _tail_unit_order_far(d: np.ndarray, lam: float, n_points: int | None = None) -> np.ndarray:
    """beta = 1 tail for d >= 1/(2 lam) via the reciprocal substitution."""
    K = TAIL_SUBSTITUTION_CUTOFF
    big = lam * d > 30.0
    out = np.empty_like(d)
    if big.any():
        # Substitution interval would collapse; the exact identity is
        # adequate here since the value itself is below e^{-30}.
        z = lam * d[big]
        out[big] = np.exp(-z) / d[big] - lam * e1(z)
    rest = ~big
    if rest.any():
        n = n_points or TAIL_SUBSTITUTION_POINTS
        rule = gauss_legendre_rule(n)
        dd = d[rest]
        eta = (np.multiply.outer(1.0 / (2.0 * dd), rule.nodes + 1.0)
               - lam * (rule.nodes - 1.0) / (2.0 * K))
        out[rest] = (1.0 / (2.0 * dd) - lam / (2.0 * K)) * (np.exp(-lam / eta) @ rule.weights)
    return out


def _tail_unit_order_near(d: np.ndarray, lam: float) -> np.ndarray:
    """beta = 1 tail via e^{-lam d}/d - lam E1(lam d) with the series E1."""
    z = lam * np.asarray(d, dtype=float)
    return np.exp(-z) / d - lam * exp_integral_tail_series(z)


def tail_integral_left(i: int, params: SchemeParams, grid: Grid) -> float:
    """Tail integral over (-inf, a] for row i: distance x_i - a."""
    if not 1 <= i <= grid.M:
        raise ValueError(f"row index out of range: {i}")
    return float(tail_profile(grid.nodes[i] - grid.a, params)[0])


def tail_integral_right(i: int, params: SchemeParams, grid: Grid) -> float:
    """Tail integral over [b, inf) for row i: distance b - x_i."""
    if not 1 <= i <= grid.M:
        raise ValueError(f"row index out of range: {i}")
    return float(tail_profile(grid.b - grid.nodes[i], params)[0])
