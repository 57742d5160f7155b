"""The three benchmark problems: manufactured sources and exact solutions.

Problem 1: u(x) = x^2 (1-x) on (0, 1) with zero exterior data.  The source
is u's image under the operator, in closed form up to two smooth incomplete
integrals handled by Gauss-Jacobi (one code path for all lam >= 0).

Problem 2: exterior data -2x on [-1/2, 0] and 2x - 2 on [1, 3/2], interior
solution (x - x^2)^2.  The source is manufactured numerically by the
reference operator applied to the full piecewise extension.

Problem 3: constant source f = 1 on (-r, r) with absorbing exterior (the
mean first exit time of a tempered stable particle).  For lam = 0 the
solution is known in closed form; for lam > 0 convergence is measured by
successive refinement.
"""

from __future__ import annotations

import math

import numpy as np

from .assembly import BoundarySpec
from .core import Grid, SchemeParams, e1, gamma_fn
from .quadrature import GAUSS_JACOBI_POINTS, weighted_interval_rule
from .reference import reference_apply_operator
from .tails import tail_profile

EXAMPLE2_SUPPORT = (-0.5, 1.5)


def example1_exact(x):
    return x * x * (1.0 - x)


def example1_f(params: SchemeParams, grid: Grid,
               n_points: int = GAUSS_JACOBI_POINTS) -> np.ndarray:
    """Source manufactured from u = x^2 (1 - x) on (0, 1).

    Writes the kernel integral of u as u(x)(tail sum) plus boundary power
    terms plus two incomplete integrals of linear polynomials against
    e^{-lam t} t^{1-beta}; for beta = 1 the kernel powers collapse to
    elementary integrals plus a difference of exponential integral tails.
    Scaled by the normalization constant iff the operator is.
    """
    if (grid.a, grid.b) != (0.0, 1.0):
        raise ValueError("the manufactured source for problem 1 lives on (0, 1)")
    beta, lam = params.beta, params.lam
    x = grid.interior
    u = example1_exact(x)
    up = 2.0 * x - 3.0 * x * x
    tails = tail_profile(x, params) + tail_profile(1.0 - x, params)

    if not params.is_log_case:
        tL, wL = weighted_interval_rule(n_points, 1.0 - beta, 1.0)
        # Nodes/weights for int_0^d: rescale the unit-interval rule by d.
        def incomplete(d, const, sign):
            t = np.multiply.outer(d, tL)
            vals = (sign * t + const[:, None]) * np.exp(-lam * t)
            return d ** (2.0 - beta) * (vals @ wL)

        cL = 3.0 * x - 1.0 + lam * up / (1.0 - beta)
        cR = 3.0 * x - 1.0 - lam * up / (1.0 - beta)
        f = (u * tails
             + up / (1.0 - beta) * (x ** (1.0 - beta) * np.exp(-lam * x)
                                    - (1.0 - x) ** (1.0 - beta) * np.exp(-lam * (1.0 - x)))
             + incomplete(x, cL, -1.0)
             + incomplete(1.0 - x, cR, +1.0))
    else:
        if lam == 0.0:
            moment0 = lambda d: d
            moment1 = lambda d: d * d / 2.0
            tail_diff = np.log(x) - np.log(1.0 - x)
        else:
            moment0 = lambda d: -np.expm1(-lam * d) / lam
            moment1 = lambda d: (-np.expm1(-lam * d) - lam * d * np.exp(-lam * d)) / lam ** 2
            tail_diff = e1(lam * (1.0 - x)) - e1(lam * x)
        f = (u * tails
             + (-moment1(x) + (3.0 * x - 1.0) * moment0(x))
             + (moment1(1.0 - x) + (3.0 * x - 1.0) * moment0(1.0 - x))
             + up * tail_diff)
    return params.scale * f


def example2_extension(y) -> np.ndarray:
    """The exact solution of problem 2 on all of R (interior plus exterior)."""
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    left = (y >= -0.5) & (y <= 0.0)
    right = (y >= 1.0) & (y <= 1.5)
    inside = (y > 0.0) & (y < 1.0)
    out[left] = -2.0 * y[left]
    out[right] = 2.0 * y[right] - 2.0
    out[inside] = (y[inside] - y[inside] ** 2) ** 2
    return out


def example2_exterior(y) -> np.ndarray:
    """Exterior data of problem 2 (zero inside the domain)."""
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(y)
    left = (y >= -0.5) & (y <= 0.0)
    right = (y >= 1.0) & (y <= 1.5)
    out[left] = -2.0 * y[left]
    out[right] = 2.0 * y[right] - 2.0
    return out


def example2_second_difference(x: float, t: np.ndarray) -> np.ndarray:
    """Exact 2u(x) - u(x-t) - u(x+t) for the interior quartic (x+-t inside)."""
    u2 = 2.0 - 12.0 * x + 12.0 * x * x
    return -(u2 + 2.0 * t * t) * t * t


def example2_setup(params: SchemeParams, grid: Grid):
    """Source, boundary data, and exact interior values for problem 2.

    The source is manufactured numerically at every node (with the exact
    quartic second difference, so the near field carries no rounding
    floor); the extension is symmetric under y -> 1 - y and the kernel is
    even, so only the lower half of the nodes is evaluated and the rest
    mirrored.
    """
    if (grid.a, grid.b) != (0.0, 1.0):
        raise ValueError("problem 2 lives on (0, 1)")
    x = grid.interior
    M = grid.M
    half = (M + 1) // 2
    f = np.empty(M)
    for idx in range(half):
        f[idx] = reference_apply_operator(
            example2_extension, float(x[idx]), params, grid.a, grid.b,
            support=EXAMPLE2_SUPPORT, second_difference=example2_second_difference)
    f[half:] = f[:M - half][::-1]
    boundary = BoundarySpec(exterior_g=example2_exterior, u_a=0.0, u_b=0.0,
                            support=EXAMPLE2_SUPPORT)
    exact = (x - x * x) ** 2
    return f, boundary, exact


def example3_exact(beta: float, r: float, x):
    """Mean first exit time from (-r, r) for the untempered operator.

    sqrt(pi) (r^2 - x^2)^{beta/2} / (2^beta Gamma(1 + beta/2) Gamma(1/2 + beta/2)),
    valid only for lam = 0; vanishes at |x| = r.
    """
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > r):
        raise ValueError("points must lie inside [-r, r]")
    c = math.sqrt(math.pi) / (2.0 ** beta * gamma_fn(1.0 + beta / 2.0)
                              * gamma_fn(0.5 + beta / 2.0))
    out = c * np.maximum(r * r - x * x, 0.0) ** (beta / 2.0)
    return out if out.ndim else float(out)


def example3_setup(params: SchemeParams, grid: Grid):
    """Constant unit source and absorbing boundary; exact values iff lam = 0."""
    f = np.ones(grid.M)
    boundary = BoundarySpec.zero()
    if params.lam == 0.0:
        r = grid.b
        exact = example3_exact(params.beta, r, grid.interior)
    else:
        exact = None  # no closed form: use successive refinement
    return f, boundary, exact
