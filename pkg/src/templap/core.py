"""Parameters, grids, and special functions for the tempered fractional Laplacian.

The operator acting on u at x is

    -c * P.V. integral of (u(x) - u(y)) / (e^{lam |x-y|} |x-y|^{1+beta}) dy

with beta in (0, 2) and tempering rate lam >= 0.  The normalization
constant c depends on (beta, lam) and is applied to the assembled
operator when ``SchemeParams.apply_cbeta`` is set (the default).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

EULER_GAMMA = 0.5772156649015329

# Number of terms kept in the alternating series for the exponential
# integral tail; adequate for arguments below 1/2 (and in fact well beyond).
E1_SERIES_TERMS = 26

# Cutoff K of the substitution used for the beta = 1 kernel tail when the
# distance is at least 1/(2*lam): the integral of e^{-lam/w} over
# (0, lam/K] is dropped, an O(e^{-K}) truncation.
TAIL_SUBSTITUTION_CUTOFF = 80.0

# Admissible (s, s1) selector pairs per beta range.  The selectors move
# kernel powers into the interpolated functions; pairs outside these sets
# either lose the sign structure of the stiffness matrix or divide by zero
# in the singular-cell weight h^{-beta}/(s1 + 1 - beta).
_SELECTORS_LOW = {(0, 0), (1, 1)}   # beta in (0, 1)
_SELECTORS_HIGH = {(0, 1), (1, 1)}  # beta in [1, 2)

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def gamma_fn(x: float) -> float:
    """Gamma function by a Lanczos approximation with reflection for x < 1/2.

    Accurate to better than 1e-12 relative error for |x| <= 30.  Raises
    ValueError at the poles (x = 0, -1, -2, ...).
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"gamma_fn requires finite x, got {x}")
    if x <= 0.0 and x == math.floor(x):
        raise ValueError(f"gamma_fn pole at non-positive integer x = {x}")
    if x < 0.5:
        # Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return math.pi / (math.sin(math.pi * x) * gamma_fn(1.0 - x))
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


@dataclass(frozen=True)
class SchemeParams:
    """Discretization parameters: order beta, tempering lam, selectors (s, s1).

    ``apply_cbeta`` controls whether the normalization constant multiplies
    the assembled operator (and everything entering it: tail integrals,
    exterior loads, boundary lifts).  Physical right-hand sides are never
    scaled.
    """

    beta: float
    lam: float = 0.0
    s: int = 0
    s1: int = 0
    apply_cbeta: bool = True

    def __post_init__(self):
        if not 0.0 < self.beta < 2.0:
            raise ValueError(f"beta must lie strictly inside (0, 2), got {self.beta}")
        if self.lam < 0.0:
            raise ValueError(f"lam must be nonnegative, got {self.lam}")
        pair = (self.s, self.s1)
        allowed = _SELECTORS_LOW if self.beta < 1.0 else _SELECTORS_HIGH
        if pair not in allowed:
            raise ValueError(
                f"selectors (s, s1) = {pair} not admissible for beta = {self.beta}; "
                f"allowed: {sorted(allowed)}"
            )
        if self.beta != 1.0 and abs(self.beta - 1.0) < 1e-6:
            warnings.warn(
                f"beta = {self.beta} is within 1e-6 of 1 but not equal: the "
                "closed-form coefficients divide by (beta - s)(1 - beta + s) "
                "and will lose precision to cancellation; use beta = 1.0 for "
                "the logarithmic forms",
                RuntimeWarning,
                stacklevel=2,
            )

    @property
    def is_log_case(self) -> bool:
        """True when beta == 1 exactly, selecting the logarithmic coefficient forms."""
        return self.beta == 1.0

    @cached_property
    def cbeta(self) -> float:
        return c_beta_const(self)

    @property
    def scale(self) -> float:
        """Factor applied to the assembled operator: cbeta or 1."""
        return self.cbeta if self.apply_cbeta else 1.0


def c_beta_const(params: SchemeParams) -> float:
    """Normalization constant of the tempered fractional Laplacian.

    Two branches: for lam = 0 or beta = 1,

        beta * Gamma((1+beta)/2) / (2^{1-beta} sqrt(pi) Gamma(1 - beta/2)),

    otherwise Gamma(1/2) / (2 sqrt(pi) |Gamma(-beta)|).
    """
    beta = params.beta
    if params.lam == 0.0 or beta == 1.0:
        return (beta * gamma_fn((1.0 + beta) / 2.0)
                / (2.0 ** (1.0 - beta) * math.sqrt(math.pi) * gamma_fn(1.0 - beta / 2.0)))
    return gamma_fn(0.5) / (2.0 * math.sqrt(math.pi) * abs(gamma_fn(-beta)))


@dataclass(frozen=True)
class Grid:
    """Uniform grid on (a, b): M interior nodes, h = (b-a)/(M+1).

    Nodes are x_i = a + i h for i = 0..M+1 with the endpoints reconstructed
    exactly (no accumulation error).
    """

    a: float
    b: float
    M: int

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError(f"need b > a, got ({self.a}, {self.b})")
        if self.M < 3:
            raise ValueError(f"need at least 3 interior nodes, got M = {self.M}")

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.M + 1)

    @cached_property
    def nodes(self) -> np.ndarray:
        """All M+2 nodes including the endpoints a and b."""
        x = np.linspace(self.a, self.b, self.M + 2)
        x.flags.writeable = False
        return x

    @property
    def interior(self) -> np.ndarray:
        """The M interior nodes x_1..x_M."""
        return self.nodes[1:-1]


def exp_integral_tail_series(z, terms: int = E1_SERIES_TERMS):
    """Exponential integral tail  int_z^inf e^{-t}/t dt  by alternating series.

    Evaluates -gamma - ln z - sum_{n=1}^{terms} (-z)^n / (n * n!), intended
    for 0 < z < 1/2 where the default truncation is far below double
    precision.  Accepts scalars or arrays; raises ValueError for z <= 0.
    """
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr <= 0.0):
        raise ValueError("exp_integral_tail_series requires z > 0")
    acc = np.zeros_like(z_arr)
    term = np.ones_like(z_arr)
    for n in range(1, terms + 1):
        term = term * (-z_arr) / n
        acc = acc + term / n
    out = -EULER_GAMMA - np.log(z_arr) - acc
    return out if isinstance(z, np.ndarray) else float(out)


def e1(z):
    """Exponential integral E1 for z > 0, robust over the whole range.

    Below z = 4 the alternating series converges quickly and without harmful
    cancellation; above, e^{-t}/t is integrated over [z, z+50] by composite
    Gauss-Legendre panels (the remaining tail is below 1e-21 relative).
    """
    z_arr = np.atleast_1d(np.asarray(z, dtype=float))
    if np.any(z_arr <= 0.0):
        raise ValueError("e1 requires z > 0")
    out = np.empty_like(z_arr)
    small = z_arr < 4.0
    if small.any():
        out[small] = exp_integral_tail_series(z_arr[small], terms=64)
    if (~small).any():
        from .quadrature import gauss_legendre_rule

        rule = gauss_legendre_rule(32)
        zz = z_arr[~small]
        acc = np.zeros_like(zz)
        edges = (0.0, 2.0, 6.0, 14.0, 30.0, 50.0)
        for lo, hi in zip(edges[:-1], edges[1:]):
            mid = zz + (hi + lo) / 2.0
            rad = (hi - lo) / 2.0
            t = mid[:, None] + rad * rule.nodes[None, :]
            acc += rad * ((np.exp(-t) / t) @ rule.weights)
        out[~small] = acc
    return out if isinstance(z, np.ndarray) else float(out[0])
