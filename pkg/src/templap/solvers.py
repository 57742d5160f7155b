"""Conjugate gradient solvers and dense baselines.

Both solvers start from the zero initial guess and stop when the true
(unpreconditioned) relative residual ||r_k|| / ||r_0|| drops to the
requested tolerance; preconditioning only redirects the search directions.
Hitting the iteration cap returns the current iterate with the report
flagged, never an exception.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .assembly import OperatorMatrix


@dataclass
class SolveReport:
    """Iteration count, per-iteration relative residuals, wall time, flag."""

    iterations: int
    relative_residuals: np.ndarray
    wall_time: float
    converged: bool


def _as_matvec(op):
    if isinstance(op, OperatorMatrix):
        return op.matvec
    if callable(op):
        return op
    A = np.asarray(op, dtype=float)
    if A.ndim == 2:
        return lambda v: A @ v
    raise TypeError(f"cannot interpret {type(op)!r} as a linear operator")


def cg_solve(op, F, tol: float = 1e-9, max_iter: int | None = None):
    """Unpreconditioned conjugate gradients; returns (solution, SolveReport)."""
    return pcg_solve(op, F, precond=None, tol=tol, max_iter=max_iter)


def pcg_solve(op, F, precond, tol: float = 1e-9, max_iter: int | None = None):
    """Preconditioned conjugate gradients for s.p.d. systems.

    ``precond`` applies an s.p.d. approximation of the inverse: an object
    with an ``apply`` method, a bare callable, or None.  Deterministic; the
    factor matrices never appear explicitly.
    """
    F = np.asarray(F, dtype=float)
    matvec = _as_matvec(op)
    if precond is None:
        apply_m = None
    elif hasattr(precond, "apply"):
        apply_m = precond.apply
    elif callable(precond):
        apply_m = precond
    else:
        raise TypeError(f"cannot interpret {type(precond)!r} as a preconditioner")
    if max_iter is None:
        max_iter = 4 * F.size + 100

    start = time.perf_counter()
    x = np.zeros_like(F)
    r = F.copy()
    r0 = float(np.linalg.norm(r))
    if r0 == 0.0:
        return x, SolveReport(0, np.empty(0), time.perf_counter() - start, True)

    z = apply_m(r) if apply_m else r
    p = z.copy()
    rz = float(r @ z)
    residuals = []
    converged = False
    k = 0
    while k < max_iter:
        Ap = matvec(p)
        alpha = rz / float(p @ Ap)
        x += alpha * p
        r -= alpha * Ap
        k += 1
        rel = float(np.linalg.norm(r)) / r0
        residuals.append(rel)
        if rel <= tol:
            converged = True
            break
        z = apply_m(r) if apply_m else r
        rz_new = float(r @ z)
        p = z + (rz_new / rz) * p
        rz = rz_new
    return x, SolveReport(k, np.asarray(residuals), time.perf_counter() - start, converged)


def dense_gauss_solve(dense: np.ndarray, F: np.ndarray) -> np.ndarray:
    """Direct elimination baseline (LAPACK partial-pivoted LU)."""
    dense = np.asarray(dense, dtype=float)
    F = np.asarray(F, dtype=float)
    return np.linalg.solve(dense, F)


def extreme_eigs(dense: np.ndarray) -> tuple[float, float]:
    """Smallest and largest eigenvalue of a dense symmetric matrix."""
    vals = np.linalg.eigvalsh(np.asarray(dense, dtype=float))
    return float(vals[0]), float(vals[-1])
