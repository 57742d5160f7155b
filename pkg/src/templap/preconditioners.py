"""Two preconditioners exploiting the structure of the stiffness matrix.

Banded route: truncate H to a (2k+1)-band matrix and add the diagonal
compensation O chosen so the band matrix G keeps the row sums of H
(G e = H e).  G inherits the M-matrix property, so its Cholesky factor
exists and is itself banded (no fill outside the band); applying the
preconditioner is two banded triangular solves, O(k M).

Circulant route: replace the diagonal by its mean to get a genuine
Toeplitz matrix G, then take the closest circulant in Frobenius norm,
whose first column is c_k = ((M-k) t_k + k t_{M-k}) / M.  The circulant is
diagonalized by the FFT; application is O(M log M).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_solve_banded, cholesky_banded

from .assembly import OperatorMatrix

SPECTRUM_IMAG_TOL = 1e-13


@dataclass(frozen=True)
class CirculantPrecond:
    """Circulant operator stored by first column and (real) FFT spectrum."""

    first_col: np.ndarray
    spectrum: np.ndarray  # rfft of first_col, validated real and positive

    @property
    def M(self) -> int:
        return self.first_col.size

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Solve C x = v by pointwise division in Fourier space."""
        return np.fft.irfft(np.fft.rfft(v) / self.spectrum, n=self.M)

    def matvec(self, v: np.ndarray) -> np.ndarray:
        return np.fft.irfft(np.fft.rfft(v) * self.spectrum, n=self.M)


def tchan_column(toeplitz_first_col: np.ndarray) -> np.ndarray:
    """First column of the closest circulant to a symmetric Toeplitz matrix.

    c_k = ((M - k) t_k + k t_{M-k}) / M, with t the Toeplitz first column.
    """
    t = np.asarray(toeplitz_first_col, dtype=float)
    M = t.size
    k = np.arange(M)
    return ((M - k) * t + k * t[(M - k) % M]) / M


def build_tchan_precond(op: OperatorMatrix) -> CirculantPrecond:
    """Circulant preconditioner from the averaged-diagonal Toeplitz surrogate."""
    g = op.toeplitz_col.copy()
    g[0] = float(op.diag.mean())
    c = tchan_column(g)
    raw = np.fft.rfft(c)
    scale = np.abs(raw.real).max()
    if np.abs(raw.imag).max() > SPECTRUM_IMAG_TOL * scale:
        raise ValueError("circulant spectrum has a non-negligible imaginary part; "
                         "first column is not symmetric")
    spectrum = raw.real
    if np.any(spectrum <= 0.0):
        bad = int(np.argmin(spectrum))
        raise ValueError(
            f"circulant eigenvalue {spectrum[bad]:.3e} at index {bad} is not "
            "positive; the preconditioner is not s.p.d. for these parameters"
        )
    c.flags.writeable = False
    spectrum.flags.writeable = False
    return CirculantPrecond(first_col=c, spectrum=spectrum)


class BandedCholPrecond:
    """Cholesky factor of the diagonally compensated band extraction."""

    def __init__(self, bandwidth: int, lower_factor: np.ndarray, band: np.ndarray,
                 compensation: np.ndarray):
        self.bandwidth = bandwidth
        self.lower_factor = lower_factor      # scipy lower-banded storage
        self.band = band                      # compensated band G, same storage
        self.compensation = compensation      # diagonal of O
        if np.any(lower_factor[0] <= 0.0):
            raise ValueError("banded Cholesky factor has a non-positive diagonal")

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Solve G x = v with two banded triangular solves."""
        return cho_solve_banded((self.lower_factor, True), v)

    def band_matvec(self, v: np.ndarray) -> np.ndarray:
        """G v, used to verify the row-sum compensation."""
        out = self.band[0] * v
        for j in range(1, self.bandwidth + 1):
            out[:-j] += self.band[j, :-j] * v[j:]
            out[j:] += self.band[j, :-j] * v[:-j]
        return out


def build_band_compensated_ichol(op: OperatorMatrix, k: int = 10) -> BandedCholPrecond:
    """Banded preconditioner: band_k(H) plus diagonal compensation, factorized.

    The compensation adds, to each diagonal entry, the (negative) sum of
    that row's off-band entries, so G e = H e exactly.  Because the sparsity
    is a full band, the zero-fill incomplete Cholesky coincides with the
    exact banded Cholesky; a failed factorization (non-positive pivot)
    signals that the operator lost its M-matrix structure.
    """
    M = op.M
    if not 1 <= k < M:
        raise ValueError(f"bandwidth must satisfy 1 <= k < M, got k = {k}, M = {M}")
    t = op.toeplitz_col
    S = np.concatenate([[0.0], np.cumsum(t[1:])])
    i = np.arange(1, M + 1)
    total = S[i - 1] + S[M - i]
    in_band = S[np.minimum(i - 1, k)] + S[np.minimum(M - i, k)]
    compensation = total - in_band
    band = np.zeros((k + 1, M))
    band[0] = op.diag + compensation
    for j in range(1, k + 1):
        band[j, :M - j] = t[j]
    try:
        factor = cholesky_banded(band, lower=True)
    except LinAlgError as exc:
        raise ValueError(
            "banded Cholesky hit a non-positive pivot; the compensated band "
            "matrix is not positive definite (broken assembly invariants?)"
        ) from exc
    return BandedCholPrecond(bandwidth=k, lower_factor=factor, band=band,
                             compensation=compensation)
