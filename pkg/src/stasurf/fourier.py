"""Truncated Fourier representation of closed analytic curves and
fields, with holomorphic extension into a strip.

A curve is sum_k c_k exp(i omega_k s) with omega_k = 2 pi k / period
and c_{-k} = conj(c_k), plus an optional real linear drift term that
lets a non-closed datum (a straight line) share the machinery: the
drift is not periodic but its derivative is, which is all the solver
needs.

The holomorphic extension replaces s by z = s + i t.  The growth of
the top coefficient shell bounds how far the truncated series can be
trusted off the axis; `tail_at` is that certificate and constructors
should pad one zero shell when they know the data is band limited.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ExtensionDivergence, InsufficientSamples

__all__ = [
    "FourierCurve",
    "fit_fourier",
    "evaluate_extension",
    "certified_strip",
    "DEFAULT_TAIL_TOL",
    "DEFAULT_STRIP_TOL",
]

# top-shell magnitude admitted by the construction-quality invariant
DEFAULT_TAIL_TOL = 1e-10
# certified truncation bound required on a working strip
DEFAULT_STRIP_TOL = 1e-8


@dataclass
class FourierCurve:
    """R^3-valued trigonometric polynomial over one period.

    coeffs has shape (2 N + 1, 3); row k + N holds mode k.
    """

    period: float
    coeffs: np.ndarray
    drift: np.ndarray = field(default_factory=lambda: np.zeros(3))

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        self.drift = np.asarray(self.drift, dtype=float)
        if self.coeffs.ndim != 2 or self.coeffs.shape[1] != 3 \
                or self.coeffs.shape[0] % 2 != 1:
            raise ValueError("coeffs must have shape (2N+1, 3)")
        if self.period <= 0:
            raise ValueError("period must be positive")

    @property
    def n_modes(self) -> int:
        return (self.coeffs.shape[0] - 1) // 2

    @property
    def ks(self) -> np.ndarray:
        n = self.n_modes
        return np.arange(-n, n + 1)

    @property
    def omegas(self) -> np.ndarray:
        return 2.0 * math.pi * self.ks / self.period

    def mode(self, k: int) -> np.ndarray:
        return self.coeffs[k + self.n_modes]

    def conj_defect(self) -> float:
        flipped = np.conj(self.coeffs[::-1])
        return float(np.max(np.abs(self.coeffs - flipped)))

    def __call__(self, s):
        """Real value(s) at real parameter(s) s."""
        s = np.asarray(s, dtype=float)
        phase = np.exp(1j * np.multiply.outer(s, self.omegas))
        vals = phase @ self.coeffs
        out = vals.real + np.multiply.outer(s, self.drift)
        return out

    def extension(self, z):
        """Holomorphic extension at complex z (no certification here;
        see evaluate_extension)."""
        z = np.asarray(z, dtype=complex)
        phase = np.exp(1j * np.multiply.outer(z, self.omegas))
        return phase @ self.coeffs + np.multiply.outer(z, self.drift.astype(complex))

    def derivative(self) -> "FourierCurve":
        """Modewise derivative; the drift moves into the k = 0 mode."""
        coeffs = self.coeffs * (1j * self.omegas)[:, None]
        coeffs[self.n_modes] += self.drift
        return FourierCurve(self.period, coeffs)

    def shell_norms(self) -> np.ndarray:
        """Norm of the mode-k plus mode-(-k) pair, k = 0 .. N."""
        n = self.n_modes
        norms = np.linalg.norm(self.coeffs, axis=1)
        out = np.empty(n + 1)
        out[0] = norms[n]
        for k in range(1, n + 1):
            out[k] = norms[n + k] + norms[n - k]
        return out

    def tail_at(self, tau: float) -> float:
        """Certified growth of the top coefficient shell at height tau."""
        n = self.n_modes
        if n == 0:
            return 0.0
        top = self.shell_norms()[n]
        return top * math.exp(2.0 * math.pi * n * abs(tau) / self.period)

    def growth_bound(self, tau: float) -> float:
        """sum_k |c_k| e^{|omega_k| tau}, finite by construction."""
        norms = np.linalg.norm(self.coeffs, axis=1)
        return float(norms @ np.exp(np.abs(self.omegas) * abs(tau)))

    def pad(self, shells: int = 1) -> "FourierCurve":
        """Append zero coefficient shells (marks band-limited data)."""
        z = np.zeros((shells, 3), dtype=complex)
        return FourierCurve(self.period,
                            np.concatenate([z, self.coeffs, z]),
                            self.drift.copy())

    def trim(self, tol: float = 1e-15) -> "FourierCurve":
        """Drop negligible outer shells but keep at least one."""
        shells = self.shell_norms()
        scale = max(float(np.max(shells)), 1.0)
        n = self.n_modes
        while n > 1 and shells[n] <= tol * scale and shells[n - 1] <= tol * scale:
            n -= 1
        m = self.n_modes
        return FourierCurve(self.period,
                            self.coeffs[m - n:m + n + 1].copy(),
                            self.drift.copy())


def fit_fourier(s_values: Sequence[float], points, period: float,
                n_modes: int) -> FourierCurve:
    """Fit a FourierCurve to equispaced samples over one period.

    Requires at least 2 n_modes + 1 samples at s_j = s_0 + j period / M,
    j = 0 .. M - 1.  Band-limited input is recovered exactly (to
    roundoff); the returned coefficients are symmetrized so the
    conjugate pairing holds exactly.
    """
    s = np.asarray(s_values, dtype=float)
    pts = np.asarray(points, dtype=float)
    m = s.shape[0]
    if pts.shape != (m, 3):
        raise ValueError("points must have shape (len(s_values), 3)")
    if m < 2 * n_modes + 1:
        raise InsufficientSamples(
            f"{m} samples cannot determine {2 * n_modes + 1} modes")
    order = np.argsort(s)
    s = s[order]
    pts = pts[order]
    ds = period / m
    if np.max(np.abs(np.diff(s) - ds)) > 1e-9 * ds:
        raise ValueError("samples must be equispaced over one period")
    spec = np.fft.fft(pts, axis=0) / m
    coeffs = np.zeros((2 * n_modes + 1, 3), dtype=complex)
    omega0 = 2.0 * math.pi / period
    for k in range(-n_modes, n_modes + 1):
        c = spec[k % m] * np.exp(-1j * omega0 * k * s[0])
        coeffs[k + n_modes] = c
    # enforce exact conjugate symmetry (real-valued input guarantees it
    # up to roundoff)
    coeffs = (coeffs + np.conj(coeffs[::-1])) / 2.0
    return FourierCurve(period, coeffs)


def evaluate_extension(curve: FourierCurve, z,
                       tol: float = DEFAULT_STRIP_TOL):
    """Extension at z with the truncation certificate enforced.

    Raises ExtensionDivergence when the certified tail bound of the
    top shell exceeds tol at |Im z|.
    """
    z_arr = np.asarray(z, dtype=complex)
    tau = float(np.max(np.abs(z_arr.imag))) if z_arr.size else 0.0
    if curve.tail_at(tau) > tol:
        raise ExtensionDivergence(
            f"tail bound {curve.tail_at(tau):.3e} exceeds {tol:.1e} "
            f"at |Im z| = {tau:.3g}")
    return curve.extension(z)


def certified_strip(curve: FourierCurve, tau_max: float,
                    tol: float = DEFAULT_STRIP_TOL) -> float:
    """Largest tau <= tau_max with tail_at(tau) < tol (0 if none)."""
    if curve.tail_at(tau_max) < tol:
        return tau_max
    n = curve.n_modes
    top = curve.shell_norms()[n]
    if top >= tol:
        return 0.0
    tau = math.log(tol / top) * curve.period / (2.0 * math.pi * n)
    return min(tau_max, max(tau, 0.0)) * (1.0 - 1e-12)
