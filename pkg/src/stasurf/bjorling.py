"""Bjorling solvers: minimal surfaces through a prescribed analytic
curve with prescribed analytic unit normal, and their -4-stationary
counterparts obtained through inversion.

The minimal solver evaluates the classical formula

    X(s, t) = Re alpha_C(z) + sigma * Im W(z),      z = s + i t,
    W(z)    = integral from s0 to z of V_C(w) x alpha_C'(w) dw,

modewise on truncated Fourier data: the cross product of two
trigonometric polynomials is again one, each mode integrates in closed
form, and the k = 0 mode contributes a linear-in-z term kept
explicitly.  The sign sigma is fixed empirically so the computed
normal along t = 0 equals +V.

The stationary solver transforms the data through the inversion
(curve through Phi, field by the reflection V - 2 <alpha, V> alpha /
|alpha|^2, which stays unit), solves the minimal problem for the
transformed data, and inverts the result.  The outcome contains the
original curve with the original normal and is -4-stationary away
from the origin.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import (
    AmbiguousTransport,
    DegenerateImmersion,
    ExtensionDivergence,
    NonMinimalResult,
    OriginContact,
    RefitTailError,
    SingularPoint,
)
from .fourier import (
    DEFAULT_STRIP_TOL,
    DEFAULT_TAIL_TOL,
    FourierCurve,
    certified_strip,
    fit_fourier,
)
from .geometry import (
    EPS_ORIGIN,
    Domain,
    ParametricSurface,
    SurfaceJet,
    evaluate_jet,
    pointwise_geometry,
)
from .inversion import invert_surface

__all__ = [
    "BjorlingData",
    "schwarz_solve",
    "transform_data",
    "solve_stationary_bjorling",
    "mobius_preset",
    "circle_catenoid_preset",
    "circle_planar_preset",
    "line_helicoid_preset",
    "orientation_holonomy",
]

_REFIT_CAP = 512
_REFIT_TOL = 1e-10


@dataclass
class BjorlingData:
    """Curve alpha and unit normal field V sharing one period.

    strip_halfwidth defaults to a quarter of the reduced period,
    shrunk until the certified Fourier tail bound of both series stays
    below the strip tolerance.
    """

    curve: FourierCurve
    field: FourierCurve
    strip_halfwidth: Optional[float] = None
    s_range: Optional[tuple[float, float]] = None

    def __post_init__(self):
        if abs(self.curve.period - self.field.period) > 1e-12 * self.curve.period:
            raise ValueError("curve and field must share the period")
        if np.any(self.field.drift != 0.0):
            raise ValueError("the normal field cannot drift")
        if self.s_range is None:
            self.s_range = (0.0, self.curve.period)
        if self.strip_halfwidth is None:
            tau0 = 0.25 * self.curve.period / (2.0 * math.pi)
            tau = min(certified_strip(self.curve, tau0),
                      certified_strip(self.field, tau0))
            if tau < 1e-3 * tau0:
                raise ExtensionDivergence(
                    "no usable strip: coefficient tails decay too slowly")
            self.strip_halfwidth = tau

    def validate(self, n_samples: int = 64, tol: float = 1e-8):
        """Check unit field, orthogonality to the tangent, conjugate
        symmetry and top-shell decay; raises ValueError on failure."""
        s = np.linspace(0.0, self.curve.period, n_samples, endpoint=False)
        v = self.field(s)
        norms = np.linalg.norm(v, axis=1)
        if np.max(np.abs(norms - 1.0)) > tol:
            raise ValueError("field is not unit length")
        dcurve = self.curve.derivative()
        tangents = dcurve(s)
        scale = max(1.0, float(np.max(np.abs(tangents))))
        dots = np.einsum("ij,ij->i", tangents, v)
        if np.max(np.abs(dots)) > tol * scale:
            raise ValueError("field is not orthogonal to the curve tangent")
        for name, cur in (("curve", self.curve), ("field", self.field)):
            if cur.conj_defect() > 1e-12 * max(1.0, float(np.max(np.abs(cur.coeffs)))):
                raise ValueError(f"{name} coefficients break conjugate symmetry")
            shells = cur.shell_norms()
            if cur.n_modes >= 1 and shells[-1] > DEFAULT_TAIL_TOL * max(1.0, float(np.max(shells))):
                raise ValueError(f"{name} top coefficient shell is not negligible")


class _HoloSeries:
    """const + linear * z + sum_k c_k exp(i omega_k z) with fast
    derivatives, the closed-form building block of the solver."""

    def __init__(self, period, coeffs, linear=None, const=None):
        self.period = period
        self.coeffs = np.asarray(coeffs, dtype=complex)
        n = (self.coeffs.shape[0] - 1) // 2
        self.omega = 2.0 * math.pi * np.arange(-n, n + 1) / period
        self.linear = np.zeros(3, dtype=complex) if linear is None else np.asarray(linear, dtype=complex)
        self.const = np.zeros(3, dtype=complex) if const is None else np.asarray(const, dtype=complex)

    def value(self, z: complex) -> np.ndarray:
        return self.const + self.linear * z + np.exp(1j * self.omega * z) @ self.coeffs

    def d1(self, z: complex) -> np.ndarray:
        return self.linear + np.exp(1j * self.omega * z) @ (1j * self.omega[:, None] * self.coeffs)

    def d2(self, z: complex) -> np.ndarray:
        return np.exp(1j * self.omega * z) @ (-(self.omega ** 2)[:, None] * self.coeffs)


def _cross_series(a: FourierCurve, b: FourierCurve) -> FourierCurve:
    """Coefficients of s -> a(s) x b(s); both drifts must be folded
    into mode zero already."""
    if np.any(a.drift != 0.0) or np.any(b.drift != 0.0):
        raise ValueError("fold drifts before taking products")
    na, nb = a.n_modes, b.n_modes
    n = na + nb
    out = np.zeros((2 * n + 1, 3), dtype=complex)
    for j in range(-na, na + 1):
        aj = a.coeffs[j + na]
        if not np.any(aj):
            continue
        for k in range(-nb, nb + 1):
            bk = b.coeffs[k + nb]
            out[j + k + n] += np.cross(aj, bk)
    return FourierCurve(a.period, out)


def _integrated_series(p: FourierCurve, s0: float) -> _HoloSeries:
    """Primitive of the trigonometric polynomial p vanishing at s0."""
    n = p.n_modes
    omega = p.omegas
    coeffs = np.zeros_like(p.coeffs)
    for m in range(-n, n + 1):
        if m == 0:
            continue
        coeffs[m + n] = p.coeffs[m + n] / (1j * omega[m + n])
    linear = p.coeffs[n].copy()
    phases = np.exp(1j * omega * s0)
    const = -(phases @ coeffs) - linear * s0
    return _HoloSeries(p.period, coeffs, linear=linear, const=const)


def _schwarz_jet_factory(a_series: _HoloSeries, w_series: _HoloSeries, sigma: float):
    def jet(s, t):
        z = complex(s, t)
        av, wv = a_series.value(z), w_series.value(z)
        a1, w1 = a_series.d1(z), w_series.d1(z)
        a2, w2 = a_series.d2(z), w_series.d2(z)
        return SurfaceJet(
            u=s, v=t,
            p=av.real + sigma * wv.imag,
            X_u=a1.real + sigma * w1.imag,
            X_v=-a1.imag + sigma * w1.real,
            X_uu=a2.real + sigma * w2.imag,
            X_uv=-a2.imag + sigma * w2.real,
            X_vv=-(a2.real + sigma * w2.imag),
        )

    return jet


def schwarz_solve(data: BjorlingData, grid: tuple[int, int] = (128, 17),
                  h_tol: float = 1e-5) -> ParametricSurface:
    """Minimal surface through the data curve with the data normal.

    Returns a surface over s_range x [-tau, tau] with analytic
    modewise jets.  The chosen sign is recorded in
    ``info["schwarz_sign"]`` and a build-time self-check enforces
    max |H| < h_tol on the interior of the given grid.
    """
    data.validate()
    tau = float(data.strip_halfwidth)
    s0, s1 = data.s_range
    a_series = _HoloSeries(data.curve.period, data.curve.coeffs,
                           linear=data.curve.drift.astype(complex))
    product = _cross_series(data.field, data.curve.derivative())
    w_series = _integrated_series(product, float(s0))

    sigma = 1.0
    jet_fn = _schwarz_jet_factory(a_series, w_series, sigma)
    dots = []
    for s in np.linspace(s0, s1, 9, endpoint=False):
        geom = pointwise_geometry(jet_fn(float(s), 0.0))
        dots.append(float(geom.nu @ data.field(float(s))))
    if all(d < -0.9 for d in dots):
        sigma = -1.0
        jet_fn = _schwarz_jet_factory(a_series, w_series, sigma)
    elif not all(d > 0.9 for d in dots):
        raise NonMinimalResult(
            "solver normal does not reproduce the data field; "
            "data is likely inconsistent")

    periodic = (s1 - s0 >= data.curve.period * (1.0 - 1e-12)) \
        and not np.any(data.curve.drift != 0.0)
    surf = ParametricSurface(
        position=lambda s, t: jet_fn(s, t).p,
        domain=Domain(float(s0), float(s1), -tau, tau),
        periodic_u=periodic,
        exact_jet=jet_fn,
        info={"kind": "bjorling_minimal", "schwarz_sign": sigma,
              "strip_halfwidth": tau, "period": data.curve.period},
    )

    n_s, n_t = grid
    ss = np.linspace(s0, s1, n_s, endpoint=not periodic)
    ts = np.linspace(-tau, tau, n_t)[1:-1] if n_t >= 3 else [0.0]
    h_max = 0.0
    for s in ss:
        for t in ts:
            geom = pointwise_geometry(jet_fn(float(s), float(t)))
            h_max = max(h_max, abs(geom.H))
    if h_max >= h_tol:
        raise NonMinimalResult(
            f"mean-curvature self-check failed: max |H| = {h_max:.3e}")
    surf.info["h_selfcheck"] = h_max
    return surf


def _refit_from_samples(values: np.ndarray, period: float,
                        tol: float = _REFIT_TOL, cap: int = _REFIT_CAP) -> FourierCurve:
    """Pick the smallest mode count whose discarded spectrum sums
    below tol, then fit."""
    m = values.shape[0]
    spec = np.fft.fft(values, axis=0) / m
    norms = np.linalg.norm(spec, axis=1)
    half = m // 2
    shell = np.zeros(half + 1)
    shell[0] = norms[0]
    for k in range(1, half + 1):
        shell[k] = norms[k] + (norms[m - k] if k < m - k else 0.0)
    cum_tail = np.cumsum(shell[::-1])[::-1]  # cum_tail[k] = sum of shells >= k
    usable = min(cap, half - 1)
    for n in range(1, usable + 1):
        if cum_tail[n + 1] < tol:
            s = np.arange(m) * period / m
            # one zero shell on top keeps the strip certificate honest
            return fit_fourier(s, values, period, n).pad(1)
    raise RefitTailError(
        f"tail stays above {tol:.1e} up to {usable} modes")


def transform_data(data: BjorlingData, eps_origin: float = EPS_ORIGIN,
                   tol: float = _REFIT_TOL, cap: int = _REFIT_CAP) -> BjorlingData:
    """Inversion transform of Bjorling data.

    curve -> Phi o curve and field -> V - 2 (<alpha, V> / |alpha|^2) alpha,
    which is again a unit field orthogonal to the transformed tangent.
    Both are refitted adaptively: the sample count doubles until the
    top spectral octave is negligible (no aliasing) and the mode count
    grows until the discarded tail is below tol, capped at `cap`
    (RefitTailError beyond).  Involutive up to refit error.
    """
    if np.any(data.curve.drift != 0.0):
        raise ValueError("transform requires a closed (drift-free) curve")
    period = data.curve.period
    m = 256
    while True:
        s = np.arange(m) * period / m
        a = data.curve(s)
        v = data.field(s)
        r2 = np.einsum("ij,ij->i", a, a)
        if np.min(r2) < eps_origin * eps_origin:
            raise OriginContact("curve meets the origin clip radius")
        a_new = a / r2[:, None]
        proj = np.einsum("ij,ij->i", a, v) / r2
        v_new = v - 2.0 * proj[:, None] * a
        spec_a = np.linalg.norm(np.fft.fft(a_new, axis=0), axis=1) / m
        spec_v = np.linalg.norm(np.fft.fft(v_new, axis=0), axis=1) / m
        top = np.concatenate([spec_a[m // 4: m // 2 + 1],
                              spec_v[m // 4: m // 2 + 1]])
        scale = max(np.max(spec_a), np.max(spec_v), 1e-30)
        if np.max(top) < 1e-2 * tol * scale or m >= 2 ** 15:
            break
        m *= 2
    curve_new = _refit_from_samples(a_new, period, tol=tol, cap=cap)
    field_new = _refit_from_samples(v_new, period, tol=tol, cap=cap)
    out = BjorlingData(curve=curve_new, field=field_new, s_range=data.s_range)
    out.validate(tol=1e-8)
    return out


def _reverse_t(surface: ParametricSurface) -> ParametricSurface:
    """Flip the strip parameter; the domain is t-symmetric already.
    Composing with the orientation-reversing inversion afterwards
    leaves the chart normal along t = 0 equal to the data field."""
    src_pos = surface.position
    src_jet = surface.exact_jet
    src_sing = surface.singular
    jet = None
    if src_jet is not None:
        def jet(u, v):
            j = src_jet(u, -v)
            return SurfaceJet(u=u, v=v, p=j.p, X_u=j.X_u, X_v=-j.X_v,
                              X_uu=j.X_uu, X_uv=-j.X_uv, X_vv=j.X_vv)
    return dataclasses.replace(
        surface,
        position=lambda u, v: src_pos(u, -v),
        exact_jet=jet,
        singular=(lambda u, v: src_sing(u, -v)) if src_sing else None)


def solve_stationary_bjorling(data: BjorlingData,
                              grid: tuple[int, int] = (128, 17)) -> ParametricSurface:
    """-4-stationary surface through the data curve with the data
    normal: invert the minimal solution of the transformed data."""
    transformed = transform_data(data)
    minimal = schwarz_solve(transformed, grid=grid)
    surf = invert_surface(_reverse_t(minimal))
    surf.info = dict(surf.info)
    surf.info.update({
        "kind": "bjorling_stationary",
        "schwarz_sign": minimal.info["schwarz_sign"],
        "strip_halfwidth": minimal.info["strip_halfwidth"],
        "period": data.curve.period,
    })
    return surf


def mobius_preset() -> BjorlingData:
    """Unit circle with the half-turn rotating normal field

        V(s) = cos(s/2) alpha(s) + sin(s/2) e3

    over the doubled period 4 pi; V(s + 2 pi) = -V(s), which forces
    the non-orientable strip.  Coefficients are exact (band limited)."""
    period = 4.0 * math.pi
    curve = np.zeros((5, 3), dtype=complex)  # N = 2, modes at k = +-2
    curve[2 + 2] = [0.5, -0.5j, 0.0]
    curve[2 - 2] = [0.5, 0.5j, 0.0]
    alpha = FourierCurve(period, curve).pad(1)
    fld = np.zeros((7, 3), dtype=complex)  # N = 3, modes at k = +-1, +-3
    fld[3 + 3] = [0.25, -0.25j, 0.0]
    fld[3 - 3] = [0.25, 0.25j, 0.0]
    fld[3 + 1] = [0.25, -0.25j, -0.5j]
    fld[3 - 1] = [0.25, 0.25j, 0.5j]
    v = FourierCurve(period, fld).pad(1)
    return BjorlingData(curve=alpha, field=v)


def circle_catenoid_preset() -> BjorlingData:
    """Unit circle with inward planar normal; the minimal solution is
    the standard catenoid with unit neck."""
    period = 2.0 * math.pi
    c = np.zeros((3, 3), dtype=complex)
    c[1 + 1] = [0.5, -0.5j, 0.0]
    c[1 - 1] = [0.5, 0.5j, 0.0]
    alpha = FourierCurve(period, c).pad(1)
    v = FourierCurve(period, -c).pad(1)
    return BjorlingData(curve=alpha, field=v)


def circle_planar_preset(z_offset: float = 0.0) -> BjorlingData:
    """Circle with the plane normal e3; the minimal solution is flat."""
    period = 2.0 * math.pi
    c = np.zeros((3, 3), dtype=complex)
    c[1 + 1] = [0.5, -0.5j, 0.0]
    c[1 - 1] = [0.5, 0.5j, 0.0]
    c[1 + 0] = [0.0, 0.0, z_offset]
    alpha = FourierCurve(period, c).pad(1)
    f = np.zeros((3, 3), dtype=complex)
    f[1 + 0] = [0.0, 0.0, 1.0]
    v = FourierCurve(period, f).pad(1)
    return BjorlingData(curve=alpha, field=v)


def line_helicoid_preset(turn_rate: float = 1.0,
                         half_span: float = math.pi) -> BjorlingData:
    """Straight line with a rotating normal; the minimal solution is a
    helicoid ruled around the line."""
    period = 2.0 * math.pi / turn_rate
    alpha = FourierCurve(period, np.zeros((3, 3), dtype=complex),
                         drift=np.array([1.0, 0.0, 0.0]))
    f = np.zeros((3, 3), dtype=complex)
    f[1 + 1] = [0.0, 0.5j, 0.5]
    f[1 - 1] = [0.0, -0.5j, 0.5]
    v = FourierCurve(period, f).pad(1)
    return BjorlingData(curve=alpha, field=v,
                        s_range=(-half_span, half_span))


def orientation_holonomy(surface: ParametricSurface, loop_t: float,
                         samples: int = 360) -> int:
    """Sign picked up by the normal around the s-loop at height loop_t.

    The surface must be periodic in its first parameter.  If the chart
    closes spatially after half the parameter period (a doubled-period
    chart of a one-sided strip) the loop is taken over that half.
    Returns +1 or -1; raises AmbiguousTransport when consecutive
    normals turn too fast to continue the sign unambiguously.
    """
    if not surface.periodic_u:
        raise ValueError("holonomy needs a closed parameter loop")
    d = surface.domain
    p_full = np.asarray(surface.position(d.u_min, loop_t), dtype=float)
    p_half = np.asarray(surface.position(d.u_min + d.u_extent / 2.0, loop_t),
                        dtype=float)
    scale = 1.0 + float(np.linalg.norm(p_full))
    loop_len = d.u_extent / 2.0 \
        if float(np.linalg.norm(p_half - p_full)) < 1e-8 * scale else d.u_extent
    us = d.u_min + loop_len * np.arange(samples + 1) / samples
    sign = 1
    prev = None
    first = None
    for i, u in enumerate(us):
        try:
            geom = pointwise_geometry(evaluate_jet(surface, float(u), loop_t))
        except (SingularPoint, DegenerateImmersion, OriginContact) as exc:
            raise AmbiguousTransport(f"loop crosses a bad point: {exc}") from exc
        nu = geom.nu
        if i == 0:
            first = nu
        else:
            dot = float(nu @ prev)
            if abs(dot) < 0.2:
                raise AmbiguousTransport(
                    "consecutive normals nearly orthogonal; refine sampling")
            if dot < 0.0:
                sign = -sign
        prev = nu
    final = float(prev @ first)
    if abs(final) < 0.2:
        raise AmbiguousTransport("loop endpoints do not align")
    return sign if final > 0.0 else -sign
