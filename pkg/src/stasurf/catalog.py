"""Named surface constructors with analytic jets, plus a Weierstrass
integrator for minimal surfaces given by holomorphic data.

All closed charts put the inward normal on spheres (H = 2/r) so the
residual conventions of `geometry` apply directly.  Every constructor
records its kind and parameters in ``surface.info``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import RectBivariateSpline

from .errors import NonMinimalResult, PoleOnPath
from .geometry import Domain, ParametricSurface, SurfaceJet

__all__ = [
    "make_plane",
    "make_sphere_centered",
    "make_sphere_through_origin",
    "make_catenoid",
    "make_helicoid",
    "make_ellipsoid",
    "LaurentSeries",
    "WeierstrassData",
    "weierstrass_surface",
]

_POLE_TOL = 1e-9


def _unit(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=float)
    n = np.linalg.norm(v)
    if n == 0.0:
        raise ValueError("zero direction vector")
    return v / n


def _orthonormal_frame(n: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Two unit vectors spanning the plane orthogonal to n."""
    k = int(np.argmin(np.abs(n)))
    t1 = np.zeros(3)
    t1[k] = 1.0
    t1 = t1 - (t1 @ n) * n
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(n, t1)


def _rotation_from_e3(d: np.ndarray) -> np.ndarray:
    """Rotation matrix sending e3 to the unit vector d (Rodrigues)."""
    e3 = np.array([0.0, 0.0, 1.0])
    c = float(e3 @ d)
    if c > 1.0 - 1e-14:
        return np.eye(3)
    if c < -1.0 + 1e-14:
        return np.diag([1.0, -1.0, -1.0])
    w = np.cross(e3, d)
    wx = np.array([[0.0, -w[2], w[1]],
                   [w[2], 0.0, -w[0]],
                   [-w[1], w[0], 0.0]])
    return np.eye(3) + wx + wx @ wx * ((1.0 - c) / float(w @ w))


def _rigid_jet(base_jet, center: np.ndarray, rot: np.ndarray):
    """Lift a jet function through X -> center + rot @ X."""

    def jet(u, v):
        j = base_jet(u, v)
        return SurfaceJet(
            u=u, v=v,
            p=center + rot @ j.p,
            X_u=rot @ j.X_u, X_v=rot @ j.X_v,
            X_uu=rot @ j.X_uu, X_uv=rot @ j.X_uv, X_vv=rot @ j.X_vv,
        )

    return jet


def make_plane(normal=(0.0, 0.0, 1.0), offset: float = 0.0,
               extent: tuple[float, float] = (1.0, 1.0)) -> ParametricSurface:
    """Plane <x, normal> = offset, chart over [-a, a] x [-b, b]."""
    n = _unit(normal)
    t1, t2 = _orthonormal_frame(n)
    base = offset * n
    a, b = extent
    zero = np.zeros(3)

    def jet(u, v):
        return SurfaceJet(u=u, v=v, p=base + u * t1 + v * t2,
                          X_u=t1.copy(), X_v=t2.copy(),
                          X_uu=zero.copy(), X_uv=zero.copy(), X_vv=zero.copy())

    surf = ParametricSurface(
        position=lambda u, v: base + u * t1 + v * t2,
        domain=Domain(-a, a, -b, b),
        exact_jet=jet,
        info={"kind": "plane", "normal": n.tolist(), "offset": offset},
    )
    return surf


def _sphere_chart(r: float):
    """Inward-oriented round sphere chart about the origin."""

    def jet(u, v):
        cu, su = math.cos(u), math.sin(u)
        cv, sv = math.cos(v), math.sin(v)
        p = r * np.array([cu * sv, su * sv, cv])
        return SurfaceJet(
            u=u, v=v, p=p,
            X_u=r * np.array([-su * sv, cu * sv, 0.0]),
            X_v=r * np.array([cu * cv, su * cv, -sv]),
            X_uu=r * np.array([-cu * sv, -su * sv, 0.0]),
            X_uv=r * np.array([-su * cv, cu * cv, 0.0]),
            X_vv=-p,
        )

    return jet


def _pole_singular(u, v):
    return min(abs(v), abs(math.pi - v)) < _POLE_TOL


def make_sphere_centered(r: float = 1.0) -> ParametricSurface:
    """Round sphere of radius r about the origin; poles are singular
    chart points, the normal points inward (H = 2/r, h = -r)."""
    if r <= 0:
        raise ValueError("radius must be positive")
    jet = _sphere_chart(r)
    return ParametricSurface(
        position=lambda u, v: jet(u, v).p,
        domain=Domain(0.0, 2.0 * math.pi, 0.0, math.pi),
        periodic_u=True,
        exact_jet=jet,
        singular=_pole_singular,
        info={"kind": "sphere_centered", "r": r},
    )


def make_sphere_through_origin(r: float = 1.0,
                               direction=(0.0, 0.0, 1.0)) -> ParametricSurface:
    """Sphere of radius r centered at r * direction, so it passes
    through the origin.  The chart is rotated so the origin sits at the
    v = 0 pole, a single (singular) parameter point.  On this surface
    h = -|p|^2 / (2 r), making it -4-stationary."""
    if r <= 0:
        raise ValueError("radius must be positive")
    d = _unit(direction)
    center = r * d
    rot = _rotation_from_e3(-d)
    jet = _rigid_jet(_sphere_chart(r), center, rot)
    return ParametricSurface(
        position=lambda u, v: jet(u, v).p,
        domain=Domain(0.0, 2.0 * math.pi, 0.0, math.pi),
        periodic_u=True,
        exact_jet=jet,
        singular=_pole_singular,
        info={"kind": "sphere_origin", "r": r, "direction": d.tolist()},
    )


def make_catenoid(neck_radius: float = 1.0, center=(0.0, 0.0, 0.0),
                  axis=(0.0, 0.0, 1.0),
                  v_range: tuple[float, float] = (-2.0, 2.0)) -> ParametricSurface:
    """Catenoid of neck radius c about the given axis.

    Canonical chart (c cosh(v/c) cos u, c cosh(v/c) sin u, v), rigidly
    moved so its axis is the line through `center` along `axis`.
    """
    c = float(neck_radius)
    if c <= 0:
        raise ValueError("neck radius must be positive")
    ctr = np.asarray(center, dtype=float)
    rot = _rotation_from_e3(_unit(axis))

    def base_jet(u, v):
        cu, su = math.cos(u), math.sin(u)
        ch, sh = math.cosh(v / c), math.sinh(v / c)
        return SurfaceJet(
            u=u, v=v,
            p=np.array([c * ch * cu, c * ch * su, v]),
            X_u=np.array([-c * ch * su, c * ch * cu, 0.0]),
            X_v=np.array([sh * cu, sh * su, 1.0]),
            X_uu=np.array([-c * ch * cu, -c * ch * su, 0.0]),
            X_uv=np.array([-sh * su, sh * cu, 0.0]),
            X_vv=np.array([ch * cu / c, ch * su / c, 0.0]),
        )

    jet = _rigid_jet(base_jet, ctr, rot)
    return ParametricSurface(
        position=lambda u, v: jet(u, v).p,
        domain=Domain(0.0, 2.0 * math.pi, v_range[0], v_range[1]),
        periodic_u=True,
        exact_jet=jet,
        info={"kind": "catenoid", "neck_radius": c,
              "center": ctr.tolist(), "axis": _unit(axis).tolist()},
    )


def make_helicoid(pitch: float = 1.0,
                  u_range: tuple[float, float] = (0.0, 2.0 * math.pi),
                  v_range: tuple[float, float] = (-2.0, 2.0)) -> ParametricSurface:
    """Helicoid (v cos u, v sin u, pitch * u); rulings are the fixed-u
    lines.  Passes through the origin when 0 is in both ranges."""

    def jet(u, v):
        cu, su = math.cos(u), math.sin(u)
        return SurfaceJet(
            u=u, v=v,
            p=np.array([v * cu, v * su, pitch * u]),
            X_u=np.array([-v * su, v * cu, pitch]),
            X_v=np.array([cu, su, 0.0]),
            X_uu=np.array([-v * cu, -v * su, 0.0]),
            X_uv=np.array([-su, cu, 0.0]),
            X_vv=np.zeros(3),
        )

    return ParametricSurface(
        position=lambda u, v: jet(u, v).p,
        domain=Domain(u_range[0], u_range[1], v_range[0], v_range[1]),
        exact_jet=jet,
        info={"kind": "helicoid", "pitch": pitch},
    )


def make_ellipsoid(semi_axes=(1.0, 1.5, 2.0)) -> ParametricSurface:
    """Ellipsoid diag(a, b, c) applied to the round chart; generically
    stationary for no exponent, which makes it a control surface."""
    a, b, c = (float(x) for x in semi_axes)
    if min(a, b, c) <= 0:
        raise ValueError("semi-axes must be positive")
    scale = np.array([a, b, c])
    base = _sphere_chart(1.0)

    def jet(u, v):
        j = base(u, v)
        return SurfaceJet(u=u, v=v, p=scale * j.p,
                          X_u=scale * j.X_u, X_v=scale * j.X_v,
                          X_uu=scale * j.X_uu, X_uv=scale * j.X_uv,
                          X_vv=scale * j.X_vv)

    return ParametricSurface(
        position=lambda u, v: jet(u, v).p,
        domain=Domain(0.0, 2.0 * math.pi, 0.0, math.pi),
        periodic_u=True,
        exact_jet=jet,
        singular=_pole_singular,
        info={"kind": "ellipsoid", "semi_axes": [a, b, c]},
    )


class LaurentSeries:
    """Finite Laurent series sum_k c_k z^k as a callable, for supplying
    Weierstrass data through configuration files."""

    def __init__(self, coeffs: dict):
        self.coeffs = {int(k): complex(v) for k, v in coeffs.items()}

    def __call__(self, z):
        return sum(c * z ** k for k, c in sorted(self.coeffs.items()))


@dataclass
class WeierstrassData:
    """Holomorphic data (g, f) of the representation

        X(z) = Re integral of (f (1 - g^2) / 2, i f (1 + g^2) / 2, f g).

    domain_kind "rectangle" uses the chart z = u + i v directly;
    "annulus" uses z = exp(u + i v) with u the log-radius (non-periodic)
    and v the angle in [0, 2 pi] (periodic).
    """

    g: Callable
    f: Callable
    domain_kind: str = "rectangle"
    u_range: tuple[float, float] = (-1.0, 1.0)
    v_range: tuple[float, float] = (-1.0, 1.0)
    label: str = "weierstrass"

    def __post_init__(self):
        if self.domain_kind not in ("rectangle", "annulus"):
            raise ValueError("domain_kind must be 'rectangle' or 'annulus'")
        if self.domain_kind == "annulus":
            self.v_range = (0.0, 2.0 * math.pi)

    def chart(self, w: complex) -> complex:
        return np.exp(w) if self.domain_kind == "annulus" else w

    def chart_d(self, w: complex) -> complex:
        return np.exp(w) if self.domain_kind == "annulus" else 1.0

    def integrand(self, w: complex) -> np.ndarray:
        z = self.chart(w)
        fz = complex(self.f(z))
        gz = complex(self.g(z))
        phi = np.array([fz * (1.0 - gz * gz) / 2.0,
                        1j * fz * (1.0 + gz * gz) / 2.0,
                        fz * gz])
        return phi * self.chart_d(w)


_GL8 = np.polynomial.legendre.leggauss(8)


def _segment_integral(data: WeierstrassData, w0: complex, w1: complex) -> np.ndarray:
    nodes, weights = _GL8
    mid = (w0 + w1) / 2.0
    half = (w1 - w0) / 2.0
    acc = np.zeros(3, dtype=complex)
    for x, wt in zip(nodes, weights):
        val = data.integrand(mid + x * half)
        if not np.all(np.isfinite(val)) or np.max(np.abs(val)) > 1e12:
            raise PoleOnPath("integrand blows up on the integration path")
        acc += wt * val
    return acc * half


def weierstrass_surface(data: WeierstrassData,
                        resolution: tuple[int, int] = (96, 96),
                        h_tol: float = 1e-5) -> ParametricSurface:
    """Minimal surface from Weierstrass data by grid-path integration.

    The primitive of the integrand is accumulated by composite
    Gauss-Legendre quadrature along a spanning tree of grid paths and
    interpolated with quintic splines; the returned surface carries
    numeric jets, so the mean-curvature defect shrinks with resolution
    (quartically for the quintic interpolant).  A build-time self-check
    requires max |H| < h_tol on an interior grid, else
    NonMinimalResult is raised.
    """
    n_u, n_v = resolution
    if min(n_u, n_v) < 8:
        raise ValueError("resolution must be at least 8 x 8 for quintic splines")
    us = np.linspace(data.u_range[0], data.u_range[1], n_u)
    vs = np.linspace(data.v_range[0], data.v_range[1], n_v)
    prim = np.zeros((n_u, n_v, 3), dtype=complex)
    for i in range(1, n_u):
        prim[i, 0] = prim[i - 1, 0] + _segment_integral(
            data, complex(us[i - 1], vs[0]), complex(us[i], vs[0]))
    for i in range(n_u):
        for j in range(1, n_v):
            prim[i, j] = prim[i, j - 1] + _segment_integral(
                data, complex(us[i], vs[j - 1]), complex(us[i], vs[j]))
    pos_grid = prim.real

    periodic_v = data.domain_kind == "annulus"
    if periodic_v:
        seam = np.max(np.abs(pos_grid[:, -1] - pos_grid[:, 0]))
        scale = max(1.0, float(np.max(np.abs(pos_grid))))
        if seam > 1e-7 * scale:
            raise ValueError(
                "real part of the period around the annulus does not vanish; "
                "the surface would be multivalued")
        # wrap extra columns so the spline is accurate across the seam
        pad = 5
        dv = vs[1] - vs[0]
        vs_ext = np.concatenate([vs[0] + dv * np.arange(-pad, 0),
                                 vs,
                                 vs[-1] + dv * np.arange(1, pad + 1)])
        left = pos_grid[:, -1 - pad:-1]
        right = pos_grid[:, 1:pad + 1]
        grid_ext = np.concatenate([left, pos_grid, right], axis=1)
    else:
        vs_ext = vs
        grid_ext = pos_grid

    splines = [RectBivariateSpline(us, vs_ext, grid_ext[:, :, k], kx=5, ky=5)
               for k in range(3)]

    def position(u, v):
        return np.array([float(s(u, v, grid=False)) for s in splines])

    # interior self-check with vectorized spline derivatives
    shrink_u = 0.05 * (us[-1] - us[0])
    cu = np.linspace(us[0] + shrink_u, us[-1] - shrink_u, min(48, n_u))
    if periodic_v:
        cv = np.linspace(vs[0], vs[-1], min(48, n_v), endpoint=False)
    else:
        shrink_v = 0.05 * (vs[-1] - vs[0])
        cv = np.linspace(vs[0] + shrink_v, vs[-1] - shrink_v, min(48, n_v))
    der = {}
    for (du_, dv_) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]:
        der[(du_, dv_)] = np.stack(
            [s(cu, cv, dx=du_, dy=dv_, grid=True) for s in splines], axis=-1)
    X_u, X_v = der[(1, 0)], der[(0, 1)]
    E = np.einsum("ijk,ijk->ij", X_u, X_u)
    F = np.einsum("ijk,ijk->ij", X_u, X_v)
    G = np.einsum("ijk,ijk->ij", X_v, X_v)
    cross = np.cross(X_u, X_v)
    norm = np.linalg.norm(cross, axis=-1)
    ok = norm > 1e-12
    nu = np.zeros_like(cross)
    nu[ok] = cross[ok] / norm[ok][:, None]
    e = np.einsum("ijk,ijk->ij", der[(2, 0)], nu)
    fm = np.einsum("ijk,ijk->ij", der[(1, 1)], nu)
    g = np.einsum("ijk,ijk->ij", der[(0, 2)], nu)
    with np.errstate(invalid="ignore", divide="ignore"):
        H = (e * G - 2.0 * fm * F + g * E) / (E * G - F * F)
    h_defect = float(np.max(np.abs(H[ok]))) if np.any(ok) else math.inf
    if not math.isfinite(h_defect) or h_defect >= h_tol:
        raise NonMinimalResult(
            f"mean-curvature self-check failed: max |H| = {h_defect:.3e}")

    return ParametricSurface(
        position=position,
        domain=Domain(us[0], us[-1], vs[0], vs[-1]),
        periodic_v=periodic_v,
        exact_jet=None,
        info={"kind": "weierstrass", "label": data.label,
              "domain_kind": data.domain_kind,
              "resolution": [n_u, n_v], "h_defect": h_defect},
    )
