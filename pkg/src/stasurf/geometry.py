"""Pointwise differential geometry for parametric surfaces in R^3.

Conventions used throughout the package:

* the mean curvature H is the SUM of the principal curvatures, so a
  sphere of radius r oriented by its inward normal has H = 2/r;
* the unit normal is ``cross(X_u, X_v)`` normalized;
* h = <nu, p> is the support function and r2 = |p|^2;
* the stationarity residual of exponent alpha is
  ``R_alpha = H - alpha * h / r2``.

A surface is alpha-stationary exactly when R_alpha vanishes identically,
which makes max |R_alpha| over a grid the basic verification quantity.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    DegenerateImmersion,
    DomainError,
    OriginContact,
    SingularPoint,
)

__all__ = [
    "EPS_ORIGIN",
    "DEFAULT_FD_STEP",
    "Domain",
    "ParametricSurface",
    "SurfaceJet",
    "PointGeometry",
    "EnergyQuadrature",
    "evaluate_jet",
    "pointwise_geometry",
    "stationarity_residual",
    "energy",
    "first_variation_check",
    "gaussian_bump",
    "restrict",
    "without_exact_jets",
]

# Clip radius around the origin: residual and energy evaluation refuse
# points with |p| below this.
EPS_ORIGIN = 1e-8

# Finite-difference step relative to the domain extent of each axis.
DEFAULT_FD_STEP = 1e-4

_DEGENERACY_TOL = 1e-12


@dataclass(frozen=True)
class Domain:
    """Rectangular parameter domain [u_min, u_max] x [v_min, v_max]."""

    u_min: float
    u_max: float
    v_min: float
    v_max: float

    @property
    def u_extent(self) -> float:
        return self.u_max - self.u_min

    @property
    def v_extent(self) -> float:
        return self.v_max - self.v_min


@dataclass
class SurfaceJet:
    """Position and derivatives up to second order at one parameter point."""

    u: float
    v: float
    p: np.ndarray
    X_u: np.ndarray
    X_v: np.ndarray
    X_uu: np.ndarray
    X_uv: np.ndarray
    X_vv: np.ndarray


@dataclass
class PointGeometry:
    """First/second fundamental forms and derived scalars at one point.

    kappa1 >= kappa2 always; at umbilics both equal H/2.  The point p is
    kept so that downstream transforms (inversion pushforward) do not
    need the jet again.
    """

    p: np.ndarray
    nu: np.ndarray
    E: float
    F: float
    G: float
    e: float
    f: float
    g: float
    H: float
    kappa1: float
    kappa2: float
    h: float
    r2: float


@dataclass(frozen=True)
class EnergyQuadrature:
    """Tensor-product Gauss-Legendre rule: `order` nodes per axis per cell."""

    order: int = 8
    cells: tuple[int, int] = (16, 16)

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("quadrature order must be >= 2")
        if min(self.cells) < 1:
            raise ValueError("cell counts must be >= 1")


@dataclass
class ParametricSurface:
    """Immersed surface patch given by a position map on a rectangle.

    Parameters
    ----------
    position : callable
        (u, v) -> ndarray shape (3,).  Must be evaluable slightly beyond
        the domain boundary on non-periodic axes (finite-difference
        stencils poke outside by up to 2 steps).
    domain : Domain
        Parameter rectangle.
    periodic_u, periodic_v : bool
        Marks axes along which the map is periodic with the domain extent
        as period; stencil coordinates are wrapped there.
    exact_jet : callable, optional
        (u, v) -> SurfaceJet with analytic derivatives.  When present it
        is preferred over finite differences everywhere.
    singular : callable, optional
        (u, v) -> bool marking chart points where the immersion breaks
        down (poles of a sphere chart, origin contact of an inversion).
    info : dict
        Free-form metadata recorded by constructors (e.g. which sign a
        solver picked).
    """

    position: Callable[[float, float], np.ndarray]
    domain: Domain
    periodic_u: bool = False
    periodic_v: bool = False
    exact_jet: Optional[Callable[[float, float], SurfaceJet]] = None
    singular: Optional[Callable[[float, float], bool]] = None
    info: dict = dataclasses.field(default_factory=dict)

    def contains(self, u: float, v: float, slack: float = 1e-12) -> bool:
        d = self.domain
        ok_u = self.periodic_u or (d.u_min - slack <= u <= d.u_max + slack)
        ok_v = self.periodic_v or (d.v_min - slack <= v <= d.v_max + slack)
        return ok_u and ok_v

    def wrap(self, u: float, v: float) -> tuple[float, float]:
        """Wrap periodic coordinates into the fundamental domain."""
        d = self.domain
        if self.periodic_u:
            u = d.u_min + (u - d.u_min) % d.u_extent
        if self.periodic_v:
            v = d.v_min + (v - d.v_min) % d.v_extent
        return u, v

    def is_singular(self, u: float, v: float) -> bool:
        return bool(self.singular(u, v)) if self.singular is not None else False


def restrict(surface: ParametricSurface,
             u_range: tuple[float, float] | None = None,
             v_range: tuple[float, float] | None = None) -> ParametricSurface:
    """Same surface on a sub-rectangle of its domain.

    Restricting across a periodic seam is not supported; a restricted
    axis becomes non-periodic.
    """
    d = surface.domain
    u0, u1 = u_range if u_range is not None else (d.u_min, d.u_max)
    v0, v1 = v_range if v_range is not None else (d.v_min, d.v_max)
    if not (u0 < u1 and v0 < v1):
        raise ValueError("empty restriction range")
    return dataclasses.replace(
        surface,
        domain=Domain(u0, u1, v0, v1),
        periodic_u=surface.periodic_u and (u0, u1) == (d.u_min, d.u_max),
        periodic_v=surface.periodic_v and (v0, v1) == (d.v_min, d.v_max),
    )


def without_exact_jets(surface: ParametricSurface) -> ParametricSurface:
    """Copy of the surface that forces the finite-difference jet path."""
    return dataclasses.replace(surface, exact_jet=None)


def _fd_weights(offsets: np.ndarray, order: int) -> np.ndarray:
    """Weights reproducing the `order`-th derivative at offset 0 from
    samples at the given node offsets (in units of the step)."""
    a = np.vander(offsets, increasing=True).T
    b = np.zeros(len(offsets))
    b[order] = float(math.factorial(order))
    return np.linalg.solve(a, b)


def _axis_window(x: float, lo: float, hi: float, h: float,
                 width: int) -> np.ndarray:
    """`width` consecutive integer offsets containing 0 whose sample
    points x + j h all stay inside [lo, hi]."""
    lo_room = int(min(width - 1, math.floor((x - lo) / h)))
    hi_room = int(min(width - 1, math.floor((hi - x) / h)))
    half = (width - 1) // 2
    start = max(-lo_room, min(-half, hi_room - (width - 1)))
    return np.arange(start, start + width)


def evaluate_jet(surface: ParametricSurface, u: float, v: float,
                 step: float = DEFAULT_FD_STEP) -> SurfaceJet:
    """Second-order jet at (u, v), analytic if available else central FD.

    The finite-difference scheme uses 2-point central first derivatives,
    the 5-point stencil for pure second derivatives and the 4-point
    cross stencil for the mixed one.  `step` is relative: the actual
    step per axis is ``step * extent`` of that axis.  Within two steps
    of a non-periodic edge the stencils shift to one-sided windows so
    no sample leaves the domain; position callables backed by local
    interpolants are unreliable outside their knot range.

    Raises
    ------
    DomainError
        (u, v) outside the domain on a non-periodic axis.
    SingularPoint
        (u, v) belongs to the declared singular set.
    """
    if not surface.contains(u, v):
        raise DomainError(f"({u}, {v}) outside parameter domain")
    u, v = surface.wrap(u, v)
    if surface.is_singular(u, v):
        raise SingularPoint(f"({u}, {v}) is a singular chart point")
    if surface.exact_jet is not None:
        return surface.exact_jet(u, v)

    d = surface.domain
    hu = step * d.u_extent
    hv = step * d.v_extent
    if hu <= 0 or hv <= 0:
        raise ValueError("finite-difference step must be positive")

    def pos(uu, vv):
        return np.asarray(surface.position(*surface.wrap(uu, vv)), dtype=float)

    p = pos(u, v)
    edge_u = not surface.periodic_u and (u - 2 * hu < d.u_min
                                         or u + 2 * hu > d.u_max)
    edge_v = not surface.periodic_v and (v - 2 * hv < d.v_min
                                         or v + 2 * hv > d.v_max)
    if edge_u or edge_v:
        ju = _axis_window(u, d.u_min, d.u_max, hu, 5) if edge_u \
            else np.arange(-2, 3)
        jv = _axis_window(v, d.v_min, d.v_max, hv, 5) if edge_v \
            else np.arange(-2, 3)
        pu = np.array([p if j == 0 else pos(u + j * hu, v) for j in ju])
        pv = np.array([p if j == 0 else pos(u, v + j * hv) for j in jv])
        fu, fv = ju.astype(float), jv.astype(float)
        X_u = _fd_weights(fu, 1) @ pu / hu
        X_uu = _fd_weights(fu, 2) @ pu / (hu * hu)
        X_v = _fd_weights(fv, 1) @ pv / hv
        X_vv = _fd_weights(fv, 2) @ pv / (hv * hv)
        mu = _axis_window(u, d.u_min, d.u_max, hu, 3) if edge_u \
            else np.arange(-1, 2)
        mv = _axis_window(v, d.v_min, d.v_max, hv, 3) if edge_v \
            else np.arange(-1, 2)
        wmu = _fd_weights(mu.astype(float), 1) / hu
        wmv = _fd_weights(mv.astype(float), 1) / hv
        X_uv = np.zeros(3)
        for a_, wa in zip(mu, wmu):
            if wa == 0.0:
                continue
            for b_, wb in zip(mv, wmv):
                if wb == 0.0:
                    continue
                X_uv = X_uv + (wa * wb) * pos(u + a_ * hu, v + b_ * hv)
        return SurfaceJet(u=u, v=v, p=p, X_u=X_u, X_v=X_v,
                          X_uu=X_uu, X_uv=X_uv, X_vv=X_vv)

    pu1, pu_1 = pos(u + hu, v), pos(u - hu, v)
    pu2, pu_2 = pos(u + 2 * hu, v), pos(u - 2 * hu, v)
    pv1, pv_1 = pos(u, v + hv), pos(u, v - hv)
    pv2, pv_2 = pos(u, v + 2 * hv), pos(u, v - 2 * hv)
    ppp, ppm = pos(u + hu, v + hv), pos(u + hu, v - hv)
    pmp, pmm = pos(u - hu, v + hv), pos(u - hu, v - hv)

    X_u = (pu1 - pu_1) / (2 * hu)
    X_v = (pv1 - pv_1) / (2 * hv)
    X_uu = (-pu2 + 16 * pu1 - 30 * p + 16 * pu_1 - pu_2) / (12 * hu * hu)
    X_vv = (-pv2 + 16 * pv1 - 30 * p + 16 * pv_1 - pv_2) / (12 * hv * hv)
    X_uv = (ppp - ppm - pmp + pmm) / (4 * hu * hv)
    return SurfaceJet(u=u, v=v, p=p, X_u=X_u, X_v=X_v,
                      X_uu=X_uu, X_uv=X_uv, X_vv=X_vv)


def pointwise_geometry(jet: SurfaceJet) -> PointGeometry:
    """Fundamental forms, normal, curvatures and support data from a jet.

    Raises DegenerateImmersion when |X_u x X_v| is negligible relative
    to the tangent scale.
    """
    X_u, X_v = jet.X_u, jet.X_v
    E = float(X_u @ X_u)
    F = float(X_u @ X_v)
    G = float(X_v @ X_v)
    cross = np.cross(X_u, X_v)
    area2 = float(cross @ cross)
    scale = max(E, G)
    if area2 <= (_DEGENERACY_TOL * scale) ** 2 or scale == 0.0:
        raise DegenerateImmersion("tangent vectors are numerically dependent")
    nu = cross / math.sqrt(area2)
    e = float(jet.X_uu @ nu)
    f = float(jet.X_uv @ nu)
    g = float(jet.X_vv @ nu)
    det1 = E * G - F * F
    H = (e * G - 2.0 * f * F + g * E) / det1
    K = (e * g - f * f) / det1
    disc = H * H - 4.0 * K
    root = math.sqrt(max(disc, 0.0))
    kappa1 = 0.5 * (H + root)
    kappa2 = 0.5 * (H - root)
    p = np.asarray(jet.p, dtype=float)
    return PointGeometry(
        p=p, nu=nu, E=E, F=F, G=G, e=e, f=f, g=g,
        H=H, kappa1=kappa1, kappa2=kappa2,
        h=float(nu @ p), r2=float(p @ p),
    )


def stationarity_residual(geom: PointGeometry, alpha: float,
                          eps_origin: float = EPS_ORIGIN) -> float:
    """R_alpha = H - alpha * h / r2.  Raises OriginContact near p = 0."""
    if geom.r2 < eps_origin * eps_origin:
        raise OriginContact("residual undefined within the origin clip radius")
    return geom.H - alpha * geom.h / geom.r2


def _first_partials(surface: ParametricSurface, u: float, v: float,
                    step: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(p, X_u, X_v) only; cheaper than a full jet on the FD path."""
    if surface.exact_jet is not None:
        jet = surface.exact_jet(u, v)
        return jet.p, jet.X_u, jet.X_v
    d = surface.domain
    hu = step * d.u_extent
    hv = step * d.v_extent

    def pos(uu, vv):
        return np.asarray(surface.position(*surface.wrap(uu, vv)), dtype=float)

    p = pos(u, v)
    X_u = (pos(u + hu, v) - pos(u - hu, v)) / (2 * hu)
    X_v = (pos(u, v + hv) - pos(u, v - hv)) / (2 * hv)
    return p, X_u, X_v


def _gauss_nodes(domain: Domain, quad: EnergyQuadrature):
    """Flattened tensor grid of Gauss-Legendre nodes and weights."""
    x, w = np.polynomial.legendre.leggauss(quad.order)
    mu, mv = quad.cells
    du = domain.u_extent / mu
    dv = domain.v_extent / mv
    u_edges = domain.u_min + du * np.arange(mu)
    v_edges = domain.v_min + dv * np.arange(mv)
    u_nodes = (u_edges[:, None] + (x[None, :] + 1.0) * (du / 2.0)).ravel()
    v_nodes = (v_edges[:, None] + (x[None, :] + 1.0) * (dv / 2.0)).ravel()
    u_w = np.tile(w * (du / 2.0), mu).reshape(mu, quad.order).ravel()
    v_w = np.tile(w * (dv / 2.0), mv).reshape(mv, quad.order).ravel()
    return u_nodes, u_w, v_nodes, v_w


def energy(surface: ParametricSurface, alpha: float,
           quad: EnergyQuadrature = EnergyQuadrature(),
           step: float = DEFAULT_FD_STEP,
           eps_origin: float = EPS_ORIGIN) -> float:
    """E_alpha = integral of |p|^alpha over the surface patch.

    Composite tensor-product Gauss-Legendre quadrature; the integrand at
    each node uses first partial derivatives only.  For alpha = 0 this
    is the area.

    Raises
    ------
    OriginContact
        A quadrature node verifies |p| < eps_origin (the weight |p|^alpha
        is not integrable there for the exponents of interest).
    SingularPoint
        A quadrature node lies in the declared singular set.
    """
    u_nodes, u_w, v_nodes, v_w = _gauss_nodes(surface.domain, quad)
    eps2 = eps_origin * eps_origin
    total = 0.0
    for iu, uu in enumerate(u_nodes):
        wu = u_w[iu]
        for iv, vv in enumerate(v_nodes):
            if surface.is_singular(uu, vv):
                raise SingularPoint(f"quadrature node ({uu}, {vv}) is singular")
            p, X_u, X_v = _first_partials(surface, uu, vv, step)
            r2 = float(p @ p)
            if r2 < eps2:
                raise OriginContact("quadrature node within origin clip radius")
            area_el = float(np.linalg.norm(np.cross(X_u, X_v)))
            total += wu * v_w[iv] * area_el * r2 ** (alpha / 2.0)
    return total


def gaussian_bump(center: tuple[float, float], sigma: tuple[float, float],
                  amplitude: float = 1.0) -> Callable[[float, float], float]:
    """Gaussian bump in parameter space, for first-variation tests."""
    cu, cv = center
    su, sv = sigma

    def bump(u, v):
        return amplitude * math.exp(-0.5 * (((u - cu) / su) ** 2
                                            + ((v - cv) / sv) ** 2))

    return bump


def first_variation_check(surface: ParametricSurface, alpha: float,
                          bump: Callable[[float, float], float],
                          t_step: float = 1e-4,
                          quad: EnergyQuadrature = EnergyQuadrature(order=6, cells=(16, 16)),
                          step: float = DEFAULT_FD_STEP) -> float:
    """Centered-difference derivative of E_alpha under a normal bump.

    The varied surface is X + t * bump(u, v) * nu(u, v), with nu taken
    from the unperturbed surface.  Returns (E[t] - E[-t]) / (2 t); for
    an alpha-stationary surface and a bump vanishing near the boundary
    this must vanish to finite-difference accuracy.

    The bump is required to be negligible on non-periodic boundary
    edges (checked by sampling); otherwise boundary terms pollute the
    derivative and a ValueError is raised.
    """
    d = surface.domain
    samples = np.linspace(0.0, 1.0, 9)
    interior = abs(bump(0.5 * (d.u_min + d.u_max), 0.5 * (d.v_min + d.v_max)))
    peak = max(interior, 1e-30)
    edges = []
    if not surface.periodic_u:
        edges += [(d.u_min, d.v_min + t * d.v_extent) for t in samples]
        edges += [(d.u_max, d.v_min + t * d.v_extent) for t in samples]
    if not surface.periodic_v:
        edges += [(d.u_min + t * d.u_extent, d.v_min) for t in samples]
        edges += [(d.u_min + t * d.u_extent, d.v_max) for t in samples]
    for (uu, vv) in edges:
        if abs(bump(uu, vv)) > 1e-3 * peak:
            raise ValueError("bump does not vanish near the domain boundary")

    def varied(t):
        def pos(uu, vv):
            jet = evaluate_jet(surface, uu, vv, step=step)
            geom = pointwise_geometry(jet)
            return jet.p + t * bump(uu, vv) * geom.nu

        return dataclasses.replace(surface, position=pos, exact_jet=None,
                                   info={})

    e_plus = energy(varied(t_step), alpha, quad=quad, step=step)
    e_minus = energy(varied(-t_step), alpha, quad=quad, step=step)
    return (e_plus - e_minus) / (2.0 * t_step)
