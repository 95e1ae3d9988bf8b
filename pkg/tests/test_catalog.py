import math

import numpy as np
import pytest

from stasurf import (
    LaurentSeries,
    NonMinimalResult,
    PoleOnPath,
    WeierstrassData,
    evaluate_jet,
    make_catenoid,
    make_ellipsoid,
    make_helicoid,
    make_plane,
    make_sphere_centered,
    make_sphere_through_origin,
    pointwise_geometry,
    sample_grid,
    stationarity_residual,
    weierstrass_surface,
)


def test_plane_position_and_jets():
    surf = make_plane(normal=(0.0, 0.0, 1.0), offset=2.0, extent=(1.5, 1.0))
    p = np.asarray(surf.position(0.3, -0.4))
    assert abs(p[2] - 2.0) < 1e-15
    jet = evaluate_jet(surf, 0.3, -0.4)
    assert np.allclose(jet.X_uu, 0.0) and np.allclose(jet.X_uv, 0.0)
    assert surf.domain.u_min == -1.5 and surf.domain.v_max == 1.0


def test_plane_tilted_normal():
    n = np.array([1.0, 1.0, 1.0]) / math.sqrt(3.0)
    surf = make_plane(normal=n, offset=0.5)
    for (u, v) in [(0.1, 0.2), (-0.8, 0.9)]:
        p = np.asarray(surf.position(u, v))
        assert abs(p @ n - 0.5) < 1e-14


def test_sphere_pole_singularity():
    surf = make_sphere_centered(1.0)
    assert surf.is_singular(0.3, 0.0)
    assert surf.is_singular(0.3, math.pi)
    assert not surf.is_singular(0.3, 1.0)


def test_origin_sphere_touches_origin():
    for r in (1.0, 2.0):
        for direction in [(0, 0, 1), (1, 0, 0)]:
            surf = make_sphere_through_origin(r, direction=direction)
            p0 = np.asarray(surf.position(0.0, 0.0))
            assert np.linalg.norm(p0) < 1e-13  # the origin sits at a pole
            # support relation h = -|p|^2 / (2 r) away from the poles
            g = pointwise_geometry(evaluate_jet(surf, 1.0, 1.5))
            assert abs(g.h + g.r2 / (2.0 * r)) < 1e-12
            assert abs(g.H - 2.0 / r) < 1e-12


def test_catenoid_rigid_motion():
    center = (0.5, -1.0, 2.0)
    axis = (1.0, 1.0, 0.0)
    surf = make_catenoid(neck_radius=1.5, center=center, axis=axis)
    g = pointwise_geometry(evaluate_jet(surf, 0.8, 0.6))
    assert abs(g.H) < 1e-12
    # neck circle lies at distance neck_radius from the center
    p = np.asarray(surf.position(0.8, 0.0))
    assert abs(np.linalg.norm(p - np.asarray(center)) - 1.5) < 1e-12


def test_catenoid_neck_scaling():
    surf = make_catenoid(neck_radius=2.0)
    g = pointwise_geometry(evaluate_jet(surf, 1.0, 0.0))
    assert abs(abs(g.kappa1) - 0.5) < 1e-12  # 1 / c at the neck


def test_helicoid_is_ruled_and_minimal():
    surf = make_helicoid(pitch=0.7)
    g = pointwise_geometry(evaluate_jet(surf, 1.2, 0.8))
    assert abs(g.H) < 1e-13
    jet = evaluate_jet(surf, 1.2, 0.8)
    assert np.allclose(jet.X_vv, 0.0)  # ruling direction is straight


def test_ellipsoid_not_stationary():
    surf = make_ellipsoid((1.0, 1.5, 2.0))
    mesh = sample_grid(surf, 24, 24, alpha=-2.0, with_geometry=True)
    assert np.min(np.abs(mesh.residuals[mesh.valid])) > 1e-3


def _catenoid_data():
    return WeierstrassData(g=LaurentSeries({1: 1.0}),
                           f=LaurentSeries({-2: 1.0}),
                           domain_kind="annulus", u_range=(-1.0, 1.0))


def test_weierstrass_catenoid_positions():
    surf = weierstrass_surface(_catenoid_data(), resolution=(96, 96))

    def reference(u, v):
        # primitive of the pulled-back integrand, anchored at the
        # first grid node like the cumulative integration
        base = np.array([-math.cosh(-1.0), 0.0, -1.0])
        return np.array([-math.cosh(u) * math.cos(v),
                         -math.cosh(u) * math.sin(v), u]) - base

    for (u, v) in [(0.0, 0.0), (0.5, 1.2), (-0.7, 4.0)]:
        p = np.asarray(surf.position(u, v))
        assert np.allclose(p, reference(u, v), atol=1e-7)


def test_weierstrass_self_check_and_doubling():
    coarse = weierstrass_surface(_catenoid_data(), resolution=(16, 16),
                                 h_tol=1.0)
    fine = weierstrass_surface(_catenoid_data(), resolution=(32, 32),
                               h_tol=1.0)
    assert fine.info["h_defect"] < coarse.info["h_defect"] / 2.0


def test_weierstrass_clean_at_domain_edges():
    # spline charts are only trustworthy inside their knot range, so
    # the jet evaluator must not step over the non-periodic edge
    surf = weierstrass_surface(_catenoid_data(), resolution=(96, 96))
    for v in (0.0, 1.0, 4.0):
        for u in (-1.0, 1.0):
            g = pointwise_geometry(evaluate_jet(surf, u, v))
            assert abs(g.H) < 1e-5


def test_weierstrass_enneper():
    data = WeierstrassData(g=LaurentSeries({1: 1.0}),
                           f=LaurentSeries({0: 1.0}),
                           domain_kind="rectangle",
                           u_range=(-1.0, 1.0), v_range=(-1.0, 1.0))
    surf = weierstrass_surface(data, resolution=(64, 64))
    assert surf.info["h_defect"] < 1e-8
    g = pointwise_geometry(evaluate_jet(surf, 0.3, -0.2))
    assert abs(g.H) < 1e-6


def test_weierstrass_rejects_non_minimal_sampling():
    with pytest.raises(NonMinimalResult):
        weierstrass_surface(_catenoid_data(), resolution=(8, 8))


def test_weierstrass_pole_on_path():
    data = WeierstrassData(g=LaurentSeries({1: 1.0}),
                           f=LaurentSeries({-1000: 1.0}),
                           domain_kind="rectangle",
                           u_range=(-1.0, 1.0), v_range=(-1.0, 1.0))
    with pytest.raises(PoleOnPath):
        weierstrass_surface(data, resolution=(16, 16))


def test_weierstrass_multivalued_annulus():
    # f = i / z^3 leaves a real period around the annulus
    data = WeierstrassData(g=LaurentSeries({1: 1.0}),
                           f=LaurentSeries({-3: 1j}),
                           domain_kind="annulus", u_range=(-0.5, 0.5))
    with pytest.raises(ValueError):
        weierstrass_surface(data, resolution=(32, 32))


def test_weierstrass_resolution_floor():
    with pytest.raises(ValueError):
        weierstrass_surface(_catenoid_data(), resolution=(4, 4))


def test_laurent_series_evaluation():
    s = LaurentSeries({-2: 1.0, 1: 2.0j})
    z = 0.5 + 0.25j
    assert abs(s(z) - (z ** -2 + 2.0j * z)) < 1e-14
