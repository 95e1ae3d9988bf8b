import math

import numpy as np
import pytest

from stasurf import (
    DegenerateImmersion,
    Domain,
    DomainError,
    EnergyQuadrature,
    OriginContact,
    ParametricSurface,
    SingularPoint,
    energy,
    evaluate_jet,
    first_variation_check,
    gaussian_bump,
    make_catenoid,
    make_plane,
    make_sphere_centered,
    pointwise_geometry,
    restrict,
    stationarity_residual,
    without_exact_jets,
)


def test_domain_wrap_and_contains():
    surf = make_sphere_centered(1.0)
    assert surf.periodic_u and not surf.periodic_v
    u, v = surf.wrap(2.0 * math.pi + 0.3, 1.0)
    assert abs(u - 0.3) < 1e-12 and v == 1.0
    assert surf.contains(1.0, 1.0)
    assert not surf.contains(1.0, 4.0)


def test_evaluate_jet_outside_domain():
    surf = make_catenoid()
    with pytest.raises(DomainError):
        evaluate_jet(surf, 0.5, 5.0)


def test_singular_point_raises():
    surf = make_sphere_centered(1.0)
    with pytest.raises(SingularPoint):
        evaluate_jet(surf, 1.0, 0.0)  # pole row


def test_fd_jet_matches_exact():
    surf = make_catenoid()
    numeric = without_exact_jets(surf)
    je = evaluate_jet(surf, 0.7, 0.9)
    jn = evaluate_jet(numeric, 0.7, 0.9)
    assert np.allclose(je.p, jn.p, atol=1e-14)
    assert np.allclose(je.X_u, jn.X_u, atol=1e-6)
    assert np.allclose(je.X_v, jn.X_v, atol=1e-6)
    assert np.allclose(je.X_uu, jn.X_uu, atol=1e-6)
    assert np.allclose(je.X_uv, jn.X_uv, atol=1e-6)
    assert np.allclose(je.X_vv, jn.X_vv, atol=1e-6)


def test_fd_jet_one_sided_at_edges():
    # stencils must not sample beyond a non-periodic edge; the jets at
    # the edge itself stay accurate through shifted windows
    surf = make_catenoid()
    numeric = without_exact_jets(surf)
    for (u, v) in [(1.0, 2.0), (0.5, -2.0), (3.0, 2.0 - 1e-5)]:
        je = evaluate_jet(surf, u, v)
        jn = evaluate_jet(numeric, u, v)
        assert np.allclose(je.X_u, jn.X_u, atol=1e-6)
        assert np.allclose(je.X_v, jn.X_v, atol=1e-6)
        assert np.allclose(je.X_uu, jn.X_uu, atol=1e-5)
        assert np.allclose(je.X_uv, jn.X_uv, atol=1e-5)
        assert np.allclose(je.X_vv, jn.X_vv, atol=1e-5)
        assert abs(pointwise_geometry(jn).H) < 1e-6


def test_fd_halving_is_second_order():
    surf = make_catenoid()
    numeric = without_exact_jets(surf)
    exact = evaluate_jet(surf, 0.7, 0.9)

    def err(step):
        j = evaluate_jet(numeric, 0.7, 0.9, step=step)
        return float(np.max(np.abs(j.X_u - exact.X_u))
                     + np.max(np.abs(j.X_v - exact.X_v)))

    ratio = err(1e-3) / err(5e-4)
    assert 3.5 < ratio < 4.5


def test_sphere_pointwise_oracle():
    # inward orientation: H = 2 / r, support h = -r, umbilic kappa = 1 / r
    for r in (1.0, 3.0):
        surf = make_sphere_centered(r)
        geom = pointwise_geometry(evaluate_jet(surf, 1.1, 1.3))
        assert abs(geom.H - 2.0 / r) < 1e-12
        assert abs(geom.h + r) < 1e-12
        # umbilic point: the discriminant cancels, so the split is
        # only accurate to sqrt(machine eps)
        assert abs(geom.kappa1 - 1.0 / r) < 1e-7
        assert abs(geom.kappa2 - 1.0 / r) < 1e-7
        assert abs(geom.r2 - r * r) < 1e-12
        assert abs(np.linalg.norm(geom.nu) - 1.0) < 1e-14


def test_catenoid_minimal_curvatures():
    surf = make_catenoid()
    for (u, v) in [(0.3, 0.0), (2.0, 1.2), (4.0, -1.7)]:
        geom = pointwise_geometry(evaluate_jet(surf, u, v))
        assert abs(geom.H) < 1e-13
        k = 1.0 / math.cosh(v) ** 2
        assert abs(geom.kappa1 - k) < 1e-12
        assert abs(geom.kappa2 + k) < 1e-12


def test_residual_values_on_spheres():
    geom = pointwise_geometry(evaluate_jet(make_sphere_centered(1.0), 0.5, 2.0))
    assert abs(stationarity_residual(geom, -2.0)) < 1e-13
    assert abs(abs(stationarity_residual(geom, 0.0)) - 2.0) < 1e-13
    assert abs(abs(stationarity_residual(geom, -4.0)) - 2.0) < 1e-13


def test_residual_origin_contact():
    plane0 = make_plane(offset=0.0)
    geom = pointwise_geometry(evaluate_jet(plane0, 0.0, 0.0))
    with pytest.raises(OriginContact):
        stationarity_residual(geom, -2.0)


def test_degenerate_immersion():
    surf = ParametricSurface(position=lambda u, v: np.array([1.0, 2.0, 3.0]),
                             domain=Domain(0.0, 1.0, 0.0, 1.0))
    with pytest.raises(DegenerateImmersion):
        pointwise_geometry(evaluate_jet(surf, 0.5, 0.5))


def test_restrict_drops_periodicity():
    surf = make_sphere_centered(1.0)
    sub = restrict(surf, u_range=(0.5, 1.5), v_range=(0.4, 2.0))
    assert not sub.periodic_u
    assert sub.domain.u_min == 0.5 and sub.domain.v_max == 2.0
    # positions unchanged
    assert np.allclose(sub.position(1.0, 1.0), surf.position(1.0, 1.0))


def test_energy_sphere_area():
    e = energy(make_sphere_centered(1.0), 0.0)
    assert abs(e - 4.0 * math.pi) < 1e-9


def test_energy_scale_invariant_exponent():
    for r in (0.5, 1.0, 2.0):
        e = energy(make_sphere_centered(r), -2.0)
        assert abs(e - 4.0 * math.pi) < 1e-9


def test_energy_offaxis_disc():
    # unit disc centered at (2, 0, 0) in the z = 0 plane, polar chart;
    # closed form: int 1/|p|^2 dA = pi * log(4/3)
    disc = ParametricSurface(
        position=lambda u, v: np.array(
            [2.0 + u * math.cos(v), u * math.sin(v), 0.0]),
        domain=Domain(0.0, 1.0, 0.0, 2.0 * math.pi),
        periodic_v=True)
    e = energy(disc, -2.0, quad=EnergyQuadrature(order=8, cells=(16, 16)))
    assert abs(e - math.pi * math.log(4.0 / 3.0)) < 1e-6


def test_energy_origin_contact():
    with pytest.raises(OriginContact):
        energy(make_plane(offset=0.0), -2.0, eps_origin=0.5)


def test_quadrature_validation():
    with pytest.raises(ValueError):
        EnergyQuadrature(order=0)
    with pytest.raises(ValueError):
        EnergyQuadrature(cells=(0, 4))


def test_first_variation_rejects_boundary_bump():
    surf = make_catenoid()  # v in [-2, 2] non-periodic
    bump = gaussian_bump((math.pi, 2.0), (0.5, 0.3))
    with pytest.raises(ValueError):
        first_variation_check(surf, 0.0, bump)


def test_first_variation_signs():
    quad = EnergyQuadrature(order=6, cells=(10, 10))
    bump = gaussian_bump((math.pi, 0.5 * math.pi), (0.6, 0.3))
    sphere = make_sphere_centered(1.0)
    stationary = first_variation_check(sphere, -2.0, bump, quad=quad)
    moved = first_variation_check(sphere, 0.0, bump, quad=quad)
    assert abs(stationary) < 1e-5
    assert abs(moved) > 1e-2
