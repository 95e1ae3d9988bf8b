import math

import numpy as np
import pytest

from stasurf import (
    BjorlingData,
    FourierCurve,
    OriginContact,
    circle_catenoid_preset,
    circle_planar_preset,
    evaluate_jet,
    line_helicoid_preset,
    mobius_preset,
    orientation_holonomy,
    pointwise_geometry,
    schwarz_solve,
    solve_stationary_bjorling,
    transform_data,
)


def test_presets_validate():
    for preset in (circle_catenoid_preset, circle_planar_preset,
                   line_helicoid_preset, mobius_preset):
        preset().validate()


def test_validate_rejects_non_unit_field():
    data = circle_catenoid_preset()
    bad = BjorlingData(curve=data.curve,
                       field=FourierCurve(data.field.period,
                                          1.1 * data.field.coeffs))
    with pytest.raises(ValueError):
        bad.validate()


def test_validate_rejects_tangential_field():
    data = circle_catenoid_preset()
    # unit tangent field: orthogonality to the tangent fails
    tangent = data.curve.derivative().pad(1)
    bad = BjorlingData(curve=data.curve, field=tangent)
    with pytest.raises(ValueError):
        bad.validate()


def test_catenoid_solution_closed_form():
    surf = schwarz_solve(circle_catenoid_preset(), grid=(64, 9))
    tau = surf.domain.v_max
    sgn = surf.info["schwarz_sign"]
    for s in (0.0, 1.1, 4.0):
        for t in (-tau, 0.0, 0.5 * tau):
            p = np.asarray(surf.position(s, t))
            ref = np.array([math.cos(s) * math.cosh(t),
                            math.sin(s) * math.cosh(t), -sgn * t])
            assert np.allclose(p, ref, atol=1e-13)
    assert surf.periodic_u
    assert surf.info["h_selfcheck"] < 1e-12


def test_normal_matches_field_along_curve():
    data = circle_catenoid_preset()
    surf = schwarz_solve(data, grid=(64, 9))
    for s in np.linspace(0.0, 2.0 * math.pi, 17):
        geom = pointwise_geometry(evaluate_jet(surf, float(s), 0.0))
        assert np.allclose(geom.nu, data.field(float(s)), atol=1e-12)


def test_planar_data_gives_flat_strip():
    surf = schwarz_solve(circle_planar_preset(0.25), grid=(64, 9))
    for (s, t) in [(0.3, 0.1), (2.0, -0.2)]:
        p = np.asarray(surf.position(s, t))
        assert abs(p[2] - 0.25) < 1e-13  # stays in its plane


def test_helicoid_data_gives_ruled_strip():
    surf = schwarz_solve(line_helicoid_preset(), grid=(64, 9))
    # for fixed s the t-line is straight
    s = 0.8
    pts = np.array([surf.position(s, t) for t in np.linspace(-0.2, 0.2, 7)])
    chords = pts[1:] - pts[:-1]
    unit = chords / np.linalg.norm(chords, axis=1)[:, None]
    assert np.max(np.abs(unit - unit[0])) < 1e-9
    assert abs(pts[0][0] - s) < 1e-12  # rulings cross the axis at x = s


def test_transform_involution():
    data = circle_catenoid_preset()
    back = transform_data(transform_data(data))
    s = np.linspace(0.0, data.curve.period, 33)
    assert np.max(np.abs(back.curve(s) - data.curve(s))) < 1e-9
    assert np.max(np.abs(back.field(s) - data.field(s))) < 1e-9


def test_transform_rejects_origin_touching_curve():
    period = 2.0 * math.pi
    c = np.zeros((3, 3), dtype=complex)
    c[2] = [0.5, -0.5j, 0.0]
    c[0] = [0.5, 0.5j, 0.0]
    c[1] = [1.0, 0.0, 0.0]    # circle through the origin at s = pi
    curve = FourierCurve(period, c).pad(1)
    f = np.zeros((3, 3), dtype=complex)
    f[1] = [0.0, 0.0, 1.0]
    data = BjorlingData(curve=curve, field=FourierCurve(period, f).pad(1))
    with pytest.raises(OriginContact):
        transform_data(data)


def test_transform_rejects_drift():
    with pytest.raises(ValueError):
        transform_data(line_helicoid_preset())


def test_mobius_preset_field_values():
    data = mobius_preset()
    v0 = data.field(0.0)
    v2pi = data.field(2.0 * math.pi)
    assert np.allclose(v0, [1.0, 0.0, 0.0], atol=1e-14)
    assert np.allclose(v2pi, [-1.0, 0.0, 0.0], atol=1e-13)
    s = np.linspace(0.0, data.curve.period, 64, endpoint=False)
    dots = np.einsum("ij,ij->i", data.curve(s), data.field(s))
    assert np.max(np.abs(dots - np.cos(s / 2.0))) < 1e-13


def test_mobius_transformed_field_closed_form():
    data = mobius_preset()
    td = transform_data(data)
    s = np.linspace(0.0, data.curve.period, 48, endpoint=False)
    alpha = data.curve(s)
    expected = -np.cos(s / 2.0)[:, None] * alpha
    expected[:, 2] += np.sin(s / 2.0)
    assert np.max(np.abs(td.field(s) - expected)) < 1e-9
    # the unit circle is fixed by the inversion
    assert np.max(np.abs(td.curve(s) - alpha)) < 1e-9


def test_stationary_catenoid_data_lands_on_inverted_catenoid():
    surf = solve_stationary_bjorling(circle_catenoid_preset(), grid=(64, 9))
    tau = surf.domain.v_max
    for s in (0.2, 2.7):
        for t in (-0.8 * tau, 0.4 * tau):
            p = np.asarray(surf.position(s, t))
            q = p / (p @ p)   # undo the inversion
            assert abs(math.hypot(q[0], q[1]) - math.cosh(q[2])) < 1e-9


def test_stationary_normal_equals_field():
    data = mobius_preset()
    surf = solve_stationary_bjorling(data, grid=(96, 9))
    for s in np.linspace(0.0, data.curve.period, 9, endpoint=False):
        geom = pointwise_geometry(evaluate_jet(surf, float(s), 0.0))
        assert np.allclose(geom.nu, data.field(float(s)), atol=1e-8)


def test_holonomy_orientable_and_not():
    catenoid = schwarz_solve(circle_catenoid_preset(), grid=(64, 9))
    assert orientation_holonomy(catenoid, 0.0) == 1
    mobius = schwarz_solve(mobius_preset(), grid=(96, 9))
    assert orientation_holonomy(mobius, 0.0) == -1


def test_holonomy_needs_closed_loop():
    helicoid = schwarz_solve(line_helicoid_preset(), grid=(64, 9))
    with pytest.raises(ValueError):
        orientation_holonomy(helicoid, 0.0)
