import math

import numpy as np
import pytest

from stasurf import (
    ExtensionDivergence,
    FourierCurve,
    InsufficientSamples,
    certified_strip,
    evaluate_extension,
    fit_fourier,
)


def _circle(period=2.0 * math.pi):
    c = np.zeros((3, 3), dtype=complex)
    c[2] = [0.5, -0.5j, 0.0]
    c[0] = [0.5, 0.5j, 0.0]
    return FourierCurve(period, c)


def test_circle_evaluates():
    curve = _circle()
    s = np.linspace(0.0, 2.0 * math.pi, 17)
    pts = curve(s)
    assert np.allclose(pts[:, 0], np.cos(s), atol=1e-14)
    assert np.allclose(pts[:, 1], np.sin(s), atol=1e-14)
    assert curve.conj_defect() < 1e-15


def test_constructor_validation():
    with pytest.raises(ValueError):
        FourierCurve(2.0 * math.pi, np.zeros((4, 3), dtype=complex))
    with pytest.raises(ValueError):
        FourierCurve(-1.0, np.zeros((3, 3), dtype=complex))


def test_derivative_and_drift_folding():
    curve = FourierCurve(2.0 * math.pi, np.zeros((3, 3), dtype=complex),
                         drift=np.array([2.0, 0.0, 0.0]))
    d = curve.derivative()
    assert np.all(d.drift == 0.0)
    assert np.allclose(d.mode(0), [2.0, 0.0, 0.0])
    # derivative of the circle is the rotated circle
    dc = _circle().derivative()
    s = np.linspace(0.0, 2.0 * math.pi, 9)
    assert np.allclose(dc(s)[:, 0], -np.sin(s), atol=1e-14)


def test_extension_matches_closed_form():
    curve = _circle().pad(1)
    z = 0.4 + 0.2j
    val = curve.extension(z)
    assert abs(val[0] - np.cos(z)) < 1e-14
    assert abs(val[1] - np.sin(z)) < 1e-14


def test_fit_recovers_rotating_frame_curve():
    # alpha(s) = cos(s/2) (cos s, sin s, 0) + sin(s/2) e3 over 4 pi has
    # frequency content at |k| in {1, 3}, so three shells are needed
    period = 4.0 * math.pi

    def curve_fn(s):
        return np.stack([np.cos(s / 2) * np.cos(s),
                         np.cos(s / 2) * np.sin(s),
                         np.sin(s / 2)], axis=-1)

    s = np.arange(16) * period / 16
    pts = curve_fn(s)
    fit3 = fit_fourier(s, pts, period, 3)
    dense = np.linspace(0.0, period, 200)
    assert np.max(np.abs(fit3(dense) - curve_fn(dense))) < 1e-12

    fit2 = fit_fourier(s, pts, period, 2)
    assert np.max(np.abs(fit2(dense) - curve_fn(dense))) > 0.1


def test_fit_requires_enough_samples():
    s = np.arange(5) * 2.0 * math.pi / 5
    pts = np.zeros((5, 3))
    with pytest.raises(InsufficientSamples):
        fit_fourier(s, pts, 2.0 * math.pi, 3)


def test_fit_requires_equispacing():
    s = np.array([0.0, 1.0, 2.0, 4.5, 5.0])
    pts = np.zeros((5, 3))
    with pytest.raises(ValueError):
        fit_fourier(s, pts, 2.0 * math.pi, 1)


def test_fit_accepts_shifted_grid():
    period = 2.0 * math.pi
    s = 0.7 + np.arange(8) * period / 8

    def fn(t):
        return np.stack([np.cos(t), np.sin(t), 0.0 * t], axis=-1)

    fit = fit_fourier(s, fn(s), period, 2)
    dense = np.linspace(0.0, period, 100)
    assert np.max(np.abs(fit(dense) - fn(dense))) < 1e-13


def test_tail_certificate():
    curve = _circle()          # content in the top shell
    padded = curve.pad(1)      # one zero shell above the content
    assert curve.tail_at(0.3) > 0.1
    assert padded.tail_at(0.3) == 0.0
    assert padded.tail_at(10.0) == 0.0


def test_certified_strip_closed_form():
    # put a small top shell at N = 2 and check the inversion formula
    period = 2.0 * math.pi
    c = np.zeros((5, 3), dtype=complex)
    c[2 + 1] = [0.5, -0.5j, 0.0]
    c[2 - 1] = [0.5, 0.5j, 0.0]
    c[2 + 2] = [1e-6, 0.0, 0.0]
    c[2 - 2] = [1e-6, 0.0, 0.0]
    curve = FourierCurve(period, c)
    tol = 1e-4
    tau = certified_strip(curve, 10.0, tol=tol)
    # tail_at(tau) == tol at the unshrunk bound
    expected = math.log(tol / 2e-6) * period / (2.0 * math.pi * 2)
    assert abs(tau - expected) < 1e-9
    assert curve.tail_at(tau) <= tol


def test_extension_divergence_outside_strip():
    curve = _circle()   # unpadded: top shell is the content
    with pytest.raises(ExtensionDivergence):
        evaluate_extension(curve, 0.0 + 5.0j)


def test_trim_keeps_certificate_shell():
    noisy = _circle().pad(3)
    trimmed = noisy.trim()
    assert trimmed.n_modes == 2  # content at 1 plus one zero shell
    s = np.linspace(0.0, 2.0 * math.pi, 50)
    assert np.allclose(trimmed(s), _circle()(s), atol=1e-15)
