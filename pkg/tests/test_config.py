import json
import math

import numpy as np
import pytest

from stasurf import (
    ConfigError,
    bjorling_data_from_config,
    curve_from_config,
    load_config,
    preset_surface,
    surface_from_config,
)
from stasurf.config import SURFACE_PRESETS


def test_load_config_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(str(bad))
    arr = tmp_path / "arr.json"
    arr.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        load_config(str(arr))


def test_unknown_kind():
    with pytest.raises(ConfigError):
        surface_from_config({"kind": "torus"})


def test_unexpected_keys_rejected():
    with pytest.raises(ConfigError):
        surface_from_config({"kind": "sphere_centered", "radius": 1.0,
                             "color": "red"})


def test_sphere_config():
    surf = surface_from_config({"kind": "sphere_centered", "radius": 2.0})
    p = np.asarray(surf.position(0.3, 1.0))
    assert abs(np.linalg.norm(p) - 2.0) < 1e-14


def test_inverted_nesting():
    surf = surface_from_config(
        {"kind": "inverted", "of": {"kind": "plane", "offset": 0.5}})
    p = np.asarray(surf.position(0.2, -0.3))
    # inverted offset plane sits on the sphere through the origin
    assert abs(np.linalg.norm(p - [0.0, 0.0, 1.0]) - 1.0) < 1e-12


def test_restrict_clause():
    surf = surface_from_config(
        {"kind": "catenoid", "restrict": {"v": [-1.0, 1.0]}})
    assert surf.domain.v_min == -1.0 and surf.domain.v_max == 1.0
    with pytest.raises(ConfigError):
        surface_from_config({"kind": "catenoid", "restrict": {"w": [0, 1]}})


def test_curve_from_config():
    cfg = {"period": 2.0 * math.pi,
           "coeffs": [[[0.5, 0.0], [0.0, 0.5], 0.0],
                      [0.0, 0.0, 0.0],
                      [[0.5, 0.0], [0.0, -0.5], 0.0]]}
    curve = curve_from_config(cfg)
    s = np.linspace(0.0, 2.0 * math.pi, 12)
    assert np.allclose(curve(s)[:, 0], np.cos(s), atol=1e-14)
    with pytest.raises(ConfigError):
        curve_from_config({"period": 1.0, "coeffs": [[0, 0, 0], [0, 0, 0]]})
    with pytest.raises(ConfigError):
        curve_from_config({"coeffs": [[0, 0, 0]]})


def test_bjorling_config_roundtrip():
    data = bjorling_data_from_config({"preset": "circle_catenoid"})
    data.validate()
    with pytest.raises(ConfigError):
        bjorling_data_from_config({"preset": "nope"})
    with pytest.raises(ConfigError):
        bjorling_data_from_config({"curve": {"period": 1.0, "coeffs": [[0, 0, 0]]}})


def test_weierstrass_config():
    surf = surface_from_config({
        "kind": "weierstrass",
        "g": {"1": 1.0}, "f": {"-2": 1.0},
        "domain": "annulus", "u_range": [-0.8, 0.8],
        "resolution": 48})
    assert surf.periodic_v
    assert surf.info["h_defect"] < 1e-5
    with pytest.raises(ConfigError):
        surface_from_config({"kind": "weierstrass", "g": {"1": 1.0},
                             "f": {"-2": 1.0}, "domain": "disk"})
    with pytest.raises(ConfigError):
        surface_from_config({"kind": "weierstrass", "g": {"x": 1.0},
                             "f": {"-2": 1.0}})


def test_bjorling_surface_config():
    surf = surface_from_config({"kind": "bjorling_minimal",
                                "preset": "circle_catenoid",
                                "grid": [48, 9]})
    p = np.asarray(surf.position(0.5, 0.0))
    assert abs(np.linalg.norm(p[:2]) - 1.0) < 1e-12


def test_all_presets_build():
    for name in SURFACE_PRESETS:
        surf = preset_surface(name)
        assert surf.domain.u_extent > 0.0
    with pytest.raises(ConfigError):
        preset_surface("klein_bottle")


def test_config_file_roundtrip(tmp_path):
    path = tmp_path / "surf.json"
    path.write_text(json.dumps({"kind": "sphere_origin", "radius": 1.5}))
    surf = surface_from_config(load_config(str(path)))
    p0 = np.asarray(surf.position(0.0, 0.0))
    assert np.linalg.norm(p0) < 1e-12
