"""JSON-driven construction of surfaces and solver inputs.

A surface config is a dict with a ``kind`` key plus kind-specific
fields; anything malformed raises ConfigError with the offending key
in the message.  Complex numbers are written as ``[re, im]`` (plain
numbers are accepted for real values).
"""

from __future__ import annotations

import json
import math

import numpy as np

from .bjorling import (
    BjorlingData,
    circle_catenoid_preset,
    circle_planar_preset,
    line_helicoid_preset,
    mobius_preset,
    schwarz_solve,
    solve_stationary_bjorling,
)
from .catalog import (
    LaurentSeries,
    WeierstrassData,
    make_catenoid,
    make_ellipsoid,
    make_helicoid,
    make_plane,
    make_sphere_centered,
    make_sphere_through_origin,
    weierstrass_surface,
)
from .errors import ConfigError
from .fourier import FourierCurve
from .geometry import ParametricSurface, restrict
from .inversion import invert_surface

__all__ = [
    "load_config",
    "surface_from_config",
    "bjorling_data_from_config",
    "curve_from_config",
    "preset_surface",
    "SURFACE_PRESETS",
    "BJORLING_PRESETS",
]

BJORLING_PRESETS = {
    "mobius": mobius_preset,
    "circle_catenoid": circle_catenoid_preset,
    "circle_planar": circle_planar_preset,
    "line_helicoid": line_helicoid_preset,
}


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    return cfg


def _number(cfg, key, default=None, required=False):
    if key not in cfg:
        if required:
            raise ConfigError(f"missing required key '{key}'")
        return default
    val = cfg[key]
    if not isinstance(val, (int, float)) or isinstance(val, bool):
        raise ConfigError(f"'{key}' must be a number")
    return float(val)


def _vector(cfg, key, default=None, length=3):
    if key not in cfg:
        return default
    val = cfg[key]
    if not isinstance(val, (list, tuple)) or len(val) != length:
        raise ConfigError(f"'{key}' must be a list of {length} numbers")
    try:
        return tuple(float(x) for x in val)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"'{key}' must be a list of {length} numbers") from exc


def _pair(cfg, key, default=None):
    out = _vector(cfg, key, default=None, length=2)
    return default if out is None else out


def _complex_entry(val, key):
    if isinstance(val, (int, float)) and not isinstance(val, bool):
        return complex(val)
    if isinstance(val, (list, tuple)) and len(val) == 2:
        try:
            return complex(float(val[0]), float(val[1]))
        except (TypeError, ValueError):
            pass
    raise ConfigError(f"'{key}' entries must be numbers or [re, im] pairs")


def _laurent(cfg, key) -> LaurentSeries:
    if key not in cfg or not isinstance(cfg[key], dict):
        raise ConfigError(f"'{key}' must be an object mapping exponents "
                          "to coefficients")
    terms = {}
    for k, v in cfg[key].items():
        try:
            exp = int(k)
        except ValueError as exc:
            raise ConfigError(f"'{key}' exponent '{k}' is not an integer") from exc
        terms[exp] = _complex_entry(v, key)
    if not terms:
        raise ConfigError(f"'{key}' must contain at least one term")
    return LaurentSeries(terms)


def curve_from_config(cfg: dict) -> FourierCurve:
    """Build a Fourier curve from {period, coeffs, drift?}; coeffs is a
    list of 2N + 1 rows (modes -N..N) of 3 complex entries."""
    if not isinstance(cfg, dict):
        raise ConfigError("curve spec must be an object")
    period = _number(cfg, "period", required=True)
    rows = cfg.get("coeffs")
    if not isinstance(rows, list) or len(rows) % 2 == 0:
        raise ConfigError("'coeffs' must be a list with an odd number of rows")
    coeffs = np.zeros((len(rows), 3), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, (list, tuple)) or len(row) != 3:
            raise ConfigError("each 'coeffs' row must have 3 entries")
        for j, entry in enumerate(row):
            coeffs[i, j] = _complex_entry(entry, "coeffs")
    drift = np.array(_vector(cfg, "drift", default=(0.0, 0.0, 0.0)))
    try:
        return FourierCurve(period, coeffs, drift=drift)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def bjorling_data_from_config(cfg: dict) -> BjorlingData:
    """Either {"preset": name} or explicit {curve, field, s_range?,
    strip_halfwidth?} specs."""
    if "preset" in cfg:
        name = cfg["preset"]
        if name not in BJORLING_PRESETS:
            raise ConfigError(
                f"unknown preset '{name}'; choose from "
                f"{sorted(BJORLING_PRESETS)}")
        return BJORLING_PRESETS[name]()
    if "curve" not in cfg or "field" not in cfg:
        raise ConfigError("need 'preset' or both 'curve' and 'field'")
    try:
        return BjorlingData(
            curve=curve_from_config(cfg["curve"]),
            field=curve_from_config(cfg["field"]),
            strip_halfwidth=_number(cfg, "strip_halfwidth"),
            s_range=_pair(cfg, "s_range"),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _weierstrass_from_config(cfg: dict) -> ParametricSurface:
    domain_kind = cfg.get("domain", "rectangle")
    if domain_kind not in ("rectangle", "annulus"):
        raise ConfigError("'domain' must be 'rectangle' or 'annulus'")
    u_range = _pair(cfg, "u_range", default=(-1.0, 1.0))
    v_range = _pair(cfg, "v_range", default=(-1.0, 1.0))
    res = cfg.get("resolution", 96)
    if not isinstance(res, int) or isinstance(res, bool):
        raise ConfigError("'resolution' must be an integer")
    data = WeierstrassData(
        g=_laurent(cfg, "g"), f=_laurent(cfg, "f"),
        domain_kind=domain_kind, u_range=u_range, v_range=v_range,
        label=cfg.get("label", "weierstrass"))
    return weierstrass_surface(data, resolution=(res, res))


_KIND_KEYS = {
    "plane": {"normal", "offset", "extent"},
    "sphere_centered": {"radius"},
    "sphere_origin": {"radius", "direction"},
    "catenoid": {"neck_radius", "center", "axis", "v_range"},
    "helicoid": {"pitch", "u_range", "v_range"},
    "ellipsoid": {"semi_axes"},
    "weierstrass": {"g", "f", "domain", "u_range", "v_range", "resolution",
                    "label"},
    "bjorling_minimal": {"preset", "curve", "field", "s_range",
                         "strip_halfwidth", "grid"},
    "bjorling_stationary": {"preset", "curve", "field", "s_range",
                            "strip_halfwidth", "grid"},
    "inverted": {"of"},
}


def surface_from_config(cfg: dict) -> ParametricSurface:
    if not isinstance(cfg, dict):
        raise ConfigError("surface config must be an object")
    kind = cfg.get("kind")
    if kind not in _KIND_KEYS:
        raise ConfigError(
            f"unknown surface kind '{kind}'; choose from {sorted(_KIND_KEYS)}")
    extra = set(cfg) - _KIND_KEYS[kind] - {"kind", "restrict"}
    if extra:
        raise ConfigError(f"unexpected keys for '{kind}': {sorted(extra)}")

    if kind == "plane":
        surf = make_plane(normal=_vector(cfg, "normal", (0.0, 0.0, 1.0)),
                          offset=_number(cfg, "offset", 0.0),
                          extent=_pair(cfg, "extent", (1.0, 1.0)))
    elif kind == "sphere_centered":
        surf = make_sphere_centered(_number(cfg, "radius", 1.0))
    elif kind == "sphere_origin":
        surf = make_sphere_through_origin(
            _number(cfg, "radius", 1.0),
            direction=_vector(cfg, "direction", (0.0, 0.0, 1.0)))
    elif kind == "catenoid":
        surf = make_catenoid(neck_radius=_number(cfg, "neck_radius", 1.0),
                             center=_vector(cfg, "center", (0.0, 0.0, 0.0)),
                             axis=_vector(cfg, "axis", (0.0, 0.0, 1.0)),
                             v_range=_pair(cfg, "v_range", (-2.0, 2.0)))
    elif kind == "helicoid":
        surf = make_helicoid(pitch=_number(cfg, "pitch", 1.0),
                             u_range=_pair(cfg, "u_range", (0.0, 2.0 * math.pi)),
                             v_range=_pair(cfg, "v_range", (-2.0, 2.0)))
    elif kind == "ellipsoid":
        surf = make_ellipsoid(_vector(cfg, "semi_axes", (1.0, 1.5, 2.0)))
    elif kind == "weierstrass":
        surf = _weierstrass_from_config(cfg)
    elif kind in ("bjorling_minimal", "bjorling_stationary"):
        data = bjorling_data_from_config(cfg)
        grid = _pair(cfg, "grid", (128, 17))
        grid = (int(grid[0]), int(grid[1]))
        solver = schwarz_solve if kind == "bjorling_minimal" \
            else solve_stationary_bjorling
        surf = solver(data, grid=grid)
    else:  # inverted
        if "of" not in cfg:
            raise ConfigError("'inverted' needs an 'of' sub-config")
        surf = invert_surface(surface_from_config(cfg["of"]))

    if "restrict" in cfg:
        rc = cfg["restrict"]
        if not isinstance(rc, dict) or set(rc) - {"u", "v"}:
            raise ConfigError("'restrict' must be an object with 'u'/'v'")
        surf = restrict(surf, u_range=_pair(rc, "u"), v_range=_pair(rc, "v"))
    return surf


SURFACE_PRESETS = {
    "plane": {"kind": "plane", "offset": 1.0},
    "sphere": {"kind": "sphere_centered", "radius": 1.0},
    "sphere_origin": {"kind": "sphere_origin", "radius": 1.0},
    "catenoid": {"kind": "catenoid"},
    "helicoid": {"kind": "helicoid"},
    "ellipsoid": {"kind": "ellipsoid"},
    "inverted_catenoid": {"kind": "inverted", "of": {"kind": "catenoid"}},
    "mobius_minimal": {"kind": "bjorling_minimal", "preset": "mobius"},
    "mobius_stationary": {"kind": "bjorling_stationary", "preset": "mobius"},
}


def preset_surface(name: str) -> ParametricSurface:
    if name not in SURFACE_PRESETS:
        raise ConfigError(
            f"unknown surface preset '{name}'; choose from "
            f"{sorted(SURFACE_PRESETS)}")
    return surface_from_config(SURFACE_PRESETS[name])
