"""Acceptance scenarios: end-to-end checks of the package claims.

Each scenario returns a ScenarioResult with the measured quantities,
so the same code backs both the test suite and the command line
(``stasurf verify --scenario NAME``).  Scenarios use fixed seeds and
fixed grids; they are deterministic.
"""

from __future__ import annotations

import filecmp
import math
import os
import subprocess
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from .bjorling import (
    circle_catenoid_preset,
    mobius_preset,
    orientation_holonomy,
    schwarz_solve,
    solve_stationary_bjorling,
)
from .catalog import (
    make_catenoid,
    make_ellipsoid,
    make_helicoid,
    make_plane,
    make_sphere_centered,
    make_sphere_through_origin,
)
from .geometry import (
    EnergyQuadrature,
    energy,
    evaluate_jet,
    first_variation_check,
    gaussian_bump,
    pointwise_geometry,
    without_exact_jets,
)
from .inversion import conjugated_translation, invert_point, invert_surface, verify_duality
from .meshing import cross_section, sample_grid

__all__ = ["ScenarioResult", "SCENARIOS", "run_scenario", "run_all"]


@dataclass
class ScenarioResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def summary_line(self) -> str:
        def fmt(v):
            if isinstance(v, bool):
                return str(v)
            if isinstance(v, float):
                return f"{v:.3e}"
            return str(v)

        detail = " ".join(f"{k}={fmt(v)}" for k, v in self.details.items())
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  {detail}"


def _max_abs_residual(surface, alpha, n=64, origin_ball=0.0, step=1e-4):
    mesh = sample_grid(surface, n, n, alpha=alpha, with_geometry=True,
                       origin_ball=origin_ball, step=step)
    return float(np.max(np.abs(mesh.residuals[mesh.valid])))


def scenario_sphere_plane_matrix() -> ScenarioResult:
    """Stationarity pattern of planes and spheres.

    Centered spheres are exactly -2-stationary, origin spheres exactly
    -4-stationary, offset planes exactly 0-stationary, and none of
    them is stationary for the other two exponents.
    """
    cases = {
        "plane": (make_plane(offset=1.0), 0.0),
        "sphere_r1": (make_sphere_centered(1.0), -2.0),
        "sphere_r3": (make_sphere_centered(3.0), -2.0),
        "origin_sphere_r1": (make_sphere_through_origin(1.0), -4.0),
        "origin_sphere_r2": (make_sphere_through_origin(2.0), -4.0),
    }
    worst_zero = 0.0
    worst_nonzero = math.inf
    ok = True
    for surf, alpha_zero in cases.values():
        for alpha in (0.0, -2.0, -4.0):
            mesh = sample_grid(surf, 64, 64, alpha=alpha, with_geometry=True)
            r = np.abs(mesh.residuals[mesh.valid])
            if alpha == alpha_zero:
                worst_zero = max(worst_zero, float(np.max(r)))
                ok = ok and float(np.max(r)) < 1e-10
            else:
                worst_nonzero = min(worst_nonzero, float(np.min(r)))
                ok = ok and float(np.min(r)) > 1e-3
    return ScenarioResult("sphere_plane_matrix", ok, {
        "max_stationary_residual": worst_zero,
        "min_nonstationary_residual": worst_nonzero,
    })


def scenario_duality_law() -> ScenarioResult:
    """|R_dual o Phi| = |p|^2 |R_alpha| on five surfaces, four alphas,
    with one surface forced through the finite-difference path."""
    cases = [
        ("plane", make_plane(offset=0.5), 1e-6),
        ("catenoid", make_catenoid(), 1e-6),
        ("catenoid_shifted", make_catenoid(center=(-0.5, 0.0, 0.0)), 1e-6),
        ("helicoid", make_helicoid(), 1e-6),
        ("ellipsoid", make_ellipsoid((1.0, 1.5, 2.0)), 1e-6),
        ("catenoid_numeric", without_exact_jets(make_catenoid()), 1e-4),
    ]
    ok = True
    worst_exact = 0.0
    worst_numeric = 0.0
    for name, surf, tol in cases:
        for alpha in (0.0, -1.0, -2.0, -3.0):
            rep = verify_duality(surf, alpha, grid=(32, 32), tol=tol,
                                 origin_ball=1e-3)
            ok = ok and rep.max_law_defect < tol
            if name == "catenoid_numeric":
                worst_numeric = max(worst_numeric, rep.max_law_defect)
            else:
                worst_exact = max(worst_exact, rep.max_law_defect)
    return ScenarioResult("duality_law", ok, {
        "max_defect_exact": worst_exact,
        "max_defect_numeric": worst_numeric,
        "tol_exact": 1e-6,
        "tol_numeric": 1e-4,
    })


def scenario_inverted_catenoid() -> ScenarioResult:
    """The inverted catenoid is -4-stationary to near machine
    precision (chain-rule jets, 64 x 64 grid)."""
    surf = invert_surface(make_catenoid())
    worst = _max_abs_residual(surf, -4.0, n=64, origin_ball=1e-3)
    return ScenarioResult("inverted_catenoid", worst < 1e-6,
                          {"max_abs_residual": worst, "tol": 1e-6})


def scenario_conjugated_translation() -> ScenarioResult:
    """Closed form of the inversion-conjugated translation against
    direct composition at 1000 random points."""
    rng = np.random.default_rng(20260822)
    worst = 0.0
    count = 0
    while count < 1000:
        p = rng.uniform(-2.0, 2.0, 3)
        v = rng.uniform(-1.0, 1.0, 3)
        r2 = float(p @ p)
        if r2 < 0.04:
            continue
        den = 1.0 + r2 * float(v @ v) + 2.0 * float(p @ v)
        if abs(den) < 1e-2:
            continue
        closed = conjugated_translation(p, v)
        composed = invert_point(invert_point(p) + v)
        worst = max(worst, float(np.linalg.norm(closed - composed))
                    / (1.0 + float(np.linalg.norm(closed))))
        count += 1
    spot = conjugated_translation(np.array([1.0, 0.0, 0.0]),
                                  np.array([1.0, 0.0, 0.0]))
    spot_err = float(np.linalg.norm(spot - np.array([0.5, 0.0, 0.0])))
    ok = worst < 1e-12 and spot_err < 1e-15
    return ScenarioResult("conjugated_translation", ok, {
        "max_rel_difference": worst, "spot_check_error": spot_err,
        "points": count,
    })


def scenario_plane_sphere_images() -> ScenarioResult:
    """Inverted offset planes land exactly on origin spheres of radius
    1 / (2 delta)."""
    worst = 0.0
    for delta in (0.25, 0.5, 2.0):
        surf = invert_surface(make_plane(offset=delta))
        mesh = sample_grid(surf, 48, 48)
        center = np.array([0.0, 0.0, 0.5 / delta])
        radius = 0.5 / delta
        d = np.linalg.norm(mesh.vertices[mesh.valid] - center, axis=1)
        worst = max(worst, float(np.max(np.abs(d - radius))))
    return ScenarioResult("plane_sphere_images", worst < 1e-10,
                          {"max_sphere_defect": worst, "tol": 1e-10})


def scenario_bjorling_minimal() -> ScenarioResult:
    """Circle with inward normal reproduces the unit catenoid."""
    data = circle_catenoid_preset()
    surf = schwarz_solve(data, grid=(256, 33))
    tau = surf.domain.v_max
    ss = np.linspace(0.0, 2.0 * math.pi, 256, endpoint=False)

    boundary = 0.0
    normal = 0.0
    for s in ss:
        geom = pointwise_geometry(evaluate_jet(surf, float(s), 0.0))
        boundary = max(boundary, float(np.linalg.norm(
            geom.p - data.curve(float(s)))))
        normal = max(normal, float(np.linalg.norm(
            geom.nu - data.field(float(s)))))

    ts = np.linspace(-tau, tau, 9)
    prof_a = prof_b = 0.0
    for s in ss[::8]:
        for t in ts:
            p = np.asarray(surf.position(float(s), float(t)))
            ref = np.array([math.cos(s) * math.cosh(t),
                            math.sin(s) * math.cosh(t), -t])
            prof_a = max(prof_a, float(np.linalg.norm(p - ref)))
            ref[2] = t
            prof_b = max(prof_b, float(np.linalg.norm(p - ref)))
    profile = min(prof_a, prof_b)

    numeric = without_exact_jets(surf)
    harmonic = 0.0
    for s in ss[::16]:
        for t in np.linspace(-0.5 * tau, 0.5 * tau, 5):
            jet = evaluate_jet(numeric, float(s), float(t))
            harmonic = max(harmonic, float(np.max(np.abs(jet.X_uu + jet.X_vv))))

    h_max = surf.info["h_selfcheck"]
    ok = (profile < 1e-4 and boundary < 1e-7 and normal < 1e-5
          and h_max < 1e-5 and harmonic < 1e-6)
    return ScenarioResult("bjorling_minimal", ok, {
        "profile_error": profile, "boundary_error": boundary,
        "normal_error": normal, "max_abs_H": h_max,
        "harmonic_defect": harmonic,
    })


def scenario_bjorling_stationary() -> ScenarioResult:
    """Mobius data: the stationary solver pins the curve and the
    normal, is -4-stationary, and both strips are one-sided."""
    data = mobius_preset()
    minimal = schwarz_solve(data, grid=(192, 17))
    surf = solve_stationary_bjorling(data, grid=(192, 17))

    contains = 0.0
    for s in np.linspace(0.0, data.curve.period, 256, endpoint=False):
        p = np.asarray(surf.position(float(s), 0.0))
        contains = max(contains, float(np.linalg.norm(p - data.curve(float(s)))))

    worst = _max_abs_residual(surf, -4.0, n=96, origin_ball=1e-3)
    hol_min = orientation_holonomy(minimal, 0.0)
    hol_sta = orientation_holonomy(surf, 0.0)
    ok = (worst < 1e-4 and contains < 1e-7
          and hol_min == -1 and hol_sta == -1)
    return ScenarioResult("bjorling_stationary", ok, {
        "max_abs_residual": worst, "curve_error": contains,
        "holonomy_minimal": hol_min, "holonomy_stationary": hol_sta,
    })


def _min_distance_to_polylines(points: np.ndarray, polylines) -> np.ndarray:
    """Distance from each point to the nearest polyline segment."""
    seg_a, seg_b = [], []
    for poly in polylines:
        if len(poly) >= 2:
            seg_a.append(poly[:-1])
            seg_b.append(poly[1:])
    a = np.concatenate(seg_a)
    b = np.concatenate(seg_b)
    ab = b - a
    denom = np.einsum("ij,ij->i", ab, ab)
    denom = np.where(denom == 0.0, 1.0, denom)
    ap = points[:, None, :] - a[None, :, :]
    t = np.clip(np.einsum("pij,ij->pi", ap, ab) / denom, 0.0, 1.0)
    closest = a[None, :, :] + t[:, :, None] * ab[None, :, :]
    d = np.linalg.norm(points[:, None, :] - closest, axis=2)
    return np.min(d, axis=1)


def _section_mirror_defect(surface, plane_point, plane_normal) -> float:
    """Mirror defect of the x = 0 section under z -> -z."""
    mesh = sample_grid(surface, 192, 96)
    cs = cross_section(mesh, plane_point, plane_normal)
    pts = np.concatenate([p for p in cs.polylines])
    reflected = pts * np.array([1.0, 1.0, -1.0])
    d1 = _min_distance_to_polylines(reflected, cs.polylines)
    mirrored_polys = [p * np.array([1.0, 1.0, -1.0]) for p in cs.polylines]
    d2 = _min_distance_to_polylines(pts, mirrored_polys)
    return float(max(np.max(d1), np.max(d2)))


def scenario_section_symmetry() -> ScenarioResult:
    """Planar sections detect symmetry: the centered inverted catenoid
    is mirror symmetric in z, the axially shifted one is not."""
    sym = _section_mirror_defect(invert_surface(make_catenoid()),
                                 (0.0, 0.0, 0.0), (1.0, 0.0, 0.0))
    asym = _section_mirror_defect(
        invert_surface(make_catenoid(center=(0.0, 0.0, 0.5))),
        (0.0, 0.0, 0.0), (1.0, 0.0, 0.0))
    ok = sym < 1e-3 and asym > 1e-2
    return ScenarioResult("section_symmetry", ok, {
        "symmetric_defect": sym, "asymmetric_defect": asym,
    })


def scenario_energy_first_variation() -> ScenarioResult:
    """Weighted areas of spheres and the vanishing first variation at
    stationary pairs."""
    quad = EnergyQuadrature(order=8, cells=(16, 16))
    e0 = energy(make_sphere_centered(1.0), 0.0, quad=quad)
    err_e0 = abs(e0 - 4.0 * math.pi)
    err_em2 = 0.0
    for r in (0.5, 1.0, 2.0):
        e = energy(make_sphere_centered(r), -2.0, quad=quad)
        err_em2 = max(err_em2, abs(e - 4.0 * math.pi))

    vquad = EnergyQuadrature(order=6, cells=(12, 12))
    bump_s = gaussian_bump((math.pi, 0.5 * math.pi), (0.7, 0.35))
    sphere = make_sphere_centered(1.0)
    dv_sphere = abs(first_variation_check(sphere, -2.0, bump_s, quad=vquad))
    dv_caten = abs(first_variation_check(
        make_catenoid(), 0.0, gaussian_bump((math.pi, 0.0), (0.7, 0.4)),
        quad=vquad))
    dv_nonstat = abs(first_variation_check(sphere, 0.0, bump_s, quad=vquad))

    scale = 4.0 * math.pi
    ok = (err_e0 < 1e-6 and err_em2 < 1e-6
          and dv_sphere < 1e-5 * scale and dv_caten < 1e-5 * scale
          and dv_nonstat > 1e-3)
    return ScenarioResult("energy_first_variation", ok, {
        "sphere_area_error": err_e0,
        "scale_invariance_error": err_em2,
        "variation_stationary_sphere": dv_sphere,
        "variation_stationary_catenoid": dv_caten,
        "variation_nonstationary": dv_nonstat,
    })


def scenario_artifact_determinism() -> ScenarioResult:
    """The same report command produces byte-identical artifacts."""
    cmd_tail = ["-m", "stasurf.cli", "report", "--surface", "sphere_origin",
                "--alpha", "-4", "--grid", "48", "48", "--prefix", "rep"]
    names = ["rep.obj", "rep_residuals.csv", "rep_summary.json"]
    with tempfile.TemporaryDirectory() as tmp:
        dirs = [os.path.join(tmp, "a"), os.path.join(tmp, "b")]
        codes = []
        for d in dirs:
            os.makedirs(d)
            proc = subprocess.run(
                [sys.executable] + cmd_tail + ["--out-dir", d],
                capture_output=True, text=True)
            codes.append(proc.returncode)
        identical = all(
            filecmp.cmp(os.path.join(dirs[0], n), os.path.join(dirs[1], n),
                        shallow=False) for n in names) if codes == [0, 0] else False
    return ScenarioResult("artifact_determinism", identical and codes == [0, 0], {
        "exit_codes": str(codes), "files": len(names), "identical": identical,
    })


SCENARIOS = {
    "sphere_plane_matrix": scenario_sphere_plane_matrix,
    "duality_law": scenario_duality_law,
    "inverted_catenoid": scenario_inverted_catenoid,
    "conjugated_translation": scenario_conjugated_translation,
    "plane_sphere_images": scenario_plane_sphere_images,
    "bjorling_minimal": scenario_bjorling_minimal,
    "bjorling_stationary": scenario_bjorling_stationary,
    "section_symmetry": scenario_section_symmetry,
    "energy_first_variation": scenario_energy_first_variation,
    "artifact_determinism": scenario_artifact_determinism,
}


def run_scenario(name: str) -> ScenarioResult:
    if name not in SCENARIOS:
        raise KeyError(f"unknown scenario '{name}'; choose from "
                       f"{sorted(SCENARIOS)}")
    return SCENARIOS[name]()


def run_all(names=None, stream=None):
    results = []
    for name in (names or SCENARIOS):
        res = run_scenario(name)
        results.append(res)
        if stream is not None:
            print(res.summary_line(), file=stream)
    return results
