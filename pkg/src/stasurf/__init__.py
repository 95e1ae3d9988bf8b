"""Weighted-area stationary surfaces in R^3.

Surfaces whose mean curvature satisfies H = alpha <nu, p> / |p|^2 are
the critical points of the |p|^alpha weighted area.  The package
evaluates the pointwise stationarity residual, exposes the unit-sphere
inversion that exchanges the exponents alpha and -(alpha + 4) together
with its exact residual transport law, solves minimal and
-4-stationary Bjorling problems from analytic strip data, integrates
weighted areas, and meshes, sections and verifies all of it from a
command line.
"""

from .errors import (
    AmbiguousTransport,
    ConfigError,
    DegenerateImmersion,
    DomainError,
    EmptyMesh,
    EmptySection,
    ExtensionDivergence,
    InsufficientSamples,
    NonMinimalResult,
    OriginContact,
    PoleContact,
    PoleOnPath,
    RefitTailError,
    SingularPoint,
    SurfaceError,
)
from .geometry import (
    DEFAULT_FD_STEP,
    EPS_ORIGIN,
    Domain,
    EnergyQuadrature,
    ParametricSurface,
    PointGeometry,
    SurfaceJet,
    energy,
    evaluate_jet,
    first_variation_check,
    gaussian_bump,
    pointwise_geometry,
    restrict,
    stationarity_residual,
    without_exact_jets,
)
from .inversion import (
    DualityReport,
    conjugated_translation,
    dual_alpha,
    invert_point,
    invert_surface,
    pushforward_geometry,
    verify_duality,
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
from .fourier import (
    FourierCurve,
    certified_strip,
    evaluate_extension,
    fit_fourier,
)
from .bjorling import (
    BjorlingData,
    circle_catenoid_preset,
    circle_planar_preset,
    line_helicoid_preset,
    mobius_preset,
    orientation_holonomy,
    schwarz_solve,
    solve_stationary_bjorling,
    transform_data,
)
from .meshing import (
    CrossSection,
    SurfaceMesh,
    cross_section,
    export_obj,
    load_obj,
    residual_report,
    sample_grid,
)
from .config import (
    bjorling_data_from_config,
    curve_from_config,
    load_config,
    preset_surface,
    surface_from_config,
)
from .verification import SCENARIOS, ScenarioResult, run_all, run_scenario

__version__ = "0.1.0"

__all__ = [
    "AmbiguousTransport", "ConfigError", "DegenerateImmersion", "DomainError",
    "EmptyMesh", "EmptySection", "ExtensionDivergence", "InsufficientSamples",
    "NonMinimalResult", "OriginContact", "PoleContact", "PoleOnPath",
    "RefitTailError", "SingularPoint", "SurfaceError",
    "DEFAULT_FD_STEP", "EPS_ORIGIN", "Domain", "EnergyQuadrature",
    "ParametricSurface", "PointGeometry", "SurfaceJet", "energy",
    "evaluate_jet", "first_variation_check", "gaussian_bump",
    "pointwise_geometry", "restrict", "stationarity_residual",
    "without_exact_jets",
    "DualityReport", "conjugated_translation", "dual_alpha", "invert_point",
    "invert_surface", "pushforward_geometry", "verify_duality",
    "LaurentSeries", "WeierstrassData", "make_catenoid", "make_ellipsoid",
    "make_helicoid", "make_plane", "make_sphere_centered",
    "make_sphere_through_origin", "weierstrass_surface",
    "FourierCurve", "certified_strip", "evaluate_extension", "fit_fourier",
    "BjorlingData", "circle_catenoid_preset", "circle_planar_preset",
    "line_helicoid_preset", "mobius_preset", "orientation_holonomy",
    "schwarz_solve", "solve_stationary_bjorling", "transform_data",
    "CrossSection", "SurfaceMesh", "cross_section", "export_obj", "load_obj",
    "residual_report", "sample_grid",
    "bjorling_data_from_config", "curve_from_config", "load_config",
    "preset_surface", "surface_from_config",
    "SCENARIOS", "ScenarioResult", "run_all", "run_scenario",
    "__version__",
]
