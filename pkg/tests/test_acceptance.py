"""Acceptance suite: one test per shipped claim, each printing a
single PASS/FAIL line with the measured values."""

from stasurf.verification import run_scenario


def _check(name):
    res = run_scenario(name)
    print(res.summary_line())
    assert res.passed, res.summary_line()


def test_c01_residual_matrix_planes_and_spheres():
    _check("sphere_plane_matrix")


def test_c02_inversion_duality_law():
    _check("duality_law")


def test_c03_inverted_catenoid_stationary():
    _check("inverted_catenoid")


def test_c04_conjugated_translation_closed_form():
    _check("conjugated_translation")


def test_c05_planes_invert_to_origin_spheres():
    _check("plane_sphere_images")


def test_c06_bjorling_minimal_catenoid():
    _check("bjorling_minimal")


def test_c07_bjorling_stationary_mobius():
    _check("bjorling_stationary")


def test_c08_section_symmetry_detection():
    _check("section_symmetry")


def test_c09_energy_and_first_variation():
    _check("energy_first_variation")


def test_c10_artifact_determinism():
    _check("artifact_determinism")
