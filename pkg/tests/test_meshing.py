import json
import math

import numpy as np
import pytest

from stasurf import (
    EmptyMesh,
    EmptySection,
    cross_section,
    export_obj,
    invert_surface,
    load_obj,
    make_catenoid,
    make_sphere_centered,
    residual_report,
    sample_grid,
)


def test_grid_shapes_and_periodicity():
    mesh = sample_grid(make_catenoid(), 16, 12)
    assert mesh.n_u == 16 and mesh.n_v == 12
    assert mesh.vertices.shape == (192, 3)
    # periodic u axis excludes the seam duplicate
    assert mesh.us[0] == 0.0 and mesh.us[-1] < 2.0 * math.pi
    # non-periodic v axis includes both ends
    assert mesh.vs[0] == -2.0 and mesh.vs[-1] == 2.0
    assert np.all(mesh.valid)
    # periodic wrap: faces per cell strip = 2 * n_u * (n_v - 1)
    assert len(mesh.faces) == 2 * 16 * 11


def test_sphere_pole_masking():
    mesh = sample_grid(make_sphere_centered(1.0), 24, 24, alpha=-2.0,
                       with_geometry=True)
    # two pole rows are masked, everything else is valid
    assert int((~mesh.valid).sum()) == 2 * 24
    assert np.all(mesh.vertices[~mesh.valid] == 0.0)
    assert np.all(np.isnan(mesh.residuals[~mesh.valid]))
    assert not np.any(np.isnan(mesh.residuals[mesh.valid]))


def test_faces_avoid_masked_vertices():
    mesh = sample_grid(make_sphere_centered(1.0), 12, 12)
    assert np.all(mesh.valid[mesh.faces.ravel()])


def test_origin_ball_masks_partially():
    surf = invert_surface(make_catenoid())  # |p| ranges over ~[0.23, 1]
    full = sample_grid(surf, 24, 16)
    clipped = sample_grid(surf, 24, 16, origin_ball=0.3)
    n_full = int(full.valid.sum())
    n_clip = int(clipped.valid.sum())
    assert 0 < n_clip < n_full
    norms = np.linalg.norm(clipped.vertices[clipped.valid], axis=1)
    assert np.min(norms) > 0.3


def test_empty_mesh():
    with pytest.raises(EmptyMesh):
        sample_grid(make_sphere_centered(1.0), 12, 12, origin_ball=2.0)


def test_obj_roundtrip(tmp_path):
    mesh = sample_grid(make_catenoid(), 12, 10, alpha=0.0, with_geometry=True)
    path = tmp_path / "mesh.obj"
    export_obj(mesh, str(path))
    verts, faces = load_obj(str(path))
    assert verts.shape == mesh.vertices.shape
    assert np.allclose(verts, mesh.vertices, atol=1e-8)
    assert faces.shape == mesh.faces.shape
    text = path.read_text()
    assert text.count("vn ") == len(verts)
    assert "//" in text.splitlines()[-1]


def test_residual_report_values(tmp_path):
    mesh = sample_grid(make_sphere_centered(1.0), 16, 16, alpha=0.0,
                       with_geometry=True)
    csv = tmp_path / "r.csv"
    js = tmp_path / "r.json"
    summary = residual_report(mesh, csv_path=str(csv), json_path=str(js))
    # |R_0| = H = 2 on the unit sphere
    assert abs(summary["max_abs_R"] - 2.0) < 1e-12
    assert abs(summary["mean_abs_R"] - 2.0) < 1e-12
    assert summary["valid_points"] + summary["masked_points"] == 256
    lines = csv.read_text().splitlines()
    assert lines[0] == "u,v,x,y,z,H,h,R_alpha"
    assert len(lines) == summary["valid_points"] + 1
    assert json.loads(js.read_text()) == summary


def test_residual_report_needs_geometry():
    mesh = sample_grid(make_sphere_centered(1.0), 12, 12)
    with pytest.raises(ValueError):
        residual_report(mesh)


def test_threads_deterministic():
    a = sample_grid(make_catenoid(), 24, 16, alpha=0.0, with_geometry=True,
                    threads=1)
    b = sample_grid(make_catenoid(), 24, 16, alpha=0.0, with_geometry=True,
                    threads=4)
    assert np.array_equal(a.vertices, b.vertices)
    assert np.array_equal(a.residuals[a.valid], b.residuals[b.valid])


def test_section_of_sphere_is_circle():
    mesh = sample_grid(make_sphere_centered(1.0), 48, 48)
    cs = cross_section(mesh, (0.0, 0.0, 0.0), (0.0, 0.0, 1.0))
    assert cs.n_curves == 1
    poly = cs.polylines[0]
    assert np.allclose(poly[0], poly[-1], atol=1e-12)  # closed loop
    radii = np.hypot(poly[:, 0], poly[:, 1])
    assert np.max(np.abs(poly[:, 2])) < 1e-12
    assert np.max(np.abs(radii - 1.0)) < 5e-3  # chord sag only


def test_section_misses():
    mesh = sample_grid(make_sphere_centered(1.0), 16, 16)
    with pytest.raises(EmptySection):
        cross_section(mesh, (0.0, 0.0, 5.0), (0.0, 0.0, 1.0))


def test_section_open_arcs_on_inverted_catenoid():
    mesh = sample_grid(invert_surface(make_catenoid()), 64, 32)
    cs = cross_section(mesh, (0.0, 0.0, 0.0), (1.0, 0.0, 0.0))
    assert cs.n_curves == 2
    for poly in cs.polylines:
        assert np.max(np.abs(poly[:, 0])) < 1e-12  # lies in x = 0
        assert not np.allclose(poly[0], poly[-1])  # open arc


def test_plane_normal_validation():
    mesh = sample_grid(make_sphere_centered(1.0), 12, 12)
    with pytest.raises(ValueError):
        cross_section(mesh, (0.0, 0.0, 0.0), (0.0, 0.0, 0.0))
