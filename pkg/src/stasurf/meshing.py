"""Grid sampling, OBJ export, residual reports and planar sections.

Meshes are structured grids stored flat in row-major order
(index = iu * n_v + iv).  Vertices where evaluation fails (parametric
singularities, origin contact, degenerate metric) are masked: their
coordinates are stored as zeros, faces touching them are dropped, and
reports skip them.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    DegenerateImmersion,
    EmptyMesh,
    EmptySection,
    OriginContact,
    SingularPoint,
)
from .geometry import (
    DEFAULT_FD_STEP,
    EPS_ORIGIN,
    ParametricSurface,
    evaluate_jet,
    pointwise_geometry,
    stationarity_residual,
)

__all__ = [
    "SurfaceMesh",
    "sample_grid",
    "export_obj",
    "load_obj",
    "residual_report",
    "CrossSection",
    "cross_section",
]


@dataclass
class SurfaceMesh:
    """Structured surface sample with optional pointwise geometry."""

    us: np.ndarray
    vs: np.ndarray
    vertices: np.ndarray          # (n_u * n_v, 3), zeros where masked
    valid: np.ndarray             # (n_u * n_v,) bool
    faces: np.ndarray             # (n_f, 3) vertex indices, all corners valid
    periodic_u: bool = False
    periodic_v: bool = False
    normals: Optional[np.ndarray] = None
    mean_curvature: Optional[np.ndarray] = None
    support: Optional[np.ndarray] = None      # <nu, p> per vertex
    radius2: Optional[np.ndarray] = None      # |p|^2 per vertex
    residuals: Optional[np.ndarray] = None
    alpha: Optional[float] = None
    info: dict = field(default_factory=dict)

    @property
    def n_u(self) -> int:
        return len(self.us)

    @property
    def n_v(self) -> int:
        return len(self.vs)

    def index(self, iu: int, iv: int) -> int:
        return iu * self.n_v + iv


def _grid_axes(surface: ParametricSurface, n_u: int, n_v: int):
    d = surface.domain
    us = np.linspace(d.u_min, d.u_max, n_u, endpoint=not surface.periodic_u)
    vs = np.linspace(d.v_min, d.v_max, n_v, endpoint=not surface.periodic_v)
    return us, vs


def _grid_faces(n_u: int, n_v: int, valid: np.ndarray,
                periodic_u: bool, periodic_v: bool) -> np.ndarray:
    faces = []
    nu_cells = n_u if periodic_u else n_u - 1
    nv_cells = n_v if periodic_v else n_v - 1
    for iu in range(nu_cells):
        iu2 = (iu + 1) % n_u
        for iv in range(nv_cells):
            iv2 = (iv + 1) % n_v
            a = iu * n_v + iv
            b = iu2 * n_v + iv
            c = iu2 * n_v + iv2
            d = iu * n_v + iv2
            if valid[a] and valid[b] and valid[c] and valid[d]:
                faces.append((a, b, c))
                faces.append((a, c, d))
    return np.array(faces, dtype=int) if faces else np.zeros((0, 3), dtype=int)


def sample_grid(surface: ParametricSurface, n_u: int = 64, n_v: int = 64,
                alpha: Optional[float] = None, with_geometry: bool = False,
                origin_ball: float = 0.0, step: float = DEFAULT_FD_STEP,
                eps_origin: float = EPS_ORIGIN, threads: int = 1) -> SurfaceMesh:
    """Sample the surface on a structured grid.

    With ``with_geometry`` each valid vertex also carries the unit
    normal, mean curvature, support function, squared radius and (when
    ``alpha`` is given) the stationarity residual.  ``origin_ball``
    additionally masks vertices with |p| <= origin_ball.  ``threads``
    parallelizes over grid rows; output is identical for any count.
    """
    if n_u < 2 or n_v < 2:
        raise ValueError("need at least a 2 x 2 grid")
    us, vs = _grid_axes(surface, n_u, n_v)
    n = n_u * n_v
    vertices = np.zeros((n, 3))
    valid = np.zeros(n, dtype=bool)
    normals = np.zeros((n, 3)) if with_geometry else None
    h_arr = np.full(n, np.nan) if with_geometry else None
    supp = np.full(n, np.nan) if with_geometry else None
    rad2 = np.full(n, np.nan) if with_geometry else None
    resid = np.full(n, np.nan) if (with_geometry and alpha is not None) else None

    def fill_row(iu: int):
        u = float(us[iu])
        for iv in range(n_v):
            v = float(vs[iv])
            k = iu * n_v + iv
            try:
                if with_geometry:
                    geom = pointwise_geometry(
                        evaluate_jet(surface, u, v, step=step))
                    p = geom.p
                else:
                    if surface.is_singular(u, v):
                        continue
                    p = np.asarray(surface.position(u, v), dtype=float)
            except (SingularPoint, OriginContact, DegenerateImmersion):
                continue
            if origin_ball > 0.0 and float(p @ p) <= origin_ball * origin_ball:
                continue
            vertices[k] = p
            valid[k] = True
            if with_geometry:
                normals[k] = geom.nu
                h_arr[k] = geom.H
                supp[k] = geom.h
                rad2[k] = geom.r2
                if resid is not None:
                    try:
                        resid[k] = stationarity_residual(
                            geom, alpha, eps_origin=eps_origin)
                    except OriginContact:
                        vertices[k] = 0.0
                        valid[k] = False

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(fill_row, range(n_u)))
    else:
        for iu in range(n_u):
            fill_row(iu)

    if not np.any(valid):
        raise EmptyMesh("every grid vertex was masked")
    faces = _grid_faces(n_u, n_v, valid, surface.periodic_u, surface.periodic_v)
    return SurfaceMesh(us=us, vs=vs, vertices=vertices, valid=valid,
                       faces=faces, periodic_u=surface.periodic_u,
                       periodic_v=surface.periodic_v, normals=normals,
                       mean_curvature=h_arr, support=supp, radius2=rad2,
                       residuals=resid, alpha=alpha,
                       info=dict(surface.info))


def export_obj(mesh: SurfaceMesh, path: str):
    """Write the mesh as Wavefront OBJ (v, vn when available, f).

    Masked vertices are kept as zero placeholders so face indices stay
    stable; no face references them.
    """
    lines = ["# structured surface mesh", f"# grid {mesh.n_u} x {mesh.n_v}"]
    for p in mesh.vertices:
        lines.append(f"v {p[0]:.9g} {p[1]:.9g} {p[2]:.9g}")
    if mesh.normals is not None:
        for k, nu in enumerate(mesh.normals):
            if mesh.valid[k]:
                lines.append(f"vn {nu[0]:.9g} {nu[1]:.9g} {nu[2]:.9g}")
            else:
                lines.append("vn 0 0 1")
        for f in mesh.faces:
            a, b, c = (int(i) + 1 for i in f)
            lines.append(f"f {a}//{a} {b}//{b} {c}//{c}")
    else:
        for f in mesh.faces:
            a, b, c = (int(i) + 1 for i in f)
            lines.append(f"f {a} {b} {c}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_obj(path: str) -> tuple[np.ndarray, np.ndarray]:
    """Read vertices and triangular faces back from an OBJ file."""
    verts, faces = [], []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                verts.append([float(x) for x in parts[1:4]])
            elif parts[0] == "f":
                idx = [int(tok.split("/")[0]) - 1 for tok in parts[1:]]
                for i in range(1, len(idx) - 1):
                    faces.append([idx[0], idx[i], idx[i + 1]])
    return (np.array(verts, dtype=float),
            np.array(faces, dtype=int) if faces else np.zeros((0, 3), dtype=int))


def residual_report(mesh: SurfaceMesh, csv_path: Optional[str] = None,
                    json_path: Optional[str] = None) -> dict:
    """Summarize the stationarity residual over the valid vertices.

    Optionally writes a per-vertex CSV (valid rows only, full double
    precision) and a JSON summary with sorted keys; both are
    byte-deterministic for identical inputs.
    """
    if mesh.residuals is None:
        raise ValueError("mesh carries no residuals; sample with "
                         "with_geometry=True and an alpha value")
    r = mesh.residuals[mesh.valid]
    summary = {
        "alpha": float(mesh.alpha),
        "max_abs_R": float(np.max(np.abs(r))),
        "mean_abs_R": float(np.mean(np.abs(r))),
        "valid_points": int(np.count_nonzero(mesh.valid)),
        "masked_points": int(mesh.valid.size - np.count_nonzero(mesh.valid)),
    }
    if csv_path is not None:
        rows = ["u,v,x,y,z,H,h,R_alpha"]
        for iu in range(mesh.n_u):
            for iv in range(mesh.n_v):
                k = mesh.index(iu, iv)
                if not mesh.valid[k]:
                    continue
                p = mesh.vertices[k]
                rows.append(",".join(f"{x:.17g}" for x in (
                    mesh.us[iu], mesh.vs[iv], p[0], p[1], p[2],
                    mesh.mean_curvature[k], mesh.support[k],
                    mesh.residuals[k])))
        with open(csv_path, "w") as fh:
            fh.write("\n".join(rows) + "\n")
    if json_path is not None:
        with open(json_path, "w") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return summary


@dataclass
class CrossSection:
    """Planar section of a mesh as chained polylines."""

    plane_point: np.ndarray
    plane_normal: np.ndarray
    polylines: list  # list of (m, 3) arrays; closed loops repeat the start

    @property
    def n_curves(self) -> int:
        return len(self.polylines)

    @property
    def total_points(self) -> int:
        return sum(len(p) for p in self.polylines)


def cross_section(mesh: SurfaceMesh, plane_point, plane_normal) -> CrossSection:
    """Intersect the mesh triangles with a plane.

    Crossing points are keyed by the mesh edge they lie on, so shared
    edges produce shared points and the segments chain into polylines.
    Vertices exactly on the plane are nudged by a tiny offset to keep
    every crossing transversal.
    """
    p0 = np.asarray(plane_point, dtype=float)
    nrm = np.asarray(plane_normal, dtype=float)
    nn = np.linalg.norm(nrm)
    if nn == 0.0:
        raise ValueError("plane normal must be nonzero")
    nrm = nrm / nn
    dist = (mesh.vertices - p0) @ nrm
    scale = 1.0 + float(np.max(np.abs(dist))) if dist.size else 1.0
    nudge = 1e-14 * scale
    dist = np.where(np.abs(dist) < nudge, nudge, dist)

    points: dict[tuple[int, int], np.ndarray] = {}
    segments: list[tuple[tuple[int, int], tuple[int, int]]] = []

    def edge_key(i, j):
        return (i, j) if i < j else (j, i)

    for tri in mesh.faces:
        crossings = []
        for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            da, db = dist[a], dist[b]
            if da * db >= 0.0:
                continue
            key = edge_key(int(a), int(b))
            if key not in points:
                t = da / (da - db)
                points[key] = mesh.vertices[a] + t * (mesh.vertices[b] - mesh.vertices[a])
            crossings.append(key)
        if len(crossings) == 2:
            segments.append((crossings[0], crossings[1]))

    if not segments:
        raise EmptySection("the plane misses every mesh triangle")

    neighbors: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for a, b in segments:
        neighbors.setdefault(a, []).append(b)
        neighbors.setdefault(b, []).append(a)

    visited = set()
    polylines = []

    def walk(start):
        chain = [start]
        visited.add(start)
        cur = start
        while True:
            nxt = [k for k in neighbors[cur] if k not in visited]
            if not nxt:
                break
            cur = nxt[0]
            visited.add(cur)
            chain.append(cur)
        return chain

    open_ends = [k for k, nbs in neighbors.items() if len(nbs) == 1]
    for k in open_ends:
        if k not in visited:
            chain = walk(k)
            polylines.append(np.array([points[c] for c in chain]))
    for k in neighbors:
        if k not in visited:
            chain = walk(k)
            if chain[0] in neighbors[chain[-1]]:
                chain.append(chain[0])  # close the loop
            polylines.append(np.array([points[c] for c in chain]))

    return CrossSection(plane_point=p0, plane_normal=nrm, polylines=polylines)
