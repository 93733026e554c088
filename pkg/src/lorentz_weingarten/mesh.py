"""Grid sampling of patches and Wavefront OBJ export.

Vertices are written in ambient coordinates (x1, x2, x3) as they are; a viewer
draws them with the Euclidean metric, so angles and lengths on screen are not
the Lorentzian ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import GeometryError
from .geometry import SurfacePatch, curvature_from_jet


@dataclass
class MeshGrid:
    """nu x nv vertices in row-major order (u outer, v inner)."""

    nu: int
    nv: int
    vertices: np.ndarray  # (nu * nv, 3)
    triangles: np.ndarray  # (2 (nu-1)(nv-1), 3), 0-based
    H: Optional[np.ndarray] = None
    K: Optional[np.ndarray] = None
    kappa1: Optional[np.ndarray] = None
    kappa2: Optional[np.ndarray] = None

    @property
    def spacelike(self) -> np.ndarray:
        """Vertices where curvature is defined (Q > 0)."""
        if self.H is None:
            return np.zeros(len(self.vertices), dtype=bool)
        return np.isfinite(self.H)


def grid_triangles(nu: int, nv: int) -> np.ndarray:
    i, j = np.meshgrid(np.arange(nu - 1), np.arange(nv - 1), indexing="ij")
    a = (i * nv + j).ravel()
    b, c, d = a + nv, a + nv + 1, a + 1
    # two triangles per quad, quads in row-major order
    return np.stack([np.stack([a, b, c], 1), np.stack([a, c, d], 1)], 1).reshape(-1, 3)


def sample_mesh(patch: SurfacePatch, nu: int, nv: int, curvature: bool = True) -> MeshGrid:
    """Sample the patch on its uniform grid; curvature is NaN where Q <= 0."""
    if nu < 2 or nv < 2:
        raise ValueError(f"need nu, nv >= 2, got {nu} x {nv}")
    us, vs = patch.grid(nu, nv)
    verts = np.empty((nu * nv, 3))
    fields = np.full((4, nu * nv), np.nan)
    for i, u in enumerate(us):
        jet = patch.jet(float(u), vs)
        verts[i * nv:(i + 1) * nv] = np.real(jet.X)
        if not curvature:
            continue
        for j in range(nv):
            sub = type(jet)(*(np.asarray(getattr(jet, f))[j] for f in jet.FIELDS))
            try:
                cd = curvature_from_jet(sub)
            except GeometryError:
                continue
            fields[:, i * nv + j] = cd.H, cd.K, cd.kappa1, cd.kappa2
    mesh = MeshGrid(nu, nv, verts, grid_triangles(nu, nv))
    if curvature:
        mesh.H, mesh.K, mesh.kappa1, mesh.kappa2 = fields
    return mesh


def obj_text(mesh: MeshGrid) -> str:
    lines = [f"v {x:.17g} {y:.17g} {z:.17g}" for x, y, z in mesh.vertices]
    lines += [f"f {a + 1} {b + 1} {c + 1}" for a, b, c in mesh.triangles]
    return "\n".join(lines) + "\n"


def export_obj(mesh: MeshGrid, path) -> None:
    """Write the mesh as OBJ text; raises OSError if the path is not writable."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(obj_text(mesh))


def read_obj(path):
    """Minimal reader for the files written above: (vertices, 0-based faces)."""
    verts, faces = [], []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                verts.append([float(t) for t in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(t.split("/")[0]) - 1 for t in parts[1:]])
    return np.array(verts, dtype=float).reshape(-1, 3), np.array(faces, dtype=int).reshape(-1, 3)
