"""Write OBJ meshes of the m = -2 rotational surfaces, one per axis type.

Each surface is exported twice: from its closed form and from the integrated
generating curve, so the two can be overlaid in a viewer.
"""

import argparse
import pathlib

from lorentz_weingarten.fixtures import integrated_profile
from lorentz_weingarten.geometry import WeingartenSpec, sweep
from lorentz_weingarten.mesh import export_obj, sample_mesh
from lorentz_weingarten.rotational import build_rotational_patch, catalog

CLOSED_FORMS = {
    "timelike": ("timelike_m_neg2", {}),
    "spacelike": ("spacelike_m_neg2", {}),
    "lightlike": ("lightlike_power", {"m": -2.0}),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="meshes", help="output directory")
    ap.add_argument("--grid", type=int, nargs=2, default=(40, 60), metavar=("NU", "NV"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    spec = WeingartenSpec(-2.0, 0.0)
    for axis, (name, params) in CLOSED_FORMS.items():
        surfaces = {
            "closed": catalog(name, params),
            "integrated": build_rotational_patch(axis, integrated_profile(axis, -2.0)),
        }
        for kind, patch in surfaces.items():
            path = out / f"m_neg2_{axis}_{kind}.obj"
            export_obj(sample_mesh(patch, *args.grid, curvature=False), path)
            rep = sweep(patch, spec, 12, 12)
            print(f"{path}  u in [{patch.u_range[0]:.3f}, {patch.u_range[1]:.3f}]  "
                  f"max residual {rep.max_eq5:.1e}")


if __name__ == "__main__":
    main()
