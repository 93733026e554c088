"""JSON surface configurations."""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Optional

import jsonschema

from .foliation import FoliationFamily, build_foliated_patch
from .geometry import SurfacePatch, WeingartenSpec
from .rotational import (
    AxisKind, ProfileSpec, build_rotational_patch, catalog, integrate_raw_ode,
    integrate_spacelike_profile, integrate_timelike_profile, lightlike_profile,
)

_num = {"type": "number"}
_pair = {"type": "array", "items": _num, "minItems": 2, "maxItems": 2}
_axis = {"enum": ["timelike", "spacelike", "lightlike"]}
_common = {
    "weingarten": {
        "type": "object",
        "properties": {"m": _num, "n": _num},
        "required": ["m"],
        "additionalProperties": False,
    },
    "grid": {
        "type": "object",
        "properties": {
            "nu": {"type": "integer", "minimum": 2},
            "nv": {"type": "integer", "minimum": 2},
            "v_range": _pair,
        },
        "additionalProperties": False,
    },
    "label": {"type": "string"},
}


def _kind(name, props, required):
    return {
        "type": "object",
        "properties": {"kind": {"const": name}, **props, **_common},
        "required": ["kind", *required],
        "additionalProperties": False,
    }


SCHEMA = {
    "oneOf": [
        _kind("catalog", {
            "name": {"type": "string"},
            "params": {"type": "object", "additionalProperties": _num},
        }, ["name"]),
        _kind("rotational", {
            "axis": _axis, "m": _num, "c": {"type": "number", "exclusiveMinimum": 0},
            "sign": {"enum": [1, -1]}, "lambda": _num, "u0": _num, "z0": _num,
            "zp0": _num, "u_range": _pair, "method": {"enum": ["integrate", "raw"]},
            "tol": {"type": "number", "exclusiveMinimum": 0},
            "step": {"type": "number", "exclusiveMinimum": 0},
            "v_max": {"type": "number", "exclusiveMinimum": 0},
        }, ["axis", "m", "u_range"]),
        _kind("foliated", {
            "case": _axis, "theta": {"type": "string"}, "r": {"type": "string"},
            "a": {"type": "string"}, "b": {"type": "string"}, "base": _pair,
            "u0": _num, "u_range": _pair,
        }, ["case", "u_range"]),
    ]
}


@dataclass
class SurfaceConfig:
    patch: SurfacePatch
    weingarten: Optional[WeingartenSpec]
    grid: tuple
    document: dict
    family: Optional[FoliationFamily] = None


def _rotational(doc: dict) -> SurfacePatch:
    axis = AxisKind.parse(doc["axis"])
    m = float(doc["m"])
    c = float(doc.get("c", 1.0))
    u_range = tuple(doc["u_range"])
    lam = float(doc.get("lambda", 0.0))
    u0 = float(doc.get("u0", u_range[0]))
    z0 = float(doc.get("z0", 0.0))
    if doc.get("method", "integrate") == "raw":
        if "zp0" not in doc:
            raise ValueError("method 'raw' needs the initial slope zp0")
        profile = integrate_raw_ode(axis, m, (u0, z0, doc["zp0"]), u_range,
                                    float(doc.get("step", 1e-3)))
    elif axis is AxisKind.TIMELIKE:
        spec = ProfileSpec(m, c, int(doc.get("sign", 1)), u0, z0, lam)
        profile = integrate_timelike_profile(spec, u_range, float(doc.get("tol", 1e-11)))
    elif axis is AxisKind.SPACELIKE:
        spec = ProfileSpec(m, c, int(doc.get("sign", 1)), u0, z0, lam)
        profile = integrate_spacelike_profile(spec, u_range, float(doc.get("tol", 1e-10)))
    else:
        profile = lightlike_profile(m, c, lam, u_range)
    return build_rotational_patch(axis, profile, v_max=float(doc.get("v_max", 2.0)),
                                  label=doc.get("label", ""), weingarten=WeingartenSpec(m, 0.0))


def load_config(doc: dict) -> SurfaceConfig:
    """Validate a parsed document and build the surface it describes.

    Raises ``jsonschema.ValidationError`` for malformed documents and the
    package's own errors for mathematically invalid ones.
    """
    jsonschema.validate(doc, SCHEMA)
    family = None
    if doc["kind"] == "catalog":
        patch = catalog(doc["name"], doc.get("params"))
    elif doc["kind"] == "rotational":
        patch = _rotational(doc)
    else:
        family = FoliationFamily(
            doc["case"], r=doc.get("r"), theta=doc.get("theta"), a=doc.get("a"),
            b=doc.get("b"), base=tuple(doc.get("base", (0.0, 0.0))), u0=doc.get("u0"),
            u_range=tuple(doc["u_range"]), label=doc.get("label", ""),
        )
        patch = build_foliated_patch(family)
    spec = patch.weingarten
    if "weingarten" in doc:
        w = doc["weingarten"]
        spec = WeingartenSpec(float(w["m"]), float(w.get("n", 0.0)))
    grid = doc.get("grid", {})
    if "v_range" in grid:
        patch = dataclasses.replace(patch, v_range=tuple(float(t) for t in grid["v_range"]))
    return SurfaceConfig(patch, spec, (grid.get("nu", 20), grid.get("nv", 20)), doc, family)


def read_config(path) -> SurfaceConfig:
    with open(path, encoding="utf-8") as fh:
        return load_config(json.load(fh))
