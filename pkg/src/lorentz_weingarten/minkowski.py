"""Linear algebra of Minkowski 3-space with signature (+, +, -).

All functions accept anything convertible to a float array whose last axis has
length 3, so they work on single vectors (``MVec3``, tuples) and on stacks of
vectors alike.  Complex inputs are allowed: the forms are bilinear, never
sesquilinear, which the coefficient extraction relies on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import NotTimelike

METRIC = np.diag([1.0, 1.0, -1.0])


@dataclass(frozen=True)
class MVec3:
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        for value in (self.x1, self.x2, self.x3):
            if not math.isfinite(value):
                raise ValueError(f"MVec3 components must be finite, got {self}")

    def __iter__(self):
        yield self.x1
        yield self.x2
        yield self.x3

    def __array__(self, dtype=None, copy=None):
        return np.array([self.x1, self.x2, self.x3], dtype=dtype)

    @classmethod
    def from_array(cls, a) -> MVec3:
        x1, x2, x3 = (float(t) for t in np.asarray(a, dtype=float))
        return cls(x1, x2, x3)


class CausalCharacter(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"


def _arr(a):
    a = np.asarray(a)
    if a.shape[-1] != 3:
        raise ValueError(f"expected last axis of length 3, got shape {a.shape}")
    return a


def lorentz_dot(a, b):
    """<a, b> = a1 b1 + a2 b2 - a3 b3."""
    a, b = _arr(a), _arr(b)
    out = a[..., 0] * b[..., 0] + a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2]
    return out[()] if np.ndim(out) == 0 else out


def _cross(a, b):
    a, b = _arr(a), _arr(b)
    return np.stack(
        [
            a[..., 1] * b[..., 2] - a[..., 2] * b[..., 1],
            a[..., 2] * b[..., 0] - a[..., 0] * b[..., 2],
            -(a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]),
        ],
        axis=-1,
    )


def lorentz_cross(a, b):
    """The vector a^b with <a^b, w> = det[a, b, w] for every w.

    This is the Euclidean cross product with its third component negated.
    Returns an ``MVec3`` for single real vectors, an array otherwise.
    """
    out = _cross(a, b)
    if out.ndim == 1 and np.isrealobj(out):
        return MVec3.from_array(out)
    return out


def triple_product(a, b, c):
    """det of the matrix with rows a, b, c."""
    # routed through the cross product so that det[a,b,c] == <a^b, c> bit for bit
    return lorentz_dot(_cross(a, b), c)


def causal_character(a, tol: float = 1e-12) -> CausalCharacter:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    a = np.asarray(a, dtype=float)
    if not np.any(a):
        return CausalCharacter.SPACELIKE
    q = float(lorentz_dot(a, a))
    if abs(q) <= tol * (1.0 + float(a @ a)):
        return CausalCharacter.LIGHTLIKE
    return CausalCharacter.SPACELIKE if q > 0 else CausalCharacter.TIMELIKE


def timelike_norm(a) -> float:
    q = float(lorentz_dot(a, a))
    if not q < 0:
        raise NotTimelike(f"<a,a> = {q!r} is not negative")
    return math.sqrt(-q)


def rotation_matrix(axis: str, t: float) -> np.ndarray:
    """Rigid motions fixing an axis pointwise, by the causal character of the axis.

    ``"timelike"`` rotates about the x3-axis, ``"spacelike"`` is the boost fixing
    the x1-axis, ``"lightlike"`` is the parabolic motion fixing the line spanned
    by (0, 1, 1).
    """
    if axis == "timelike":
        c, s = math.cos(t), math.sin(t)
        return np.array([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]])
    if axis == "spacelike":
        c, s = math.cosh(t), math.sinh(t)
        return np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, s, c]])
    if axis == "lightlike":
        h = t * t / 2
        return np.array([[1.0, -t, t], [t, 1.0 - h, h], [t, -h, 1.0 + h]])
    raise ValueError(f"unknown axis kind {axis!r}")
