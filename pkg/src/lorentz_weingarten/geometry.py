"""Fundamental forms, curvatures and Weingarten residuals of spacelike patches.

Orientation follows N = Xu^Xv / |Xu^Xv|.  With that choice e = det[Xu,Xv,Xuu]/sqrt(Q)
and the determinant quantities

    H1 = -(G[Xu,Xv,Xuu] - 2F[Xu,Xv,Xuv] + E[Xu,Xv,Xvv]) = 2 H Q^(3/2)
    K1 = -([Xu,Xv,Xuu][Xu,Xv,Xvv] - [Xu,Xv,Xuv]^2)      = K Q^2

are polynomial in the jet, so they (and the quartic relation built from them)
stay defined even where Q <= 0.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import GeometryError, NotSpacelike
from .minkowski import _cross, lorentz_dot, triple_product

TINY = sys.float_info.min
DISCRIMINANT_SLACK = 1e-12


@dataclass(frozen=True)
class SurfaceJet:
    """Position and partial derivatives; each field has shape (..., 3)."""

    X: np.ndarray
    Xu: np.ndarray
    Xv: np.ndarray
    Xuu: np.ndarray
    Xuv: np.ndarray
    Xvv: np.ndarray

    FIELDS = ("X", "Xu", "Xv", "Xuu", "Xuv", "Xvv")

    def transformed(self, matrix: np.ndarray, shift=None) -> SurfaceJet:
        """Image under the affine map x -> matrix @ x + shift."""
        m = np.asarray(matrix)
        parts = [np.asarray(getattr(self, f)) @ m.T for f in self.FIELDS]
        if shift is not None:
            parts[0] = parts[0] + np.asarray(shift)
        return SurfaceJet(*parts)

    def is_finite(self) -> bool:
        return all(np.all(np.isfinite(getattr(self, f))) for f in self.FIELDS)


JetFn = Callable[[float, object], SurfaceJet]


@dataclass(frozen=True)
class SurfacePatch:
    """A parametrised surface given by a second-order jet evaluator.

    ``jet(u, v)`` accepts a scalar u and a scalar or array v (complex v is
    allowed for evaluators that are analytic in v).
    """

    u_range: tuple
    v_range: tuple
    jet: JetFn
    label: str = ""
    periodic_v: bool = False
    weingarten: Optional["WeingartenSpec"] = None
    meta: dict = field(default_factory=dict, compare=False)

    def position(self, u, v) -> np.ndarray:
        return self.jet(u, v).X

    def contains(self, u: float, v: float, slack: float = 1e-12) -> bool:
        (u0, u1), (v0, v1) = self.u_range, self.v_range
        return u0 - slack <= u <= u1 + slack and v0 - slack <= v <= v1 + slack

    def grid(self, nu: int, nv: int):
        """Uniform parameter grid including both ends of each range."""
        us = np.linspace(self.u_range[0], self.u_range[1], nu)
        vs = np.linspace(self.v_range[0], self.v_range[1], nv)
        return us, vs


@dataclass(frozen=True)
class WeingartenSpec:
    """kappa1 = m kappa2 + n with m != 0."""

    m: float
    n: float = 0.0

    def __post_init__(self):
        if self.m == 0 or not math.isfinite(self.m) or not math.isfinite(self.n):
            raise ValueError(f"need finite m != 0 and finite n, got m={self.m}, n={self.n}")


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    Q: float
    e: float
    f: float
    g: float
    N: np.ndarray


@dataclass(frozen=True)
class CurvatureData:
    Q: float
    H1: float
    K1: float
    H: float
    K: float
    kappa1: float
    kappa2: float

    def as_dict(self) -> dict:
        return {k: float(getattr(self, k)) for k in ("Q", "H1", "K1", "H", "K", "kappa1", "kappa2")}


# ---------------------------------------------------------------------------
# Polynomial invariants (vectorised; complex-safe)


def determinant_invariants(jet: SurfaceJet):
    """(Q, H1, K1) from a jet; works elementwise on stacked jets."""
    Xu, Xv = jet.Xu, jet.Xv
    E = lorentz_dot(Xu, Xu)
    F = lorentz_dot(Xu, Xv)
    G = lorentz_dot(Xv, Xv)
    Q = E * G - F * F
    n = _cross(Xu, Xv)
    d_uu = lorentz_dot(n, jet.Xuu)
    d_uv = lorentz_dot(n, jet.Xuv)
    d_vv = lorentz_dot(n, jet.Xvv)
    H1 = -(G * d_uu - 2.0 * F * d_uv + E * d_vv)
    K1 = -(d_uu * d_vv - d_uv * d_uv)
    return Q, H1, K1


def eq5_lhs(Q, H1, K1, m: float, n: float):
    """(m H1^2 + (1+m)^2 Q K1 - n^2 Q^3)^2 - n^2 (1-m)^2 H1^2 Q^3."""
    Q3 = Q * Q * Q
    inner = m * H1 * H1 + (1.0 + m) ** 2 * Q * K1 - n * n * Q3
    return inner * inner - n * n * (1.0 - m) ** 2 * H1 * H1 * Q3


def eq5_scale(Q, H1, K1, m: float, n: float):
    aQ = np.abs(Q)
    Q3 = aQ**3
    # the |m| Q|K1| term keeps the scale alive when m = -1, where the other
    # curvature terms reduce to H1^2 alone and H1 is itself the residual
    inner = (abs(m) * np.abs(H1) ** 2 + ((1.0 + m) ** 2 + abs(m)) * aQ * np.abs(K1)
             + n * n * Q3)
    return inner * inner + n * n * (1.0 - m) ** 2 * np.abs(H1) ** 2 * Q3 + TINY


def reduced_lhs(Q, H1, K1, m: float):
    """m H1^2 + (1+m)^2 Q K1, the n = 0 relation before squaring."""
    return m * H1 * H1 + (1.0 + m) ** 2 * Q * K1


# ---------------------------------------------------------------------------
# Pointwise geometry


def _scalar_jet(patch: SurfacePatch, u: float, v: float) -> SurfaceJet:
    jet = patch.jet(u, v)
    if not jet.is_finite():
        raise GeometryError(f"non-finite jet at (u, v) = ({u!r}, {v!r})")
    return jet


def forms_from_jet(jet: SurfaceJet) -> FundamentalForms:
    Xu, Xv = jet.Xu, jet.Xv
    E = float(lorentz_dot(Xu, Xu))
    F = float(lorentz_dot(Xu, Xv))
    G = float(lorentz_dot(Xv, Xv))
    Q = E * G - F * F
    if not Q > 0:
        raise NotSpacelike(f"Q = {Q!r} <= 0, the induced metric is not Riemannian")
    n = _cross(Xu, Xv)
    N = n / math.sqrt(-float(lorentz_dot(n, n)))
    e = float(lorentz_dot(N, jet.Xuu))
    f = float(lorentz_dot(N, jet.Xuv))
    g = float(lorentz_dot(N, jet.Xvv))
    return FundamentalForms(E, F, G, Q, e, f, g, N)


def fundamental_forms(patch: SurfacePatch, u: float, v: float) -> FundamentalForms:
    return forms_from_jet(_scalar_jet(patch, u, v))


def curvature_from_invariants(Q: float, H1: float, K1: float) -> CurvatureData:
    if not Q > 0:
        raise NotSpacelike(f"Q = {Q!r} <= 0, the induced metric is not Riemannian")
    H = H1 / (2.0 * Q**1.5)
    K = K1 / (Q * Q)
    disc = H * H + K
    if disc < 0:
        if disc < -DISCRIMINANT_SLACK * (1.0 + H * H):
            raise GeometryError(f"H^2 + K = {disc!r} is negative beyond rounding")
        disc = 0.0
    root = math.sqrt(disc)
    return CurvatureData(Q, H1, K1, H, K, -H + root, -H - root)


def curvature_from_jet(jet: SurfaceJet) -> CurvatureData:
    """Curvatures with sqrt(H^2 + K) taken from an orthonormal frame.

    In a frame orthonormal for the first form the second form is a symmetric
    [[p, q], [q, r]] and H^2 + K = ((p - r)/2)^2 + q^2, a sum of squares, so
    umbilic points do not lose half their digits to cancellation.
    """
    Xu, Xv = jet.Xu, jet.Xv
    E = float(lorentz_dot(Xu, Xu))
    F = float(lorentz_dot(Xu, Xv))
    G = float(lorentz_dot(Xv, Xv))
    Q = E * G - F * F
    if not Q > 0 or not E > 0:
        raise NotSpacelike(f"Q = {Q!r} <= 0, the induced metric is not Riemannian")
    nrm = _cross(Xu, Xv)
    a = float(lorentz_dot(nrm, jet.Xuu))
    b = float(lorentz_dot(nrm, jet.Xuv))
    c = float(lorentz_dot(nrm, jet.Xvv))
    H1 = -(G * a - 2.0 * F * b + E * c)
    K1 = -(a * c - b * b)
    sq = math.sqrt(Q)
    l11, l21, l22 = math.sqrt(E), F / math.sqrt(E), sq / math.sqrt(E)
    # rows of L^-1 where I = L L^T; second form scaled by 1/sqrt(Q) (e = a/sqrt(Q))
    i11, i21, i22 = 1.0 / l11, -l21 / (l11 * l22), 1.0 / l22
    p = i11 * i11 * a / sq
    q = (i11 * i21 * a + i11 * i22 * b) / sq
    r = (i21 * i21 * a + 2.0 * i21 * i22 * b + i22 * i22 * c) / sq
    H = H1 / (2.0 * Q**1.5)
    K = K1 / (Q * Q)
    root = math.hypot(0.5 * (p - r), q)
    return CurvatureData(Q, H1, K1, H, K, -H + root, -H - root)


def curvature_data(patch: SurfacePatch, u: float, v: float) -> CurvatureData:
    return curvature_from_jet(_scalar_jet(patch, u, v))


def mean_gauss_from_forms(ff: FundamentalForms):
    """H and K from the coefficient route, independent of H1/K1."""
    H = -0.5 * (ff.e * ff.G - 2.0 * ff.f * ff.F + ff.g * ff.E) / ff.Q
    K = -(ff.e * ff.g - ff.f * ff.f) / ff.Q
    return H, K


def weingarten_residual(cd: CurvatureData, spec: WeingartenSpec) -> float:
    """Scale-free distance from kappa1 = m kappa2 + n, minimised over orderings."""
    k1, k2 = cd.kappa1, cd.kappa2
    m, n = spec.m, spec.n
    return min(abs(k1 - m * k2 - n), abs(k2 - m * k1 - n)) / (1.0 + abs(k1) + abs(k2))


def ordering_residuals(cd: CurvatureData, spec: WeingartenSpec):
    """(|k1 - m k2 - n|, |k2 - m k1 - n|), both normalised like weingarten_residual."""
    k1, k2 = cd.kappa1, cd.kappa2
    s = 1.0 + abs(k1) + abs(k2)
    return abs(k1 - spec.m * k2 - spec.n) / s, abs(k2 - spec.m * k1 - spec.n) / s


def eq5_residual(cd: CurvatureData, spec: WeingartenSpec) -> float:
    lhs = eq5_lhs(cd.Q, cd.H1, cd.K1, spec.m, spec.n)
    return float(abs(lhs) / eq5_scale(cd.Q, cd.H1, cd.K1, spec.m, spec.n))


def eq5_residual_from_jet(jet: SurfaceJet, spec: WeingartenSpec):
    """Normalised residual straight from a (possibly stacked) jet; no Q > 0 needed."""
    Q, H1, K1 = determinant_invariants(jet)
    return np.abs(eq5_lhs(Q, H1, K1, spec.m, spec.n)) / eq5_scale(Q, H1, K1, spec.m, spec.n)


def is_umbilic(cd: CurvatureData, tol: float) -> bool:
    if tol < 0:
        raise ValueError("tol must be non-negative")
    return cd.H * cd.H + cd.K <= tol * (1.0 + cd.H * cd.H)


# ---------------------------------------------------------------------------
# Finite-difference oracle


def finite_difference_jet(position, u: float, v: float, h: float) -> SurfaceJet:
    """Central differences with one Richardson step (h and h/2) for every slot."""
    if not h > 0:
        raise ValueError(f"step h must be positive, got {h!r}")

    def P(a, b):
        return np.asarray(position(a, b), dtype=float)

    X0 = P(u, v)

    def derivs(s):
        pu, mu_ = P(u + s, v), P(u - s, v)
        pv, mv = P(u, v + s), P(u, v - s)
        du = (pu - mu_) / (2 * s)
        dv = (pv - mv) / (2 * s)
        duu = (pu - 2 * X0 + mu_) / (s * s)
        dvv = (pv - 2 * X0 + mv) / (s * s)
        duv = (P(u + s, v + s) - P(u + s, v - s) - P(u - s, v + s) + P(u - s, v - s)) / (4 * s * s)
        return du, dv, duu, duv, dvv

    coarse, fine = derivs(h), derivs(h / 2)
    rich = [(4 * b - a) / 3 for a, b in zip(coarse, fine)]
    return SurfaceJet(X0, *rich)


# ---------------------------------------------------------------------------
# Grid sweeps


@dataclass
class GridReport:
    max_eq5: float
    max_weingarten: float
    points: int
    non_spacelike: int
    ordering: Optional[str]


def sweep(patch: SurfacePatch, spec: WeingartenSpec, nu: int, nv: int) -> GridReport:
    """Evaluate both residuals on a uniform grid, in row-major order."""
    us, vs = patch.grid(nu, nv)
    max_eq5 = max_w = 0.0
    bad = 0
    first_ok = second_ok = True
    for u in us:
        for v in vs:
            jet = patch.jet(float(u), float(v))
            max_eq5 = max(max_eq5, float(eq5_residual_from_jet(jet, spec)))
            try:
                cd = curvature_from_jet(jet)
            except GeometryError:
                bad += 1
                continue
            max_w = max(max_w, weingarten_residual(cd, spec))
            r1, r2 = ordering_residuals(cd, spec)
            first_ok &= r1 <= 1e-6
            second_ok &= r2 <= 1e-6
    ordering = "kappa1=m*kappa2" if first_ok else "kappa2=m*kappa1" if second_ok else None
    return GridReport(max_eq5, max_w, nu * nv, bad, ordering)


__all__ = [
    "SurfaceJet", "SurfacePatch", "WeingartenSpec", "FundamentalForms", "CurvatureData",
    "fundamental_forms", "curvature_data", "weingarten_residual", "eq5_residual",
    "finite_difference_jet", "is_umbilic", "determinant_invariants", "eq5_lhs",
    "reduced_lhs", "triple_product", "sweep",
]
