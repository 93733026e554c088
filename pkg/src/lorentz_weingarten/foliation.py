"""Spacelike surfaces foliated by circles in parallel planes.

The three plane types give the parametrisations

    spacelike planes   X = (x, y, 0) + (r cos v, r sin v, u)
    timelike planes    X = (0, y, z) + (u, r sinh v, r cosh v)
    lightlike planes   X = (a, 0, 0) + (-2uv, b + u - u v^2, b - u - u v^2)

The centre curve of the first two is given through its direction angle theta,
x' = cos theta, y' = sin theta (resp. y' = cosh theta, z' = sinh theta), so it
is unit speed by construction.  ``theta=None`` pins the centre at the base
point, which gives the surfaces of revolution.

For fixed u the quartic relation is a trigonometric polynomial in v (degree
12), a polynomial in cosh/sinh, or an ordinary polynomial (degree 6).  With
n = 0 the squared relation is replaced by its unsquared core
m H1^2 + (1+m)^2 Q K1, whose expansion stops at degree 3 (resp. 2).
"""

from __future__ import annotations

import csv
import enum
import functools
import math
import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial import chebyshev
from scipy import integrate

from . import expr as ex
from .errors import DomainError, IllConditionedWarning, NonPositiveRadius, PreconditionViolated
from .geometry import (
    SurfaceJet, SurfacePatch, WeingartenSpec, determinant_invariants, eq5_lhs,
    eq5_scale, reduced_lhs,
)

TRIG_SAMPLES = 100
HYPERBOLIC_WINDOW = (-1.0, 1.0)
CHEBYSHEV_NODES = 13
MAX_TRIG_DEGREE = 12
MAX_POLY_DEGREE = 6
ILL_CONDITIONED = 1e12
QUAD_TOL = 1e-12


class FoliationCase(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"

    @classmethod
    def parse(cls, value) -> FoliationCase:
        if isinstance(value, cls):
            return value
        text = str(value).lower()
        for suffix in ("_planes", "planes"):
            if text.endswith(suffix):
                text = text[: -len(suffix)]
        return cls(text)


def _as_expr(value):
    if value is None or isinstance(value, (ex.Num, ex.Var, ex.Neg, ex.BinOp, ex.Call)):
        return value
    if isinstance(value, (int, float)):
        return ex.Num(float(value))
    return ex.parse(str(value))


@dataclass(frozen=True)
class FoliationFamily:
    """Component functions of a circle-foliated surface.

    Planar cases use ``r`` and ``theta`` with the centre through ``base`` at
    ``u0``; the lightlike case uses ``a`` and ``b``.  Strings are parsed.
    """

    case: FoliationCase
    r: Optional[ex.Expr] = None
    theta: Optional[ex.Expr] = None
    a: Optional[ex.Expr] = None
    b: Optional[ex.Expr] = None
    base: tuple = (0.0, 0.0)
    u0: Optional[float] = None
    u_range: tuple = (0.5, 2.0)
    label: str = ""

    def __post_init__(self):
        put = functools.partial(object.__setattr__, self)
        put("case", FoliationCase.parse(self.case))
        for name in ("r", "theta", "a", "b"):
            put(name, _as_expr(getattr(self, name)))
        lo, hi = (float(t) for t in self.u_range)
        if not lo < hi:
            raise ValueError(f"empty u-range {self.u_range!r}")
        put("u_range", (lo, hi))
        put("base", tuple(float(t) for t in self.base))
        if len(self.base) != 2:
            raise ValueError("base needs two coordinates")
        put("u0", lo if self.u0 is None else float(self.u0))
        if self.case is FoliationCase.LIGHTLIKE:
            if self.a is None or self.b is None:
                raise ValueError("lightlike planes need expressions a and b")
            if lo <= 0 <= hi:
                raise DomainError("lightlike planes need u != 0 on the range")
        elif self.r is None:
            raise ValueError("planar cases need a radius expression r")

    @property
    def rotational(self) -> bool:
        if self.case is FoliationCase.LIGHTLIKE:
            return not _depends_on_u(self.a)
        return self.theta is None


def _depends_on_u(e) -> bool:
    if isinstance(e, ex.Var):
        return True
    if isinstance(e, ex.Num):
        return False
    if isinstance(e, ex.Neg):
        return _depends_on_u(e.operand)
    if isinstance(e, ex.BinOp):
        return _depends_on_u(e.left) or _depends_on_u(e.right)
    return any(_depends_on_u(a) for a in e.args)


# ---------------------------------------------------------------------------
# Centre curve


@functools.lru_cache(maxsize=4096)
def _centre_offset(family: FoliationFamily, u: float):
    """Integral of the unit tangent of the centre curve from u0 to u."""
    if u == family.u0:
        return 0.0, 0.0
    th = family.theta
    if family.case is FoliationCase.SPACELIKE:
        f1, f2 = math.cos, math.sin
    else:
        f1, f2 = math.cosh, math.sinh
    out = []
    for f in (f1, f2):
        val, _ = integrate.quad(lambda s: f(ex.evaluate(th, s)), family.u0, u,
                                epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=200)
        out.append(val)
    return tuple(out)


def centre_jet(family: FoliationFamily, u: float):
    """((c1, c1', c1''), (c2, c2', c2'')) of the centre curve at u."""
    p, q = family.base
    if family.theta is None:
        return (p, 0.0, 0.0), (q, 0.0, 0.0)
    t = ex.eval_jet(family.theta, u)
    d1, d2 = _centre_offset(family, float(u))
    if family.case is FoliationCase.SPACELIKE:
        c, s = math.cos(t.v0), math.sin(t.v0)
        return (p + d1, c, -t.v1 * s), (q + d2, s, t.v1 * c)
    c, s = math.cosh(t.v0), math.sinh(t.v0)
    return (p + d1, c, t.v1 * s), (q + d2, s, t.v1 * c)


def _radius(family: FoliationFamily, u: float) -> ex.Jet2:
    r = ex.eval_jet(family.r, u)
    if not r.v0 > 0:
        raise NonPositiveRadius(f"r({u!r}) = {r.v0!r} is not positive")
    return r


# ---------------------------------------------------------------------------
# Patch


def _stack(parts):
    return SurfaceJet(*(np.stack(np.broadcast_arrays(*p), axis=-1) for p in parts))


def foliated_jet(family: FoliationFamily, u: float, v) -> SurfaceJet:
    """Analytic jet; v may be an array and may be complex."""
    v = np.asarray(v)
    zero = np.zeros_like(v)
    if family.case is FoliationCase.LIGHTLIKE:
        a = ex.eval_jet(family.a, u)
        b = ex.eval_jet(family.b, u)
        v2 = v * v
        return _stack([
            (a.v0 - 2 * u * v, b.v0 + u - u * v2, b.v0 - u - u * v2),
            (a.v1 - 2 * v, b.v1 + 1 - v2, b.v1 - 1 - v2),
            (-2 * u + zero, -2 * u * v, -2 * u * v),
            (a.v2 + zero, b.v2 + zero, b.v2 + zero),
            (-2 + zero, -2 * v, -2 * v),
            (zero, -2 * u + zero, -2 * u + zero),
        ])
    r = _radius(family, u)
    (p, p1, p2), (q, q1, q2) = centre_jet(family, u)
    if family.case is FoliationCase.SPACELIKE:
        cv, sv = np.cos(v), np.sin(v)
        return _stack([
            (p + r.v0 * cv, q + r.v0 * sv, u + zero),
            (p1 + r.v1 * cv, q1 + r.v1 * sv, 1 + zero),
            (-r.v0 * sv, r.v0 * cv, zero),
            (p2 + r.v2 * cv, q2 + r.v2 * sv, zero),
            (-r.v1 * sv, r.v1 * cv, zero),
            (-r.v0 * cv, -r.v0 * sv, zero),
        ])
    ch, sh = np.cosh(v), np.sinh(v)
    return _stack([
        (u + zero, p + r.v0 * sh, q + r.v0 * ch),
        (1 + zero, p1 + r.v1 * sh, q1 + r.v1 * ch),
        (zero, r.v0 * ch, r.v0 * sh),
        (zero, p2 + r.v2 * sh, q2 + r.v2 * ch),
        (zero, r.v1 * ch, r.v1 * sh),
        (zero, r.v0 * sh, r.v0 * ch),
    ])


def build_foliated_patch(family: FoliationFamily, v_range=None, label: str = "",
                         weingarten: Optional[WeingartenSpec] = None) -> SurfacePatch:
    """Surface patch of a foliation family.

    The radius is checked on 65 points of the u-range up front; later
    evaluations re-check it pointwise.
    """
    if family.case is not FoliationCase.LIGHTLIKE:
        for u in np.linspace(*family.u_range, 65):
            _radius(family, float(u))
    periodic = family.case is FoliationCase.SPACELIKE
    if v_range is None:
        v_range = (0.0, 2 * math.pi) if periodic else HYPERBOLIC_WINDOW
    return SurfacePatch(
        u_range=family.u_range, v_range=tuple(float(t) for t in v_range),
        jet=lambda u, v: foliated_jet(family, u, v), label=label or family.label,
        periodic_v=periodic, weingarten=weingarten,
        meta={"case": family.case.value, "family": family},
    )


# ---------------------------------------------------------------------------
# The quartic relation along a circle


def eq5_raw(family: FoliationFamily, spec: WeingartenSpec, u: float, v):
    """Un-normalised quartic relation; polynomial in the jet so any sign of Q is fine."""
    Q, H1, K1 = determinant_invariants(foliated_jet(family, u, v))
    return eq5_lhs(Q, H1, K1, spec.m, spec.n)


def target_values(family: FoliationFamily, spec: WeingartenSpec, u: float, v):
    """(values, term magnitudes) of the expanded function at the given v.

    The expanded function is the quartic relation, or its unsquared core when
    n = 0.  The magnitudes are the sizes of the individual terms, used as the
    scale for "is this coefficient zero"; like the residual normaliser they keep
    a Q|K1| term at m = -1.
    """
    Q, H1, K1 = determinant_invariants(foliated_jet(family, u, v))
    m, n = spec.m, spec.n
    if n == 0:
        vals = reduced_lhs(Q, H1, K1, m)
        mags = abs(m) * np.abs(H1) ** 2 + ((1 + m) ** 2 + abs(m)) * np.abs(Q * K1)
    else:
        vals = eq5_lhs(Q, H1, K1, m, n)
        mags = eq5_scale(Q, H1, K1, m, n)
    return vals, np.abs(mags)


@dataclass
class CoefficientExpansion:
    """Coefficients of the relation in the v-basis of one foliation case.

    ``A[j]`` multiplies cos(jv), cosh(jv) or v^j; ``B[j]`` multiplies sin(jv) or
    sinh(jv) and is None for the polynomial basis.
    """

    basis: str
    A: np.ndarray
    B: Optional[np.ndarray]
    u: float
    conditioning: float
    target: str
    scale: float
    method: str = "dft"
    ill_conditioned: bool = False
    tail: float = 0.0
    residual: float = 0.0

    def evaluate(self, v):
        v = np.asarray(v, dtype=float)
        j = np.arange(self.A.size)
        vj = np.multiply.outer(v, j)
        if self.basis == "trig":
            return np.cos(vj) @ self.A + np.sin(vj) @ self.B
        if self.basis == "hyperbolic":
            return np.cosh(vj) @ self.A + np.sinh(vj) @ self.B
        return np.power.outer(v, j) @ self.A

    def coefficient(self, name: str) -> float:
        """Look up ``"A3"``, ``"B12"`` and so on; out-of-range degrees are 0."""
        kind, j = name[0].upper(), int(name[1:])
        seq = self.A if kind == "A" else self.B
        if seq is None or kind not in "AB":
            raise KeyError(name)
        return float(seq[j]) if j < seq.size else 0.0

    @property
    def magnitude(self) -> float:
        parts = [np.max(np.abs(self.A))]
        if self.B is not None:
            parts.append(np.max(np.abs(self.B)))
        return float(max(parts))


def _fourier(values: np.ndarray, degree: int):
    """Cosine and sine coefficients of equispaced samples on [0, 2 pi)."""
    N = values.size
    F = np.fft.rfft(values)
    cos_c = 2.0 * F.real[: degree + 1] / N
    sin_c = -2.0 * F.imag[: degree + 1] / N
    cos_c[0] /= 2.0
    sin_c[0] = 0.0
    return cos_c, sin_c


def _lstsq_hyperbolic(v, y, degree: int, ridge: float):
    """Column-scaled, ridge-regularised least squares via QR."""
    j = np.arange(degree + 1)
    vj = np.multiply.outer(v, j)
    M = np.hstack([np.cosh(vj), np.sinh(vj[:, 1:])])
    norms = np.linalg.norm(M, axis=0)
    Ms = M / norms
    cond = float(np.linalg.cond(Ms))
    aug = np.vstack([Ms, ridge * np.eye(Ms.shape[1])])
    rhs = np.concatenate([y, np.zeros(Ms.shape[1])])
    Qm, R = np.linalg.qr(aug)
    x = np.linalg.solve(R, Qm.T @ rhs) / norms
    A = x[: degree + 1]
    B = np.concatenate([[0.0], x[degree + 1:]])
    return A, B, cond


def extract_coefficients(family: FoliationFamily, spec: WeingartenSpec, u: float,
                         method: str = "dft", ridge: float = 1e-14) -> CoefficientExpansion:
    """Expand the relation along the circle at height u in the natural v-basis.

    trig: 100 equispaced samples and a discrete Fourier projection.

    hyperbolic: ``method="dft"`` evaluates at v = i phi, where cosh(jv) = cos(j phi)
    and sinh(jv) = i sin(j phi), so A and B come out of two Fourier projections
    with conditioning 1.  ``method="lstsq"`` fits the real window [-1, 1]
    directly; its conditioning estimate is reported and an
    ``IllConditionedWarning`` raised above 1e12.

    polynomial: interpolation at 13 Chebyshev nodes on [-1, 1] (degree 12),
    returning degrees 0..6 and the largest higher coefficient as ``tail``.
    """
    u = float(u)
    lo, hi = family.u_range
    if not lo - 1e-12 <= u <= hi + 1e-12:
        raise DomainError(f"u = {u!r} outside the family range {family.u_range!r}")
    target = "reduced" if spec.n == 0 else "eq5"
    case = family.case
    if case is FoliationCase.SPACELIKE:
        phi = 2 * np.pi * np.arange(TRIG_SAMPLES) / TRIG_SAMPLES
        vals, mags = target_values(family, spec, u, phi)
        A, B = _fourier(np.real(vals), MAX_TRIG_DEGREE)
        exp = CoefficientExpansion("trig", A, B, u, 1.0, target, float(mags.max()))
    elif case is FoliationCase.TIMELIKE and method == "dft":
        phi = 2 * np.pi * np.arange(TRIG_SAMPLES) / TRIG_SAMPLES
        vals, mags = target_values(family, spec, u, 1j * phi)
        A, _ = _fourier(vals.real, MAX_TRIG_DEGREE)
        _, B = _fourier(vals.imag, MAX_TRIG_DEGREE)
        # magnitudes on the real window, where the surface actually lives
        _, real_mags = target_values(family, spec, u, np.linspace(*HYPERBOLIC_WINDOW, TRIG_SAMPLES))
        exp = CoefficientExpansion("hyperbolic", A, B, u, 1.0, target,
                                   float(max(mags.max(), real_mags.max())))
    elif case is FoliationCase.TIMELIKE and method == "lstsq":
        v = np.linspace(*HYPERBOLIC_WINDOW, TRIG_SAMPLES)
        vals, mags = target_values(family, spec, u, v)
        A, B, cond = _lstsq_hyperbolic(v, vals, MAX_TRIG_DEGREE, ridge)
        bad = cond > ILL_CONDITIONED
        if bad:
            warnings.warn(f"hyperbolic least-squares conditioning {cond:.3g} exceeds "
                          f"{ILL_CONDITIONED:g}", IllConditionedWarning, stacklevel=2)
        exp = CoefficientExpansion("hyperbolic", A, B, u, cond, target, float(mags.max()),
                                   method="lstsq", ill_conditioned=bad)
    elif case is FoliationCase.LIGHTLIKE:
        k = np.arange(CHEBYSHEV_NODES)
        nodes = np.cos(np.pi * (k + 0.5) / CHEBYSHEV_NODES)
        vals, mags = target_values(family, spec, u, nodes)
        V = chebyshev.chebvander(nodes, CHEBYSHEV_NODES - 1)
        cheb = np.linalg.solve(V, vals)
        power = chebyshev.cheb2poly(cheb)
        power = np.pad(power, (0, CHEBYSHEV_NODES - power.size))
        exp = CoefficientExpansion(
            "polynomial", power[: MAX_POLY_DEGREE + 1], None, u, float(np.linalg.cond(V)),
            target, float(mags.max()), method="chebyshev",
            tail=float(np.max(np.abs(power[MAX_POLY_DEGREE + 1:]))),
        )
    else:
        raise ValueError(f"unknown extraction method {method!r}")
    if case is not FoliationCase.LIGHTLIKE:
        exp.method = method if case is FoliationCase.TIMELIKE else "dft"
    return exp


def reconstruction_error(family: FoliationFamily, spec: WeingartenSpec,
                         expansion: CoefficientExpansion, v) -> float:
    """Max |expansion(v) - target(v)| relative to the largest coefficient."""
    vals, _ = target_values(family, spec, expansion.u, np.asarray(v, dtype=float))
    diff = np.max(np.abs(expansion.evaluate(v) - np.real(vals)))
    return float(diff / max(expansion.magnitude, np.finfo(float).tiny))


# ---------------------------------------------------------------------------
# Closed-form coefficient formulas

PRECONDITION_TOL = 1e-9


def _need(cond: bool, why: str):
    if not cond:
        raise PreconditionViolated(why)


def _near_zero(x: float, scale: float) -> bool:
    return abs(x) <= PRECONDITION_TOL * max(1.0, abs(scale))


def _planar(case, name, g, m, n):
    r, r1, r2 = g("r"), g("dr"), g("ddr")
    th, k = g("theta"), g("kappa")
    hyper = case is FoliationCase.TIMELIKE
    cs, sn = (math.cosh, math.sinh) if hyper else (math.cos, math.sin)
    # the hyperbolic formulas carry a sign flip on every B and on A3
    sb = -1.0 if hyper else 1.0
    if name in ("A12", "B12"):
        f = cs if name[0] == "A" else sn
        return (sb if name[0] == "B" else 1.0) * n**4 * r**12 * f(12 * th) / 2048
    _need(n == 0, f"{name} assumes n = 0")
    if name == "A3":
        if hyper:
            return 0.25 * (1 + m) ** 2 * r**5 * k * cs(3 * th)
        return -0.25 * (1 + m) ** 2 * r**5 * k * sn(3 * th)
    if name == "B3":
        if hyper:
            return -0.25 * (1 + m) ** 2 * r**5 * k * sn(3 * th)
        return 0.25 * (1 + m) ** 2 * r**5 * k * cs(3 * th)
    _need(_near_zero(k, 1.0), f"{name} assumes a straight centre curve (kappa = 0)")
    if name in ("A2", "B2"):
        f = cs if name[0] == "A" else sn
        return (sb if name[0] == "B" else 1.0) * 0.5 * f(2 * th) * r**4 * (
            4 * m * r1**2 + (m + 1) ** 2 * r * r2)
    if name in ("A1", "B1"):
        if hyper:
            f = math.sinh if name[0] == "A" else math.cosh
            return 2 * f(th) * r**4 * r1 * (-4 * m + 2 * m * r1**2 + (1 + m * m) * r * r2)
        f = cs if name[0] == "A" else sn
        return 2 * f(th) * r**4 * r1 * (2 * m * r1**2 + (1 + m * m) * r * r2)
    if name in ("A2_conditional", "B2_conditional") and not hyper:
        _need(_near_zero(r1**2 + r * r2, r * abs(r2) + r1**2),
              f"{name} assumes r'^2 + r r'' = 0")
        f = cs if name[0] == "A" else sn
        return 0.5 * (1 - m) ** 2 * f(2 * th) * r**4 * r1**2
    if name == "A0" and hyper:
        _need(_near_zero(r1, r) and _near_zero(r2, r), "A0 assumes a constant radius")
        return 4 * m * r**4
    raise KeyError(f"no closed form for {name} in the {case.value} case")


def _lightlike(name, g, m, n):
    u, a1, a2, b1, b2 = g("u"), g("da"), g("dda"), g("db"), g("ddb")
    if name == "A6":
        return n**4 * u**12 * a1**6
    _need(n == 0, f"{name} assumes n = 0")
    if name == "A2":
        return 256 * u**4 * (2 * m * a1 + u * a2) * (2 * a1 + m * u * a2)
    _need(_near_zero(2 * m * a1 + u * a2, abs(a1) + abs(u * a2)),
          f"{name} assumes 2 m a' + u a'' = 0, i.e. a' = c u^(-2m)")
    c = a1 * u ** (2 * m)
    if name == "A1":
        return 512 * c * u ** (4 - 6 * m) * (m + 1) * (
            -m * c * c + (m - 1) * u ** (4 * m) * (2 * m * b1 + u * b2))
    if name == "A0":
        lhs, rhs = m * c * c, (m - 1) * u ** (4 * m) * (2 * m * b1 + u * b2)
        _need(_near_zero(lhs - rhs, abs(lhs) + abs(rhs)),
              "A0 assumes m c^2 = (m - 1) u^(4m) (2 m b' + u b'')")
        return (m + 1) ** 2 * u**4 * (2 * m * b1 + u * b2) ** 2
    raise KeyError(f"no closed form for {name} in the lightlike case")


FORMULAS = {
    FoliationCase.SPACELIKE: ("A12", "B12", "A3", "B3", "A2", "B2", "A1", "B1",
                              "A2_conditional", "B2_conditional"),
    FoliationCase.TIMELIKE: ("A12", "B12", "A3", "B3", "A2", "B2", "A1", "B1", "A0"),
    FoliationCase.LIGHTLIKE: ("A6", "A2", "A1", "A0"),
}


def closed_form_coefficient(case, name: str, inputs: dict, spec: WeingartenSpec) -> float:
    """Value of a closed-form coefficient, after checking its assumptions.

    ``inputs`` may hold r, dr, ddr, theta, kappa (planar cases) or u, da, dda,
    db, ddb (lightlike case); missing entries count as 0.
    """
    case = FoliationCase.parse(case)
    if name not in FORMULAS[case]:
        raise KeyError(f"no closed form for {name} in the {case.value} case")

    def g(key):
        return float(inputs.get(key, 0.0))

    if case is FoliationCase.LIGHTLIKE:
        return float(_lightlike(name, g, spec.m, spec.n))
    return float(_planar(case, name, g, spec.m, spec.n))


def coefficient_inputs(family: FoliationFamily, u: float) -> dict:
    """The named inputs of the closed forms, read off the family at u."""
    if family.case is FoliationCase.LIGHTLIKE:
        a, b = ex.eval_jet(family.a, u), ex.eval_jet(family.b, u)
        return {"u": u, "da": a.v1, "dda": a.v2, "db": b.v1, "ddb": b.v2}
    r = _radius(family, u)
    t = ex.eval_jet(family.theta, u) if family.theta is not None else ex.Jet2(0.0)
    return {"r": r.v0, "dr": r.v1, "ddr": r.v2, "theta": t.v0, "kappa": t.v1}


def applicable_formulas(family: FoliationFamily, spec: WeingartenSpec, u: float) -> dict:
    """{name: value} for every closed form whose assumptions hold at u."""
    inputs = coefficient_inputs(family, u)
    out = {}
    for name in FORMULAS[family.case]:
        try:
            out[name] = closed_form_coefficient(family.case, name, inputs, spec)
        except PreconditionViolated:
            continue
    return out


# ---------------------------------------------------------------------------
# Reports

CSV_COLUMNS = ("case", "u", "j", "A_extracted", "B_extracted", "A_paper", "B_paper", "rel_err")


@dataclass
class CoefficientRow:
    case: str
    u: float
    j: int
    A_extracted: float
    B_extracted: Optional[float]
    A_formula: Optional[float] = None
    B_formula: Optional[float] = None
    rel_err: Optional[float] = None


def _rel(ext, ref, scale):
    if ref is None:
        return None
    denom = abs(ref) if ref != 0 else scale
    return abs(ext - ref) / max(denom, np.finfo(float).tiny)


def coefficient_report(family: FoliationFamily, spec: WeingartenSpec, u: float,
                       method: str = "dft") -> list:
    """One row per degree; formula columns filled where a closed form applies.

    The conditional spacelike A2/B2 forms take the place of the plain ones
    when the plain ones do not apply.
    """
    exp = extract_coefficients(family, spec, u, method=method)
    known = applicable_formulas(family, spec, u)
    for key in ("A2", "B2"):
        if f"{key}_conditional" in known and key not in known:
            known[key] = known[f"{key}_conditional"]
    rows = []
    for j in range(exp.A.size):
        a = float(exp.A[j])
        b = None if exp.B is None else float(exp.B[j])
        fa, fb = known.get(f"A{j}"), known.get(f"B{j}")
        errs = [e for e in (_rel(a, fa, exp.scale), _rel(b, fb, exp.scale) if b is not None else None)
                if e is not None]
        rows.append(CoefficientRow(family.case.value, float(u), j, a, b, fa, fb,
                                   max(errs) if errs else None))
    return rows


def _g17(x) -> str:
    return "" if x is None else f"{x:.17g}"


def write_coefficient_csv(rows, stream) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([r.case, _g17(r.u), r.j, _g17(r.A_extracted), _g17(r.B_extracted),
                    _g17(r.A_formula), _g17(r.B_formula), _g17(r.rel_err)])
