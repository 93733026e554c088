"""Rotational spacelike surfaces with kappa1 = m kappa2 (n = 0).

Generating curves z(u) for the three axis types:

    timelike axis   X = (u cos v, u sin v, z)                   z'^2 < 1
    spacelike axis  X = (u, z sinh v, z cosh v)                  z'^2 < 1
    lightlike axis  X = (-2uv, z + u - u v^2, z - u - u v^2)     z' > 0

and the reduced relations

    timelike   -z'(1 - z'^2) + m u z'' = 0    first integral  z'/sqrt(1-z'^2) u^(-1/m)
    spacelike  -1 + z'^2 + m z z'' = 0        first integral  z^(-1/m)/sqrt(1-z'^2)
    lightlike  2 z' + m u z'' = 0             first integral  z' u^(2/m)
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate

from . import expr as ex
from .errors import BlowUp, DomainError, MissingParam, UnknownName
from .expr import Jet2
from .geometry import SurfaceJet, SurfacePatch, WeingartenSpec


class AxisKind(enum.Enum):
    TIMELIKE = "timelike"
    SPACELIKE = "spacelike"
    LIGHTLIKE = "lightlike"

    @classmethod
    def parse(cls, value) -> AxisKind:
        return value if isinstance(value, cls) else cls(str(value).lower())


@dataclass(frozen=True)
class ProfileSpec:
    """Integration data for one generating curve.

    ``c`` is the first-integral constant (c = mu^-2 with mu the conserved
    quantity), ``sign`` picks the slope branch, and the curve passes through
    (u0, z0).  ``lambda_`` translates along the axis; for a spacelike axis the
    translation is already carried by u0 and ``lambda_`` must be 0.
    """

    m: float
    c: float = 1.0
    sign: int = 1
    u0: float = 1.0
    z0: float = 0.0
    lambda_: float = 0.0

    def __post_init__(self):
        if self.m == 0:
            raise ValueError("m must be non-zero")
        if not self.c > 0:
            raise ValueError("c must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass
class ProfileCurve:
    """Sampled generating curve with cubic Hermite interpolation of z on (z, z').

    Between samples z' and z'' come from ``complete(u, z, zp_hint)``, which
    encodes the governing relation of the curve (first integral or ODE), or
    from ``exact`` for closed-form curves.
    """

    axis: AxisKind
    u: np.ndarray
    z: np.ndarray
    zp: np.ndarray
    zpp: np.ndarray
    source: str
    truncated: bool = False
    label: str = ""
    complete: Optional[Callable] = field(default=None, repr=False)
    exact: Optional[Callable[[float], Jet2]] = field(default=None, repr=False)

    def __post_init__(self):
        self.u, self.z, self.zp, self.zpp = (
            np.asarray(a, dtype=float) for a in (self.u, self.z, self.zp, self.zpp)
        )
        if self.u.size < 2 or np.any(np.diff(self.u) <= 0):
            raise ValueError("profile samples must be strictly increasing (at least two)")
        if self.axis is not AxisKind.SPACELIKE and np.any(self.u == 0):
            raise DomainError("profile crosses u = 0")
        if self.axis is AxisKind.LIGHTLIKE:
            if np.any(self.zp <= 0):
                raise DomainError("lightlike-axis profile needs z' > 0")
        elif np.any(self.zp**2 >= 1):
            raise DomainError("profile needs z'^2 < 1")
        if self.axis is AxisKind.SPACELIKE and np.any(self.z <= 0):
            raise DomainError("spacelike-axis profile needs z > 0")

    @property
    def u_range(self):
        return float(self.u[0]), float(self.u[-1])

    def jet(self, u: float) -> Jet2:
        if self.exact is not None:
            return self.exact(u)
        lo, hi = self.u_range
        slack = 1e-12 * (1.0 + abs(hi - lo))
        if not lo - slack <= u <= hi + slack:
            raise DomainError(f"u = {u!r} outside the profile range [{lo!r}, {hi!r}]")
        i = int(np.clip(np.searchsorted(self.u, u) - 1, 0, self.u.size - 2))
        a, b = self.u[i], self.u[i + 1]
        h = b - a
        t = (u - a) / h
        z = _hermite(t, h, self.z[i], self.z[i + 1], self.zp[i], self.zp[i + 1])
        hint = _hermite(t, h, self.zp[i], self.zp[i + 1], self.zpp[i], self.zpp[i + 1])
        zp, zpp = self.complete(u, z, hint)
        return Jet2(z, zp, zpp)

    def __call__(self, u: float) -> float:
        return self.jet(u).v0

    def first_integral_values(self, m: float) -> np.ndarray:
        return np.array([first_integral(self.axis, m, u, z, zp)
                         for u, z, zp in zip(self.u, self.z, self.zp)])

    def write_csv(self, path) -> None:
        write_profile_csv(self, path)


def _hermite(t, h, y0, y1, d0, d1):
    t2, t3 = t * t, t * t * t
    return ((2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0
            + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1)


def write_profile_csv(profile: ProfileCurve, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["u", "z", "zp", "zpp"])
        for row in zip(profile.u, profile.z, profile.zp, profile.zpp):
            w.writerow([f"{x:.17g}" for x in row])


# ---------------------------------------------------------------------------
# First integrals


def first_integral(axis, m: float, u: float, z: float, zp: float) -> float:
    axis = AxisKind.parse(axis)
    if axis is AxisKind.LIGHTLIKE:
        if u <= 0:
            raise DomainError("first integral needs u > 0")
        return zp * u ** (2.0 / m)
    if abs(zp) >= 1:
        raise DomainError(f"|z'| = {abs(zp)!r} >= 1")
    if axis is AxisKind.TIMELIKE:
        if u <= 0:
            raise DomainError("first integral needs u > 0")
        return zp / math.sqrt(1.0 - zp * zp) * u ** (-1.0 / m)
    if z <= 0:
        raise DomainError("first integral needs z > 0")
    return z ** (-1.0 / m) / math.sqrt(1.0 - zp * zp)


# ---------------------------------------------------------------------------
# Timelike axis: quadrature of the slope


def timelike_slope(m: float, c: float, sign: int, u: float) -> Jet2:
    """Slope z' = sign / sqrt(1 + c u^(-2/m)) and its derivative.

    Returned as Jet2(nan, z', z''): the value slot (z itself) is not known here.
    """
    if u <= 0:
        raise DomainError(f"timelike slope needs u > 0, got {u!r}")
    x = Jet2.variable(u)
    p = -2.0 / m
    w = 1.0 + c * x.chain(u**p, p * u ** (p - 1), 0.0)
    s = sign * w.chain(w.v0**-0.5, -0.5 * w.v0**-1.5, 0.0)
    return Jet2(math.nan, s.v0, s.v1)


def _check_range(u_range, u0, positive: bool):
    lo, hi = float(u_range[0]), float(u_range[1])
    if not lo < hi:
        raise ValueError(f"empty range {u_range!r}")
    if positive and lo <= 0:
        raise DomainError(f"range {u_range!r} touches u <= 0")
    if not lo <= u0 <= hi:
        raise ValueError(f"u0 = {u0!r} outside the range {u_range!r}")
    return lo, hi


def integrate_timelike_profile(spec: ProfileSpec, u_range, tol: float = 1e-11) -> ProfileCurve:
    """Adaptive quadrature of the timelike-axis slope from (u0, z0).

    Nodes are bisected until the Hermite interpolant reproduces the quadrature
    value at every interval midpoint to within ``tol``.
    """
    lo, hi = _check_range(u_range, spec.u0, positive=True)
    m, c, s = spec.m, spec.c, spec.sign

    def slope(u):
        return s / math.sqrt(1.0 + c * u ** (-2.0 / m))

    def quad(a, b):
        return integrate.quad(slope, a, b, epsabs=tol * 1e-3, epsrel=1e-14, limit=200)[0]

    nodes = sorted(set(np.linspace(lo, hi, 9).tolist()) | {spec.u0})
    k0 = nodes.index(spec.u0)
    zs = {spec.u0: spec.z0}
    for i in range(k0, len(nodes) - 1):
        zs[nodes[i + 1]] = zs[nodes[i]] + quad(nodes[i], nodes[i + 1])
    for i in range(k0, 0, -1):
        zs[nodes[i - 1]] = zs[nodes[i]] - quad(nodes[i - 1], nodes[i])

    stack = [(nodes[i], nodes[i + 1]) for i in range(len(nodes) - 1)]
    while stack:
        a, b = stack.pop()
        mid = 0.5 * (a + b)
        z_mid = zs[a] + quad(a, mid)
        guess = _hermite(0.5, b - a, zs[a], zs[b], slope(a), slope(b))
        if abs(guess - z_mid) > tol and b - a > 1e-9 * (hi - lo):
            zs[mid] = z_mid
            stack.extend([(a, mid), (mid, b)])

    us = np.array(sorted(zs))
    z = np.array([zs[u] for u in us]) + spec.lambda_
    jets = [timelike_slope(m, c, s, u) for u in us]

    def complete(u, z_, hint):
        j = timelike_slope(m, c, s, u)
        return j.v1, j.v2

    return ProfileCurve(
        AxisKind.TIMELIKE, us, z, [j.v1 for j in jets], [j.v2 for j in jets],
        source="quadrature", label=f"timelike m={m:g} c={c:g}", complete=complete,
    )


# ---------------------------------------------------------------------------
# Spacelike axis: z' = sign sqrt(1 - c z^(-2/m)), classical RK4 with step doubling


def _spacelike_fns(m: float, c: float, sign: int):
    def g(z):
        return 1.0 - c * z ** (-2.0 / m)

    def f(z):
        if z <= 0:
            return None
        gz = g(z)
        if gz < 0:
            return None
        return sign * math.sqrt(gz)

    def zpp(z):
        return (c / m) * z ** (-(2.0 + m) / m)

    return g, f, zpp


def _rk4_autonomous(f, z, h):
    k1 = f(z)
    if k1 is None:
        return None
    k2 = f(z + 0.5 * h * k1)
    if k2 is None:
        return None
    k3 = f(z + 0.5 * h * k2)
    if k3 is None:
        return None
    k4 = f(z + h * k3)
    if k4 is None:
        return None
    return z + h * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0


def _spacelike_march(spec: ProfileSpec, start: float, end: float, tol: float, length: float):
    """March from (start, z0) toward ``end``; returns samples and a truncation flag."""
    m, c, s = spec.m, spec.c, spec.sign
    g, f, zpp = _spacelike_fns(m, c, s)
    d = 1.0 if end > start else -1.0
    h_min = 1e-9 * length
    g_floor = 1e-13
    us, zs = [start], [spec.z0]
    u, z = start, spec.z0

    if g(z) <= g_floor:
        # starting on a turning point: leave it with a Taylor step, z''' = 0 there
        a = zpp(z)
        z4 = a * (-(2.0 + m) / m) * z ** (-(2.0 + 2.0 * m) / m) * (c / m)
        h = min(1e-3 * length, abs(end - start))
        z_next = z + 0.5 * a * h * h + z4 * h**4 / 24.0
        slope_sign = math.copysign(1.0, a * d)
        if slope_sign != s:
            raise DomainError("the requested slope branch cannot leave the turning point")
        u, z = u + d * h, z_next
        us.append(u)
        zs.append(z)

    h = d * length / 64.0
    truncated = False
    while d * (end - u) > 1e-14 * length:
        if d * (u + h - end) > 0:
            h = end - u
        full = _rk4_autonomous(f, z, h)
        half = _rk4_autonomous(f, z, 0.5 * h)
        two = _rk4_autonomous(f, half, 0.5 * h) if half is not None else None
        if full is None or two is None:
            h *= 0.5
            if abs(h) < h_min:
                truncated = True
                break
            continue
        err = abs(two - full) / 15.0
        z_new = two + (two - full) / 15.0
        f_a, f_b = f(z), f(z_new)
        guess = None if f_b is None else _hermite(0.5, h, z, z_new, f_a, f_b)
        budget = tol * abs(h) / length
        if guess is None or err > budget or abs(guess - half) > tol:
            h *= 0.5
            if abs(h) < h_min:
                truncated = True
                break
            continue
        us.extend([u + 0.5 * h, u + h])
        zs.extend([half, z_new])
        u, z = u + h, z_new
        if g(z) <= g_floor or z <= 1e-12:
            truncated = d * (end - u) > 1e-14 * length
            break
        grow = 2.0 if err == 0 else min(2.0, max(0.2, 0.9 * (budget / err) ** 0.2))
        h *= grow
    return us, zs, truncated


def integrate_spacelike_profile(spec: ProfileSpec, u_range, tol: float = 1e-10) -> ProfileCurve:
    """Integrate the first-order spacelike-axis equation from (u0, z0).

    Stops early, setting ``truncated``, when z' reaches 0 (a turning point,
    where the slope branch would have to switch) or z reaches 0.
    """
    if spec.lambda_ != 0:
        raise ValueError("spacelike-axis translations are carried by u0; lambda_ must be 0")
    lo, hi = _check_range(u_range, spec.u0, positive=False)
    m, c, s = spec.m, spec.c, spec.sign
    g, f, zpp = _spacelike_fns(m, c, s)
    if not spec.z0 > 0:
        raise DomainError("spacelike-axis integration needs z0 > 0")
    g0 = g(spec.z0)
    if not 0 <= g0 < 1:
        raise DomainError(f"1 - c z0^(-2/m) = {g0!r} is outside [0, 1)")

    length = hi - lo
    truncated = False
    us, zs = [spec.u0], [spec.z0]
    if spec.u0 < hi:
        fu, fz, t = _spacelike_march(spec, spec.u0, hi, tol, length)
        us, zs, truncated = fu, fz, t
    if spec.u0 > lo:
        bu, bz, t = _spacelike_march(spec, spec.u0, lo, tol, length)
        us = bu[::-1] + us[1:]
        zs = bz[::-1] + zs[1:]
        truncated = truncated or t

    us = np.array(us)
    zs = np.array(zs)
    if us.size < 2:
        raise DomainError("integration could not leave the initial point")

    def slope(z):
        return s * math.sqrt(max(g(z), 0.0))

    def complete(u, z, hint):
        return slope(z), zpp(z)

    return ProfileCurve(
        AxisKind.SPACELIKE, us, zs, [slope(z) for z in zs], [zpp(z) for z in zs],
        source="rk4", truncated=truncated, label=f"spacelike m={m:g} c={c:g}",
        complete=complete,
    )


# ---------------------------------------------------------------------------
# Lightlike axis: closed form


def lightlike_profile(m: float, c: float, lambda_: float, u_range, samples: int = 257) -> ProfileCurve:
    if m == 0:
        raise ValueError("m must be non-zero")
    if not c > 0:
        raise ValueError("c must be positive")
    lo, hi = float(u_range[0]), float(u_range[1])
    if not 0 < lo < hi:
        raise DomainError(f"lightlike profile needs 0 < u_min < u_max, got {u_range!r}")
    text = lightlike_expression(m, c, lambda_)
    return closed_form_profile(AxisKind.LIGHTLIKE, text, (lo, hi), samples,
                               label=f"lightlike m={m:g} c={c:g}")


def lightlike_expression(m: float, c: float, lambda_: float) -> str:
    if m == 2:
        return f"({c!r})*log(u) + ({lambda_!r})"
    return f"({m * c / (m - 2)!r})*u^({(m - 2) / m!r}) + ({lambda_!r})"


def closed_form_profile(axis, text: str, u_range, samples: int = 257, label: str = "") -> ProfileCurve:
    axis = AxisKind.parse(axis)
    tree = ex.parse(text)
    us = np.linspace(u_range[0], u_range[1], samples)
    jets = [ex.eval_jet(tree, float(u)) for u in us]
    return ProfileCurve(
        axis, us, [j.v0 for j in jets], [j.v1 for j in jets], [j.v2 for j in jets],
        source="closed_form", label=label or text,
        exact=lambda u: ex.eval_jet(tree, u),
    )


# ---------------------------------------------------------------------------
# Second-order equations, integrated directly


def raw_acceleration(axis, m: float):
    axis = AxisKind.parse(axis)
    if axis is AxisKind.TIMELIKE:
        return lambda u, z, zp: zp * (1.0 - zp * zp) / (m * u)
    if axis is AxisKind.SPACELIKE:
        return lambda u, z, zp: (1.0 - zp * zp) / (m * z)
    return lambda u, z, zp: -2.0 * zp / (m * u)


def _admissible(axis: AxisKind, u, z, zp) -> bool:
    if not (math.isfinite(z) and math.isfinite(zp)):
        return False
    if axis is AxisKind.LIGHTLIKE:
        return zp > 0 and u != 0
    if zp * zp >= 1:
        return False
    return z > 0 if axis is AxisKind.SPACELIKE else u != 0


def integrate_raw_ode(axis, m: float, ics, u_range, step: float) -> ProfileCurve:
    """Fixed-step RK4 on the second-order reduced equation.

    Independent of the first integrals; used to cross-check them.
    Raises ``BlowUp`` if the solution leaves the admissible slope band.
    """
    axis = AxisKind.parse(axis)
    if m == 0:
        raise ValueError("m must be non-zero")
    if not step > 0:
        raise ValueError("step must be positive")
    u0, z0, zp0 = (float(x) for x in ics)
    lo, hi = _check_range(u_range, u0, positive=axis is not AxisKind.SPACELIKE)
    if not _admissible(axis, u0, z0, zp0):
        raise DomainError(f"initial data {ics!r} violate the {axis.value}-axis constraints")
    acc = raw_acceleration(axis, m)

    def rhs(u, y):
        return np.array([y[1], acc(u, y[0], y[1])])

    def march(end):
        us, ys = [u0], [np.array([z0, zp0])]
        n = max(1, int(math.ceil(abs(end - u0) / step - 1e-9)))
        h = (end - u0) / n
        u, y = u0, ys[0]
        for i in range(n):
            k1 = rhs(u, y)
            k2 = rhs(u + h / 2, y + h / 2 * k1)
            k3 = rhs(u + h / 2, y + h / 2 * k2)
            k4 = rhs(u + h, y + h * k3)
            y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            u = u0 + (i + 1) * h
            if not _admissible(axis, u, y[0], y[1]):
                raise BlowUp(f"{axis.value}-axis solution left the admissible band", us[-1])
            us.append(u)
            ys.append(y)
        return us, ys

    us, ys = [u0], [np.array([z0, zp0])]
    if u0 < hi:
        us, ys = march(hi)
    if u0 > lo:
        bu, by = march(lo)
        us = bu[::-1] + us[1:]
        ys = by[::-1] + ys[1:]
    us = np.array(us)
    z = np.array([y[0] for y in ys])
    zp = np.array([y[1] for y in ys])
    zpp = np.array([acc(u, a, b) for u, a, b in zip(us, z, zp)])

    def complete(u, z_, hint):
        return hint, acc(u, z_, hint)

    return ProfileCurve(axis, us, z, zp, zpp, source="raw_ode",
                        label=f"{axis.value} raw m={m:g}", complete=complete)


# ---------------------------------------------------------------------------
# Surfaces of revolution


def build_rotational_patch(axis, profile, v_max: float = 2.0, label: str = "",
                           weingarten: Optional[WeingartenSpec] = None) -> SurfacePatch:
    """Rotate a generating curve with the motion group of the given axis.

    ``profile`` is anything with ``jet(u) -> Jet2`` and ``u_range``.
    """
    axis = AxisKind.parse(axis)

    def jet(u, v):
        j = profile.jet(u)
        z, zp, zpp = j.v0, j.v1, j.v2
        v = np.asarray(v)
        one, zero = np.ones_like(v), np.zeros_like(v)
        if axis is AxisKind.TIMELIKE:
            cv, sv = np.cos(v), np.sin(v)
            parts = [
                (u * cv, u * sv, z * one),
                (cv, sv, zp * one),
                (-u * sv, u * cv, zero),
                (zero, zero, zpp * one),
                (-sv, cv, zero),
                (-u * cv, -u * sv, zero),
            ]
        elif axis is AxisKind.SPACELIKE:
            ch, sh = np.cosh(v), np.sinh(v)
            parts = [
                (u * one, z * sh, z * ch),
                (one, zp * sh, zp * ch),
                (zero, z * ch, z * sh),
                (zero, zpp * sh, zpp * ch),
                (zero, zp * ch, zp * sh),
                (zero, z * sh, z * ch),
            ]
        else:
            v2 = v * v
            parts = [
                (-2 * u * v, z + u - u * v2, z - u - u * v2),
                (-2 * v, zp + 1 - v2, zp - 1 - v2),
                (-2 * u * one, -2 * u * v, -2 * u * v),
                (zero, zpp * one, zpp * one),
                (-2 * one, -2 * v, -2 * v),
                (zero, -2 * u * one, -2 * u * one),
            ]
        return SurfaceJet(*(np.stack(p, axis=-1) for p in parts))

    if axis is AxisKind.TIMELIKE:
        v_range, periodic = (0.0, 2 * math.pi), True
    else:
        v_range, periodic = (-v_max, v_max), False
    return SurfacePatch(
        u_range=tuple(profile.u_range), v_range=v_range, jet=jet,
        label=label or getattr(profile, "label", axis.value), periodic_v=periodic,
        weingarten=weingarten, meta={"axis": axis.value},
    )


# ---------------------------------------------------------------------------
# Closed-form catalog


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    axis: AxisKind
    m: Optional[float]
    expression: Callable[[dict], str]
    u_range: Callable[[dict], tuple]
    radius_to_c: Optional[Callable[[float], float]] = None
    description: str = ""


def _fmt(x: float) -> str:
    return f"({float(x)!r})"


def _power_expression(p):
    m = p["m"]
    if m == 2:
        return f"{_fmt(p['c'])}*log(u) + {_fmt(p['lambda'])}"
    return f"{_fmt(m * p['c'] / (m - 2))}*u^{_fmt((m - 2) / m)} + {_fmt(p['lambda'])}"


CATALOG = {
    e.name: e
    for e in [
        CatalogEntry(
            "pseudohyperbolic_timelike", AxisKind.TIMELIKE, 1.0,
            lambda p: f"sqrt(u^2 + {_fmt(p['c'])}) + {_fmt(p['lambda'])}",
            lambda p: (0.5, 2.0), radius_to_c=lambda r: r * r,
            description="pseudohyperbolic surface, timelike axis",
        ),
        CatalogEntry(
            "catenoid_first_kind", AxisKind.TIMELIKE, -1.0,
            lambda p: f"asinh(sqrt({_fmt(p['c'])})*u)/sqrt({_fmt(p['c'])}) + {_fmt(p['lambda'])}",
            lambda p: (0.5, 2.0), description="maximal catenoid, timelike axis",
        ),
        CatalogEntry(
            "timelike_m2", AxisKind.TIMELIKE, 2.0,
            lambda p: (f"{_fmt(p['c'])}*(sqrt((u/{_fmt(p['c'])})*(1 + u/{_fmt(p['c'])}))"
                       f" - asinh(sqrt(u/{_fmt(p['c'])}))) + {_fmt(p['lambda'])}"),
            lambda p: (0.5, 2.0),
        ),
        CatalogEntry(
            "timelike_m_neg2", AxisKind.TIMELIKE, -2.0,
            lambda p: f"2*sqrt(1 + {_fmt(p['c'])}*u)/{_fmt(p['c'])} + {_fmt(p['lambda'])}",
            lambda p: (0.5, 2.0),
        ),
        CatalogEntry(
            "pseudohyperbolic_spacelike", AxisKind.SPACELIKE, 1.0,
            lambda p: f"sqrt((u + {_fmt(p['lambda'])})^2 + {_fmt(p['c'])})",
            lambda p: (-1.0 - p["lambda"], 1.0 - p["lambda"]), radius_to_c=lambda r: r * r,
            description="pseudohyperbolic surface, spacelike axis",
        ),
        CatalogEntry(
            "catenoid_second_kind", AxisKind.SPACELIKE, -1.0,
            # the axial translation enters inside the sine; an additive constant
            # outside it does not solve the reduced equation
            lambda p: f"sin(sqrt({_fmt(p['c'])})*(u + {_fmt(p['lambda'])}))/sqrt({_fmt(p['c'])})",
            lambda p: (0.3 / math.sqrt(p["c"]) - p["lambda"], 2.8 / math.sqrt(p["c"]) - p["lambda"]),
            description="maximal catenoid, spacelike axis",
        ),
        CatalogEntry(
            "spacelike_m_neg2", AxisKind.SPACELIKE, -2.0,
            lambda p: f"1/{_fmt(p['c'])} - {_fmt(p['c'])}*(u + {_fmt(p['lambda'])})^2/4",
            lambda p: (-1.5 / p["c"] - p["lambda"], 1.5 / p["c"] - p["lambda"]),
        ),
        CatalogEntry(
            "pseudohyperbolic_lightlike", AxisKind.LIGHTLIKE, 1.0,
            lambda p: f"-{_fmt(p['c'])}/u + {_fmt(p['lambda'])}",
            lambda p: (0.5, 2.0), radius_to_c=lambda r: r * r / 4.0,
            description="pseudohyperbolic surface, lightlike axis",
        ),
        CatalogEntry(
            "enneper_second_kind", AxisKind.LIGHTLIKE, -1.0,
            lambda p: f"{_fmt(p['c'])}*u^3/3 + {_fmt(p['lambda'])}",
            lambda p: (0.5, 2.0), description="maximal Enneper surface, lightlike axis",
        ),
        CatalogEntry(
            "lightlike_log", AxisKind.LIGHTLIKE, 2.0,
            lambda p: f"{_fmt(p['c'])}*log(u) + {_fmt(p['lambda'])}",
            lambda p: (0.5, 2.0),
        ),
        CatalogEntry(
            "lightlike_power", AxisKind.LIGHTLIKE, None, _power_expression,
            lambda p: (0.5, 2.0),
        ),
    ]
}

ALLOWED_PARAMS = {"c", "lambda", "r", "m", "u_min", "u_max", "v_max"}


def catalog_listing():
    """(name, m or None, n) in definition order."""
    return [(e.name, e.m, 0.0) for e in CATALOG.values()]


def resolve_params(entry: CatalogEntry, params: Optional[dict]) -> dict:
    params = dict(params or {})
    extra = set(params) - ALLOWED_PARAMS
    if extra:
        raise ValueError(f"unknown catalog parameter(s): {sorted(extra)}")
    p = {"c": 1.0, "lambda": 0.0}
    if "r" in params:
        if entry.radius_to_c is None:
            raise ValueError(f"{entry.name} has no radius parameter")
        if "c" in params:
            raise ValueError("give either r or c, not both")
        r = float(params["r"])
        if not r > 0:
            raise ValueError("r must be positive")
        p["c"] = entry.radius_to_c(r)
    if "c" in params:
        p["c"] = float(params["c"])
    if not p["c"] > 0:
        raise ValueError("c must be positive")
    p["lambda"] = float(params.get("lambda", 0.0))
    if entry.m is None:
        if "m" not in params:
            raise MissingParam(f"{entry.name} needs parameter 'm'")
        p["m"] = float(params["m"])
        if p["m"] == 0:
            raise ValueError("m must be non-zero")
    elif "m" in params and float(params["m"]) != entry.m:
        raise ValueError(f"{entry.name} has fixed m = {entry.m:g}")
    else:
        p["m"] = entry.m
    lo, hi = entry.u_range(p)
    p["u_min"] = float(params.get("u_min", lo))
    p["u_max"] = float(params.get("u_max", hi))
    p["v_max"] = float(params.get("v_max", 2.0))
    return p


def catalog(name: str, params: Optional[dict] = None) -> SurfacePatch:
    """Closed-form rotational surface with exact analytic jets."""
    if name not in CATALOG:
        raise UnknownName(name)
    entry = CATALOG[name]
    p = resolve_params(entry, params)
    text = entry.expression(p)
    profile = closed_form_profile(entry.axis, text, (p["u_min"], p["u_max"]), label=name)
    patch = build_rotational_patch(
        entry.axis, profile, v_max=p["v_max"], label=name,
        weingarten=WeingartenSpec(p["m"], 0.0),
    )
    patch.meta.update({"expression": text, "params": p, "profile": profile})
    return patch
