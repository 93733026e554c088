"""Standard surfaces used by the test suite and the experiment scripts."""

from __future__ import annotations

from .foliation import FoliationFamily
from .rotational import (
    AxisKind, ProfileSpec, integrate_raw_ode, integrate_spacelike_profile,
    integrate_timelike_profile,
)

M_SWEEP = (2.0, -2.0, 3.0, -3.0, 0.5)
SWEEP_RANGE = (1.0, 3.0)

# initial heights for the spacelike axis: z0 >= 1 keeps the slope real for m > 0,
# 0 < z0 <= 1 for m < 0.  With m = -2 every admissible start meets a turning
# point within a run of 2, so that profile ends early.
_SPACELIKE_Z0 = {2.0: 2.0, 3.0: 2.0, 0.5: 2.0, -2.0: 0.02, -3.0: 0.05}


def integrated_profile(axis, m: float, u_range=SWEEP_RANGE, c: float = 1.0):
    """Integrated generating curve starting at the left end of the range.

    The lightlike axis has no first-order integrator (its first integral is
    already the slope), so its second-order equation is integrated directly.
    """
    axis = AxisKind.parse(axis)
    u0 = u_range[0]
    if axis is AxisKind.TIMELIKE:
        return integrate_timelike_profile(ProfileSpec(m, c, 1, u0, 0.0), u_range)
    if axis is AxisKind.SPACELIKE:
        z0 = _SPACELIKE_Z0.get(m, 2.0 if m > 0 else 0.05)
        return integrate_spacelike_profile(ProfileSpec(m, c, 1, u0, z0), u_range)
    return integrate_raw_ode(axis, m, (u0, 0.0, c * u0 ** (-2.0 / m)), u_range, 1e-3)


def rotational_families():
    """Surfaces of revolution written as foliations, with the (m, n = 0) they satisfy."""
    return [
        (FoliationFamily("spacelike", r="sqrt(u^2 - 1)", u_range=(1.5, 3.0),
                         label="pseudohyperbolic, horizontal circles"), 1.0),
        (FoliationFamily("spacelike", r="u^2/4 - 1", u_range=(2.5, 4.0),
                         label="m=-2 surface, horizontal circles"), -2.0),
        (FoliationFamily("timelike", r="sqrt(u^2 + 1)", u_range=(-1.0, 1.0),
                         label="pseudohyperbolic, hyperbolae"), 1.0),
        (FoliationFamily("timelike", r="sin(u)", u_range=(0.3, 2.8),
                         label="catenoid of the second kind"), -1.0),
        (FoliationFamily("timelike", r="1 - u^2/4", u_range=(-1.5, 1.5),
                         label="m=-2 surface, hyperbolae"), -2.0),
        (FoliationFamily("lightlike", a="0", b="-1/u", u_range=(0.5, 2.0),
                         label="pseudohyperbolic, parabolae"), 1.0),
        (FoliationFamily("lightlike", a="0.7", b="u^3/3", u_range=(0.5, 2.0),
                         label="Enneper surface of the second kind"), -1.0),
        (FoliationFamily("lightlike", a="0", b="log(u)", u_range=(0.5, 2.0),
                         label="m=2 lightlike-axis surface"), 2.0),
    ]


def perturbed_family():
    """Non-rotational: the pseudohyperbolic radius on a curved centre line."""
    return FoliationFamily("spacelike", r="sqrt(u^2 - 1)", theta="0.8*u", u_range=(1.5, 3.0),
                           label="perturbed pseudohyperbolic")


def lightlike_a_for(m: float, c: float = 1.0) -> str:
    """a(u) with a' = c u^(-2m), i.e. 2 m a' + u a'' = 0."""
    p = 1.0 - 2.0 * m
    if p == 0:
        return f"({c!r})*log(u)"
    return f"({c / p!r})*u^({p!r})"


def lightlike_b_zero_locus(m: float, c: float = 1.0) -> str:
    """b(u) with m c^2 = (m - 1) u^(4m) (2 m b' + u b''), where the A1 closed form vanishes."""
    k = -c * c / (2.0 * (m - 1.0))
    p = 1.0 - 4.0 * m
    if p == 0:
        return f"({k!r})*log(u)"
    return f"({k / p!r})*u^({p!r})"


__all__ = ["M_SWEEP", "SWEEP_RANGE", "integrated_profile", "rotational_families",
           "perturbed_family", "lightlike_a_for", "lightlike_b_zero_locus"]
