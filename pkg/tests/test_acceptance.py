"""One test per acceptance criterion; each records a pass/fail line for the summary."""

import io
import json
import math

import numpy as np

from lorentz_weingarten.cli import main
from lorentz_weingarten.fixtures import (
    M_SWEEP, integrated_profile, lightlike_a_for, lightlike_b_zero_locus, perturbed_family,
    rotational_families,
)
from lorentz_weingarten.foliation import (
    FoliationFamily, closed_form_coefficient, coefficient_inputs, extract_coefficients,
)
from lorentz_weingarten.geometry import (
    SurfacePatch, WeingartenSpec, curvature_data, finite_difference_jet,
    fundamental_forms, mean_gauss_from_forms, sweep,
)
from lorentz_weingarten.minkowski import lorentz_cross, lorentz_dot, rotation_matrix
from lorentz_weingarten.rotational import (
    CATALOG, build_rotational_patch, catalog, integrate_raw_ode, lightlike_profile,
)

AXES = ("timelike", "spacelike", "lightlike")
U_SWEEP = (0.5, 1.0, 2.0)


def grid_points(patch, nu=20, nv=20):
    us, vs = patch.grid(nu, nv)
    for u in us:
        for v in vs:
            yield float(u), float(v)


def all_catalog():
    return [catalog(name, {"m": 3.0} if name == "lightlike_power" else {}) for name in CATALOG]


def test_criterion_1_umbilical_suite(acceptance):
    worst_split = worst_h = worst_k = 0.0
    k_signs = set()
    for axis in AXES:
        for r in (0.5, 1.0, 2.0):
            patch = catalog(f"pseudohyperbolic_{axis}", {"r": r})
            for u, v in grid_points(patch):
                cd = curvature_data(patch, u, v)
                worst_split = max(worst_split, abs(cd.kappa1 - cd.kappa2) / (1 + abs(cd.kappa1)))
                worst_h = max(worst_h, abs(abs(cd.H) * r - 1))
                worst_k = max(worst_k, abs(abs(cd.K) * r * r - 1))
                k_signs.add(int(np.sign(cd.K)))
    ok = worst_split <= 1e-8 and worst_h <= 1e-8 and worst_k <= 1e-8
    sign = {-1: "K = -1/r^2", 1: "K = +1/r^2"}.get(k_signs.pop(), "mixed") if len(k_signs) == 1 else "mixed"
    acceptance(1, ok, f"max split {worst_split:.1e}, |H|r-1 {worst_h:.1e}, "
                      f"|K|r^2-1 {worst_k:.1e}; computed sign {sign}")
    assert ok
    assert sign == "K = -1/r^2"


def test_criterion_2_maximality(acceptance):
    worst = 0.0
    for name in ("catenoid_first_kind", "catenoid_second_kind", "enneper_second_kind"):
        patch = catalog(name)
        for u, v in grid_points(patch):
            worst = max(worst, abs(curvature_data(patch, u, v).H))
    ok = worst <= 1e-9
    acceptance(2, ok, f"max |H| {worst:.1e}")
    assert ok


def test_criterion_3_weingarten_closure(acceptance):
    worst_int = worst_cat = 0.0
    failures = []
    for axis in AXES:
        for m in M_SWEEP:
            patch = build_rotational_patch(axis, integrated_profile(axis, m))
            rep = sweep(patch, WeingartenSpec(m, 0.0), 20, 20)
            worst_int = max(worst_int, rep.max_eq5)
            if rep.non_spacelike or rep.ordering is None:
                failures.append(f"{axis} m={m:g}")
    for name in ("timelike_m2", "timelike_m_neg2", "spacelike_m_neg2", "lightlike_log"):
        patch = catalog(name)
        worst_cat = max(worst_cat, sweep(patch, patch.weingarten, 20, 20).max_eq5)
    ok = worst_int <= 1e-6 and worst_cat <= 1e-9 and not failures
    acceptance(3, ok, f"integrated max {worst_int:.1e}, catalog max {worst_cat:.1e}"
                      + (f", bad: {failures}" if failures else ""))
    assert ok


def test_criterion_4_first_integrals(acceptance):
    drift = agree = 0.0
    for axis in AXES:
        for m in (1.0, -1.0, 2.0, -2.0, 3.0, -3.0, 0.5):
            prof = integrated_profile(axis, m)
            fi = prof.first_integral_values(m)
            drift = max(drift, float(np.max(np.abs(fi - fi[0])) / (1 + abs(fi[0]))))
            lo, hi = prof.u_range
            us = np.linspace(lo, hi, 41)
            if axis == "lightlike":
                # the integrated path here is the raw equation; compare with the closed form
                exact = lightlike_profile(m, 1.0, 0.0, (lo, hi))
                shift = exact(lo)
                diff = [prof(float(u)) - exact(float(u)) + shift for u in us]
            else:
                j = prof.jet(lo)
                raw = integrate_raw_ode(axis, m, (lo, j.v0, j.v1), (lo, hi), 1e-3)
                diff = [prof(float(u)) - raw(float(u)) for u in us]
            agree = max(agree, float(np.max(np.abs(diff))))
    ok = drift <= 1e-8 and agree <= 1e-6
    acceptance(4, ok, f"max drift {drift:.1e}, raw vs first-integral {agree:.1e}")
    assert ok


def _ratio_check(family, name, spec):
    """(vanishing ok, ratios) over the u-sweep."""
    ratios, zero_ok = [], True
    for u in U_SWEEP:
        exp = extract_coefficients(family, spec, u)
        ref = closed_form_coefficient("lightlike", name, coefficient_inputs(family, u), spec)
        got = exp.coefficient(name)
        if ref == 0.0:
            zero_ok &= abs(got) <= 1e-9 * exp.scale
        else:
            zero_ok &= abs(got) > 1e-9 * exp.scale
            ratios.append(got / ref)
    return zero_ok, ratios


def _constant(ratios):
    return len(ratios) == len(U_SWEEP) and np.ptp(ratios) <= 1e-6 * abs(ratios[0])


def test_criterion_5_coefficient_reproduction(acceptance):
    a12 = extract_coefficients(FoliationFamily("spacelike", r="2", theta="0"),
                               WeingartenSpec(2.0, 1.0), 1.0).coefficient("A12")
    a2 = extract_coefficients(FoliationFamily("lightlike", a="u^2", b="u"),
                              WeingartenSpec(1.0, 0.0), 1.0).coefficient("A2")
    a3 = extract_coefficients(FoliationFamily("spacelike", r="1", theta=f"u - 1 + {math.pi / 6!r}"),
                              WeingartenSpec(1.0, 0.0), 1.0).coefficient("A3")
    checks = {
        "A12": abs(a12 - 2) <= 2e-6,
        "A2": abs(a2 / 9216 - 1) <= 1e-6,
        "A3": abs(a3 / -1 - 1) <= 1e-6,
    }
    a6_ratio = a1_ratio = None
    for m in (2.0, -2.0, 3.0):
        spec = WeingartenSpec(m, 1.0)
        zero_ok, _ = _ratio_check(FoliationFamily("lightlike", a="0.5", b="u"), "A6", spec)
        live_ok, ratios = _ratio_check(FoliationFamily("lightlike", a="u^2", b="u"), "A6", spec)
        checks[f"A6 m={m:g}"] = zero_ok and live_ok and _constant(ratios)
        a6_ratio = ratios[0] if ratios else None
        spec = WeingartenSpec(m, 0.0)
        a = lightlike_a_for(m, 1.3)
        fam0 = FoliationFamily("lightlike", a=a, b=lightlike_b_zero_locus(m, 1.3))
        zero_ok = True
        for u in U_SWEEP:
            exp = extract_coefficients(fam0, spec, u)
            zero_ok &= abs(exp.coefficient("A1")) <= 1e-9 * exp.scale
        live_ok, ratios = _ratio_check(FoliationFamily("lightlike", a=a, b="u"), "A1", spec)
        checks[f"A1 m={m:g}"] = zero_ok and live_ok and _constant(ratios)
        a1_ratio = ratios[0] if ratios else None
    ok = all(checks.values())
    bad = [k for k, v in checks.items() if not v]
    acceptance(5, ok, f"A12 {a12:.9g}, A2 {a2:.9g}, A3 {a3:.9g}, A6 ratio {a6_ratio:.9g}, "
                      f"A1 ratio {a1_ratio:.9g}" + (f"; failed {bad}" if bad else ""))
    assert ok


def test_criterion_6_rotational_symmetry(acceptance):
    worst = 0.0
    for fam, m in rotational_families():
        for u in np.linspace(*fam.u_range, 3):
            exp = extract_coefficients(fam, WeingartenSpec(m, 0.0), float(u))
            higher = [np.max(np.abs(exp.A[1:]))]
            if exp.B is not None:
                higher.append(np.max(np.abs(exp.B[1:])))
            worst = max(worst, float(max(higher) / exp.scale))
    exp = extract_coefficients(perturbed_family(), WeingartenSpec(1.0, 0.0), 2.0)
    perturbed = float(max(np.max(np.abs(exp.A[1:])), np.max(np.abs(exp.B[1:]))) / exp.scale)
    ok = worst <= 1e-9 and perturbed > 1e-3
    acceptance(6, ok, f"rotational max j>=1 {worst:.1e} of scale, perturbed {perturbed:.2e}")
    assert ok


def test_criterion_7_lightlike_quadric(acceptance, rng):
    c, lam = 1.5, 0.7
    patch = catalog("pseudohyperbolic_lightlike", {"c": c, "lambda": lam})
    (u0, u1), (v0, v1) = patch.u_range, patch.v_range
    worst = 0.0
    for u, v in zip(rng.uniform(u0, u1, 100), rng.uniform(v0, v1, 100)):
        x1, x2, x3 = patch.position(float(u), float(v))
        worst = max(worst, abs(x1 * x1 + (x2 - lam) ** 2 - (x3 - lam) ** 2 + 4 * c))
    ok = worst <= 1e-9
    acceptance(7, ok, f"max quadric error {worst:.1e}")
    assert ok


def test_criterion_8_numerical_hygiene(acceptance, rng):
    jet_err = dual_err = iso_err = 0.0
    h = 1e-3
    for patch in all_catalog():
        (u0, u1), (v0, v1) = patch.u_range, patch.v_range
        for _ in range(50):
            u, v = rng.uniform(u0 + 2 * h, u1 - 2 * h), rng.uniform(v0, v1)
            an = patch.jet(u, v)
            fd = finite_difference_jet(patch.position, u, v, h)
            for f in an.FIELDS[1:]:
                a, b = getattr(an, f), getattr(fd, f)
                jet_err = max(jet_err, float(np.max(np.abs(a - b)) / (1 + np.max(np.abs(a)))))
        for u, v in grid_points(patch):
            cd = curvature_data(patch, u, v)
            H, K = mean_gauss_from_forms(fundamental_forms(patch, u, v))
            # determinant route (H1, K1) against the fundamental-form route (e, f, g)
            dual_err = max(dual_err, abs(cd.H1 / (2 * cd.Q**1.5) - H) / (1 + abs(H)),
                           abs(cd.K1 / cd.Q**2 - K) / (1 + abs(K)))
            jet = patch.jet(u, v)
            n = lorentz_cross(jet.Xu, jet.Xv)
            dual_err = max(dual_err, abs(cd.Q + lorentz_dot(n, n)) / cd.Q)
        for axis in AXES:
            for t in (-0.9, 0.4, 1.3):
                R = rotation_matrix(axis, t)
                moved = SurfacePatch(patch.u_range, patch.v_range,
                                     lambda a, b, R=R: patch.jet(a, b).transformed(R, (0.3, -1.0, 2.0)))
                for _ in range(3):
                    u, v = rng.uniform(u0, u1), rng.uniform(v0, v1)
                    c0, c1 = curvature_data(patch, u, v), curvature_data(moved, u, v)
                    for k in ("H", "K", "kappa1", "kappa2"):
                        x0, x1 = getattr(c0, k), getattr(c1, k)
                        iso_err = max(iso_err, abs(x0 - x1) / (1 + abs(x0)))
    ok = jet_err <= 1e-6 and dual_err <= 1e-10 and iso_err <= 1e-10
    acceptance(8, ok, f"jets vs oracle {jet_err:.1e}, dual path {dual_err:.1e}, isometry {iso_err:.1e}")
    assert ok


def _cli(argv):
    out = io.StringIO()
    return main(argv, out), out.getvalue()


def test_criterion_9_cli_contract(acceptance, tmp_path):
    pos = tmp_path / "pos.json"
    pos.write_text(json.dumps({"kind": "catalog", "name": "timelike_m2", "weingarten": {"m": 2, "n": 0}}))
    neg = tmp_path / "neg.json"
    neg.write_text(json.dumps({"kind": "catalog", "name": "catenoid_first_kind",
                               "weingarten": {"m": 2, "n": 0}}))
    code_pos, out_pos = _cli(["verify", "--config", str(pos), "--grid", "20x20"])
    code_neg, out_neg = _cli(["verify", "--config", str(neg), "--grid", "20x20"])
    code_cat, out_cat = _cli(["catalog"])
    rep = json.loads(out_pos)
    worst = max(rep["max_eq5_residual"], rep["max_weingarten_residual"])
    repeat = _cli(["verify", "--config", str(pos), "--grid", "20x20"])[1] == out_pos
    repeat &= _cli(["verify", "--config", str(neg), "--grid", "20x20"])[1] == out_neg
    objs = []
    for k in range(2):
        path = tmp_path / f"m{k}.obj"
        _cli(["mesh", "--config", str(pos), "--grid", "8x8", "--out", str(path)])
        objs.append(path.read_bytes())
    repeat &= objs[0] == objs[1]
    ok = (code_pos == 0 and worst <= 1e-9 and code_neg == 1 and code_cat == 0
          and "enneper_second_kind m=-1 n=0" in out_cat.splitlines() and repeat)
    acceptance(9, ok, f"verify exits {code_pos}/{code_neg} (max residual {worst:.1e}), "
                      f"repeat runs identical: {repeat}")
    assert ok
