import numpy as np
import pytest

from lorentz_weingarten.geometry import SurfaceJet, SurfacePatch

_ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str):
        _ACCEPTANCE[number] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")


def flat_patch(u_range=(-1.0, 1.0), v_range=(-1.0, 1.0)) -> SurfacePatch:
    def jet(u, v):
        v = np.asarray(v, dtype=float)
        u_arr = np.full_like(v, u)
        one, zero = np.ones_like(v), np.zeros_like(v)
        parts = [(u_arr, v, zero), (one, zero, zero), (zero, one, zero),
                 (zero, zero, zero), (zero, zero, zero), (zero, zero, zero)]
        return SurfaceJet(*(np.stack(p, axis=-1) for p in parts))

    return SurfacePatch(u_range, v_range, jet, label="flat")


@pytest.fixture
def flat():
    return flat_patch()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
