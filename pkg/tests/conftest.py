from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from opmeans.hermitian import random_spd

settings.register_profile(
    "opmeans",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("opmeans")

_ACCEPTANCE = {}


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def spd_pair(rng):
    return random_spd(4, 20, rng), random_spd(4, 20, rng)


def assert_close(X, Y, tol, rel=False):
    err = float(np.linalg.norm(np.asarray(X) - np.asarray(Y)))
    scale = float(np.linalg.norm(np.asarray(Y))) if rel else 1.0
    assert err <= tol * scale, f"error {err:.3e} exceeds {tol:g}" + (f" x {scale:.3e}" if rel else "")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = "test_acceptance.py::test_criterion_"
    if marker not in report.nodeid:
        return
    name = report.nodeid.split(marker, 1)[1]
    _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        outcome = _ACCEPTANCE[name]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        num, _, label = name.partition("_")
        tr.write_line(f"criterion {int(num):2d}  {verdict}  {label.replace('_', ' ')}")
