from __future__ import annotations

import json

import numpy as np
import pytest

from opmeans import verify
from opmeans.kubo_ando import convex_order_leq


@pytest.mark.parametrize("name", list(verify.SUITES))
@pytest.mark.parametrize("seed", [3, 17])
def test_suites_pass(name, seed):
    (res,) = verify.run_suite(name, seed)
    assert res.name == name
    assert res.checks and all(v > 0 for v in res.checks.values())


def test_unknown_suite():
    with pytest.raises(KeyError):
        verify.run_suite("nosuch", 0)


def test_failure_carries_json_counterexample():
    res = verify.SuiteResult("demo")
    with pytest.raises(verify.VerificationFailure) as info:
        res.record("check", False, A=np.eye(2) * (1 + 1j), x=np.float64(0.5), n=np.int64(3))
    assert info.value.check == "demo/check"
    json.dumps(info.value.counterexample)
    assert info.value.counterexample["A"]["im"] == [[1.0, 0.0], [0.0, 1.0]]


def test_spread_pairs_are_ordered():
    rng = np.random.default_rng(0)
    for _ in range(20):
        mu, nu = verify.random_spread_pair(rng)
        assert convex_order_leq(mu, nu)
