from __future__ import annotations

import csv
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from opmeans import barycenters as bc
from opmeans import cli, io, verify
from opmeans.hermitian import random_spd
from opmeans.kubo_ando import GeneratorMeasure, MeanDescriptor, mean

seeds = st.integers(0, 2**32 - 1)


def run(*argv) -> int:
    try:
        return cli.main([str(a) for a in argv])
    except SystemExit as exc:
        return int(exc.code or 0)


@pytest.fixture
def pair(tmp_path):
    A, B = random_spd(3, 10, 0), random_spd(3, 10, 1)
    pa, pb = tmp_path / "A.json", tmp_path / "B.json"
    io.write_matrix(pa, A)
    io.write_matrix(pb, B)
    return A, B, pa, pb


def write_scalars(path, vals, weights=None):
    w = [1 / len(vals)] * len(vals) if weights is None else weights
    E = bc.WeightedEnsemble(tuple(np.array([[float(v)]]) for v in vals), np.array(w))
    io.write_ensemble(path, E)
    return path


# -- JSON formats -----------------------------------------------------------------


@given(seeds, st.integers(1, 5), st.booleans())
def test_matrix_round_trip(seed, n, cplx):
    X = random_spd(n, 10, seed, cplx)
    Y = io.matrix_from_json(json.loads(io.dumps(io.matrix_to_json(X))))
    assert np.array_equal(X, Y)
    assert np.iscomplexobj(Y) == bool(np.any(np.imag(X) != 0))


def test_matrix_reader_accepts_bare_reals():
    X = io.matrix_from_json({"dim": 2, "entries": [[1, 0.5], [0.5, 2]]})
    assert X.dtype == float and X[0, 1] == 0.5


@pytest.mark.parametrize("bad", [
    [],
    {"dim": 2},
    {"dim": 2, "entries": [[1, 2]]},
    {"dim": 1, "entries": [[True]]},
    {"dim": 1, "entries": [["x"]]},
    {"dim": 1, "entries": [[[1, 2, 3]]]},
])
def test_matrix_reader_rejects(bad):
    with pytest.raises(io.FormatError):
        io.matrix_from_json(bad)


def test_invalid_json_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{nope")
    with pytest.raises(io.FormatError):
        io.read_json(p)


@pytest.mark.parametrize("mu", [
    GeneratorMeasure.from_atoms([(0.2, 0.3), (0.9, 0.7)]),
    GeneratorMeasure.power(0.4),
    GeneratorMeasure.build([(1.0, 0.25)], {"family": "legendre", "nodes": 32}),
    GeneratorMeasure([0.1], [0.5], [0.3, 0.6], [0.25, 0.25]),
])
def test_measure_round_trip(mu):
    back = io.measure_from_json(json.loads(io.dumps(io.measure_to_json(mu))))
    x = np.geomspace(0.1, 10, 9)
    np.testing.assert_allclose(back.f(x), mu.f(x), rtol=1e-14)
    assert back.center == pytest.approx(mu.center, abs=1e-15)


@pytest.mark.parametrize("bad", [[1, 2], {"density": 3}, {"density": {"p": 0.5}}, {"atoms": [["a", 1]]}])
def test_measure_reader_rejects(bad):
    with pytest.raises(io.FormatError):
        io.measure_from_json(bad)


def test_ensemble_round_trip(tmp_path):
    E = bc.WeightedEnsemble.normalized([random_spd(2, 5, s) for s in range(3)], [1, 2, 3])
    io.write_ensemble(tmp_path / "e.json", E)
    F = io.read_ensemble(tmp_path / "e.json")
    assert all(np.array_equal(a, b) for a, b in zip(E.matrices, F.matrices))
    assert np.array_equal(E.weights, F.weights)


def test_manifest(tmp_path, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    man = io.RunManifest("mean", ["a"], {"k": 1}, 3, "1.0")
    assert man.timestamp == "1970-01-01T00:00:00+00:00"
    path = io.write_manifest(tmp_path / "out.json", man)
    assert path.name == "out.json.manifest.json"
    assert io.RunManifest.from_dict(io.read_json(path)) == man


# -- commands ----------------------------------------------------------------------


def test_mean_command(tmp_path, pair):
    A, B, pa, pb = pair
    out = tmp_path / "M.json"
    assert run("mean", "--quiet", "ah-geo:0.25", pa, pb, "-o", out) == 0
    np.testing.assert_allclose(io.read_matrix(out), mean(MeanDescriptor.ah_geometric(0.25), A, B), atol=1e-13)
    assert io.manifest_path(out).exists()


def test_mean_command_examples(tmp_path):
    pa, pb, out = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "o.json"
    io.write_matrix(pa, np.eye(2))
    io.write_matrix(pb, np.diag([4.0, 9.0]))
    assert run("mean", "--quiet", "geometric", pa, pb, "-o", out) == 0
    np.testing.assert_allclose(io.read_matrix(out), np.diag([2.0, 3.0]), atol=1e-12)
    assert run("mean", "--quiet", "arithmetic:0.5", pb, pb, "-o", out) == 0
    np.testing.assert_allclose(io.read_matrix(out), np.diag([4.0, 9.0]), atol=1e-12)


def test_mean_with_measure_file(tmp_path, pair):
    A, B, pa, pb = pair
    mfile = tmp_path / "mu.json"
    io.write_json(mfile, {"atoms": [[0.5, 1.0]]})
    out = tmp_path / "M.json"
    assert run("mean", "--quiet", "--measure", mfile, "ignored", pa, pb, "-o", out) == 0
    np.testing.assert_allclose(io.read_matrix(out), mean(MeanDescriptor.harmonic(0.5), A, B), atol=1e-12)


@pytest.mark.parametrize("kind,a,b,expected", [
    ("rtm", 3.0, 3.0, "0.0"),
    ("bw", 1.0, 4.0, "1.0"),
    ("sigma:#", 1.0, 4.0, "2.25"),
    ("sigma:arithmetic:0.5", 6.0, 2.0, "+inf"),
])
def test_distance_examples(tmp_path, capsys, kind, a, b, expected):
    pa, pb = tmp_path / "a.json", tmp_path / "b.json"
    io.write_matrix(pa, [[a]])
    io.write_matrix(pb, [[b]])
    assert run("distance", kind, pa, pb) == 0
    out = capsys.readouterr().out.strip()
    if expected == "+inf":
        assert out == "+inf"
    else:
        assert float(out) == pytest.approx(float(expected), abs=1e-10)


def test_barycenter_examples(tmp_path):
    ens = write_scalars(tmp_path / "s.json", [1, 9])
    out = tmp_path / "X.json"
    assert run("barycenter", "--quiet", "bw", ens, "-o", out) == 0
    assert io.read_matrix(out)[0, 0] == pytest.approx(4.0, abs=1e-9)
    rep = io.read_json(out.with_suffix(".report.json"))
    assert rep["converged"] is True

    one = tmp_path / "one.json"
    A = random_spd(3, 10, 5)
    io.write_ensemble(one, bc.WeightedEnsemble((A,), np.ones(1)))
    assert run("barycenter", "--quiet", "karcher", one, "-o", out) == 0
    np.testing.assert_allclose(io.read_matrix(out), A, atol=1e-12)
    assert io.read_json(out.with_suffix(".report.json"))["iterations"] == 0


def test_barycenter_sigma_geometric_matches_closed_form(tmp_path):
    E = bc.WeightedEnsemble.uniform([random_spd(3, 10, s) for s in range(3)])
    ens, out = tmp_path / "e.json", tmp_path / "X.json"
    io.write_ensemble(ens, E)
    assert run("barycenter", "--quiet", "sigma:#", ens, "-o", out, "--report", tmp_path / "r.json") == 0
    np.testing.assert_allclose(io.read_matrix(out), bc.geometric_barycenter_closed_form(E), atol=1e-8)
    assert (tmp_path / "r.json").exists()


def test_barycenter_hellinger_with_measure(tmp_path):
    ens = write_scalars(tmp_path / "s.json", [1, 4])
    mfile = tmp_path / "mu.json"
    io.write_json(mfile, {"atoms": [], "density": {"family": "jacobi", "p": 0.5, "nodes": 64}})
    out = tmp_path / "X.json"
    assert run("barycenter", "--quiet", "--measure", mfile, "hellinger", ens, "-o", out) == 0
    X, _ = bc.hellinger_barycenter(GeneratorMeasure.power(0.5), io.read_ensemble(ens))
    assert io.read_matrix(out)[0, 0] == pytest.approx(X[0, 0], abs=1e-12)


def test_generate(tmp_path):
    out = tmp_path / "g.json"
    assert run("generate", "--quiet", "--seed", 1, "--dim", 3, "--count", 2, "-o", out) == 0
    E = io.read_ensemble(out)
    assert len(E.matrices) == 2 and E.dim == 3
    man = io.read_json(io.manifest_path(out))
    assert man["seed"] == 1 and man["command"] == "generate"


def test_generate_complex_condition(tmp_path):
    out = tmp_path / "g.json"
    assert run("generate", "--quiet", "--seed", 2, "--dim", 4, "--count", 3, "--condition", 100,
               "--complex", "-o", out) == 0
    for A in io.read_ensemble(out).matrices:
        vals = np.linalg.eigvalsh(A)
        assert np.iscomplexobj(A)
        assert vals[-1] / vals[0] == pytest.approx(100, rel=1e-8)


def test_plotdata_geodesic_monotone(tmp_path):
    ens, out = tmp_path / "e.json", tmp_path / "p.csv"
    io.write_ensemble(ens, bc.WeightedEnsemble.uniform([random_spd(3, 10, 7), random_spd(3, 10, 8)]))
    for kind in ("rtm-geodesic", "bw-geodesic"):
        assert run("plotdata", kind, ens, "-o", out, "--points", 11) == 0
        rows = list(csv.DictReader(out.open()))
        d = np.array([float(r["distance_from_A"]) for r in rows])
        assert len(rows) == 11 and d[0] == pytest.approx(0, abs=1e-7)
        assert np.all(np.diff(d) >= -1e-12)


def test_plotdata_residuals_to_stdout(tmp_path, capsys):
    ens = write_scalars(tmp_path / "s.json", [1, 9])
    assert run("plotdata", "residuals:bw", ens) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "iteration,residual" and len(lines) >= 2


def test_verify_command(capsys):
    assert run("verify", "--seed", 1, "ka-axioms") == 0
    assert "ka-axioms" in capsys.readouterr().out


def test_verify_failure_exit_code(monkeypatch, capsys):
    def broken(seed, trials=1):
        res = verify.SuiteResult("broken")
        res.record("always", False, value=np.arange(2))
        return res

    monkeypatch.setitem(verify.SUITES, "broken", broken)
    assert run("verify", "broken") == 1
    err = capsys.readouterr().err
    assert err.startswith("verification-failed: broken/always")
    assert '"value"' in err


# -- error paths --------------------------------------------------------------------


def test_parse_errors(tmp_path, pair, capsys):
    _, _, pa, pb = pair
    out = tmp_path / "o.json"
    assert run("mean", "nonsense", pa, pb, "-o", out) == 2
    assert capsys.readouterr().err.startswith("parse-error")
    assert run("frobnicate") == 2
    assert run("distance", "kl", pa, pb) == 2
    assert run("verify", "nosuch") == 2
    bad = tmp_path / "bad.json"
    bad.write_text("[")
    assert run("mean", "#", bad, pb, "-o", out) == 2
    assert run("barycenter", "bw", pa, "-o", out, "--tol", "-1") == 2


def test_domain_errors(tmp_path, capsys):
    pa, pb, out = tmp_path / "a.json", tmp_path / "b.json", tmp_path / "o.json"
    io.write_matrix(pa, np.eye(2))
    io.write_matrix(pb, np.diag([1.0, -1.0]))
    assert run("mean", "#", pa, pb, "-o", out) == 3
    assert capsys.readouterr().err.startswith("domain-error")
    ens = write_scalars(tmp_path / "s.json", [1, 6])
    assert run("barycenter", "sigma:arithmetic:0.5", ens, "-o", out) == 3
    assert run("barycenter", "hellinger:arithmetic:0.5", ens, "-o", out) == 3


def test_not_converged_exit_code(tmp_path, capsys):
    ens = tmp_path / "e.json"
    io.write_ensemble(ens, bc.WeightedEnsemble.uniform([random_spd(3, 10, s) for s in range(3)]))
    out = tmp_path / "X.json"
    assert run("barycenter", "bw", ens, "-o", out, "--max-iter", 1, "--tol", 1e-15) == 4
    assert capsys.readouterr().err.startswith("not-converged")
    assert out.exists()
