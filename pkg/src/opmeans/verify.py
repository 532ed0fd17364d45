"""Randomized invariant suites, run by ``opmeans verify``.

Every check draws its inputs from a seeded generator, so a failure is
reproducible from the suite name and the seed.  A failing check raises
:class:`VerificationFailure` carrying a JSON-ready counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import barycenters as bc
from .hermitian import hs_norm, invm, loewner_leq, random_spd, random_unitary, symmetrize
from .kubo_ando import (
    GeneratorMeasure,
    MeanDescriptor,
    adjoint,
    convex_order_leq,
    geometric_mean,
    mean,
    parse_mean,
    transpose,
)

AXIOM_MEANS = tuple(
    [f"{name}:{p}" for name in ("arithmetic", "geometric", "harmonic", "ah-geo") for p in (0.25, 0.5, 0.75)]
    + ["parallel-sum"]
)
#: symmetric means whose generator maps (0, inf) onto (0, inf)
FULL_RANGE_MEANS = ("#", "heinz:0.25", "logarithmic", "adjoint:logarithmic")
GRID = np.geomspace(0.1, 10, 41)


class VerificationFailure(AssertionError):
    def __init__(self, check: str, counterexample: dict):
        super().__init__(f"{check}: {counterexample}")
        self.check = check
        self.counterexample = counterexample


@dataclass
class SuiteResult:
    name: str
    checks: dict = field(default_factory=dict)

    def record(self, check: str, ok: bool, **counterexample):
        if not ok:
            raise VerificationFailure(f"{self.name}/{check}", _jsonable(counterexample))
        self.checks[check] = self.checks.get(check, 0) + 1


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return {"re": obj.real.tolist(), "im": obj.imag.tolist()}
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    return obj


def _psd_increment(rng, dim, scale=0.3):
    R = rng.standard_normal((dim, dim)) * scale
    return R @ R.T


def random_hermitian_invertible(rng, dim):
    """Hermitian matrix with eigenvalues of random sign and modulus in [0.5, 2]."""
    Q = random_unitary(dim, rng)
    vals = rng.uniform(0.5, 2, dim) * rng.choice([-1.0, 1.0], dim)
    return symmetrize((Q * vals) @ Q.T)


def random_discrete_measure(rng, atoms: int = 4) -> GeneratorMeasure:
    lam = rng.uniform(0.02, 0.98, atoms)
    w = rng.dirichlet(np.ones(atoms))
    return GeneratorMeasure(lam, w)


def random_spread_pair(rng, atoms: int = 4):
    """``(mu, nu)`` with ``nu`` a mean-preserving spread of ``mu``, hence ``mu <= nu`` in convex order."""
    mu = random_discrete_measure(rng, atoms)
    locs, masses = [], []
    for l, w in zip(mu.atom_locations, mu.atom_masses):
        a = rng.uniform(0, l)
        b = rng.uniform(0, 1 - l)
        locs += [l - a, l + b]
        masses += [w * b / (a + b), w * a / (a + b)]
    return mu, GeneratorMeasure(locs, masses)


def _dims(rng, lo=2, hi=5):
    return int(rng.integers(lo, hi + 1))


# ---------------------------------------------------------------------------
# suites


def suite_ka_axioms(seed: int, trials: int = 20) -> SuiteResult:
    """Monotonicity, transformer inequality and normalization of the named means."""
    res = SuiteResult("ka-axioms")
    rng = np.random.default_rng(seed)
    for spec in AXIOM_MEANS:
        sigma = parse_mean(spec)
        for _ in range(trials):
            n = _dims(rng)
            A = random_spd(n, 20, rng)
            B = random_spd(n, 20, rng)
            A2 = A + _psd_increment(rng, n)
            B2 = B + _psd_increment(rng, n)
            res.record("P1", loewner_leq(mean(sigma, A, B), mean(sigma, A2, B2)), mean=spec, A=A, B=B, A2=A2, B2=B2)
            C = random_hermitian_invertible(rng, n)
            lhs = C @ mean(sigma, A, B) @ C
            rhs = mean(sigma, C @ A @ C, C @ B @ C)
            res.record("P2", loewner_leq(lhs, rhs), mean=spec, A=A, B=B, C=C)
            I = np.eye(n)
            target = sigma.f(1.0) * I
            res.record("P4", hs_norm(mean(sigma, I, I) - target) <= 1e-12, mean=spec, dim=n)
    return res


def suite_generators(seed: int, trials: int = 20) -> SuiteResult:
    """Involution identities for adjoint and transpose, weights, and the x**p measure."""
    res = SuiteResult("generators")
    rng = np.random.default_rng(seed)
    specs = list(AXIOM_MEANS) + ["heinz:0.3", "logarithmic"]
    for spec in specs:
        s = parse_mean(spec)
        f = s.f(GRID)
        err_a = np.max(np.abs(adjoint(adjoint(s)).f(GRID) - f))
        err_t = np.max(np.abs(transpose(transpose(s)).f(GRID) - f))
        res.record("adjoint-involution", err_a <= 1e-10, mean=spec, error=err_a)
        res.record("transpose-involution", err_t <= 1e-10, mean=spec, error=err_t)
        if not s.connection:
            dw = abs(transpose(s).weight + s.weight - 1)
            res.record("transpose-weight", dw <= 1e-10, mean=spec, error=dw)
    for p in (0.25, 0.5, 0.75):
        g = MeanDescriptor.geometric(p)
        err = np.max(np.abs(transpose(g).f(GRID) - MeanDescriptor.geometric(1 - p).f(GRID)))
        res.record("transpose-geometric", err <= 1e-10, p=p, error=err)
    for p in (0.3, 0.5, 0.7):
        mu = GeneratorMeasure.power(p)
        err = np.max(np.abs(mu.f(GRID) - GRID**p))
        res.record("jacobi-power", err <= 1e-6, p=p, error=err)
        res.record("jacobi-weight", abs(mu.center - p) <= 1e-6, p=p, center=mu.center)
    for _ in range(trials):
        mu = random_discrete_measure(rng)
        x = np.linspace(0.1, 10, 41)
        h = 1e-6
        fd = (mu.f(1 + h) - mu.f(1 - h)) / (2 * h)
        res.record("center-is-derivative", abs(fd - mu.center) <= 1e-6, atoms=mu.atom_locations, fd=fd)
        fx = mu.f(x)
        res.record("increasing", bool(np.all(np.diff(fx) > 0)), atoms=mu.atom_locations)
        res.record("concave", bool(np.all(np.diff(fx, 2) <= 1e-12 * fx[1:-1])), atoms=mu.atom_locations)
    return res


def suite_convex_order(seed: int, trials: int = 20) -> SuiteResult:
    """Convex-order monotonicity of the generated means."""
    res = SuiteResult("convex-order")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        mu, nu = random_spread_pair(rng)
        res.record("spread-detected", convex_order_leq(mu, nu), mu=mu.atom_locations, nu=nu.atom_locations)
        for _ in range(5):
            n = _dims(rng)
            A = random_spd(n, 20, rng)
            B = random_spd(n, 20, rng)
            res.record("mean-monotone", loewner_leq(mean(mu, A, B), mean(nu, A, B)), A=A, B=B)
        c = mu.center
        n = _dims(rng)
        A = random_spd(n, 20, rng)
        B = random_spd(n, 20, rng)
        M = mean(mu, A, B)
        res.record("above-harmonic", loewner_leq(mean(MeanDescriptor.harmonic(c), A, B), M), c=c, A=A, B=B)
        res.record("below-arithmetic", loewner_leq(M, mean(MeanDescriptor.arithmetic(c), A, B)), c=c, A=A, B=B)
    return res


def suite_karcher(seed: int, trials: int = 10) -> SuiteResult:
    res = SuiteResult("karcher")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = _dims(rng)
        A, B = random_spd(n, 20, rng), random_spd(n, 20, rng)
        X, rep = bc.karcher_mean(bc.WeightedEnsemble.uniform([A, B]))
        err = hs_norm(X - geometric_mean(A, B))
        res.record("two-point-geometric", rep.converged and err <= 1e-8, A=A, B=B, error=err)
        mats = [random_spd(n, 20, rng) for _ in range(3)]
        E = bc.WeightedEnsemble.normalized(mats, rng.uniform(0.2, 1, 3))
        X, rep = bc.karcher_mean(E)
        r = hs_norm(bc.karcher_residual(E, X))
        res.record("residual", rep.converged and r <= 1e-10 * (1 + hs_norm(X)), residual=r)
        C = rng.standard_normal((n, n)) + 2 * np.eye(n)
        EC = bc.WeightedEnsemble(tuple(C @ M @ C.T for M in mats), E.weights)
        XC, _ = bc.karcher_mean(EC)
        err = hs_norm(XC - C @ X @ C.T) / hs_norm(XC)
        res.record("congruence", err <= 1e-8, C=C, error=err)
    return res


def suite_bw(seed: int, trials: int = 5) -> SuiteResult:
    res = SuiteResult("bw")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = _dims(rng)
        mats = [random_spd(n, 20, rng) for _ in range(3)]
        E = bc.WeightedEnsemble.normalized(mats, rng.uniform(0.2, 1, 3))
        X, rep = bc.bw_barycenter(E)
        r = hs_norm(X - bc.bw_map(E, X))
        res.record("residual", rep.converged and r <= 1e-10 * (1 + hs_norm(X)), residual=r)
        a = rng.uniform(0.1, 10, 3)
        Es = bc.WeightedEnsemble(tuple(np.array([[v]]) for v in a), E.weights)
        Xs, _ = bc.bw_barycenter(Es, bc.SolverConfig(tol=1e-14))
        exact = float(np.dot(E.weights, np.sqrt(a)) ** 2)
        res.record("scalar", abs(Xs[0, 0] - exact) <= 1e-12, a=a, got=Xs[0, 0], exact=exact)
        A, B = mats[:2]
        for t in (0.25, 0.5, 0.75):
            E2 = bc.WeightedEnsemble((A, B), np.array([1 - t, t]))
            X2, _ = bc.bw_barycenter(E2)
            margin = bc.perturbation_margin(lambda Y: bc.loss_q("bw", E2, Y), X2, count=50, seed=rng)
            res.record("two-point-optimal", margin >= -1e-12, t=t, margin=margin)
    return res


def suite_hellinger(seed: int, trials: int = 3) -> SuiteResult:
    res = SuiteResult("hellinger")
    rng = np.random.default_rng(seed)
    measures = [GeneratorMeasure.dirac(0.25), GeneratorMeasure.dirac(0.5), GeneratorMeasure.dirac(0.75),
                GeneratorMeasure.power(0.5)]
    for _ in range(trials):
        n = _dims(rng, 2, 4)
        mats = [random_spd(n, 10, rng) for _ in range(3)]
        E = bc.WeightedEnsemble.normalized(mats, rng.uniform(0.2, 1, 3))
        for mu in measures:
            X, rep = bc.hellinger_barycenter(mu, E)
            st = hs_norm(bc.hellinger_stationarity(mu, E, X))
            res.record("stationarity", rep.converged and st <= 1e-8, measure=repr(mu), residual=st)
            margin = bc.perturbation_margin(lambda Y: bc.loss_q("hellinger", E, Y, mu), X, count=50, seed=rng)
            res.record("optimal", margin >= -1e-12, measure=repr(mu), margin=margin)
    return res


def suite_sigma(seed: int, trials: int = 5) -> SuiteResult:
    res = SuiteResult("sigma")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        n = _dims(rng, 2, 4)
        A, B = random_spd(n, 10, rng), random_spd(n, 10, rng)
        for spec in FULL_RANGE_MEANS:
            X, rep = bc.ka_barycenter(spec, bc.WeightedEnsemble.uniform([A, B]))
            err = hs_norm(X - mean(parse_mean(spec), A, B))
            res.record("two-point-mean", rep.converged and err <= 1e-8, mean=spec, A=A, B=B, error=err)
        mats = [random_spd(n, 10, rng) for _ in range(3)]
        E = bc.WeightedEnsemble.normalized(mats, rng.uniform(0.2, 1, 3))
        X, rep = bc.ka_barycenter("#", E, bc.SolverConfig(init="arithmetic"))
        closed = bc.geometric_barycenter_closed_form(E)
        err = hs_norm(X - closed)
        res.record("closed-form", rep.converged and err <= 1e-8, error=err)
        Hinv = sum(w * invm(M) for w, M in E)
        ric = hs_norm(closed @ Hinv @ closed - E.arithmetic())
        res.record("riccati", ric <= 1e-9 * (1 + hs_norm(E.arithmetic())), error=ric)
        alpha = float(rng.uniform(0.1, 0.9))
        E2 = bc.WeightedEnsemble((A, B), np.array([1 - alpha, alpha]))
        X2, _ = bc.ka_barycenter("#", E2)
        hm = mean(MeanDescriptor.harmonic(alpha), A, B)
        am = mean(MeanDescriptor.arithmetic(alpha), A, B)
        err = hs_norm(X2 - geometric_mean(hm, am))
        res.record("weighted-two-point", err <= 1e-8, alpha=alpha, error=err)
    return res


def suite_gradients(seed: int, trials: int = 3) -> SuiteResult:
    res = SuiteResult("gradients")
    rng = np.random.default_rng(seed)
    params = [("rtm", None), ("bw", None), ("hellinger", GeneratorMeasure.power(0.5)),
              ("hellinger", GeneratorMeasure.dirac(0.25)), ("sigma", "#"), ("sigma", "heinz:0.25")]
    for _ in range(trials):
        n = _dims(rng, 2, 4)
        mats = [random_spd(n, 10, rng) for _ in range(3)]
        E = bc.WeightedEnsemble.normalized(mats, rng.uniform(0.2, 1, 3))
        X = random_spd(n, 10, rng)
        for kind, p in params:
            chk = bc.gradient_check(kind, E, X, p, n_dirs=5, seed=rng)
            res.record("directional", chk.worst_relative <= 1e-5, kind=kind, param=repr(p),
                       worst_relative=chk.worst_relative)
    return res


SUITES: dict = {
    "ka-axioms": suite_ka_axioms,
    "generators": suite_generators,
    "convex-order": suite_convex_order,
    "karcher": suite_karcher,
    "bw": suite_bw,
    "hellinger": suite_hellinger,
    "sigma": suite_sigma,
    "gradients": suite_gradients,
}


def run_suite(name: str, seed: int) -> list:
    """Run one suite (or ``"all"``); returns the list of :class:`SuiteResult`."""
    if name == "all":
        return [fn(seed) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; expected one of {sorted(SUITES)} or 'all'")
    return [SUITES[name](seed)]
