"""Weighted barycenters of positive definite matrices.

Four notions are covered, each solved through its stationarity equation and
certified a posteriori by a residual:

* ``karcher_mean``: Riemannian trace metric, Karcher equation
  ``sum_j w_j log(X^(1/2) A_j^-1 X^(1/2)) = 0``;
* ``bw_barycenter``: Bures-Wasserstein, ``X = sum_j w_j (X^(1/2) A_j X^(1/2))^(1/2)``;
* ``hellinger_barycenter``: generalized quantum Hellinger divergence of a
  measure ``mu``, ``X = (1/c) sum_j w_j int l |(1-l) A_j^-1 X^(1/2) + l X^(-1/2)|^-2 dmu``;
* ``ka_barycenter``: divergence of a symmetric mean ``sigma`` with full range,
  ``sum_j w_j A_j^(-1/2) g'(A_j^(-1/2) X A_j^(-1/2)) A_j^(-1/2) = 0``.

Gradients are reported as Hermitian matrices ``G`` with ``DQ(X)[Y] = tr(G Y)``.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .divergences import SigmaPotential, d_bw, d_rtm, phi_mu, phi_sigma
from .errors import DegenerateProblemError, DomainError
from .hermitian import (
    EigenDecomposition,
    as_spd,
    dagger,
    divided_differences,
    eigen_decompose,
    expm,
    hermitian_basis,
    hs_norm,
    invm,
    invsqrtm,
    is_spd,
    logm,
    random_hermitian,
    sqrtm,
    symmetrize,
)
from .kubo_ando import GeneratorMeasure, MeanDescriptor, geometric_mean, parse_mean

#: weights must sum to one within this tolerance
WEIGHT_TOL = 1e-12
INITS = ("arithmetic", "harmonic", "ah-geometric")
KINDS = ("rtm", "bw", "hellinger", "sigma")


# ---------------------------------------------------------------------------
# inputs, configuration, reports


@dataclass(frozen=True, eq=False)
class WeightedEnsemble:
    """Positive definite matrices ``A_1..A_m`` of one size with weights summing to one."""

    matrices: tuple
    weights: np.ndarray

    def __post_init__(self):
        mats = tuple(as_spd(A, f"A_{j + 1}") for j, A in enumerate(self.matrices))
        if not mats:
            raise ValueError("an ensemble needs at least one matrix")
        w = np.asarray(self.weights, dtype=float).ravel()
        if w.shape != (len(mats),):
            raise ValueError(f"{len(mats)} matrices but {w.size} weights")
        if np.any(~(w > 0)):
            raise DomainError(f"weights must be strictly positive, got {w.tolist()}")
        if abs(w.sum() - 1) > WEIGHT_TOL:
            raise DomainError(f"weights sum to {w.sum()!r}, not 1")
        shapes = {A.shape for A in mats}
        if len(shapes) != 1:
            raise ValueError(f"matrices have different shapes {sorted(shapes)}")
        w.flags.writeable = False
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, matrices) -> "WeightedEnsemble":
        m = len(matrices)
        return cls(tuple(matrices), np.full(m, 1 / m))

    @classmethod
    def normalized(cls, matrices, weights) -> "WeightedEnsemble":
        w = np.asarray(weights, dtype=float)
        return cls(tuple(matrices), w / w.sum())

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(zip(self.weights, self.matrices))

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    @property
    def iscomplex(self) -> bool:
        return any(np.iscomplexobj(A) for A in self.matrices)

    def permuted(self, order) -> "WeightedEnsemble":
        order = list(order)
        return WeightedEnsemble(tuple(self.matrices[k] for k in order), self.weights[order])

    def arithmetic(self) -> np.ndarray:
        return symmetrize(sum(w * A for w, A in self))

    def harmonic(self) -> np.ndarray:
        return invm(sum(w * invm(A) for w, A in self))


@dataclass(frozen=True)
class SolverConfig:
    """Iteration controls shared by all solvers.

    ``init`` is one of ``"arithmetic"``, ``"harmonic"``, ``"ah-geometric"``, an
    explicit matrix, or ``None`` for the solver's own default.
    """

    tol: float = 1e-10
    max_iter: int = 500
    damping: float = 1.0
    min_damping: float = 1 / 64
    init: Union[str, np.ndarray, None] = None

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if not 0 < self.damping <= 1:
            raise ValueError(f"damping must lie in (0, 1], got {self.damping}")
        if not 0 < self.min_damping <= self.damping:
            raise ValueError("min_damping must lie in (0, damping]")
        if isinstance(self.init, str) and self.init not in INITS:
            raise ValueError(f"unknown init {self.init!r}; expected one of {INITS}")


@dataclass
class SolverReport:
    converged: bool
    iterations: int
    residual_history: list
    objective_value: float = math.nan
    wall_time: float = 0.0
    message: str = ""

    @property
    def final_residual(self) -> float:
        return self.residual_history[-1]

    def to_dict(self) -> dict:
        """JSON-ready summary.  Wall time is left out so that reports are reproducible."""
        return {
            "converged": bool(self.converged),
            "iterations": int(self.iterations),
            "final_residual": float(self.final_residual),
            "residual_history": [float(r) for r in self.residual_history],
            "objective": float(self.objective_value),
        }


def initial_point(E: WeightedEnsemble, init, default: str = "arithmetic") -> np.ndarray:
    init = default if init is None else init
    if isinstance(init, str):
        if init == "arithmetic":
            return E.arithmetic()
        if init == "harmonic":
            return E.harmonic()
        if init == "ah-geometric":
            return geometric_barycenter_closed_form(E)
        raise ValueError(f"unknown init {init!r}")
    X = as_spd(init, "init")
    if X.shape != (E.dim, E.dim):
        raise ValueError(f"init has shape {X.shape}, ensemble matrices are {E.dim}x{E.dim}")
    return X


def _drive(X, evaluate, update, cfg: SolverConfig, scale=None):
    """Damped fixed-point driver.

    ``evaluate(X)`` returns ``(residual, aux)`` and ``update(X, aux, theta)`` the
    next iterate.  A step that increases the residual is retried with half
    the damping until the floor ``cfg.min_damping`` is reached; at the floor
    it is accepted anyway.  Iteration stops once the residual is at most
    ``cfg.tol * (1 + ||X||_2)`` (spectral norm) unless ``scale`` overrides it.
    """
    scale = scale or (lambda Y: 1 + float(np.linalg.norm(Y, 2)))
    theta = cfg.damping
    r, aux = evaluate(X)
    history = [r]
    it = 0
    while not r <= cfg.tol * scale(X) and it < cfg.max_iter:
        it += 1
        Xn = update(X, aux, theta)
        rn, auxn = evaluate(Xn)
        if not rn <= r and theta > cfg.min_damping:
            theta = max(theta / 2, cfg.min_damping)
            history.append(r)
            continue
        X, r, aux = Xn, rn, auxn
        history.append(r)
    return X, it, history, bool(r <= cfg.tol * scale(X))


# ---------------------------------------------------------------------------
# Riemannian trace metric


def karcher_residual(E: WeightedEnsemble, X) -> np.ndarray:
    """``sum_j w_j log(X^(1/2) A_j^-1 X^(1/2))``."""
    Xh = sqrtm(X)
    return symmetrize(sum(w * logm(Xh @ invm(A) @ Xh) for w, A in E))


def karcher_mean(E: WeightedEnsemble, cfg: Optional[SolverConfig] = None):
    """Karcher (RTM) barycenter by the exponential update ``X <- X^(1/2) exp(-theta R) X^(1/2)``.

    Returns
    -------
    X : ndarray
    report : SolverReport
    """
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()
    inverses = [invm(A) for A in E.matrices]

    def evaluate(X):
        Xh = sqrtm(X)
        R = symmetrize(sum(w * logm(Xh @ Ai @ Xh) for w, Ai in zip(E.weights, inverses)))
        return hs_norm(R), (Xh, R)

    def update(X, aux, theta):
        Xh, R = aux
        return symmetrize(Xh @ expm(-theta * R) @ Xh)

    X, it, hist, ok = _drive(initial_point(E, cfg.init), evaluate, update, cfg)
    return X, SolverReport(ok, it, hist, loss_q("rtm", E, X), time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# Bures-Wasserstein


def bw_map(E: WeightedEnsemble, X) -> np.ndarray:
    """Right-hand side ``sum_j w_j (X^(1/2) A_j X^(1/2))^(1/2)``."""
    Xh = sqrtm(X)
    return symmetrize(sum(w * sqrtm(Xh @ A @ Xh) for w, A in E))


def bw_barycenter(E: WeightedEnsemble, cfg: Optional[SolverConfig] = None):
    """Bures-Wasserstein barycenter by damped Picard iteration on its fixed-point equation."""
    cfg = cfg or SolverConfig()
    t0 = time.perf_counter()

    def evaluate(X):
        F = bw_map(E, X)
        return hs_norm(X - F), F

    def update(X, F, theta):
        return symmetrize((1 - theta) * X + theta * F)

    X, it, hist, ok = _drive(initial_point(E, cfg.init), evaluate, update, cfg)
    return X, SolverReport(ok, it, hist, loss_q("bw", E, X), time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# generalized quantum Hellinger


def _check_hellinger_measure(mu: GeneratorMeasure):
    c = mu.center
    lam, w = mu.support
    if c <= 0 or c >= 1:
        raise DegenerateProblemError(
            f"measure has center c = {c:g}; the divergence is identically zero or undefined"
        )
    if np.all((lam == 0) | (lam == 1)):
        raise DegenerateProblemError(
            "measure lives on {0, 1}: it generates a weighted arithmetic mean and the "
            "divergence vanishes identically, so every X is a minimizer"
        )
    return c


def hellinger_kernel(mu: GeneratorMeasure, A, X) -> np.ndarray:
    """``int l |(1-l) A^-1 X + l I|^-2 dmu(l)``, the trace-gradient of ``X -> tr(A sigma_mu X)``.

    Computed through the Daleckii-Krein formula: with
    ``A^(-1/2) X A^(-1/2) = U diag(s) U*`` and ``Gamma`` the Loewner matrix of
    ``f_mu`` at ``s``, the kernel is ``A^(-1/2) U (Gamma o U* A U) U* A^(-1/2)``.
    """
    Aih = invsqrtm(A)
    eig = eigen_decompose(Aih @ X @ Aih)
    U = eig.vectors
    G = mu.loewner(np.clip(eig.eigenvalues, np.finfo(float).tiny, None))
    inner = U @ (G * (dagger(U) @ A @ U)) @ dagger(U)
    return symmetrize(Aih @ inner @ Aih)


def hellinger_stationarity(mu: GeneratorMeasure, E: WeightedEnsemble, X) -> np.ndarray:
    """``c(mu) I - sum_j w_j int l |(1-l) A_j^-1 X + l I|^-2 dmu``; zero at the barycenter."""
    X = as_spd(X, "X")
    K = sum(w * hellinger_kernel(mu, A, X) for w, A in E)
    return symmetrize(mu.center * np.eye(E.dim) - K)


def hellinger_map(mu: GeneratorMeasure, E: WeightedEnsemble, X) -> np.ndarray:
    """Right-hand side of the Hellinger fixed-point equation."""
    Xh = sqrtm(X)
    K = sum(w * hellinger_kernel(mu, A, X) for w, A in E)
    return symmetrize(Xh @ K @ Xh / mu.center)


def hellinger_barycenter(mu: GeneratorMeasure, E: WeightedEnsemble, cfg: Optional[SolverConfig] = None):
    """Barycenter for the generalized quantum Hellinger divergence of ``mu``.

    Damped Picard iteration on the fixed-point equation, started from the
    arithmetic mean unless ``cfg.init`` says otherwise.

    Raises
    ------
    DegenerateProblemError
        If ``c(mu)`` is 0 or 1, or ``mu`` is supported on ``{0, 1}``.
    """
    cfg = cfg or SolverConfig()
    _check_hellinger_measure(mu)
    t0 = time.perf_counter()

    def evaluate(X):
        F = hellinger_map(mu, E, X)
        return hs_norm(X - F), F

    def update(X, F, theta):
        return symmetrize((1 - theta) * X + theta * F)

    X, it, hist, ok = _drive(initial_point(E, cfg.init), evaluate, update, cfg)
    return X, SolverReport(ok, it, hist, loss_q("hellinger", E, X, mu), time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# symmetric Kubo-Ando means


def _potential(sigma) -> SigmaPotential:
    if isinstance(sigma, SigmaPotential):
        return sigma
    if isinstance(sigma, str):
        sigma = parse_mean(sigma)
    if isinstance(sigma, GeneratorMeasure):
        sigma = MeanDescriptor.from_measure(sigma)
    return SigmaPotential(sigma)


def _require_full_range(P: SigmaPotential):
    lo, hi = P.domain
    if not P.descriptor.full_range:
        raise DomainError(
            f"{P.descriptor.name} has ran(f) = ({lo:g}, {hi:g}), not (0, inf); the loss can then "
            "be infinite near some A_j (for the arithmetic mean and A_1 < A_2/3 it is finite only "
            "for X > A_2/2), so no barycenter is defined"
        )


@dataclass
class _SigmaTerm:
    Aih: np.ndarray
    eig: EigenDecomposition
    gp: np.ndarray
    gpp: np.ndarray


def _sigma_terms(P: SigmaPotential, E: WeightedEnsemble, X, Aihs, second: bool):
    terms = []
    for Aih in Aihs:
        eig = eigen_decompose(Aih @ X @ Aih)
        s = eig.eigenvalues
        u = np.atleast_1d(P.descriptor.f_inverse(s))
        gp = 1 - 1 / u
        gpp = 1 / (np.atleast_1d(P.descriptor.f_prime(u)) * u**2) if second else None
        terms.append(_SigmaTerm(Aih, eig, gp, gpp))
    return terms


def _sigma_gradient(E, terms) -> np.ndarray:
    return symmetrize(sum(w * t.Aih @ t.eig.apply(t.gp) @ t.Aih for w, t in zip(E.weights, terms)))


def _sigma_hessian(E, terms, basis) -> np.ndarray:
    """Matrix of the Hessian of the sigma loss in an orthonormal Hermitian basis."""
    k = len(basis)
    cols = np.empty((k, k))
    gammas = [divided_differences(t.eig.eigenvalues, t.gp, t.gpp) for t in terms]
    for b, B in enumerate(basis):
        HB = 0
        for w, t, Gm in zip(E.weights, terms, gammas):
            U = t.eig.vectors
            inner = U @ (Gm * (dagger(U) @ (t.Aih @ B @ t.Aih) @ U)) @ dagger(U)
            HB = HB + w * t.Aih @ inner @ t.Aih
        cols[:, b] = np.einsum("kij,ji->k", basis, HB).real
    return (cols + cols.T) / 2


def ka_barycenter(sigma, E: WeightedEnsemble, cfg: Optional[SolverConfig] = None):
    """Barycenter for the divergence of a symmetric mean ``sigma`` with ``ran(f) = (0, inf)``.

    Damped Newton on the critical-point equation with the exact Hessian
    (Daleckii-Krein divided differences of ``g'``), assembled in an
    orthonormal Hermitian basis.  A Newton step is accepted when it keeps
    ``X`` positive definite and either reduces the gradient norm or passes an
    Armijo test on the loss; otherwise a backtracked steepest-descent step in
    the metric ``X G X`` is taken.  The default start is the A#H closed form.

    Convergence means ``||G|| <= tol (1 + ||X^-1||)``.
    """
    cfg = cfg or SolverConfig()
    P = _potential(sigma)
    _require_full_range(P)
    t0 = time.perf_counter()
    Aihs = [invsqrtm(A) for A in E.matrices]
    basis = hermitian_basis(E.dim, E.iscomplex)

    def scale(Y):
        return 1 + hs_norm(invm(Y))

    def loss(Y):
        return loss_q("sigma", E, Y, P)

    X = initial_point(E, cfg.init, default="ah-geometric")
    terms = _sigma_terms(P, E, X, Aihs, second=True)
    G = _sigma_gradient(E, terms)
    r = hs_norm(G)
    history = [r]
    it = 0
    message = ""
    while not r <= cfg.tol * scale(X) and it < cfg.max_iter:
        it += 1
        H = _sigma_hessian(E, terms, basis)
        g = np.einsum("kij,ji->k", basis, G).real
        try:
            y = np.linalg.solve(H, -g)
        except np.linalg.LinAlgError:
            y = -g
        Y = symmetrize(np.einsum("k,kij->ij", y, basis))
        slope = float(np.dot(g, y))
        accepted = None
        q0 = None
        t = cfg.damping
        for _ in range(40):
            Xn = symmetrize(X + t * Y)
            if is_spd(Xn):
                tn = _sigma_terms(P, E, Xn, Aihs, second=True)
                Gn = _sigma_gradient(E, tn)
                if hs_norm(Gn) < r:
                    accepted = (Xn, tn, Gn)
                    break
                if slope < 0:
                    q0 = loss(X) if q0 is None else q0
                    if loss(Xn) <= q0 + 1e-4 * t * slope:
                        accepted = (Xn, tn, Gn)
                        break
            t /= 2
        if accepted is None:
            # steepest descent in the affine-invariant metric
            Y = -symmetrize(X @ G @ X)
            slope = -float(np.real(np.trace(G @ X @ G @ X)))
            q0 = loss(X) if q0 is None else q0
            t = 1.0 / max(1.0, hs_norm(Y) / max(hs_norm(X), 1e-300))
            for _ in range(60):
                Xn = symmetrize(X + t * Y)
                if is_spd(Xn) and loss(Xn) <= q0 + 1e-4 * t * slope:
                    tn = _sigma_terms(P, E, Xn, Aihs, second=True)
                    accepted = (Xn, tn, _sigma_gradient(E, tn))
                    break
                t /= 2
        if accepted is None:
            message = "line search stalled"
            history.append(r)
            break
        X, terms, G = accepted
        r = hs_norm(G)
        history.append(r)
    ok = bool(r <= cfg.tol * scale(X))
    return X, SolverReport(ok, it, history, loss(X), time.perf_counter() - t0, message)


def ka_residual(sigma, E: WeightedEnsemble, X) -> np.ndarray:
    """Left-hand side of the critical-point equation (the gradient of the sigma loss)."""
    return loss_gradient("sigma", E, X, sigma)


def geometric_barycenter_closed_form(E: WeightedEnsemble) -> np.ndarray:
    """``H # A`` with ``H`` the weighted harmonic and ``A`` the weighted arithmetic mean.

    This is the barycenter for the divergence of the geometric mean: it solves
    ``X (sum_j w_j A_j^-1) X = sum_j w_j A_j``.
    """
    return geometric_mean(E.harmonic(), E.arithmetic(), 0.5)


def compare_initializations(solver: Callable, E: WeightedEnsemble, inits=INITS, **kw) -> float:
    """Largest distance between solutions started from different initial points.

    ``solver(E, cfg)`` must return ``(X, report)``.  A value above ``1e-6``
    signals that the fixed-point equation has several attracting solutions
    at this tolerance.
    """
    sols = [solver(E, SolverConfig(init=init, **kw))[0] for init in inits]
    return max(hs_norm(a - b) for a in sols for b in sols)


def perturbation_margin(loss: Callable, X, count: int = 200, eps: float = 1e-2, seed=0) -> float:
    """Smallest ``loss(X_k) - loss(X)`` over perturbations ``X_k = X^(1/2) exp(eps H_k) X^(1/2)``.

    ``H_k`` are random Hermitian matrices of unit norm.  A nonnegative margin
    (up to roundoff) is evidence that ``X`` is a local minimizer.
    """
    rng = np.random.default_rng(seed)
    X = as_spd(X, "X")
    Xh = sqrtm(X)
    q0 = loss(X)
    worst = math.inf
    for _ in range(count):
        H = random_hermitian(X.shape[0], rng, np.iscomplexobj(X))
        worst = min(worst, loss(symmetrize(Xh @ expm(eps * H) @ Xh)) - q0)
    return worst


# ---------------------------------------------------------------------------
# losses and gradients


def _kind_param(kind: str, param):
    if kind not in KINDS:
        raise ValueError(f"unknown loss kind {kind!r}; expected one of {KINDS}")
    if kind == "hellinger":
        if not isinstance(param, GeneratorMeasure):
            raise TypeError("hellinger loss needs a GeneratorMeasure parameter")
        return param
    if kind == "sigma":
        return _potential(param)
    return None


def loss_q(kind: str, E: WeightedEnsemble, X, param=None) -> float:
    """Weighted objective ``sum_j w_j D(A_j, X)``.

    ``D`` is the squared RTM distance, the squared Bures-Wasserstein
    distance, ``phi_mu`` or ``phi_sigma`` for ``kind`` in ``rtm``, ``bw``,
    ``hellinger`` and ``sigma``.  The sigma loss may be ``inf``.
    """
    p = _kind_param(kind, param)
    X = as_spd(X, "X")
    if kind == "rtm":
        return float(sum(w * d_rtm(A, X) ** 2 for w, A in E))
    if kind == "bw":
        return float(sum(w * d_bw(A, X) ** 2 for w, A in E))
    if kind == "hellinger":
        return float(sum(w * phi_mu(p, A, X) for w, A in E))
    return float(sum(w * phi_sigma(p, A, X) for w, A in E))


def loss_gradient(kind: str, E: WeightedEnsemble, X, param=None) -> np.ndarray:
    """Hermitian ``G`` with ``DQ(X)[Y] = tr(G Y)`` for the loss of :func:`loss_q`."""
    p = _kind_param(kind, param)
    X = as_spd(X, "X")
    if kind == "rtm":
        Xih = invsqrtm(X)
        return symmetrize(2 * Xih @ karcher_residual(E, X) @ Xih)
    if kind == "bw":
        Xih = invsqrtm(X)
        return symmetrize(Xih @ (X - bw_map(E, X)) @ Xih)
    if kind == "hellinger":
        return hellinger_stationarity(p, E, X)
    Aihs = [invsqrtm(A) for A in E.matrices]
    return _sigma_gradient(E, _sigma_terms(p, E, X, Aihs, second=False))


@dataclass(frozen=True)
class GradientCheck:
    """Outcome of :func:`gradient_check`.

    ``worst_relative`` divides by the larger of the two derivative values and
    is meaningless where the gradient vanishes; use ``largest_derivative``
    there.
    """

    worst_relative: float
    worst_absolute: float
    largest_derivative: float
    analytic: tuple = field(repr=False, default=())
    numeric: tuple = field(repr=False, default=())


def gradient_check(kind: str, E: WeightedEnsemble, X, param=None, step: float = 1e-5,
                   n_dirs: int = 20, seed=0) -> GradientCheck:
    """Compare ``tr(G Y)`` with central differences of the loss along random Hermitian ``Y``."""
    rng = np.random.default_rng(seed)
    X = as_spd(X, "X")
    p = _kind_param(kind, param) if kind != "hellinger" else param
    G = loss_gradient(kind, E, X, p)
    an, nu = [], []
    for _ in range(n_dirs):
        Y = random_hermitian(E.dim, rng, E.iscomplex or np.iscomplexobj(X))
        an.append(float(np.real(np.trace(G @ Y))))
        qp = loss_q(kind, E, X + step * Y, p)
        qm = loss_q(kind, E, X - step * Y, p)
        nu.append((qp - qm) / (2 * step))
    an, nu = np.array(an), np.array(nu)
    err = np.abs(an - nu)
    den = np.maximum(np.abs(an), np.abs(nu))
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(den > 0, err / den, 0.0)
    return GradientCheck(float(rel.max()), float(err.max()), float(np.abs(an).max()), tuple(an), tuple(nu))


__all__ = [
    "GradientCheck",
    "SolverConfig",
    "SolverReport",
    "WeightedEnsemble",
    "bw_barycenter",
    "bw_map",
    "compare_initializations",
    "geometric_barycenter_closed_form",
    "gradient_check",
    "hellinger_barycenter",
    "hellinger_kernel",
    "hellinger_map",
    "hellinger_stationarity",
    "initial_point",
    "ka_barycenter",
    "ka_residual",
    "karcher_mean",
    "karcher_residual",
    "loss_gradient",
    "loss_q",
    "perturbation_margin",
]
