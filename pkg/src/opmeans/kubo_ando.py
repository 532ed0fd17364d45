"""Kubo-Ando means from operator monotone generators.

A mean is described either by a probability measure ``mu`` on ``[0, 1]``,
which generates

    f_mu(x) = int x / ((1 - l) x + l) dmu(l),

or directly by a generator triple ``(f, f', f^{-1})``.  The mean of two
positive definite matrices is ``A^(1/2) f(A^(-1/2) B A^(-1/2)) A^(1/2)``.
"""

from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .errors import DomainError
from .hermitian import as_spd, invm, invsqrtm, matrix_function, sqrtm, symmetrize
from .quadrature import gauss_jacobi_unit, gauss_legendre_unit

MASS_TOL = 1e-10
DEFAULT_NODES = 64
INVERSE_RTOL = 1e-12
#: grid on which node doubling is checked
REFINEMENT_GRID = np.geomspace(0.1, 10.0, 41)
_CHECK_GRID = np.geomspace(1e-3, 1e3, 61)


def _inv(v: float) -> float:
    if v == 0:
        return math.inf
    if math.isinf(v):
        return 0.0
    return 1.0 / v


def _positive_x(x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(x > 0)) or np.any(~np.isfinite(x)):
        bad = x[~((x > 0) & np.isfinite(x))][0]
        raise DomainError(f"generator evaluated outside (0, inf): x = {bad!r}")
    return x


def _scalar_or_array(x, out):
    return float(out[0]) if np.ndim(x) == 0 else out


# ---------------------------------------------------------------------------
# measures


def _density_nodes(family: str, p: Optional[float], n: int):
    if family == "jacobi":
        if p is None or not 0 < p < 1:
            raise DomainError(f"jacobi density needs 0 < p < 1, got p={p!r}")
        return gauss_jacobi_unit(n, p - 1.0, -p)
    if family == "legendre":
        return gauss_legendre_unit(n)
    raise ValueError(f"unknown density family {family!r}")


@dataclass(frozen=True, eq=False)
class GeneratorMeasure:
    """Probability measure on ``[0, 1]``: weighted atoms plus quadrature nodes.

    The quadrature nodes stand for an absolutely continuous part; numerically
    they are handled like atoms, but are kept apart for serialization.
    ``density`` records the recipe that produced the nodes, if any.
    """

    atom_locations: np.ndarray
    atom_masses: np.ndarray
    node_locations: np.ndarray = field(default_factory=lambda: np.empty(0))
    node_weights: np.ndarray = field(default_factory=lambda: np.empty(0))
    density: Optional[dict] = None

    def __post_init__(self):
        for name in ("atom_locations", "atom_masses", "node_locations", "node_weights"):
            arr = np.array(getattr(self, name), dtype=float).ravel()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.atom_locations.shape != self.atom_masses.shape:
            raise ValueError("atom locations and masses differ in length")
        if self.node_locations.shape != self.node_weights.shape:
            raise ValueError("node locations and weights differ in length")
        lam, w = self.support
        if lam.size == 0:
            raise DomainError("measure has no mass")
        if np.any((lam < 0) | (lam > 1)) or not np.all(np.isfinite(lam)):
            raise DomainError("measure support must lie in [0, 1]")
        if np.any(self.node_locations <= 0) or np.any(self.node_locations >= 1):
            raise DomainError("density nodes must lie in the open interval (0, 1)")
        if np.any(w <= 0):
            raise DomainError("masses and quadrature weights must be positive")
        if abs(w.sum() - 1) > MASS_TOL:
            raise DomainError(f"total mass is {w.sum()!r}, expected 1")

    def __repr__(self):
        atoms = ", ".join(f"({l:g}, {w:g})" for l, w in zip(self.atom_locations, self.atom_masses))
        dens = f", density={self.density}" if self.density else ""
        return f"GeneratorMeasure(atoms=[{atoms}]{dens}, center={self.center:.6g})"

    # -- construction -----------------------------------------------------

    @classmethod
    def from_atoms(cls, atoms) -> "GeneratorMeasure":
        """Discrete measure from ``[(location, mass), ...]``."""
        atoms = np.asarray(atoms, dtype=float).reshape(-1, 2)
        return cls(atoms[:, 0], atoms[:, 1])

    @classmethod
    def dirac(cls, location: float) -> "GeneratorMeasure":
        return cls([location], [1.0])

    @classmethod
    def build(cls, atoms=(), density: Optional[dict] = None) -> "GeneratorMeasure":
        """Atoms plus an optional density recipe.

        ``density`` has keys ``family`` (``"jacobi"`` for the Beta(p, 1-p)
        density that generates ``x**p``, or ``"legendre"`` for the uniform
        density), ``p``, ``nodes`` and optionally ``mass`` (defaults to the
        mass not carried by atoms).
        """
        atoms = np.asarray(atoms, dtype=float).reshape(-1, 2)
        if density is None:
            return cls(atoms[:, 0], atoms[:, 1])
        family = density["family"]
        p = density.get("p")
        n = int(density.get("nodes", DEFAULT_NODES))
        mass = float(density.get("mass", 1.0 - atoms[:, 1].sum()))
        if not mass > 0:
            raise DomainError("density part must carry positive mass")
        s, q = _density_nodes(family, p, n)
        s2, q2 = _density_nodes(family, p, 2 * n)
        change = np.max(np.abs(_kernels.fmu(s, q, REFINEMENT_GRID) - _kernels.fmu(s2, q2, REFINEMENT_GRID)))
        if change >= 1e-8:
            warnings.warn(
                f"{family} density with {n} nodes is under-resolved: doubling the node "
                f"count changes the generator by {change:.2e}",
                RuntimeWarning,
                stacklevel=2,
            )
        recipe = {"family": family, "nodes": n, "mass": mass}
        if p is not None:
            recipe["p"] = float(p)
        return cls(atoms[:, 0], atoms[:, 1], s, mass * q, recipe)

    @classmethod
    def power(cls, p: float, nodes: int = DEFAULT_NODES) -> "GeneratorMeasure":
        """Gauss-Jacobi discretization of the measure generating ``x**p``."""
        return _power_measure(float(p), int(nodes))

    @classmethod
    def uniform(cls, nodes: int = DEFAULT_NODES) -> "GeneratorMeasure":
        """Gauss-Legendre discretization of Lebesgue measure on ``[0, 1]``."""
        return cls.build(density={"family": "legendre", "nodes": nodes})

    # -- evaluation -------------------------------------------------------

    @functools.cached_property
    def support(self):
        lam = np.ascontiguousarray(np.concatenate([self.atom_locations, self.node_locations]))
        w = np.ascontiguousarray(np.concatenate([self.atom_masses, self.node_weights]))
        return lam, w

    @property
    def total_mass(self) -> float:
        return float(self.support[1].sum())

    @property
    def center(self) -> float:
        """Center of mass ``c(mu)``, the weight parameter of the generated mean."""
        lam, w = self.support
        return float(np.dot(lam, w))

    def f(self, x):
        xa = _positive_x(x)
        return _scalar_or_array(x, _kernels.fmu(*self.support, xa))

    def f_prime(self, x):
        xa = _positive_x(x)
        return _scalar_or_array(x, _kernels.fmu_prime(*self.support, xa))

    def loewner(self, s) -> np.ndarray:
        """Divided differences ``[f(s_i) - f(s_k)] / (s_i - s_k)`` (``f'`` on the diagonal)."""
        return _kernels.fmu_loewner(*self.support, _positive_x(s))

    @functools.cached_property
    def asymptotes(self):
        """``(f(0+), f(inf), lim f(x)/x at 0+, lim f(x)/x at inf)``."""
        lam, w = self.support
        at0 = w[lam == 0].sum()
        at1 = w[lam == 1].sum()
        finf = math.inf if at1 > 0 else float(np.sum(w / (1 - lam)))
        s0 = math.inf if at0 > 0 else float(np.sum(w / lam))
        return float(at0), finf, s0, float(at1)

    @property
    def range(self):
        return self.asymptotes[0], self.asymptotes[1]

    def f_inverse(self, t):
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        lo, hi = self.range
        if np.any(~((t_arr > lo) & (t_arr < hi))):
            bad = t_arr[~((t_arr > lo) & (t_arr < hi))][0]
            raise DomainError(f"{bad!r} is outside the range ({lo!r}, {hi!r}) of the generator")
        out = _kernels.fmu_inverse(*self.support, t_arr, INVERSE_RTOL)
        return _scalar_or_array(t, out)

    def reflected(self) -> "GeneratorMeasure":
        """Image under ``l -> 1 - l``; generates the transposed mean."""
        return GeneratorMeasure(
            1 - self.atom_locations, self.atom_masses, 1 - self.node_locations, self.node_weights
        )

    def hockey_stick(self, s) -> np.ndarray:
        """``int (l - s)_+ dmu(l)`` for each ``s``."""
        lam, w = self.support
        s = np.atleast_1d(np.asarray(s, dtype=float))
        return (w * np.maximum(lam[None, :] - s[:, None], 0)).sum(axis=1)


@functools.lru_cache(maxsize=64)
def _power_measure(p: float, nodes: int) -> GeneratorMeasure:
    if p == 1.0:
        return GeneratorMeasure.dirac(1.0)
    return GeneratorMeasure.build(density={"family": "jacobi", "p": p, "nodes": nodes})


@dataclass(frozen=True, eq=False)
class HalfLineMeasure:
    """Finite positive measure on ``[0, inf]`` (``inf`` allowed as an atom).

    Generates ``f(x) = int x (1 + t) / (x + t) dm(t)``.
    """

    atom_locations: np.ndarray
    atom_masses: np.ndarray
    node_locations: np.ndarray = field(default_factory=lambda: np.empty(0))
    node_weights: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        for name in ("atom_locations", "atom_masses", "node_locations", "node_weights"):
            arr = np.array(getattr(self, name), dtype=float).ravel()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        t = np.concatenate([self.atom_locations, self.node_locations])
        w = np.concatenate([self.atom_masses, self.node_weights])
        if np.any(t < 0) or np.any(np.isnan(t)):
            raise DomainError("half-line measure support must lie in [0, inf]")
        if np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise DomainError("half-line masses must be positive and finite")

    def f(self, x):
        xa = _positive_x(x)[:, None]
        t = np.concatenate([self.atom_locations, self.node_locations])
        w = np.concatenate([self.atom_masses, self.node_weights])
        with np.errstate(invalid="ignore"):
            kernel = np.where(np.isinf(t), xa, xa * (1 + t) / (xa + t))
        return _scalar_or_array(x, (w * kernel).sum(axis=1))


def pushforward_to_unit(m: HalfLineMeasure) -> GeneratorMeasure:
    """Push ``m`` forward along ``t -> t / (t + 1)`` (``inf -> 1``).

    Masses and quadrature weights travel with their points unchanged.
    """

    def T(t):
        with np.errstate(invalid="ignore"):
            return np.where(np.isinf(t), 1.0, t / (t + 1))

    return GeneratorMeasure(T(m.atom_locations), m.atom_masses, T(m.node_locations), m.node_weights)


# ---------------------------------------------------------------------------
# descriptors


def _invert_increasing(f, fp, t, rtol=INVERSE_RTOL):
    """Vectorized safeguarded Newton/bisection for a strictly increasing ``f`` on (0, inf)."""
    t = np.asarray(t, dtype=float)
    lo, hi = t / 2, t * 2
    for _ in range(2100):
        m = f(lo) > t
        if not m.any():
            break
        lo = np.where(m, lo / 2, lo)
    for _ in range(2100):
        m = f(hi) < t
        if not m.any():
            break
        hi = np.where(m, hi * 2, hi)
    u = np.sqrt(lo * hi)
    done = np.zeros(t.shape, dtype=bool)
    for _ in range(200):
        r = f(u) - t
        done |= r == 0
        above = r > 0
        hi = np.where(above, u, hi)
        lo = np.where(above, lo, u)
        with np.errstate(all="ignore"):
            un = u - r / fp(u)
        bad = ~((un >= lo) & (un <= hi))
        un = np.where(bad, (lo + hi) / 2, un)
        step = np.abs(un - u)
        u = np.where(done, u, un)
        done |= (step <= rtol * u) | (hi - lo <= rtol * u)
        if done.all():
            break
    return u


@dataclass(frozen=True, eq=False)
class MeanDescriptor:
    """An operator connection given by its generator ``f`` (and optionally a measure).

    ``f``, ``f_prime`` and ``f_inverse`` are vectorized callables on positive
    arrays; ``f_inverse`` may be ``None``, in which case the inverse is
    computed numerically.  ``asymptotes`` holds ``f(0+)``, ``f(inf)`` and the
    limits of ``f(x)/x`` at ``0+`` and ``inf``; the first two give the range.
    A descriptor with ``f(1) != 1`` is a connection, not a mean, and must be
    flagged ``connection=True``.
    """

    name: str
    f_raw: Callable
    f_prime_raw: Callable
    f_inverse_raw: Optional[Callable]
    asymptotes: tuple
    measure: Optional[GeneratorMeasure] = None
    connection: bool = False

    def __post_init__(self):
        y = self.f_raw(_CHECK_GRID)
        if not np.all(np.diff(y) > 0):
            raise DomainError(f"generator of {self.name} is not strictly increasing")
        if not self.connection and abs(self.f(1.0) - 1) > 1e-10:
            raise DomainError(f"generator of {self.name} has f(1) = {self.f(1.0)!r}, expected 1")
        if self.measure is not None:
            gap = np.max(np.abs(self.measure.f(_CHECK_GRID[10:-10]) - y[10:-10]) / y[10:-10])
            if gap > 1e-8:
                raise DomainError(f"measure and generator of {self.name} disagree by {gap:.2e}")

    # -- named constructors -------------------------------------------------

    @classmethod
    def from_measure(cls, mu: GeneratorMeasure, name: str = "measure") -> "MeanDescriptor":
        return cls(name, mu.f, mu.f_prime, mu.f_inverse, mu.asymptotes, measure=mu)

    @classmethod
    def arithmetic(cls, lam: float = 0.5) -> "MeanDescriptor":
        lam = float(lam)
        if not 0 < lam <= 1:
            raise DomainError(f"arithmetic weight must lie in (0, 1], got {lam}")
        mu = GeneratorMeasure.from_atoms([(0.0, 1 - lam), (1.0, lam)] if lam < 1 else [(1.0, 1.0)])
        return cls(
            f"arithmetic:{lam:g}",
            lambda x: (1 - lam) + lam * np.asarray(x, dtype=float),
            lambda x: np.full(np.shape(x), lam),
            lambda t: (np.asarray(t, dtype=float) - (1 - lam)) / lam,
            (1 - lam, math.inf, math.inf if lam < 1 else 1.0, lam),
            measure=mu,
        )

    @classmethod
    def harmonic(cls, lam: float = 0.5) -> "MeanDescriptor":
        lam = float(lam)
        if not 0 < lam <= 1:
            raise DomainError(f"harmonic weight must lie in (0, 1], got {lam}")
        return cls(
            f"harmonic:{lam:g}",
            lambda x: x / ((1 - lam) * np.asarray(x, dtype=float) + lam),
            lambda x: lam / ((1 - lam) * np.asarray(x, dtype=float) + lam) ** 2,
            lambda t: lam * np.asarray(t, dtype=float) / (1 - (1 - lam) * np.asarray(t, dtype=float)),
            (0.0, _inv(1 - lam), 1 / lam, 0.0 if lam < 1 else 1.0),
            measure=GeneratorMeasure.dirac(lam),
        )

    @classmethod
    def geometric(cls, p: float = 0.5, with_measure: bool = True) -> "MeanDescriptor":
        """Weighted geometric mean generated by ``x**p``.

        With ``with_measure`` the Gauss-Jacobi representing measure is
        attached (and checked against ``x**p``).
        """
        p = float(p)
        if not 0 < p <= 1:
            raise DomainError(f"geometric weight must lie in (0, 1], got {p}")
        mu = _power_measure(p, DEFAULT_NODES) if with_measure else None
        return cls(
            f"geometric:{p:g}",
            lambda x: np.asarray(x, dtype=float) ** p,
            lambda x: p * np.asarray(x, dtype=float) ** (p - 1),
            lambda t: np.asarray(t, dtype=float) ** (1 / p),
            (0.0, math.inf, math.inf if p < 1 else 1.0, 0.0 if p < 1 else 1.0),
            measure=mu,
        )

    @classmethod
    def parallel_sum(cls) -> "MeanDescriptor":
        """The parallel sum ``A : B``; a connection with ``f(1) = 1/2``."""
        return cls(
            "parallel-sum",
            lambda x: x / (np.asarray(x, dtype=float) + 1),
            lambda x: 1 / (np.asarray(x, dtype=float) + 1) ** 2,
            lambda t: t / (1 - np.asarray(t, dtype=float)),
            (0.0, 1.0, 1.0, 0.0),
            connection=True,
        )

    @classmethod
    def ah_geometric(cls, alpha: float) -> "MeanDescriptor":
        """``(A !_alpha B) # (A nabla_alpha B)``, the geometric mean of the
        weighted harmonic and arithmetic means."""
        a = float(alpha)
        if not 0 < a < 1:
            raise DomainError(f"ah-geo weight must lie in (0, 1), got {a}")

        def f(x):
            x = np.asarray(x, dtype=float)
            return np.sqrt(x * (1 - a + a * x) / ((1 - a) * x + a))

        def fp(x):
            x = np.asarray(x, dtype=float)
            num = x * (1 - a + a * x)
            den = (1 - a) * x + a
            dnum = 1 - a + 2 * a * x
            return (dnum * den - num * (1 - a)) / den**2 / (2 * f(x))

        def finv(t):
            t = np.asarray(t, dtype=float)
            b = (1 - a) * (1 - t**2)
            return (np.sqrt(b**2 + 4 * a**2 * t**2) - b) / (2 * a)

        return cls(f"ah-geo:{a:g}", f, fp, finv, (0.0, math.inf, math.inf, 0.0))

    @classmethod
    def heinz(cls, a: float = 0.25) -> "MeanDescriptor":
        """Heinz mean ``(x**a + x**(1-a)) / 2``; symmetric with full range for ``0 < a < 1``."""
        a = float(a)
        if not 0 < a < 1:
            raise DomainError(f"heinz parameter must lie in (0, 1), got {a}")
        return cls(
            f"heinz:{a:g}",
            lambda x: (np.asarray(x, dtype=float) ** a + np.asarray(x, dtype=float) ** (1 - a)) / 2,
            lambda x: (a * np.asarray(x, dtype=float) ** (a - 1) + (1 - a) * np.asarray(x, dtype=float) ** (-a)) / 2,
            None,
            (0.0, math.inf, math.inf, 0.0),
        )

    @classmethod
    def logarithmic(cls) -> "MeanDescriptor":
        """Logarithmic mean ``(x - 1) / log x``; symmetric with full range."""

        def f(x):
            x = np.asarray(x, dtype=float)
            u = x - 1
            near = np.abs(u) < 1e-4
            with np.errstate(all="ignore"):
                far = u / np.log(x)
            series = 1 + u / 2 - u**2 / 12 + u**3 / 24
            return np.where(near, series, far)

        def fp(x):
            x = np.asarray(x, dtype=float)
            u = x - 1
            near = np.abs(u) < 1e-4
            with np.errstate(all="ignore"):
                lg = np.log(x)
                far = (lg - u / x) / lg**2
            series = 0.5 - u / 6 + u**2 / 8
            return np.where(near, series, far)

        return cls("logarithmic", f, fp, None, (0.0, math.inf, math.inf, 0.0))

    # -- evaluation ---------------------------------------------------------

    def f(self, x):
        xa = _positive_x(x)
        return _scalar_or_array(x, np.asarray(self.f_raw(xa), dtype=float))

    def f_prime(self, x):
        xa = _positive_x(x)
        return _scalar_or_array(x, np.asarray(self.f_prime_raw(xa), dtype=float))

    @property
    def range(self):
        return self.asymptotes[0], self.asymptotes[1]

    @property
    def full_range(self) -> bool:
        return self.asymptotes[0] == 0 and math.isinf(self.asymptotes[1])

    @property
    def weight(self) -> float:
        """Weight parameter ``W = f'(1)``."""
        return self.f_prime(1.0)

    def f_inverse(self, t):
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        lo, hi = self.range
        inside = (t_arr > lo) & (t_arr < hi)
        if not inside.all():
            raise DomainError(f"{t_arr[~inside][0]!r} is outside the range ({lo!r}, {hi!r}) of {self.name}")
        if self.f_inverse_raw is not None:
            out = np.asarray(self.f_inverse_raw(t_arr), dtype=float)
        else:
            out = _invert_increasing(self.f_raw, self.f_prime_raw, t_arr)
        return _scalar_or_array(t, out)

    def is_symmetric(self, grid=None, tol: float = 1e-10) -> bool:
        """Check ``f(x) = x f(1/x)`` on a grid."""
        x = np.geomspace(0.1, 10, 41) if grid is None else np.asarray(grid, dtype=float)
        fx = self.f(x)
        return bool(np.all(np.abs(fx - x * self.f(1 / x)) <= tol * np.maximum(1, fx)))


def adjoint(sigma: MeanDescriptor) -> MeanDescriptor:
    """Adjoint connection ``A s* B = (A^-1 s B^-1)^-1``, generated by ``1/f(1/x)``."""
    f, fp, finv = sigma.f_raw, sigma.f_prime_raw, sigma.f_inverse_raw
    f0, finf, s0, sinf = sigma.asymptotes

    def f_adj(x):
        return 1 / f(1 / np.asarray(x, dtype=float))

    def fp_adj(x):
        x = np.asarray(x, dtype=float)
        return fp(1 / x) / (x * f(1 / x)) ** 2

    def finv_adj(t):
        return 1 / finv(1 / np.asarray(t, dtype=float))

    return MeanDescriptor(
        f"adjoint({sigma.name})",
        f_adj,
        fp_adj,
        finv_adj if finv is not None else None,
        (_inv(finf), _inv(f0), _inv(sinf), _inv(s0)),
        connection=sigma.connection,
    )


def transpose(sigma: MeanDescriptor) -> MeanDescriptor:
    """Transposed connection ``A s^t B = B s A``, generated by ``x f(1/x)``."""
    f, fp = sigma.f_raw, sigma.f_prime_raw
    f0, finf, s0, sinf = sigma.asymptotes

    def f_t(x):
        x = np.asarray(x, dtype=float)
        return x * f(1 / x)

    def fp_t(x):
        x = np.asarray(x, dtype=float)
        return f(1 / x) - fp(1 / x) / x

    mu = sigma.measure.reflected() if sigma.measure is not None else None
    finv_t = None
    if mu is not None:
        finv_t = mu.f_inverse
    return MeanDescriptor(
        f"transpose({sigma.name})",
        f_t,
        fp_t,
        finv_t,
        (sinf, s0, finf, f0),
        measure=mu,
        connection=sigma.connection,
    )


_NAMED = {
    "arithmetic": MeanDescriptor.arithmetic,
    "geometric": MeanDescriptor.geometric,
    "harmonic": MeanDescriptor.harmonic,
    "ah-geo": MeanDescriptor.ah_geometric,
    "heinz": MeanDescriptor.heinz,
}


def parse_mean(spec: str) -> MeanDescriptor:
    """Build a descriptor from a string such as ``"geometric:0.5"``.

    Accepted forms: ``arithmetic:l``, ``geometric:p``, ``harmonic:l``,
    ``ah-geo:a``, ``heinz:a``, ``logarithmic``, ``parallel-sum``, ``#``
    (the geometric mean), and ``adjoint:<spec>`` / ``transpose:<spec>``.
    """
    spec = spec.strip()
    if spec == "#":
        return MeanDescriptor.geometric(0.5)
    if spec == "parallel-sum":
        return MeanDescriptor.parallel_sum()
    if spec == "logarithmic":
        return MeanDescriptor.logarithmic()
    head, _, rest = spec.partition(":")
    if head == "adjoint":
        return adjoint(parse_mean(rest))
    if head == "transpose":
        return transpose(parse_mean(rest))
    if head in _NAMED:
        try:
            param = float(rest) if rest else 0.5
        except ValueError:
            raise ValueError(f"bad parameter in mean spec {spec!r}") from None
        return _NAMED[head](param)
    raise ValueError(f"unknown mean {spec!r}")


# ---------------------------------------------------------------------------
# matrix means


def mean(sigma, A, B) -> np.ndarray:
    """Kubo-Ando mean (or connection) ``A sigma B``.

    ``sigma`` may be a :class:`MeanDescriptor` or a :class:`GeneratorMeasure`.
    """
    A = as_spd(A, "A")
    B = as_spd(B, "B")
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} vs {B.shape}")
    f = sigma.f
    Ah = sqrtm(A)
    Aih = invsqrtm(A)
    M = symmetrize(Aih @ B @ Aih)
    return symmetrize(Ah @ matrix_function(M, f) @ Ah)


def parallel_sum(A, B) -> np.ndarray:
    """``(A^-1 + B^-1)^-1``."""
    return invm(invm(as_spd(A, "A")) + invm(as_spd(B, "B")))


def geometric_mean(A, B, t: float = 0.5) -> np.ndarray:
    """Weighted geometric mean ``A #_t B`` through the closed form."""
    A = as_spd(A, "A")
    Ah = sqrtm(A)
    Aih = invsqrtm(A)
    return symmetrize(Ah @ matrix_function(Aih @ as_spd(B, "B") @ Aih, lambda x: x**t) @ Ah)


def convex_order_leq(mu: GeneratorMeasure, nu: GeneratorMeasure, grid_size: int = 101, tol: float = 1e-10) -> bool:
    """Decide ``mu <= nu`` in the convex order.

    For measures on ``[0, 1]`` this holds iff the centers agree and
    ``int (l - s)_+ dmu <= int (l - s)_+ dnu`` for every ``s``.  Both sides are
    piecewise linear in ``s`` with kinks at support points, so checking the
    support points (plus a uniform grid) is exact.
    """
    if abs(mu.center - nu.center) > tol:
        return False
    s = np.unique(np.concatenate([mu.support[0], nu.support[0], np.linspace(0, 1, grid_size)]))
    return bool(np.all(mu.hockey_stick(s) <= nu.hockey_stick(s) + tol))


def weight_parameter(sigma) -> float:
    """``W(sigma) = f'(1)``; equals the center of mass of a representing measure."""
    if isinstance(sigma, GeneratorMeasure):
        return sigma.center
    return sigma.weight


__all__ = [
    "GeneratorMeasure",
    "HalfLineMeasure",
    "MeanDescriptor",
    "adjoint",
    "convex_order_leq",
    "geometric_mean",
    "mean",
    "parallel_sum",
    "parse_mean",
    "pushforward_to_unit",
    "transpose",
    "weight_parameter",
]
