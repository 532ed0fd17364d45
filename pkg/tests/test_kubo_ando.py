from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from opmeans.errors import DomainError
from opmeans.hermitian import hs_norm, invsqrtm, loewner_leq, powm, random_spd, sqrtm
from opmeans.kubo_ando import (
    GeneratorMeasure,
    HalfLineMeasure,
    MeanDescriptor,
    adjoint,
    convex_order_leq,
    geometric_mean,
    mean,
    parallel_sum,
    parse_mean,
    pushforward_to_unit,
    transpose,
    weight_parameter,
)
from opmeans.verify import random_discrete_measure

seeds = st.integers(0, 2**32 - 1)
unit = st.floats(0.02, 0.98)
grid = np.geomspace(0.05, 20, 33)


# -- measures and generators ------------------------------------------------


@given(unit, st.floats(1e-3, 1e3))
def test_single_atom_is_weighted_harmonic(lam, x):
    mu = GeneratorMeasure.dirac(lam)
    assert mu.f(x) == pytest.approx(x / ((1 - lam) * x + lam), rel=1e-14)
    assert mu.center == pytest.approx(lam)


@given(unit)
def test_endpoint_atoms_give_arithmetic(lam):
    mu = GeneratorMeasure.from_atoms([(0.0, 1 - lam), (1.0, lam)])
    np.testing.assert_allclose(mu.f(grid), (1 - lam) + lam * grid, rtol=1e-14)
    assert mu.center == pytest.approx(lam)
    assert mu.range == (pytest.approx(1 - lam), np.inf)


def test_jacobi_square_root_value():
    assert GeneratorMeasure.power(0.5).f(4.0) == pytest.approx(2.0, abs=1e-6)


def test_jacobi_center_is_derivative_at_one():
    mu = GeneratorMeasure.power(0.3)
    h = 1e-6
    fd = (mu.f(1 + h) - mu.f(1 - h)) / (2 * h)
    assert mu.center == pytest.approx(0.3, abs=1e-6)
    assert mu.center == pytest.approx(fd, abs=1e-6)


def test_under_resolved_density_warns():
    with pytest.warns(RuntimeWarning, match="under-resolved"):
        GeneratorMeasure.power(0.5, 4)


def test_measure_validation():
    with pytest.raises(DomainError):
        GeneratorMeasure([0.5], [0.7])
    with pytest.raises(DomainError):
        GeneratorMeasure([1.5], [1.0])
    with pytest.raises(DomainError):
        GeneratorMeasure.dirac(0.5).f(-1.0)


@given(st.integers(1, 6), seeds)
def test_generator_normalized_increasing_concave(atoms, seed):
    mu = random_discrete_measure(np.random.default_rng(seed), atoms)
    assert mu.f(1.0) == pytest.approx(1.0, abs=1e-14)
    x = np.linspace(0.1, 10, 50)
    fx = mu.f(x)
    assert np.all(np.diff(fx) > 0)
    assert np.all(np.diff(fx, 2) <= 1e-12)


@given(st.integers(1, 6), seeds, st.floats(1e-2, 1e2))
def test_inverse_round_trip(atoms, seed, x):
    mu = random_discrete_measure(np.random.default_rng(seed), atoms)
    assert mu.f_inverse(mu.f(x)) == pytest.approx(x, rel=1e-10)


def test_inverse_outside_range():
    mu = GeneratorMeasure.dirac(0.5)  # range (0, 2)
    with pytest.raises(DomainError):
        mu.f_inverse(2.0)


def test_pushforward_examples():
    assert pushforward_to_unit(HalfLineMeasure([0.0], [1.0])).atom_locations[0] == 0.0
    mu = pushforward_to_unit(HalfLineMeasure([1.0], [1.0]))
    assert mu.atom_locations[0] == pytest.approx(0.5)
    np.testing.assert_allclose(mu.f(grid), 2 * grid / (grid + 1), rtol=1e-14)
    assert pushforward_to_unit(HalfLineMeasure([np.inf], [1.0])).atom_locations[0] == 1.0


@given(seeds)
def test_pushforward_preserves_generator(seed):
    rng = np.random.default_rng(seed)
    t = rng.exponential(2.0, 4)
    m = HalfLineMeasure(t, rng.dirichlet(np.ones(4)))
    np.testing.assert_allclose(pushforward_to_unit(m).f(grid), m.f(grid), rtol=1e-12)


# -- descriptors ---------------------------------------------------------


@pytest.mark.parametrize("spec", ["arithmetic:0.3", "harmonic:0.3", "geometric:0.3", "geometric:0.5"])
def test_closed_forms_match_measures(spec):
    sigma = parse_mean(spec)
    np.testing.assert_allclose(sigma.measure.f(grid), sigma.f(grid), rtol=1e-6)
    assert weight_parameter(sigma) == pytest.approx(sigma.measure.center, abs=1e-6)


@pytest.mark.parametrize("spec", ["arithmetic:0.3", "harmonic:0.6", "geometric:0.2", "ah-geo:0.4", "heinz:0.1",
                                  "logarithmic", "#"])
def test_adjoint_and_transpose_involutions(spec):
    s = parse_mean(spec)
    np.testing.assert_allclose(adjoint(adjoint(s)).f(grid), s.f(grid), rtol=1e-12)
    np.testing.assert_allclose(transpose(transpose(s)).f(grid), s.f(grid), rtol=1e-12)
    np.testing.assert_allclose(adjoint(s).f(grid), 1 / s.f(1 / grid), rtol=1e-12)


def test_uniform_measure_generates_adjoint_logarithmic():
    # int_0^1 x / ((1 - l) x + l) dl = x log x / (x - 1)
    x = grid[grid != 1.0]
    ref = x * np.log(x) / (x - 1)
    np.testing.assert_allclose(GeneratorMeasure.uniform().f(x), ref, rtol=1e-8)
    np.testing.assert_allclose(parse_mean("adjoint:logarithmic").f(x), ref, rtol=1e-12)


def test_adjoint_swaps_arithmetic_and_harmonic():
    np.testing.assert_allclose(adjoint(MeanDescriptor.arithmetic(0.3)).f(grid),
                               MeanDescriptor.harmonic(0.3).f(grid), rtol=1e-14)


@pytest.mark.parametrize("spec", ["#", "heinz:0.25", "logarithmic", "adjoint:logarithmic", "arithmetic:0.5"])
def test_symmetric_means(spec):
    assert parse_mean(spec).is_symmetric()


def test_asymmetric_mean():
    assert not parse_mean("geometric:0.3").is_symmetric()


@pytest.mark.parametrize("spec", ["#", "heinz:0.25", "logarithmic", "adjoint:logarithmic"])
def test_full_range(spec):
    assert parse_mean(spec).full_range


@pytest.mark.parametrize("spec", ["arithmetic:0.5", "harmonic:0.5", "parallel-sum"])
def test_not_full_range(spec):
    assert not parse_mean(spec).full_range


@pytest.mark.parametrize("bad", ["bogus", "geometric:x", "adjoint:"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_mean(bad)


# -- matrix means -----------------------------------------------------------


def test_arithmetic_and_geometric_examples():
    A, B = random_spd(3, 10, 0), random_spd(3, 10, 1)
    assert hs_norm(mean(GeneratorMeasure.from_atoms([(0, 0.5), (1, 0.5)]), A, B) - (A + B) / 2) <= 1e-12
    out = mean(MeanDescriptor.geometric(), np.eye(2), np.diag([4.0, 9.0]))
    np.testing.assert_allclose(out, np.diag([2.0, 3.0]), atol=1e-12)


@given(seeds, st.integers(2, 5), st.booleans())
def test_geometric_mean_closed_forms(seed, n, cplx):
    rng = np.random.default_rng(seed)
    A, B = random_spd(n, 20, rng, cplx), random_spd(n, 20, rng, cplx)
    G = mean(MeanDescriptor.geometric(), A, B)
    alt = sqrtm(B) @ sqrtm(invsqrtm(B) @ A @ invsqrtm(B)) @ sqrtm(B)
    assert hs_norm(G - alt) <= 1e-9
    assert hs_norm(G - geometric_mean(A, B)) <= 1e-9
    # A # B is the unique positive solution of X A^-1 X = B
    assert hs_norm(G @ np.linalg.inv(A) @ G - B) <= 1e-9 * (1 + hs_norm(B))


def test_parallel_sum_examples():
    np.testing.assert_allclose(parallel_sum(np.eye(2), np.eye(2)), np.eye(2) / 2)
    assert parallel_sum(np.array([[2.0]]), np.array([[2.0]]))[0, 0] == pytest.approx(1.0)
    A, B = random_spd(4, 10, 2), random_spd(4, 10, 3)
    assert hs_norm(parallel_sum(A, B) - mean(MeanDescriptor.parallel_sum(), A, B)) <= 1e-12
    # parallel sum is half the harmonic mean
    assert hs_norm(2 * parallel_sum(A, B) - mean(MeanDescriptor.harmonic(0.5), A, B)) <= 1e-12


@given(seeds, st.integers(2, 5))
def test_harmonic_geometric_arithmetic_chain(seed, n):
    rng = np.random.default_rng(seed)
    A, B = random_spd(n, 50, rng), random_spd(n, 50, rng)
    H = mean(MeanDescriptor.harmonic(), A, B)
    G = mean(MeanDescriptor.geometric(), A, B)
    M = mean(MeanDescriptor.arithmetic(), A, B)
    assert loewner_leq(H, G) and loewner_leq(G, M)


@given(seeds, st.sampled_from(["geometric:0.3", "ah-geo:0.25", "heinz:0.2", "logarithmic", "harmonic:0.7"]))
def test_transpose_swaps_arguments(seed, spec):
    rng = np.random.default_rng(seed)
    A, B = random_spd(3, 20, rng), random_spd(3, 20, rng)
    s = parse_mean(spec)
    assert hs_norm(mean(transpose(s), A, B) - mean(s, B, A)) <= 1e-9 * (1 + hs_norm(A))


@given(seeds, st.floats(0.05, 0.95))
def test_ah_geometric_generator(seed, alpha):
    s = MeanDescriptor.ah_geometric(alpha)
    x = np.geomspace(0.1, 10, 17)
    ref = np.sqrt(x * (1 - alpha + alpha * x) / ((1 - alpha) * x + alpha))
    np.testing.assert_allclose(s.f(x), ref, rtol=1e-13)
    rng = np.random.default_rng(seed)
    A, B = random_spd(3, 10, rng), random_spd(3, 10, rng)
    hm = mean(MeanDescriptor.harmonic(alpha), A, B)
    am = mean(MeanDescriptor.arithmetic(alpha), A, B)
    assert hs_norm(mean(s, A, B) - geometric_mean(hm, am)) <= 1e-9


def test_powers_commute_with_mean():
    D1, D2 = np.diag([1.0, 2.0]), np.diag([3.0, 5.0])
    out = mean(MeanDescriptor.geometric(0.3), D1, D2)
    np.testing.assert_allclose(out, powm(D1, 0.7) @ powm(D2, 0.3), atol=1e-12)


def test_mean_shape_mismatch():
    with pytest.raises(ValueError):
        mean(MeanDescriptor.geometric(), np.eye(2), np.eye(3))


# -- convex order --------------------------------------------------------------


@given(seeds)
def test_dirac_and_endpoints_bracket_every_measure(seed):
    mu = random_discrete_measure(np.random.default_rng(seed))
    c = mu.center
    assert convex_order_leq(GeneratorMeasure.dirac(c), mu)
    assert convex_order_leq(mu, GeneratorMeasure.from_atoms([(0, 1 - c), (1, c)]))


def test_convex_order_needs_equal_centers():
    assert not convex_order_leq(GeneratorMeasure.dirac(0.3), GeneratorMeasure.dirac(0.4))


def test_convex_order_rejects_reverse_spread():
    mu = GeneratorMeasure.dirac(0.5)
    nu = GeneratorMeasure.from_atoms([(0.2, 0.5), (0.8, 0.5)])
    assert convex_order_leq(mu, nu) and not convex_order_leq(nu, mu)


@given(seeds)
def test_convex_order_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    mu = random_discrete_measure(rng, 3)
    # nudge a random second measure onto the same center
    nu = random_discrete_measure(rng, 3)
    lam = np.clip(nu.atom_locations + (mu.center - nu.center), 0, 1)
    if abs(np.dot(lam, nu.atom_masses) - mu.center) > 1e-12:
        return
    nu = GeneratorMeasure(lam, nu.atom_masses)
    knots = rng.uniform(0, 1, (200, 3))
    slopes = np.sort(rng.normal(0, 1, (200, 4)), axis=1)

    def integral(m, k, s):
        l, w = m.support
        # convex piecewise-linear: max of affine pieces with increasing slopes
        pieces = [s[0] * l]
        offset = 0.0
        for j in range(3):
            offset += (s[j] - s[j + 1]) * k[j]
            pieces.append(s[j + 1] * l + offset)
        return float(np.dot(w, np.max(pieces, axis=0)))

    brute = all(integral(mu, k, s) <= integral(nu, k, s) + 1e-12 for k, s in zip(np.sort(knots, axis=1), slopes))
    if convex_order_leq(mu, nu):
        assert brute
