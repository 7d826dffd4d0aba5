import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatwell import (
    DomainError,
    PhysicalConstants,
    PowerWell,
    ReducedProblem,
    harmonic_frequency,
    reduce,
)
from flatwell.trial import (
    beta_for,
    coefficient,
    energy_matched,
    energy_optimized,
    matched_alpha,
    moment,
    normalization_constant,
    optimize_alpha,
    rayleigh_quotient,
    sample_trial,
    trial_params,
)

# mpmath.quad at 30 digits, independent of both backends
A_ALPHA_THIRD_BETA_3 = 0.699384030729682437903176424572
MOMENT_P1_ALPHA_THIRD_BETA_3 = 0.578616519668478516923575845237
C_BETA_2_5 = 0.694725517970775949142663916549

BACKENDS = ("gamma", "quadrature")


def mp_moment(p, alpha, beta):
    w = lambda z: mpmath.exp(-2 * alpha * z**beta)
    num = mpmath.quad(lambda z: z**p * w(z), [0, 1, 2, mpmath.inf])
    return float(num / mpmath.quad(w, [0, 1, 2, mpmath.inf]))


@pytest.mark.parametrize("n, beta", [(2, 2.0), (4, 3.0), (3, 2.5), (10, 6.0)])
def test_beta_for(n, beta):
    assert beta_for(n) == beta


def test_beta_for_rejects_small_exponent():
    with pytest.raises(DomainError):
        beta_for(1.9)


@pytest.mark.parametrize("mu, n, alpha", [(1, 2, 0.5), (4, 2, 1.0), (1, 4, 1.0 / 3.0)])
def test_matched_alpha(mu, n, alpha):
    rp = ReducedProblem.power(mu, n)
    assert matched_alpha(rp) == pytest.approx(alpha, rel=1e-15)
    assert (matched_alpha(rp) * beta_for(n)) ** 2 == pytest.approx(mu, rel=1e-14)


def test_matched_alpha_rejects_square_well():
    with pytest.raises(DomainError):
        matched_alpha(ReducedProblem.square_well())


@pytest.mark.parametrize("backend", BACKENDS)
def test_normalization_constant(backend):
    assert normalization_constant(0.5, 2.0, 1.0, backend) == pytest.approx(math.pi**-0.25, rel=1e-12)
    assert normalization_constant(1 / 3, 3.0, 1.0, backend) == pytest.approx(A_ALPHA_THIRD_BETA_3, rel=1e-12)
    a1 = normalization_constant(0.7, 4.5, 1.0, backend)
    assert normalization_constant(0.7, 4.5, 2.0, backend) == pytest.approx(a1 / math.sqrt(2.0), rel=1e-14)


@given(alpha=st.floats(0.05, 5.0), beta=st.floats(2.0, 20.0))
@settings(max_examples=40, deadline=None)
def test_normalization_integral(alpha, beta):
    a = normalization_constant(alpha, beta, 1.0)
    full = float(2 * mpmath.quad(lambda z: mpmath.exp(-2 * alpha * z**beta), [0, 1, mpmath.inf]))
    assert a * a * full == pytest.approx(1.0, rel=1e-10)


def test_trial_params_invariants():
    tp = trial_params(ReducedProblem.power(3.0, 5.0, length_scale=2.0))
    assert tp.alpha > 0 and tp.beta == 3.5
    assert tp.norm_A == pytest.approx(normalization_constant(tp.alpha, tp.beta, 2.0), rel=1e-15)


@pytest.mark.parametrize("backend", BACKENDS)
def test_moment_examples(backend):
    assert moment(0.0, 0.37, 4.2, backend) == pytest.approx(1.0, rel=1e-13)
    assert moment(2.0, 0.5, 2.0, backend) == pytest.approx(0.5, rel=1e-12)
    assert moment(1.0, 1 / 3, 3.0, backend) == pytest.approx(MOMENT_P1_ALPHA_THIRD_BETA_3, rel=1e-11)


@pytest.mark.parametrize("p, alpha, beta", [(3.0, 0.2, 2.5), (0.5, 4.0, 7.0), (12.0, 1.0, 13.0)])
def test_moment_against_mpmath(p, alpha, beta):
    expected = mp_moment(p, alpha, beta)
    for backend in BACKENDS:
        assert moment(p, alpha, beta, backend) == pytest.approx(expected, rel=1e-10)


def test_energy_matched_harmonic():
    est = energy_matched(ReducedProblem.power(1.0, 2.0))
    assert est.reduced_energy == pytest.approx(1.0, rel=1e-14)
    assert est.coefficient_C == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-14)
    assert est.kinetic_exponent == 0.5 and est.potential_exponent == 0.5


@pytest.mark.parametrize("backend", BACKENDS)
def test_energy_matched_quartic(backend):
    est = energy_matched(ReducedProblem.power(1.0, 4.0), backend)
    assert est.coefficient_C == pytest.approx(0.7290111, abs=1e-7)
    assert est.reduced_energy == pytest.approx(0.7290111 * 2 ** (2 / 3), abs=1e-6)
    assert est.method == backend
    assert est.error_bound >= 0.0
    scaled = energy_matched(ReducedProblem.power(8.0, 4.0), backend)
    assert scaled.reduced_energy == pytest.approx(2.0 * est.reduced_energy, rel=1e-12)


def test_physical_energy_uses_energy_scale():
    rp = reduce(PowerWell(2.0, 1.5, 6.0), PhysicalConstants(1.3, 0.7))
    est = energy_matched(rp)
    assert est.physical_energy == pytest.approx(est.reduced_energy * rp.energy_scale, rel=1e-15)
    # E = C (hbar^2/m a^2)^(1-1/beta) mu^(1/beta)
    beta = 4.0
    direct = est.coefficient_C * (1.3**2 / (0.7 * 1.5**2)) ** (1 - 1 / beta) * 2.0 ** (1 / beta)
    assert est.physical_energy == pytest.approx(direct, rel=1e-13)


@pytest.mark.parametrize("beta, expected, tol", [
    (2.0, 0.70710678, 1e-8), (3.0, 0.7290111, 1e-7), (4.0, 0.8526415, 1e-7),
    (5.0, 1.009593, 1e-6), (2.5, C_BETA_2_5, 1e-12),
])
@pytest.mark.parametrize("backend", BACKENDS)
def test_coefficient_values(beta, expected, tol, backend):
    assert coefficient(beta, backend) == pytest.approx(expected, abs=tol)


@pytest.mark.parametrize("n", [2.0, 3.0, 4.0, 7.5])
def test_coefficient_independent_of_coupling(n):
    cs = [energy_matched(ReducedProblem.power(mu, n)).coefficient_C for mu in (0.5, 1.0, 7.0)]
    assert max(cs) - min(cs) <= 1e-13 * cs[0]
    assert cs[0] == pytest.approx(coefficient(beta_for(n)), rel=1e-13)


@pytest.mark.parametrize("beta", [2, 2.5, 3, 4, 5, 8, 12, 20])
def test_backend_agreement(beta):
    assert abs(coefficient(beta, "gamma") / coefficient(beta, "quadrature") - 1.0) <= 1e-8


@given(beta=st.floats(2.0, 200.0))
def test_exponent_partition_exact(beta):
    est = energy_matched(ReducedProblem.power(1.3, 2.0 * beta - 2.0))
    assert est.kinetic_exponent + est.potential_exponent == 1.0


@given(mu=st.floats(0.01, 100.0), s=st.floats(0.01, 100.0), n=st.floats(2.0, 30.0))
def test_coupling_scaling_law(mu, s, n):
    base = energy_matched(ReducedProblem.power(mu, n)).reduced_energy
    scaled = energy_matched(ReducedProblem.power(s * mu, n)).reduced_energy
    assert scaled == pytest.approx(s ** (1.0 / beta_for(n)) * base, rel=1e-12)


@given(a=st.floats(0.1, 10.0), s=st.floats(0.1, 10.0), n=st.floats(2.0, 30.0))
def test_length_scaling_law(a, s, n):
    c = PhysicalConstants(1.0, 1.0)
    e1 = energy_matched(reduce(PowerWell(1.0, a, n), c)).physical_energy
    e2 = energy_matched(reduce(PowerWell(1.0, s * a, n), c)).physical_energy
    beta = beta_for(n)
    assert e2 == pytest.approx(e1 * (1.0 / s**2) ** (1.0 - 1.0 / beta), rel=1e-12)


@given(alpha=st.floats(0.01, 10.0), beta=st.floats(2.0, 30.0))
def test_integration_by_parts_identity(alpha, beta):
    lhs = (beta - 1.0) * moment(beta - 2.0, alpha, beta)
    rhs = 2.0 * alpha * beta * moment(2.0 * beta - 2.0, alpha, beta)
    assert lhs == pytest.approx(rhs, rel=1e-10)


def test_integration_by_parts_identity_quadrature():
    for alpha, beta in [(0.3, 2.5), (1.7, 6.0), (0.05, 11.0)]:
        lhs = (beta - 1.0) * moment(beta - 2.0, alpha, beta, "quadrature")
        rhs = 2.0 * alpha * beta * moment(2.0 * beta - 2.0, alpha, beta, "quadrature")
        assert lhs == pytest.approx(rhs, rel=1e-10)


@pytest.mark.parametrize("trial", range(3))
def test_harmonic_exactness(trial):
    rng = np.random.default_rng(trial)
    hbar, mass, a, mu = rng.uniform(0.2, 5.0, size=4)
    p, c = PowerWell(mu, a, 2.0), PhysicalConstants(hbar, mass)
    half_hbar_omega = 0.5 * hbar * harmonic_frequency(p, c)
    assert energy_matched(reduce(p, c)).physical_energy == pytest.approx(half_hbar_omega, rel=1e-12)


def test_coefficient_growth_and_square_well_crossing():
    cs = [coefficient(b) for b in (3, 4, 5, 6, 7)]
    assert all(x < y for x, y in zip(cs, cs[1:]))
    assert coefficient(6) < math.pi**2 / 8 < coefficient(7)


def test_coefficient_dips_below_harmonic_near_cubic():
    assert coefficient(2.5) < coefficient(2.0)


@pytest.mark.parametrize("alpha, expected", [(0.5, 1.0), (1.0, 1.25), (0.2, 0.2 + 1 / 0.8)])
@pytest.mark.parametrize("backend", BACKENDS)
def test_rayleigh_quotient_harmonic(alpha, expected, backend):
    rp = ReducedProblem.power(1.0, 2.0)
    assert rayleigh_quotient(rp, alpha, 2.0, backend) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("mu, n", [(1.0, 4.0), (3.0, 3.0), (0.2, 9.0), (1.0, 18.0)])
@pytest.mark.parametrize("backend", BACKENDS)
def test_rayleigh_quotient_equals_matched_energy(mu, n, backend):
    rp = ReducedProblem.power(mu, n)
    rq = rayleigh_quotient(rp, matched_alpha(rp), beta_for(n), backend)
    assert rq == pytest.approx(energy_matched(rp, backend).reduced_energy, rel=1e-10)


def test_rayleigh_quotient_quartic_value():
    rp = ReducedProblem.power(1.0, 4.0)
    assert rayleigh_quotient(rp, 1 / 3, 3.0) == pytest.approx(1.15724, abs=1e-5)


def test_optimize_alpha_harmonic():
    alpha, e = optimize_alpha(ReducedProblem.power(1.0, 2.0), 2.0)
    # located from function values only, so to about sqrt(eps)
    assert alpha == pytest.approx(0.5, abs=3e-8)
    assert e == pytest.approx(1.0, abs=1e-15)


def test_optimize_alpha_quartic_against_dense_grid():
    rp = ReducedProblem.power(1.0, 4.0)
    alpha_m = matched_alpha(rp)
    alpha, e = optimize_alpha(rp, 3.0)
    grid = np.linspace(alpha_m / 10, alpha_m * 10, 100_000)
    dense = min(rayleigh_quotient(rp, x, 3.0) for x in grid)
    assert e <= dense + 1e-12
    assert e <= rayleigh_quotient(rp, alpha_m, 3.0) + 1e-12
    assert e <= 1.15724


@pytest.mark.parametrize("n", [3.0, 6.0, 11.0])
def test_optimize_alpha_never_above_matched(n):
    rp = ReducedProblem.power(2.0, n)
    _, e = optimize_alpha(rp)
    assert e <= energy_matched(rp).reduced_energy + 1e-12
    est = energy_optimized(rp)
    assert est.method == "optimized-alpha" and est.reduced_energy == e


def test_sample_trial():
    grid = np.linspace(-2, 2, 41)
    s = sample_trial(0.7, 3.0, 1.0, grid)
    assert s.source == "trial"
    assert s.values[20] == pytest.approx(normalization_constant(0.7, 3.0, 1.0), rel=1e-15)
    assert np.allclose(s.values, s.values[::-1], rtol=0, atol=1e-12)


def test_sample_trial_localisation():
    low = sample_trial(0.5, 2.0, 1.0, [0.5, 1.5]).values
    high = sample_trial(0.5, 6.0, 1.0, [0.5, 1.5]).values
    # unnormalised shape: flatter core, sharper shoulder
    assert math.exp(-0.5 * 0.5**6) > math.exp(-0.5 * 0.5**2)
    assert high[0] / normalization_constant(0.5, 6.0) > low[0] / normalization_constant(0.5, 2.0)
    assert high[1] / normalization_constant(0.5, 6.0) < low[1] / normalization_constant(0.5, 2.0)
