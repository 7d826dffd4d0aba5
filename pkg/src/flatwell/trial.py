"""Generalised-Gaussian trial wavefunction ``A exp(-alpha |z|**beta)`` and the
ground-state energy estimates built from it.

Energies are computed in reduced units (``eps0 = hbar**2 / (2 m a**2)``). The
reported coefficient ``C`` follows the tabulated convention
``E = C (hbar**2 / m a**2)**(1 - 1/beta) mu**(1/beta)``; the single conversion
between the two lives in :func:`coefficient_from_reduced`.

Two interchangeable backends evaluate the moments: ``"gamma"`` (closed form via
:func:`~flatwell.numerics.ln_gamma`) and ``"quadrature"`` (numerical
integration via :func:`~flatwell.numerics.integrate_decaying_moment`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DomainError
from .numerics import integrate_decaying_moment, ln_gamma, minimize_scalar
from .potential import ReducedProblem

Backend = Literal["gamma", "quadrature"]
BACKENDS = ("gamma", "quadrature")

# closed-form moments carry the ln_gamma error, a few 1e-15 relative
_GAMMA_REL_ERROR = 1e-13


@dataclass(frozen=True)
class TrialParams:
    alpha: float
    beta: float
    norm_A: float


@dataclass(frozen=True)
class EnergyEstimate:
    reduced_energy: float
    physical_energy: float
    coefficient_C: float
    kinetic_exponent: float
    potential_exponent: float
    method: str
    error_bound: float


@dataclass(frozen=True)
class WavefunctionSamples:
    grid: tuple[float, ...]
    values: tuple[float, ...]
    source: str


def _check_backend(backend: str) -> None:
    if backend not in BACKENDS:
        raise DomainError(f"unknown backend {backend!r}; expected one of {BACKENDS}")


def _check_shape(alpha: float, beta: float) -> None:
    if not (math.isfinite(alpha) and alpha > 0.0):
        raise DomainError(f"alpha must be finite and > 0, got {alpha!r}")
    if not (math.isfinite(beta) and beta >= 2.0):
        raise DomainError(f"beta must be finite and >= 2, got {beta!r}")


def _require_power(rp: ReducedProblem) -> None:
    if rp.is_square_well:
        raise DomainError("the trial wavefunction is defined only for power-law wells")


def beta_for(n: float) -> float:
    """Trial exponent matched to the potential's tail: ``beta = (N + 2) / 2``."""
    n = float(n)
    if not (math.isfinite(n) and n >= 2.0):
        raise DomainError(f"N must be finite and >= 2, got {n!r}")
    return 0.5 * (n + 2.0)


def matched_alpha(rp: ReducedProblem) -> float:
    """Width parameter fixed by ``mu_tilde = alpha**2 beta**2``."""
    _require_power(rp)
    return math.sqrt(rp.mu_tilde) / beta_for(rp.n)


def _half_line(p: float, c: float, beta: float, backend: str) -> tuple[float, float]:
    """``int_0^inf z**p exp(-c z**beta) dz`` and an absolute error bound."""
    if backend == "gamma":
        s = (p + 1.0) / beta
        value = math.exp(ln_gamma(s) - s * math.log(c)) / beta
        return value, _GAMMA_REL_ERROR * value
    res = integrate_decaying_moment(p, c, beta)
    return res.value, res.error_bound


def normalization_constant(alpha: float, beta: float, a: float = 1.0,
                           backend: Backend = "gamma") -> float:
    """``A`` such that ``A**2 * a * int exp(-2 alpha |z|**beta) dz = 1``."""
    _check_shape(alpha, beta)
    _check_backend(backend)
    if not (math.isfinite(a) and a > 0.0):
        raise DomainError(f"a must be finite and > 0, got {a!r}")
    half, _ = _half_line(0.0, 2.0 * alpha, beta, backend)
    return 1.0 / math.sqrt(2.0 * a * half)


def trial_params(rp: ReducedProblem, backend: Backend = "gamma") -> TrialParams:
    alpha = matched_alpha(rp)
    beta = beta_for(rp.n)
    return TrialParams(alpha, beta, normalization_constant(alpha, beta, rp.length_scale, backend))


def _moment_with_error(p, alpha, beta, backend):
    if backend == "gamma":
        # ratio written directly so Gamma(1/beta) cancels analytically
        value = math.exp(-p / beta * math.log(2.0 * alpha)
                         + ln_gamma((p + 1.0) / beta) - ln_gamma(1.0 / beta))
        return value, _GAMMA_REL_ERROR * value
    num, num_err = _half_line(p, 2.0 * alpha, beta, backend)
    den, den_err = _half_line(0.0, 2.0 * alpha, beta, backend)
    value = num / den
    return value, value * (num_err / num + den_err / den)


def moment(p: float, alpha: float, beta: float, backend: Backend = "gamma") -> float:
    """Expectation of ``|z|**p`` under the weight ``exp(-2 alpha |z|**beta)``."""
    p = float(p)
    if not (math.isfinite(p) and p >= 0.0):
        raise DomainError(f"p must be finite and >= 0, got {p!r}")
    _check_shape(alpha, beta)
    _check_backend(backend)
    return _moment_with_error(p, alpha, beta, backend)[0]


def coefficient_from_reduced(reduced_energy: float, mu_tilde: float, beta: float) -> float:
    """Convert a reduced energy into the tabulated coefficient ``C``.

    With ``eps0 = (hbar**2/m a**2) / 2`` and ``mu = mu_tilde * eps0`` the
    reduced energy is ``C 2**(1 - 1/beta) mu_tilde**(1/beta)``.
    """
    return reduced_energy * 2.0 ** (-(1.0 - 1.0 / beta)) / mu_tilde ** (1.0 / beta)


def _estimate(rp, reduced_energy, beta, method, error_bound):
    return EnergyEstimate(
        reduced_energy=reduced_energy,
        physical_energy=rp.to_physical_energy(reduced_energy),
        coefficient_C=coefficient_from_reduced(reduced_energy, rp.mu_tilde, beta),
        kinetic_exponent=1.0 - 1.0 / beta,
        potential_exponent=1.0 / beta,
        method=method,
        error_bound=error_bound,
    )


def energy_matched(rp: ReducedProblem, backend: Backend = "gamma") -> EnergyEstimate:
    """Energy of the matched trial state, ``beta (beta - 1) alpha <|z|**(beta-2)>``.

    Matching cancels the two highest powers of ``|z|`` in the integrated
    Schrodinger equation, leaving only this term.
    """
    _require_power(rp)
    _check_backend(backend)
    alpha = matched_alpha(rp)
    beta = beta_for(rp.n)
    m, m_err = _moment_with_error(beta - 2.0, alpha, beta, backend)
    factor = beta * (beta - 1.0) * alpha
    return _estimate(rp, factor * m, beta, backend, factor * m_err)


def coefficient(beta: float, backend: Backend = "gamma") -> float:
    """Tabulated coefficient ``C(beta)``; independent of the coupling."""
    beta = float(beta)
    if not (math.isfinite(beta) and beta >= 2.0):
        raise DomainError(f"beta must be finite and >= 2, got {beta!r}")
    _check_backend(backend)
    if backend == "gamma":
        log_c = (-(2.0 * beta - 3.0) / beta * math.log(2.0)
                 + math.log(beta * (beta - 1.0))
                 - 2.0 / beta * math.log(beta)
                 + ln_gamma((beta - 1.0) / beta) - ln_gamma(1.0 / beta))
        return math.exp(log_c)
    rp = ReducedProblem.power(1.0, 2.0 * beta - 2.0)
    return energy_matched(rp, backend).coefficient_C


def rayleigh_quotient(rp: ReducedProblem, alpha: float, beta: float,
                      backend: Backend = "gamma") -> float:
    """Reduced energy expectation of ``exp(-alpha |z|**beta)`` for any ``alpha, beta``.

    The kinetic part uses the integrated-by-parts form ``<psi'**2>``.
    """
    _require_power(rp)
    _check_shape(alpha, beta)
    _check_backend(backend)
    kinetic = alpha**2 * beta**2 * moment(2.0 * beta - 2.0, alpha, beta, backend)
    potential = rp.mu_tilde * moment(rp.n, alpha, beta, backend)
    return kinetic + potential


def optimize_alpha(rp: ReducedProblem, beta: float | None = None,
                   backend: Backend = "gamma") -> tuple[float, float]:
    """Minimise the Rayleigh quotient over ``alpha`` at fixed ``beta``.

    The search bracket ``[alpha_m / 10, 10 alpha_m]`` around the matched
    ``alpha_m`` keeps the matched value interior.
    """
    _require_power(rp)
    if beta is None:
        beta = beta_for(rp.n)
    alpha_m = matched_alpha(rp)

    def energy(alpha):
        return rayleigh_quotient(rp, alpha, beta, backend)

    alpha_star, e_star = minimize_scalar(energy, alpha_m / 10.0, alpha_m * 10.0,
                                         tol=1e-10 * alpha_m)
    e_matched = energy(alpha_m)
    if e_matched < e_star:
        return alpha_m, e_matched
    return alpha_star, e_star


def energy_optimized(rp: ReducedProblem) -> EnergyEstimate:
    """Estimate with ``beta`` matched to ``N`` and ``alpha`` chosen variationally."""
    beta = beta_for(rp.n)
    _, e_star = optimize_alpha(rp, beta)
    return _estimate(rp, e_star, beta, "optimized-alpha", _GAMMA_REL_ERROR * e_star)


def sample_trial(alpha: float, beta: float, a: float, grid) -> WavefunctionSamples:
    """Normalised trial wavefunction ``A exp(-alpha |z|**beta)`` on ``grid``."""
    z = np.asarray(grid, dtype=float)
    if not np.all(np.isfinite(z)):
        raise DomainError("grid values must be finite")
    norm = normalization_constant(alpha, beta, a)
    psi = norm * np.exp(-alpha * np.abs(z) ** beta)
    return WavefunctionSamples(tuple(z.tolist()), tuple(psi.tolist()), "trial")
