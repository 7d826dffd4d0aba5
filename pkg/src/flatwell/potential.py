"""Power-law potential wells, physical constants and the reduced problem.

The family is ``V(x) = mu * |x/a|**N`` for real ``N >= 2``; the infinite square
well of half-width ``a`` is a separate variant rather than ``N = inf``.

Reduced units measure lengths in ``a`` and energies in
``eps0 = hbar**2 / (2 m a**2)``, so the Schrodinger equation becomes
``-psi'' + mu_tilde |z|**N psi = E_tilde psi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

SQUARE_WELL = "squarewell"

# exp() overflows beyond this argument
_LOG_MAX = math.log(np.finfo(float).max)


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be finite and > 0, got {value!r}")
    return value


def _check_exponent(n: float) -> float:
    n = float(n)
    if not math.isfinite(n) or n < 2.0:
        raise DomainError(f"exponent N must be finite and >= 2, got {n!r}")
    return n


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        _check_positive("hbar", self.hbar)
        _check_positive("mass", self.mass)


@dataclass(frozen=True)
class PowerWell:
    """``V(x) = mu |x/a|**n``."""

    mu: float
    a: float
    n: float

    def __post_init__(self):
        _check_positive("mu", self.mu)
        _check_positive("a", self.a)
        _check_exponent(self.n)


@dataclass(frozen=True)
class InfiniteSquareWell:
    """Zero inside ``|x| < a``, infinite outside."""

    a: float

    def __post_init__(self):
        _check_positive("a", self.a)


Potential = PowerWell | InfiniteSquareWell


@dataclass(frozen=True)
class ReducedProblem:
    """Nondimensional form of a well.

    ``mu_tilde`` and ``n`` are both ``None`` for the square well.
    """

    mu_tilde: float | None
    n: float | None
    energy_scale: float = 1.0
    length_scale: float = 1.0

    def __post_init__(self):
        _check_positive("energy_scale", self.energy_scale)
        _check_positive("length_scale", self.length_scale)
        if (self.mu_tilde is None) != (self.n is None):
            raise DomainError("mu_tilde and n must both be set or both be None")
        if self.mu_tilde is not None:
            _check_positive("mu_tilde", self.mu_tilde)
            _check_exponent(self.n)

    @classmethod
    def power(cls, mu_tilde: float, n: float, energy_scale: float = 1.0,
              length_scale: float = 1.0) -> "ReducedProblem":
        return cls(float(mu_tilde), float(n), energy_scale, length_scale)

    @classmethod
    def square_well(cls, energy_scale: float = 1.0,
                    length_scale: float = 1.0) -> "ReducedProblem":
        return cls(None, None, energy_scale, length_scale)

    @property
    def is_square_well(self) -> bool:
        return self.n is None

    def to_physical_energy(self, reduced_energy: float) -> float:
        return reduced_energy * self.energy_scale


def make_power_potential(mu: float, a: float, n: float) -> PowerWell:
    """Build ``mu |x/a|**n``; odd and non-integer ``n >= 2`` are allowed."""
    return PowerWell(float(mu), float(a), float(n))


def _power(coupling: float, n: float, r):
    """``coupling * r**n`` for ``r >= 0`` evaluated as ``exp(n ln r)``."""
    r = np.asarray(r, dtype=float)
    out = np.zeros_like(r)
    nz = r > 0.0
    expo = n * np.log(r[nz])
    with np.errstate(over="ignore"):
        power = np.where(expo > _LOG_MAX, np.inf, np.exp(np.minimum(expo, _LOG_MAX)))
        out[nz] = coupling * power
    return out


def evaluate_potential(p: Potential, x: float) -> float:
    """Potential energy at position ``x``; ``math.inf`` outside a square well."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"position must be finite, got {x!r}")
    if isinstance(p, InfiniteSquareWell):
        return 0.0 if abs(x) < p.a else math.inf
    return float(_power(p.mu, p.n, abs(x / p.a)))


def reduced_potential(rp: ReducedProblem, z):
    """Vectorised ``mu_tilde |z|**N``; zero everywhere for the square well interior."""
    z = np.asarray(z, dtype=float)
    if rp.is_square_well:
        return np.zeros_like(z)
    return _power(rp.mu_tilde, rp.n, np.abs(z))


def reduce(p: Potential, c: PhysicalConstants) -> ReducedProblem:
    """Nondimensionalise ``p`` with ``eps0 = hbar**2 / (2 m a**2)`` and length ``a``."""
    eps0 = c.hbar**2 / (2.0 * c.mass * p.a**2)
    if isinstance(p, InfiniteSquareWell):
        return ReducedProblem.square_well(eps0, p.a)
    return ReducedProblem.power(p.mu / eps0, p.n, eps0, p.a)


def harmonic_frequency(p: Potential, c: PhysicalConstants) -> float:
    """Angular frequency ``sqrt(2 mu / (m a**2))`` of the ``N = 2`` well."""
    if not isinstance(p, PowerWell) or p.n != 2.0:
        raise DomainError("harmonic_frequency requires a PowerWell with N = 2")
    return math.sqrt(2.0 * p.mu / (c.mass * p.a**2))
