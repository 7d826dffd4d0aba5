"""Exact and literature ground-state coefficients.

All coefficients use the convention
``E = C (hbar**2 / m a**2)**(1 - 1/beta) mu**(1/beta)`` with ``beta = (N+2)/2``;
for the square well ``E = C hbar**2 / (m a**2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .potential import SQUARE_WELL


@dataclass(frozen=True)
class KnownValue:
    n: float | str
    coefficient_C: float
    provenance: str
    exact: bool


# E = 0.667986259155777 (lambda/4)**(1/3) with hbar = m = 1 and lambda/4 = mu/a**4,
# so the number carries over unchanged to the C convention.
QUARTIC_COEFFICIENT = 0.667986259155777

_REGISTRY = {
    2.0: KnownValue(2.0, 1.0 / math.sqrt(2.0), "harmonic oscillator, E = hbar*omega/2", True),
    4.0: KnownValue(
        4.0, QUARTIC_COEFFICIENT,
        "Janke & Kleinert, Phys. Rev. Lett. 75, 2787 (1995); Vinette & Cizek, "
        "J. Math. Phys. 32, 3392 (1991)",
        False,
    ),
    SQUARE_WELL: KnownValue(SQUARE_WELL, math.pi**2 / 8.0,
                            "infinite square well, E = pi^2 hbar^2 / (8 m a^2)", True),
}


def lookup(n: float | str) -> KnownValue | None:
    """Stored coefficient for exponent ``n`` (or ``"squarewell"``), else ``None``."""
    if n == SQUARE_WELL:
        return _REGISTRY[SQUARE_WELL]
    try:
        key = float(n)
    except (TypeError, ValueError):
        return None
    return _REGISTRY.get(key)


def relative_error(estimate: float, truth: float) -> float:
    """Signed relative error ``(estimate - truth) / |truth|``."""
    if truth == 0.0:
        raise DomainError("relative error undefined for zero truth value")
    return (estimate - truth) / abs(truth)
