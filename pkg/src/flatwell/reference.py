"""Finite-difference reference solver for the reduced ground state.

``-psi'' + V(z) psi = E psi`` is discretised with the 3-point Laplacian on a
uniform grid over ``[-L, L]`` with Dirichlet walls. The smallest eigenvalue of
the resulting symmetric tridiagonal matrix is found by Sturm-count bisection,
and pairs of grids with halved spacing are Richardson-extrapolated.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .potential import ReducedProblem, reduced_potential
from .trial import WavefunctionSamples, energy_matched

DEFAULT_SAFETY = 50.0
DEFAULT_MIN_DECAY = 14.0
MIN_HALF_WIDTH = 2.0
START_INTERVALS = 2048
MAX_INTERVALS = 2**20

_EPS = sys.float_info.epsilon
# stand-in for an exactly zero pivot in the Sturm recurrence
_PIVMIN = 1e-290


@dataclass(frozen=True)
class TridiagonalOperator:
    diagonal: tuple[float, ...]
    off_diagonal: tuple[float, ...]
    spacing: float
    half_width: float

    @property
    def size(self) -> int:
        return len(self.diagonal)

    def nodes(self) -> np.ndarray:
        return symmetric_nodes(self.spacing, self.size)


@dataclass(frozen=True)
class ReferenceSolution:
    reduced_energy: float
    domain_half_width: float
    grid_points: int
    observed_order: float
    extrapolated: bool
    residual_estimate: float


def symmetric_nodes(h: float, n: int) -> np.ndarray:
    """Interior nodes ``-L + i h`` (i = 1..n), built so that ``z[i] == -z[n-1-i]`` exactly."""
    return h * (np.arange(1, n + 1) - 0.5 * (n + 1))


def _decay_action(rp: ReducedProblem, energy: float, upper: float,
                  samples: int = 4001) -> tuple[np.ndarray, np.ndarray]:
    """Cumulative WKB action ``int sqrt(V - E)`` from the turning point to ``upper``."""
    turning = (energy / rp.mu_tilde) ** (1.0 / rp.n)
    z = np.linspace(turning, upper, samples)
    kappa = np.sqrt(np.maximum(reduced_potential(rp, z) - energy, 0.0))
    action = np.concatenate(([0.0], np.cumsum(0.5 * (kappa[1:] + kappa[:-1]) * np.diff(z))))
    return z, action


def auto_domain(rp: ReducedProblem, energy_guess: float, safety: float = DEFAULT_SAFETY,
                min_decay: float = DEFAULT_MIN_DECAY) -> float:
    """Half-width ``L`` of the computational box.

    Starts from ``V(L) = safety * energy_guess``, clamped to ``L >= 2``, then
    widens ``L`` until the WKB decay action from the classical turning point
    reaches ``min_decay`` (``psi(L)**2 ~ exp(-2 * min_decay)``). Set
    ``min_decay=0`` to get the bare potential-ratio rule.
    """
    if rp.is_square_well:
        raise DomainError("the square well box is fixed at [-1, 1]")
    if not (math.isfinite(energy_guess) and energy_guess > 0.0):
        raise DomainError(f"energy_guess must be finite and > 0, got {energy_guess!r}")
    if not safety > 0.0:
        raise DomainError(f"safety factor must be > 0, got {safety!r}")

    half_width = max((safety * energy_guess / rp.mu_tilde) ** (1.0 / rp.n), MIN_HALF_WIDTH)
    if min_decay <= 0.0:
        return half_width

    turning = (energy_guess / rp.mu_tilde) ** (1.0 / rp.n)
    upper = max(half_width, 2.0 * turning)
    z, action = _decay_action(rp, energy_guess, upper)
    while action[-1] < min_decay:
        upper = turning + 2.0 * (upper - turning)
        z, action = _decay_action(rp, energy_guess, upper)
    needed = float(np.interp(min_decay, action, z))
    return max(half_width, needed)


def discretize(rp: ReducedProblem, half_width: float, n: int) -> TridiagonalOperator:
    """3-point finite-difference operator on ``n`` interior nodes of ``[-L, L]``.

    The square well always uses ``L = 1`` and a zero potential.
    """
    if n < 3:
        raise DomainError(f"need at least 3 interior points, got {n}")
    if rp.is_square_well:
        half_width = 1.0
    if not (math.isfinite(half_width) and half_width > 0.0):
        raise DomainError(f"half-width must be finite and > 0, got {half_width!r}")
    h = 2.0 * half_width / (n + 1)
    z = symmetric_nodes(h, n)
    inv_h2 = 1.0 / (h * h)
    diagonal = 2.0 * inv_h2 + reduced_potential(rp, z)
    if not np.all(np.isfinite(diagonal)):
        raise DomainError("potential overflows on the grid; reduce the half-width")
    off = np.full(n - 1, -inv_h2)
    return TridiagonalOperator(tuple(diagonal.tolist()), tuple(off.tolist()), h, half_width)


def sturm_count(op: TridiagonalOperator, x: float) -> int:
    """Number of eigenvalues of ``op`` strictly below ``x``."""
    count = 0
    q = op.diagonal[0] - x
    if q < 0.0:
        count += 1
    for d, e in zip(op.diagonal[1:], op.off_diagonal):
        if q == 0.0:
            q = _PIVMIN
        q = d - x - e * e / q
        if q < 0.0:
            count += 1
    return count


def gershgorin_bounds(op: TridiagonalOperator) -> tuple[float, float]:
    d = op.diagonal
    e = [abs(v) for v in op.off_diagonal]
    radius = [0.0] * len(d)
    for i, v in enumerate(e):
        radius[i] += v
        radius[i + 1] += v
    lo = min(di - ri for di, ri in zip(d, radius))
    hi = max(di + ri for di, ri in zip(d, radius))
    return lo, hi


def smallest_eigenvalue(op: TridiagonalOperator, tol: float = 1e-12) -> float:
    """Smallest eigenvalue by bisection on the Sturm count.

    Keeps ``count(lo) == 0`` and ``count(hi) >= 1`` and stops once the bracket
    is narrower than ``tol`` or cannot shrink in floating point.
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be > 0, got {tol!r}")
    lo, hi = gershgorin_bounds(op)
    pad = 1e-12 * max(abs(lo), abs(hi), 1.0)
    lo -= pad
    hi += pad
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if sturm_count(op, mid) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _energy_on_grid(rp: ReducedProblem, half_width: float, intervals: int,
                    eig_tol: float) -> float:
    return smallest_eigenvalue(discretize(rp, half_width, intervals - 1), eig_tol)


def solve_ground_state(rp: ReducedProblem, target_tol: float = 1e-6,
                       safety: float = DEFAULT_SAFETY,
                       min_decay: float = DEFAULT_MIN_DECAY,
                       start_intervals: int = START_INTERVALS,
                       max_intervals: int = MAX_INTERVALS) -> ReferenceSolution:
    """Grid-converged, Richardson-extrapolated reduced ground-state energy.

    The grid is refined by doubling the number of intervals (so the spacing
    halves exactly) until two successive extrapolated values agree within
    ``target_tol``.
    """
    if not (math.isfinite(target_tol) and target_tol >= 1e-8):
        raise DomainError(f"target_tol must be >= 1e-8, got {target_tol!r}")
    if rp.is_square_well:
        half_width = 1.0
    else:
        half_width = auto_domain(rp, energy_matched(rp).reduced_energy, safety, min_decay)
    eig_tol = min(1e-3 * target_tol, 1e-11)

    intervals = start_intervals
    energies = [_energy_on_grid(rp, half_width, intervals, eig_tol)]
    extrapolated = []
    while True:
        intervals *= 2
        if intervals > max_intervals:
            raise ConvergenceError(
                f"reference energy not converged to {target_tol:g} with {max_intervals} intervals"
            )
        energies.append(_energy_on_grid(rp, half_width, intervals, eig_tol))
        extrapolated.append((4.0 * energies[-1] - energies[-2]) / 3.0)
        if len(extrapolated) >= 2 and abs(extrapolated[-1] - extrapolated[-2]) <= target_tol:
            break

    d1 = energies[-3] - energies[-2]
    d2 = energies[-2] - energies[-1]
    order = math.log2(d1 / d2) if d1 * d2 > 0.0 else math.nan
    return ReferenceSolution(
        reduced_energy=extrapolated[-1],
        domain_half_width=half_width,
        grid_points=intervals - 1,
        observed_order=order,
        extrapolated=True,
        residual_estimate=abs(d2),
    )


def _solve_shifted(diagonal, off, shift, rhs):
    """Solve ``(T - shift I) x = rhs`` for symmetric tridiagonal ``T`` (Thomas)."""
    n = len(diagonal)
    c = [0.0] * n
    y = [0.0] * n
    piv = diagonal[0] - shift
    c[0] = off[0] / piv if n > 1 else 0.0
    y[0] = rhs[0] / piv
    for i in range(1, n):
        piv = diagonal[i] - shift - off[i - 1] * c[i - 1]
        if i < n - 1:
            c[i] = off[i] / piv
        y[i] = (rhs[i] - off[i - 1] * y[i - 1]) / piv
    for i in range(n - 2, -1, -1):
        y[i] -= c[i] * y[i + 1]
    return y


def ground_wavefunction(rp: ReducedProblem, half_width: float, n: int,
                        max_iterations: int = 200) -> WavefunctionSamples:
    """Ground-state eigenvector on the ``n`` interior nodes, by inverse iteration.

    Normalised so that ``sum(psi**2) * h == 1`` with ``psi > 0`` at the centre.
    """
    op = discretize(rp, half_width, n)
    lam = smallest_eigenvalue(op, 1e-12)
    # shift just below the eigenvalue keeps T - shift*I positive definite
    shift = lam - 1e-6 * max(1.0, abs(lam))
    h = op.spacing
    psi = [1.0] * n
    for _ in range(max_iterations):
        new = _solve_shifted(op.diagonal, op.off_diagonal, shift, psi)
        norm = math.sqrt(math.fsum(v * v for v in new) * h)
        sign = 1.0 if new[n // 2] + new[(n - 1) // 2] >= 0.0 else -1.0
        new = [sign * v / norm for v in new]
        change = max(abs(u - v) for u, v in zip(new, psi))
        psi = new
        if change < 1e-12:
            break
    else:
        raise ConvergenceError(f"inverse iteration did not converge in {max_iterations} steps")
    return WavefunctionSamples(tuple(op.nodes().tolist()), tuple(psi), "reference")
