"""Ground-state energy estimates for the power-law wells ``mu |x/a|**N``."""

from .errors import ConvergenceError, DomainError
from .known import KnownValue, lookup, relative_error
from .numerics import QuadratureResult, integrate_decaying_moment, ln_gamma, minimize_scalar
from .potential import (
    SQUARE_WELL,
    InfiniteSquareWell,
    PhysicalConstants,
    PowerWell,
    ReducedProblem,
    evaluate_potential,
    harmonic_frequency,
    make_power_potential,
    reduce,
)
from .reference import ReferenceSolution, ground_wavefunction, solve_ground_state
from .trial import (
    EnergyEstimate,
    TrialParams,
    WavefunctionSamples,
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
)

__version__ = "0.1.0"
