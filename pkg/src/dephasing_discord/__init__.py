"""Exact dephasing dynamics and quantum discord for two non-interacting
qubits coupled to independent Ohmic reservoirs at finite temperature.

Units: hbar = k_B = 1 throughout; beta = math.inf encodes zero temperature.
"""

from .bath import (
    DecoherenceEval,
    GammaMethod,
    decoherence_product,
    gamma_closed,
    gamma_quadrature,
    spectral_density,
)
from .core import (
    ConsistencyError,
    DiscordPoint,
    DomainError,
    NonPhysicalState,
    NoRootInRange,
    QuadratureFailure,
    QubitPair,
    Regime,
    Reservoir,
    SystemConfig,
    XDensityMatrix,
    XStateParams,
    validate_state,
)
from .correlations import (
    ClassicalMethod,
    CorrelationBreakdown,
    MeasurementAngles,
    binary_entropy_like,
    classical_bruteforce,
    classical_closed,
    conditional_state,
    discord,
    discord_decay,
    discord_plateau,
    mutual_information,
)
from .dfe import (
    CriticalTime,
    CriticalTimeMethod,
    critical_time_closed,
    critical_time_solve,
    scan_trajectory,
)
from .evolution import Trajectory, element_decay, evolve, evolve_trajectory

__all__ = [
    "ClassicalMethod",
    "ConsistencyError",
    "CorrelationBreakdown",
    "CriticalTime",
    "CriticalTimeMethod",
    "DecoherenceEval",
    "DiscordPoint",
    "DomainError",
    "GammaMethod",
    "MeasurementAngles",
    "NonPhysicalState",
    "NoRootInRange",
    "QuadratureFailure",
    "QubitPair",
    "Regime",
    "Reservoir",
    "SystemConfig",
    "Trajectory",
    "XDensityMatrix",
    "XStateParams",
    "binary_entropy_like",
    "classical_bruteforce",
    "classical_closed",
    "conditional_state",
    "critical_time_closed",
    "critical_time_solve",
    "decoherence_product",
    "discord",
    "discord_decay",
    "discord_plateau",
    "element_decay",
    "evolve",
    "evolve_trajectory",
    "gamma_closed",
    "gamma_quadrature",
    "mutual_information",
    "scan_trajectory",
    "spectral_density",
    "validate_state",
]

__version__ = "0.1.0"
