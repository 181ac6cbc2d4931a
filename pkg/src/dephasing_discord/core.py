"""Value types and validation shared across the package.

Conventions: hbar = k_B = 1 throughout.  Frequencies are expressed in units
of a reference cutoff (the cutoff of reservoir A unless stated otherwise),
times in the inverse of that cutoff, and inverse temperatures beta carry the
inverse-frequency unit, so beta*omega_c is dimensionless.  Zero temperature
is encoded as beta = math.inf.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

# Eigenvalues more negative than this are treated as genuinely unphysical
# rather than rounding noise.
EIGENVALUE_TOL = 1e-12

# Mutual information may undershoot the classical correlation by at most this
# much before we call the closed-form algebra inconsistent.
DISCORD_CLAMP_TOL = 1e-9


class NonPhysicalState(ValueError):
    """State parameters produce a negative eigenvalue beyond tolerance."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class QuadratureFailure(RuntimeError):
    """Adaptive integration could not certify the requested accuracy."""


class NoRootInRange(RuntimeError):
    """Root bracketing hit its cap without a sign change."""


class ConsistencyError(RuntimeError):
    """Two internal computation paths disagree beyond tolerance."""


class Regime(Enum):
    """Which branch of the correlation dynamics a sample falls in.

    DFE marks the window where the discord is held constant by the
    measurement optimum staying on the coherence branch; DECAY marks the
    regime where discord follows the decohering product downward.
    """

    DFE = "DFE"
    DECAY = "DECAY"


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class XStateParams:
    """Coefficients (c1, c2, c3) of a Bell-diagonal initial state.

    The state is rho(0) = (I + sum_j c_j sigma_j x sigma_j) / 4, which has
    maximally mixed marginals.  Physicality is checked by validate_state,
    not at construction, so that diagnostics can be exercised on bad input.
    """

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            _require_finite(name, getattr(self, name))

    def initial_eigenvalues(self) -> tuple[float, float, float, float]:
        """Spectrum of rho(0): (1 + c3 -/+ |c1 - c2|)/4 and (1 - c3 -/+ |c1 + c2|)/4."""
        a = abs(self.c1 - self.c2)
        g = abs(self.c1 + self.c2)
        return (
            (1.0 + self.c3 - a) / 4.0,
            (1.0 + self.c3 + a) / 4.0,
            (1.0 - self.c3 - g) / 4.0,
            (1.0 - self.c3 + g) / 4.0,
        )


def validate_state(params: XStateParams) -> None:
    """Raise NonPhysicalState if rho(0) has an eigenvalue below -EIGENVALUE_TOL."""
    lams = params.initial_eigenvalues()
    worst = min(lams)
    if worst < -EIGENVALUE_TOL:
        raise NonPhysicalState(
            f"state {params} is not positive semidefinite: eigenvalue {worst!r}"
        )


@dataclass(frozen=True)
class Reservoir:
    """One Ohmic reservoir: coupling eta, cutoff omega_c, inverse temperature beta.

    beta = math.inf selects the zero-temperature limit.
    """

    eta: float
    omega_c: float
    beta: float

    def __post_init__(self):
        eta = _require_finite("eta", self.eta)
        omega_c = _require_finite("omega_c", self.omega_c)
        if eta <= 0.0:
            raise DomainError(f"eta must be > 0, got {eta!r}")
        if omega_c <= 0.0:
            raise DomainError(f"omega_c must be > 0, got {omega_c!r}")
        beta = float(self.beta)
        if math.isnan(beta) or beta <= 0.0:
            raise DomainError(f"beta must be > 0 (math.inf allowed), got {beta!r}")


@dataclass(frozen=True)
class QubitPair:
    """Level splittings of the two probe qubits (set both to 0 to work in the rotating frame)."""

    omega_a: float
    omega_b: float

    def __post_init__(self):
        for name in ("omega_a", "omega_b"):
            value = _require_finite(name, getattr(self, name))
            if value < 0.0:
                raise DomainError(f"{name} must be >= 0, got {value!r}")


@dataclass(frozen=True)
class SystemConfig:
    """Full problem statement: qubit splittings, the two reservoirs, the initial state."""

    qubits: QubitPair
    bath_a: Reservoir
    bath_b: Reservoir
    state: XStateParams

    def __post_init__(self):
        validate_state(self.state)


@dataclass(frozen=True)
class XDensityMatrix:
    """The evolved X-shaped state, stored through its three independent entries.

    alpha is the outer-antidiagonal coherence including its free phase
    exp(-i (omega_a + omega_b) t); gamma is the inner-antidiagonal coherence
    including exp(+i (omega_b - omega_a) t).  The diagonal is fixed by c3 and
    normalization.
    """

    c3: float
    alpha: complex
    gamma: complex
    t: float

    def __post_init__(self):
        c3 = _require_finite("c3", self.c3)
        t = _require_finite("t", self.t)
        if t < 0.0:
            raise DomainError(f"t must be >= 0, got {t!r}")
        if abs(c3) > 1.0 + EIGENVALUE_TOL:
            raise NonPhysicalState(f"|c3| = {abs(c3)!r} exceeds 1")
        if abs(self.alpha) > 1.0 + c3 + EIGENVALUE_TOL:
            raise NonPhysicalState(
                f"|alpha| = {abs(self.alpha)!r} exceeds 1 + c3 = {1.0 + c3!r}"
            )
        if abs(self.gamma) > 1.0 - c3 + EIGENVALUE_TOL:
            raise NonPhysicalState(
                f"|gamma| = {abs(self.gamma)!r} exceeds 1 - c3 = {1.0 - c3!r}"
            )

    def to_matrix(self) -> np.ndarray:
        """Dense 4x4 matrix in the product basis (gg, ge, eg, ee)."""
        c3, al, ga = self.c3, complex(self.alpha), complex(self.gamma)
        return 0.25 * np.array(
            [
                [1.0 + c3, 0.0, 0.0, al.conjugate()],
                [0.0, 1.0 - c3, ga.conjugate(), 0.0],
                [0.0, ga, 1.0 - c3, 0.0],
                [al, 0.0, 0.0, 1.0 + c3],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class DiscordPoint:
    """One sample of the correlation dynamics along a trajectory.

    All correlation values are in bits.  The additivity of mutual information
    into classical correlation plus discord is asserted at construction.
    """

    t: float
    d_a: float
    d_b: float
    mutual_info: float
    classical: float
    discord: float
    regime: Regime

    def __post_init__(self):
        for name in ("t", "d_a", "d_b", "mutual_info", "classical", "discord"):
            _require_finite(name, getattr(self, name))
        if self.t < 0.0:
            raise DomainError(f"t must be >= 0, got {self.t!r}")
        if not (0.0 < self.d_a <= 1.0 and 0.0 < self.d_b <= 1.0):
            raise DomainError(
                f"decohering factors must lie in (0, 1], got {self.d_a!r}, {self.d_b!r}"
            )
        for name in ("mutual_info", "classical", "discord"):
            value = getattr(self, name)
            if not (-DISCORD_CLAMP_TOL <= value <= 2.0 + DISCORD_CLAMP_TOL):
                raise DomainError(f"{name} = {value!r} outside [0, 2]")
        gap = self.mutual_info - (self.classical + self.discord)
        if abs(gap) > 1e-10:
            raise ConsistencyError(
                f"mutual_info - (classical + discord) = {gap!r} at t = {self.t!r}"
            )
        if not isinstance(self.regime, Regime):
            raise DomainError(f"regime must be a Regime, got {self.regime!r}")
