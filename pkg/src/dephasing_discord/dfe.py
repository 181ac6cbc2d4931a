"""Transition between frozen and decaying discord.

For initial states with c1 = 1 and c2 = -c3 the discord stays constant until
the decohering product D_A(t)*D_B(t) falls to |c3| and decays afterwards.
This module locates that crossing and scans full trajectories.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .bath import GammaMethod, gamma_closed, gamma_quadrature
from .core import (
    DISCORD_CLAMP_TOL,
    ConsistencyError,
    DiscordPoint,
    DomainError,
    NoRootInRange,
    Regime,
    SystemConfig,
)
from .correlations import ClassicalMethod, classical_bruteforce, classical_closed, mutual_information
from .evolution import _assemble

# Bisection stops when the bracket is this narrow (in units of 1/omega_c).
_BRACKET_WIDTH = 1e-12
# Doubling the upper bracket edge gives up at 2**20 / omega_c.
_BRACKET_CAP_EXPONENT = 20


class CriticalTimeMethod(Enum):
    CLOSED_ZERO_T = "closed_zero_t"
    BISECTION = "bisection"


@dataclass(frozen=True)
class CriticalTime:
    """Crossing time of D_A*D_B through |c3|, with solver diagnostics."""

    t_p: float
    method: CriticalTimeMethod
    bracket: tuple[float, float]
    residual: float


def critical_time_closed(eta: float, c3: float, omega_c: float) -> float:
    """Zero-temperature identical-reservoir crossing: sqrt(|c3|^(-1/eta) - 1)/omega_c."""
    eta, c3, omega_c = float(eta), float(c3), float(omega_c)
    if eta <= 0.0 or not math.isfinite(eta):
        raise DomainError(f"eta must be > 0, got {eta!r}")
    if omega_c <= 0.0 or not math.isfinite(omega_c):
        raise DomainError(f"omega_c must be > 0, got {omega_c!r}")
    if c3 == 0.0 or abs(c3) >= 1.0:
        raise DomainError(f"need 0 < |c3| < 1 for a finite crossing, got {c3!r}")
    return math.sqrt(abs(c3) ** (-1.0 / eta) - 1.0) / omega_c


def critical_time_solve(config: SystemConfig) -> CriticalTime | None:
    """Bracket and bisect D_A(t)*D_B(t) = |c3|.

    Returns None when no frozen window exists at all: either c3 = 0 (the
    optimum never leaves the coherence branch) or the initial coherences are
    already too weak, (|c1-c2| + |c1+c2|)/2 <= |c3|.
    """
    state = config.state
    mod_c3 = abs(state.c3)
    if mod_c3 == 0.0:
        return None
    if 0.5 * (abs(state.c1 - state.c2) + abs(state.c1 + state.c2)) <= mod_c3:
        return None

    def gap(t: float) -> float:
        return (
            gamma_closed(config.bath_a, t).d * gamma_closed(config.bath_b, t).d
            - mod_c3
        )

    omega_ref = config.bath_a.omega_c
    cap = 2.0**_BRACKET_CAP_EXPONENT / omega_ref
    t_lo = 0.0
    t_hi = 1.0 / omega_ref
    while gap(t_hi) >= 0.0:
        t_lo = t_hi
        t_hi *= 2.0
        if t_hi > cap:
            raise NoRootInRange(
                f"decohering product stayed above |c3| = {mod_c3} up to t = {cap}"
            )
    width = _BRACKET_WIDTH / omega_ref
    while t_hi - t_lo > width:
        mid = 0.5 * (t_lo + t_hi)
        if not t_lo < mid < t_hi:  # bracket already at float resolution
            break
        if gap(mid) >= 0.0:
            t_lo = mid
        else:
            t_hi = mid
    t_p = 0.5 * (t_lo + t_hi)
    return CriticalTime(t_p, CriticalTimeMethod.BISECTION, (t_lo, t_hi), gap(t_p))


def scan_trajectory(
    config: SystemConfig,
    t_max: float,
    n_points: int,
    classical_method: ClassicalMethod = ClassicalMethod.CLOSED,
    gamma_method: GammaMethod = GammaMethod.CLOSED_FORM,
    n_theta: int = 91,
    n_phi: int = 181,
) -> list[DiscordPoint]:
    """Correlation dynamics on a uniform grid over [0, t_max].

    The regime flag compares D_A*D_B against |c3| (DFE while the product is
    the larger, never for c3 = 0, where no frozen window exists).
    """
    t_max = float(t_max)
    if not t_max > 0.0 or not math.isfinite(t_max):
        raise DomainError(f"t_max must be > 0, got {t_max!r}")
    if int(n_points) != n_points or n_points < 2:
        raise DomainError(f"n_points must be an integer >= 2, got {n_points!r}")
    gamma_of = gamma_quadrature if gamma_method is GammaMethod.QUADRATURE else gamma_closed
    mod_c3 = abs(config.state.c3)
    points = []
    for t in np.linspace(0.0, t_max, int(n_points)):
        t = float(t)
        d_a = gamma_of(config.bath_a, t).d
        d_b = gamma_of(config.bath_b, t).d
        rho = _assemble(config, t, d_a, d_b)
        info = mutual_information(rho)
        if classical_method is ClassicalMethod.BRUTEFORCE:
            classical, _ = classical_bruteforce(rho, config.qubits, n_theta, n_phi)
        else:
            classical, _ = classical_closed(rho)
        value = info - classical
        if value < -DISCORD_CLAMP_TOL:
            raise ConsistencyError(
                f"discord = {value!r} below -{DISCORD_CLAMP_TOL} at t = {t!r}"
            )
        regime = Regime.DFE if mod_c3 > 0.0 and d_a * d_b >= mod_c3 else Regime.DECAY
        points.append(
            DiscordPoint(
                t, d_a, d_b, info, classical, value if value > 0.0 else 0.0, regime
            )
        )
    return points
