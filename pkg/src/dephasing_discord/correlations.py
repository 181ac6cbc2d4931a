"""Correlation measures of the evolved X state, all in bits.

The classical correlation over one-qubit projective measurements admits a
closed form for this family: the optimum is chi = max(|c3|, (|alpha|+|gamma|)/2)
fed through the even entropy kernel binary_entropy_like.  classical_bruteforce
re-derives it by direct optimization over measurement angles and serves as the
independent oracle for that algebra.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    ConsistencyError,
    DISCORD_CLAMP_TOL,
    DomainError,
    QubitPair,
    XDensityMatrix,
)
from .evolution import eigenvalues

_LN2 = math.log(2.0)
_DOMAIN_SLACK = 1e-9
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_MIN_THETA_POINTS = 91
_MIN_PHI_POINTS = 181
_REFINE_TOL = 1e-10


class ClassicalMethod(Enum):
    CLOSED = "closed"
    BRUTEFORCE = "bruteforce"


@dataclass(frozen=True)
class MeasurementAngles:
    """Bloch angles of the projective measurement on qubit B."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= 0.5 * math.pi:
            raise DomainError(f"theta must lie in [0, pi/2], got {self.theta!r}")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise DomainError(f"phi must lie in [0, 2*pi), got {self.phi!r}")


@dataclass(frozen=True)
class CorrelationBreakdown:
    """Mutual information split into classical correlation and discord."""

    mutual_info: float
    classical: float
    discord: float
    chi: float
    optimal_angles: MeasurementAngles | None


def binary_entropy_like(x: float) -> float:
    """(1/2) * [(1-x)*log2(1-x) + (1+x)*log2(1+x)] for x in [0, 1].

    Increasing from 0 to 1 on the unit interval with 0*log(0) read as 0.
    Inputs within 1e-9 of the interval are clamped; anything further out
    raises DomainError.
    """
    x = float(x)
    if not -_DOMAIN_SLACK <= x <= 1.0 + _DOMAIN_SLACK:
        raise DomainError(f"argument must lie in [0, 1], got {x!r}")
    x = min(max(x, 0.0), 1.0)
    if x == 1.0:
        return 1.0
    low = (1.0 - x) * math.log1p(-x)
    high = (1.0 + x) * math.log1p(x)
    return 0.5 * (low + high) / _LN2


def mutual_information(rho: XDensityMatrix) -> float:
    """I = 2 + sum_i lambda_i log2 lambda_i over the X-state spectrum."""
    total = 2.0
    for lam in eigenvalues(rho):
        if lam > 0.0:
            total += lam * math.log2(lam)
    return total


def _bare_coherences(rho: XDensityMatrix, qubits: QubitPair) -> tuple[float, float]:
    # Unwind the free phases; the results are real up to rounding by construction.
    omega_a, omega_b = qubits.omega_a, qubits.omega_b
    alpha_t = (rho.alpha * cmath.exp(1j * (omega_a + omega_b) * rho.t)).real
    gamma_t = (rho.gamma * cmath.exp(-1j * (omega_b - omega_a) * rho.t)).real
    return alpha_t, gamma_t


def conditional_state(
    rho: XDensityMatrix, k: int, angles: MeasurementAngles, qubits: QubitPair
) -> np.ndarray:
    """Post-measurement state of qubit A given outcome k on qubit B.

    Both outcomes occur with probability 1/2 for this family.  The returned
    2x2 matrix is

        (1/4) * [[2*(1 - c3*cos(2*theta)),   (-1)^k * eps * sin(2*theta)],
                 [(-1)^k * conj(eps) * sin(2*theta), 2*(1 + c3*cos(2*theta))]]

    with eps = alpha_t * exp(i*((omega_a+omega_b)*t - phi))
             + gamma_t * exp(i*((omega_a-omega_b)*t + phi)).
    """
    if k not in (0, 1):
        raise DomainError(f"k must be 0 or 1, got {k!r}")
    alpha_t, gamma_t = _bare_coherences(rho, qubits)
    t = rho.t
    omega_a, omega_b = qubits.omega_a, qubits.omega_b
    eps = alpha_t * cmath.exp(1j * ((omega_a + omega_b) * t - angles.phi)) + gamma_t * cmath.exp(
        1j * ((omega_a - omega_b) * t + angles.phi)
    )
    cos2t = math.cos(2.0 * angles.theta)
    sin2t = math.sin(2.0 * angles.theta)
    sign = -1.0 if k else 1.0
    off = sign * eps * sin2t
    return 0.25 * np.array(
        [
            [2.0 * (1.0 - rho.c3 * cos2t), off],
            [off.conjugate(), 2.0 * (1.0 + rho.c3 * cos2t)],
        ],
        dtype=complex,
    )


def classical_closed(rho: XDensityMatrix) -> tuple[float, float]:
    """Closed-form classical correlation and the branch variable chi."""
    chi = max(abs(rho.c3), 0.5 * (abs(rho.alpha) + abs(rho.gamma)))
    return binary_entropy_like(chi), chi


def _entropies_bits(matrices: np.ndarray) -> np.ndarray:
    lams = np.linalg.eigvalsh(matrices)
    lams = np.clip(lams, 0.0, 1.0)
    safe = np.where(lams > 0.0, lams, 1.0)
    return -np.sum(lams * np.log2(safe), axis=-1)


def _measured_information(
    rho: XDensityMatrix, qubits: QubitPair, theta: float, phi: float
) -> float:
    s0 = _entropies_bits(conditional_state(rho, 0, MeasurementAngles(theta, phi % (2.0 * math.pi)), qubits))
    s1 = _entropies_bits(conditional_state(rho, 1, MeasurementAngles(theta, phi % (2.0 * math.pi)), qubits))
    return 1.0 - 0.5 * float(s0 + s1)


def _golden_max(fun, lo: float, hi: float) -> tuple[float, float]:
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = fun(c), fun(d)
    best_x, best_f = (c, fc) if fc >= fd else (d, fd)
    while b - a > _REFINE_TOL:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = fun(c)
            if fc > best_f:
                best_x, best_f = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = fun(d)
            if fd > best_f:
                best_x, best_f = d, fd
    return best_x, best_f


def classical_bruteforce(
    rho: XDensityMatrix,
    qubits: QubitPair,
    n_theta: int = _MIN_THETA_POINTS,
    n_phi: int = _MIN_PHI_POINTS,
    refine: bool = True,
) -> tuple[float, MeasurementAngles]:
    """Classical correlation by direct search over measurement angles.

    Maximizes 1 - sum_k (1/2) S(conditional_state(k, theta, phi)) on a
    theta x phi grid, then sharpens the grid argmax with one golden-section
    pass per angle.  Ties resolve to the smallest theta, then smallest phi.
    """
    if n_theta < _MIN_THETA_POINTS or n_phi < _MIN_PHI_POINTS:
        raise DomainError(
            f"grid must be at least {_MIN_THETA_POINTS} x {_MIN_PHI_POINTS},"
            f" got {n_theta} x {n_phi}"
        )
    thetas = np.linspace(0.0, 0.5 * math.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    alpha_t, gamma_t = _bare_coherences(rho, qubits)
    t = rho.t
    omega_a, omega_b = qubits.omega_a, qubits.omega_b
    eps = alpha_t * np.exp(1j * ((omega_a + omega_b) * t - phis)) + gamma_t * np.exp(
        1j * ((omega_a - omega_b) * t + phis)
    )
    cos2t = np.cos(2.0 * thetas)[:, None]
    sin2t = np.sin(2.0 * thetas)[:, None]
    states = np.empty((2, n_theta, n_phi, 2, 2), dtype=complex)
    for k, sign in ((0, 1.0), (1, -1.0)):
        off = 0.25 * sign * eps[None, :] * sin2t
        states[k, ..., 0, 0] = 0.5 * (1.0 - rho.c3 * cos2t)
        states[k, ..., 1, 1] = 0.5 * (1.0 + rho.c3 * cos2t)
        states[k, ..., 0, 1] = off
        states[k, ..., 1, 0] = off.conjugate()
    objective = 1.0 - 0.5 * np.sum(_entropies_bits(states), axis=0)
    flat_index = int(np.argmax(objective))  # row-major: smallest theta, then phi
    i_theta, i_phi = np.unravel_index(flat_index, objective.shape)
    best_value = float(objective[i_theta, i_phi])
    best_theta = float(thetas[i_theta])
    best_phi = float(phis[i_phi])
    if refine:
        step_theta = 0.5 * math.pi / (n_theta - 1)
        step_phi = 2.0 * math.pi / n_phi
        theta_ref, value_theta = _golden_max(
            lambda u: _measured_information(rho, qubits, u, best_phi),
            max(0.0, best_theta - step_theta),
            min(0.5 * math.pi, best_theta + step_theta),
        )
        if value_theta > best_value:
            best_value, best_theta = value_theta, theta_ref
        phi_ref, value_phi = _golden_max(
            lambda u: _measured_information(rho, qubits, best_theta, u),
            best_phi - step_phi,
            best_phi + step_phi,
        )
        if value_phi > best_value:
            best_value, best_phi = value_phi, phi_ref % (2.0 * math.pi)
    return best_value, MeasurementAngles(best_theta, best_phi)


def discord(
    rho: XDensityMatrix,
    method: ClassicalMethod = ClassicalMethod.CLOSED,
    qubits: QubitPair | None = None,
    n_theta: int = _MIN_THETA_POINTS,
    n_phi: int = _MIN_PHI_POINTS,
) -> CorrelationBreakdown:
    """Mutual information minus classical correlation, clamped at zero.

    A deficit beyond DISCORD_CLAMP_TOL is treated as an internal inconsistency
    rather than clamped away.  The brute-force method needs the qubit
    splittings to phase the measurement correctly.
    """
    info = mutual_information(rho)
    classical, chi = classical_closed(rho)
    angles = None
    if method is ClassicalMethod.BRUTEFORCE:
        if qubits is None:
            raise DomainError("brute-force classical correlation requires qubits")
        classical, angles = classical_bruteforce(rho, qubits, n_theta, n_phi)
    value = info - classical
    if value < -DISCORD_CLAMP_TOL:
        raise ConsistencyError(
            f"discord = {value!r} below -{DISCORD_CLAMP_TOL}; paths disagree"
        )
    return CorrelationBreakdown(
        info, classical, value if value > 0.0 else 0.0, chi, angles
    )


def discord_plateau(c3: float) -> float:
    """Constant discord held while the optimum stays on the coherence branch."""
    c3 = float(c3)
    if abs(c3) > 1.0 + _DOMAIN_SLACK:
        raise DomainError(f"|c3| must be <= 1, got {c3!r}")
    return binary_entropy_like(min(abs(c3), 1.0))


def discord_decay(d_product: float) -> float:
    """Discord after the transition, a function of D_A*D_B alone."""
    d_product = float(d_product)
    if not 0.0 < d_product <= 1.0 + _DOMAIN_SLACK:
        raise DomainError(f"d_product must lie in (0, 1], got {d_product!r}")
    return binary_entropy_like(min(d_product, 1.0))
