"""Shared strategies and matrix helpers for the test suite."""
import math

import numpy as np
from hypothesis import strategies as st

from dephasing_discord import QubitPair, Reservoir, SystemConfig, XStateParams

LN2 = math.log(2.0)


@st.composite
def valid_states(draw):
    """X states drawn so that all four initial eigenvalues are >= 0.

    Sampling (c3, a, g) with |a| <= 1+c3 and |g| <= 1-c3 and mapping back to
    c1 = (a+g)/2, c2 = (g-a)/2 covers exactly the physical region, since the
    eigenvalues depend on c only through c3, |c1-c2| and |c1+c2|.
    """
    c3 = draw(st.floats(-1.0, 1.0, allow_nan=False))
    a = draw(st.floats(-(1.0 + c3), 1.0 + c3, allow_nan=False))
    g = draw(st.floats(-(1.0 - c3), 1.0 - c3, allow_nan=False))
    return XStateParams((a + g) / 2.0, (g - a) / 2.0, c3)


@st.composite
def reservoirs(draw, allow_zero_temperature=True):
    eta = draw(st.floats(0.05, 2.0, allow_nan=False))
    omega_c = draw(st.floats(0.5, 3.0, allow_nan=False))
    if allow_zero_temperature and draw(st.booleans()):
        beta = math.inf
    else:
        beta = draw(st.floats(0.5, 100.0, allow_nan=False))
    return Reservoir(eta, omega_c, beta)


@st.composite
def system_configs(draw, zero_splitting=False):
    if zero_splitting:
        qubits = QubitPair(0.0, 0.0)
    else:
        qubits = QubitPair(
            draw(st.floats(0.0, 10.0, allow_nan=False)),
            draw(st.floats(0.0, 10.0, allow_nan=False)),
        )
    return SystemConfig(
        qubits=qubits,
        bath_a=draw(reservoirs()),
        bath_b=draw(reservoirs()),
        state=draw(valid_states()),
    )


times = st.floats(0.0, 30.0, allow_nan=False)


def entropy_bits(eigenvalues):
    """Von Neumann entropy from an eigenvalue array, 0*log0 = 0."""
    lam = np.clip(np.asarray(eigenvalues, dtype=float), 0.0, 1.0)
    mask = lam > 0.0
    return float(-np.sum(lam[mask] * np.log2(lam[mask])))


def partial_trace(rho, keep):
    """Trace out one qubit of a 4x4 matrix in the (gg, ge, eg, ee) basis.

    keep=0 returns the first-qubit state, keep=1 the second.
    """
    r = np.asarray(rho).reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum("ikjk->ij", r)
    return np.einsum("kikj->ij", r)


def assert_density_matrix(rho, atol=1e-12):
    rho = np.asarray(rho)
    assert rho.shape == (4, 4)
    assert abs(np.trace(rho) - 1.0) <= atol
    assert np.max(np.abs(rho - rho.conj().T)) <= atol
    assert np.min(np.linalg.eigvalsh(rho)) >= -atol
