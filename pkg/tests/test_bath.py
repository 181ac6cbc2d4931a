"""Decohering exponent: closed form against independent oracles and the
quadrature route.
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import loggamma

from dephasing_discord import (
    DomainError,
    GammaMethod,
    Reservoir,
    decoherence_product,
    gamma_closed,
    gamma_quadrature,
    spectral_density,
)

from conftest import reservoirs

# Reference for Reservoir(0.2, 1.0, 5.0) at t = 1, from a 50-digit partial
# sum of the thermal series (10^7 terms plus integral tail).
GAMMA_REFERENCE = 0.079368644768889853915


def thermal_series_oracle(x, b):
    """sum_{n>=1} ln(1 + x^2/(1+b n)^2) via the gamma-function identity.

    Pairing the factors (1+bn+ix)(1+bn-ix) and telescoping the partial sums
    against ln Gamma gives 2[ln Gamma(1+1/b) - Re ln Gamma(1+(1+ix)/b)].
    """
    return 2.0 * (
        float(np.real(loggamma(1.0 + 1.0 / b)))
        - float(np.real(loggamma(1.0 + (1.0 + 1j * x) / b)))
    )


def test_spectral_density_values():
    assert spectral_density(Reservoir(0.2, 1.0, 5.0), 1.0) == pytest.approx(
        0.07357588823428847, rel=1e-15
    )
    assert spectral_density(Reservoir(1.0, 2.0, math.inf), 2.0) == pytest.approx(
        0.7357588823428847, rel=1e-15
    )
    assert spectral_density(Reservoir(0.2, 1.0, 5.0), 0.0) == 0.0


def test_spectral_density_peaks_at_cutoff():
    r = Reservoir(0.7, 1.3, 5.0)
    grid = np.linspace(0.0, 10.0, 2001)
    values = np.array([spectral_density(r, w) for w in grid])
    assert grid[int(np.argmax(values))] == pytest.approx(r.omega_c, abs=0.01)


def test_spectral_density_rejects_negative_frequency():
    with pytest.raises(DomainError):
        spectral_density(Reservoir(0.2, 1.0, 5.0), -0.1)


def test_gamma_closed_reference_value():
    out = gamma_closed(Reservoir(0.2, 1.0, 5.0), 1.0)
    assert out.gamma == pytest.approx(GAMMA_REFERENCE, abs=1e-12)
    assert out.method is GammaMethod.CLOSED_FORM
    assert out.est_error <= 1e-12
    # the thermal terms push d strictly below the zero-temperature 2**-0.1
    assert out.d == pytest.approx(0.9236993447410144, abs=1e-12)
    assert out.d < 0.9330329915368074


def test_gamma_closed_zero_temperature_is_logarithmic():
    for eta, omega_c, t in [(0.2, 1.0, 1.0), (0.9, 2.0, 3.0), (0.05, 0.5, 17.0)]:
        out = gamma_closed(Reservoir(eta, omega_c, math.inf), t)
        assert out.gamma == pytest.approx(
            0.5 * eta * math.log1p((omega_c * t) ** 2), rel=1e-15
        )
    assert gamma_closed(Reservoir(0.2, 1.0, math.inf), 1.0).gamma == pytest.approx(
        0.06931471805599453, rel=1e-15
    )


@given(
    st.floats(1e-3, 50.0, allow_nan=False),
    st.floats(0.5, 3.0, allow_nan=False),
    st.floats(0.05, 200.0, allow_nan=False),
)
@settings(max_examples=200, deadline=None)
def test_thermal_series_matches_loggamma_identity(t, omega_c, beta):
    eta = 0.7
    out = gamma_closed(Reservoir(eta, omega_c, beta), t)
    x = omega_c * t
    series_pkg = out.gamma / eta - 0.5 * math.log1p(x * x)
    series_ref = thermal_series_oracle(x, beta * omega_c)
    assert abs(series_pkg - series_ref) <= 1e-10 + 1e-10 * abs(series_ref)


@given(reservoirs(), st.floats(0.0, 25.0, allow_nan=False), st.floats(1e-4, 5.0, allow_nan=False))
@settings(max_examples=150, deadline=None)
def test_gamma_is_nonnegative_and_nondecreasing_in_time(reservoir, t, dt):
    lo = gamma_closed(reservoir, t)
    hi = gamma_closed(reservoir, t + dt)
    assert lo.gamma >= 0.0
    assert hi.gamma >= lo.gamma - 1e-12
    assert hi.d <= lo.d + 1e-12


@given(reservoirs(allow_zero_temperature=False), st.floats(0.1, 25.0, allow_nan=False))
@settings(max_examples=100, deadline=None)
def test_gamma_increases_with_temperature(reservoir, t):
    hotter = Reservoir(reservoir.eta, reservoir.omega_c, reservoir.beta / 2.0)
    colder = Reservoir(reservoir.eta, reservoir.omega_c, math.inf)
    g = gamma_closed(reservoir, t).gamma
    assert gamma_closed(hotter, t).gamma >= g - 1e-12
    assert gamma_closed(colder, t).gamma <= g + 1e-12


@given(reservoirs(), st.floats(0.0, 25.0, allow_nan=False))
@settings(max_examples=100, deadline=None)
def test_gamma_is_linear_in_coupling(reservoir, t):
    doubled = Reservoir(2.0 * reservoir.eta, reservoir.omega_c, reservoir.beta)
    g1 = gamma_closed(reservoir, t).gamma
    g2 = gamma_closed(doubled, t).gamma
    assert g2 == pytest.approx(2.0 * g1, rel=1e-12, abs=1e-15)


@given(reservoirs())
def test_gamma_vanishes_at_t_zero(reservoir):
    out = gamma_closed(reservoir, 0.0)
    assert out.gamma == 0.0
    assert out.d == 1.0
    quad = gamma_quadrature(reservoir, 0.0)
    assert quad.gamma == 0.0 and quad.d == 1.0


@given(reservoirs(), st.floats(0.0, 25.0, allow_nan=False))
@settings(max_examples=100, deadline=None)
def test_d_is_exponential_of_gamma(reservoir, t):
    out = gamma_closed(reservoir, t)
    assert out.d == math.exp(-out.gamma)
    assert 0.0 < out.d <= 1.0


def test_gamma_rejects_negative_time():
    with pytest.raises(DomainError):
        gamma_closed(Reservoir(0.2, 1.0, 5.0), -0.5)
    with pytest.raises(DomainError):
        gamma_quadrature(Reservoir(0.2, 1.0, 5.0), -0.5)


def test_quadrature_matches_closed_form_on_seeded_draws():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        reservoir = Reservoir(
            eta=float(rng.uniform(0.05, 1.0)),
            omega_c=float(rng.uniform(0.5, 2.0)),
            beta=math.inf if rng.uniform() < 0.25 else float(rng.uniform(1.0, 50.0)),
        )
        t = float(rng.uniform(0.0, 20.0))
        quad = gamma_quadrature(reservoir, t)
        closed = gamma_closed(reservoir, t)
        assert quad.est_error <= 1e-9
        assert quad.method is GammaMethod.QUADRATURE
        worst = max(worst, abs(quad.gamma - closed.gamma) / max(closed.gamma, 1e-3))
    assert worst <= 1e-6


def test_quadrature_survives_a_very_hot_bath():
    reservoir = Reservoir(0.3, 1.0, 1e-3)
    quad = gamma_quadrature(reservoir, 10.0)
    closed = gamma_closed(reservoir, 10.0)
    assert quad.gamma == pytest.approx(closed.gamma, rel=1e-8)
    assert math.isfinite(quad.gamma)


def test_quadrature_prefactor_8_is_a_factor_4_off():
    # negative control: the conventional prefactor-8 writing of the exponent
    # integral disagrees with the summed form by exactly 4
    reservoir = Reservoir(0.2, 1.0, 5.0)
    wrong = gamma_quadrature(reservoir, 2.0, prefactor=8.0).gamma
    right = gamma_closed(reservoir, 2.0).gamma
    assert wrong / right == pytest.approx(4.0, rel=1e-6)


@given(reservoirs(), reservoirs(), st.floats(0.0, 20.0, allow_nan=False))
@settings(max_examples=50, deadline=None)
def test_decoherence_product_factorizes(bath_a, bath_b, t):
    product = decoherence_product(bath_a, bath_b, t)
    assert product == pytest.approx(
        gamma_closed(bath_a, t).d * gamma_closed(bath_b, t).d, rel=1e-15
    )
