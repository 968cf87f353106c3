"""Cutoff kernels, correlators, and the accumulated kernel Lambda.

Closed forms are checked three ways: against digits frozen from 40-digit
arithmetic, against direct quadrature of the defining integrals via an
independently coded scipy path, and against each other through invariants
(bounds, monotonicity, small-time limits).
"""

import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given, settings, strategies as st

from cslbounds.errors import WhiteNotPointwise
from cslbounds.spectral import (
    CutoffKind,
    CutoffSpec,
    delta_gamma,
    delta_gamma_zero,
    gamma_of_omega,
    lambda_big,
    lambda_big_quadrature,
    spectral_mass,
    spectral_mass_cutoff,
)

COLORED_KINDS = [
    CutoffKind.HEAVISIDE,
    CutoffKind.GAUSSIAN,
    CutoffKind.EXPONENTIAL,
    CutoffKind.LORENTZIAN,
]

OMEGA_M = 1.0e4  # 1/s, used by all the frozen spot values below


def _spec(kind: CutoffKind, omega_m: float = OMEGA_M) -> CutoffSpec:
    return CutoffSpec(kind, omega_m)


# ----------------------------------------------------------------- spec

def test_white_rejects_cutoff_frequency():
    with pytest.raises(ValueError):
        CutoffSpec(CutoffKind.WHITE, 1e4)


@pytest.mark.parametrize("kind", COLORED_KINDS)
def test_colored_kinds_require_positive_cutoff(kind):
    with pytest.raises(ValueError):
        CutoffSpec(kind)
    with pytest.raises(ValueError):
        CutoffSpec(kind, 0.0)
    with pytest.raises(ValueError):
        CutoffSpec(kind, -3.0)
    with pytest.raises(ValueError):
        CutoffSpec(kind, math.inf)


def test_constructor_shortcuts():
    assert CutoffSpec.white() == CutoffSpec(CutoffKind.WHITE)
    assert CutoffSpec.lorentzian(2.0) == CutoffSpec(CutoffKind.LORENTZIAN, 2.0)
    assert CutoffSpec.heaviside(2.0).kind is CutoffKind.HEAVISIDE
    assert CutoffSpec.gaussian(2.0).kind is CutoffKind.GAUSSIAN
    assert CutoffSpec.exponential(2.0).kind is CutoffKind.EXPONENTIAL


# --------------------------------------------------------------- gamma

def test_gamma_values_at_cutoff():
    assert gamma_of_omega(CutoffSpec.white(), 123.0) == 1.0
    assert gamma_of_omega(_spec(CutoffKind.HEAVISIDE), OMEGA_M) == 1.0
    assert gamma_of_omega(_spec(CutoffKind.HEAVISIDE), OMEGA_M * (1 + 1e-12)) == 0.0
    assert gamma_of_omega(_spec(CutoffKind.GAUSSIAN), OMEGA_M) == pytest.approx(
        math.exp(-1.0), rel=1e-15
    )
    assert gamma_of_omega(_spec(CutoffKind.EXPONENTIAL), OMEGA_M) == pytest.approx(
        math.exp(-1.0), rel=1e-15
    )
    assert gamma_of_omega(_spec(CutoffKind.LORENTZIAN), OMEGA_M) == pytest.approx(
        0.5, rel=1e-15
    )


@pytest.mark.parametrize("kind", list(CutoffKind))
def test_gamma_is_one_at_zero(kind):
    spec = CutoffSpec.white() if kind is CutoffKind.WHITE else _spec(kind)
    assert gamma_of_omega(spec, 0.0) == 1.0


def test_gamma_rejects_negative_omega():
    with pytest.raises(ValueError):
        gamma_of_omega(_spec(CutoffKind.LORENTZIAN), -1.0)
    with pytest.raises(ValueError):
        gamma_of_omega(_spec(CutoffKind.LORENTZIAN), np.array([1.0, -1.0]))


@pytest.mark.parametrize("kind", list(CutoffKind))
def test_gamma_array_matches_scalar(kind):
    spec = CutoffSpec.white() if kind is CutoffKind.WHITE else _spec(kind)
    omegas = np.array([0.0, 1.0, OMEGA_M / 2, OMEGA_M, 3 * OMEGA_M])
    arr = gamma_of_omega(spec, omegas)
    assert arr.shape == omegas.shape
    for i, w in enumerate(omegas):
        assert arr[i] == gamma_of_omega(spec, float(w))


@settings(max_examples=200)
@given(
    kind=st.sampled_from(list(CutoffKind)),
    omega=st.floats(min_value=0.0, max_value=1e12, allow_nan=False),
    omega_m=st.floats(min_value=1e-3, max_value=1e11, allow_nan=False),
)
def test_gamma_bounded_and_nonincreasing(kind, omega, omega_m):
    spec = CutoffSpec.white() if kind is CutoffKind.WHITE else CutoffSpec(kind, omega_m)
    g = gamma_of_omega(spec, omega)
    assert 0.0 <= g <= 1.0
    assert gamma_of_omega(spec, 2.0 * omega + 1.0) <= g + 1e-15


# --------------------------------------------------------- delta_gamma

# delta_gamma at omega_m = 1e4, tau = 1e-4 (so omega_m * tau = 1)
DELTA_REFERENCE = [
    (CutoffKind.LORENTZIAN, 1839.3972058572117),
    (CutoffKind.HEAVISIDE, 2678.4853340116387),
    (CutoffKind.GAUSSIAN, 2196.9564473386120),
    (CutoffKind.EXPONENTIAL, 1591.5494309189535),
]


@pytest.mark.parametrize("kind,expected", DELTA_REFERENCE)
def test_delta_gamma_frozen_values(kind, expected):
    assert delta_gamma(_spec(kind), 1e-4) == pytest.approx(expected, rel=1e-13)


@pytest.mark.parametrize("kind,expected", DELTA_REFERENCE)
def test_delta_gamma_matches_cosine_transform(kind, expected):
    """Independent route: QUADPACK cosine transform of gamma itself."""
    spec = _spec(kind)
    tau = 1e-4
    if kind is CutoffKind.HEAVISIDE:
        val, _ = scipy.integrate.quad(
            lambda w: 1.0, 0.0, OMEGA_M, weight="cos", wvar=tau
        )
    else:
        val, _ = scipy.integrate.quad(
            lambda w: gamma_of_omega(spec, w),
            0.0,
            np.inf,
            weight="cos",
            wvar=tau,
        )
    assert delta_gamma(spec, tau) == pytest.approx(val / math.pi, rel=1e-9)


def test_delta_gamma_zero_values():
    assert delta_gamma_zero(_spec(CutoffKind.LORENTZIAN)) == pytest.approx(
        OMEGA_M / 2, rel=1e-15
    )
    assert delta_gamma_zero(_spec(CutoffKind.GAUSSIAN)) == pytest.approx(
        OMEGA_M / (2 * math.sqrt(math.pi)), rel=1e-15
    )
    for kind in (CutoffKind.HEAVISIDE, CutoffKind.EXPONENTIAL):
        assert delta_gamma_zero(_spec(kind)) == pytest.approx(
            OMEGA_M / math.pi, rel=1e-15
        )


@pytest.mark.parametrize("kind", COLORED_KINDS)
def test_delta_gamma_even_and_continuous_at_zero(kind):
    spec = _spec(kind)
    assert delta_gamma(spec, -1e-4) == delta_gamma(spec, 1e-4)
    assert delta_gamma(spec, 1e-13) == pytest.approx(
        delta_gamma_zero(spec), rel=1e-8
    )
    assert delta_gamma(spec, 0.0) == pytest.approx(delta_gamma_zero(spec), rel=1e-15)


def test_white_has_no_pointwise_correlator():
    with pytest.raises(WhiteNotPointwise):
        delta_gamma(CutoffSpec.white(), 0.5)
    with pytest.raises(WhiteNotPointwise):
        delta_gamma_zero(CutoffSpec.white())


# ---------------------------------------------------------- lambda_big

# Lambda at omega_m = 1e4, t = 1e-4 (x = 1), frozen from 40-digit closed forms
LAMBDA_REFERENCE = [
    (CutoffKind.LORENTZIAN, 1.8393972058572117e-05),
    (CutoffKind.HEAVISIDE, 1.5482127375092578e-05),
    (CutoffKind.GAUSSIAN, 1.3545164482648938e-05),
    (CutoffKind.EXPONENTIAL, 1.3968219992367420e-05),
]


@pytest.mark.parametrize("kind,expected", LAMBDA_REFERENCE)
def test_lambda_frozen_values(kind, expected):
    assert lambda_big(_spec(kind), 1e-4) == pytest.approx(expected, rel=1e-12)


def test_lambda_white_is_half_t():
    assert lambda_big(CutoffSpec.white(), 3.7e-5) == 3.7e-5 / 2


def test_lambda_lorentzian_tiny_time_series_branch():
    # x = omega_m t = 1e-5 exercises the cancellation-free series
    assert lambda_big(CutoffSpec.lorentzian(OMEGA_M), 1e-9) == pytest.approx(
        2.4999916666874999e-15, rel=1e-12
    )


def test_lambda_at_zero_and_negative_time():
    assert lambda_big(_spec(CutoffKind.GAUSSIAN), 0.0) == 0.0
    with pytest.raises(ValueError):
        lambda_big(_spec(CutoffKind.GAUSSIAN), -1e-6)
    with pytest.raises(ValueError):
        lambda_big_quadrature(_spec(CutoffKind.GAUSSIAN), -1e-6)


def test_lambda_ratio_to_white_at_x_ten():
    # by omega_m t = 10 the lorentzian has recovered >90% of the white value
    t = 10.0 / OMEGA_M
    ratio = lambda_big(CutoffSpec.lorentzian(OMEGA_M), t) / (0.5 * t)
    assert ratio == pytest.approx(0.90000453999297625, rel=1e-12)


@pytest.mark.parametrize("kind", list(CutoffKind))
@pytest.mark.parametrize("x", [1e-3, 0.31, 1.0, 7.9, 240.0])
def test_lambda_closed_form_matches_quadrature(kind, x):
    spec = CutoffSpec.white() if kind is CutoffKind.WHITE else _spec(kind)
    t = x / OMEGA_M
    closed = lambda_big(spec, t)
    quad = lambda_big_quadrature(spec, t)
    assert closed == pytest.approx(quad, rel=1e-9)


def test_lambda_ordering_in_cutoff_frequency():
    """A looser cutoff passes more noise: Lambda grows with omega_m."""
    for kind in COLORED_KINDS:
        for t in (1e-8, 1e-6, 1e-4):
            values = [
                lambda_big(CutoffSpec(kind, w), t) for w in (1e6, 1e8, 4e10)
            ]
            assert values[0] < values[1] < values[2]
            assert values[2] <= 0.5 * t * (1 + 1e-12)


@settings(max_examples=150, deadline=None)
@given(
    kind=st.sampled_from(list(CutoffKind)),
    log_x=st.floats(min_value=-6.0, max_value=6.0, allow_nan=False),
    omega_m=st.floats(min_value=1e0, max_value=1e10, allow_nan=False),
)
def test_lambda_bounded_by_white(kind, log_x, omega_m):
    spec = CutoffSpec.white() if kind is CutoffKind.WHITE else CutoffSpec(kind, omega_m)
    t = 10.0**log_x / omega_m
    val = lambda_big(spec, t)
    assert 0.0 <= val <= 0.5 * t * (1 + 1e-12)


@settings(max_examples=150, deadline=None)
@given(
    kind=st.sampled_from(COLORED_KINDS),
    log_x=st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
    factor=st.floats(min_value=1.01, max_value=100.0, allow_nan=False),
)
def test_lambda_nondecreasing_in_time(kind, log_x, factor):
    spec = _spec(kind)
    t = 10.0**log_x / OMEGA_M
    assert lambda_big(spec, factor * t) >= lambda_big(spec, t) * (1 - 1e-12)


@pytest.mark.parametrize("kind", COLORED_KINDS)
def test_lambda_small_time_limit(kind):
    """Lambda -> delta_gamma(0) t^2/2 as t -> 0."""
    spec = _spec(kind)
    t = 1e-3 / OMEGA_M
    limit = delta_gamma_zero(spec) * t * t / 2
    assert lambda_big(spec, t) == pytest.approx(limit, rel=1e-3)


# ------------------------------------------------------- spectral mass

def test_spectral_mass_totals():
    big = 1e9  # many decades beyond the cutoff
    assert spectral_mass(_spec(CutoffKind.HEAVISIDE), big) == OMEGA_M
    assert spectral_mass(_spec(CutoffKind.LORENTZIAN), big) == pytest.approx(
        math.pi * OMEGA_M / 2, rel=1e-5
    )
    assert spectral_mass(_spec(CutoffKind.GAUSSIAN), big) == pytest.approx(
        math.sqrt(math.pi) * OMEGA_M / 2, rel=1e-12
    )
    assert spectral_mass(_spec(CutoffKind.EXPONENTIAL), big) == pytest.approx(
        OMEGA_M, rel=1e-12
    )
    assert spectral_mass(CutoffSpec.white(), big) == big


@pytest.mark.parametrize("kind", COLORED_KINDS)
def test_spectral_mass_matches_direct_quadrature(kind):
    spec = _spec(kind)
    hi = 2.5 * OMEGA_M
    val, _ = scipy.integrate.quad(lambda w: gamma_of_omega(spec, w), 0.0, hi)
    assert spectral_mass(spec, hi) == pytest.approx(val, rel=1e-10)


@pytest.mark.parametrize("kind", COLORED_KINDS)
def test_spectral_mass_cutoff_inverts_mass(kind):
    spec = _spec(kind)
    fraction = 0.999
    w_hi = spectral_mass_cutoff(spec, fraction)
    if kind is CutoffKind.HEAVISIDE:
        # compact support: the cutoff frequency itself carries all the mass
        assert w_hi == OMEGA_M
    else:
        total = spectral_mass(spec, 1e12)
        assert spectral_mass(spec, w_hi) == pytest.approx(
            fraction * total, rel=1e-6
        )


def test_spectral_mass_cutoff_rejects_white_and_bad_fraction():
    with pytest.raises(ValueError):
        spectral_mass_cutoff(CutoffSpec.white())
    with pytest.raises(ValueError):
        spectral_mass_cutoff(_spec(CutoffKind.LORENTZIAN), 1.0)
    with pytest.raises(ValueError):
        spectral_mass_cutoff(_spec(CutoffKind.LORENTZIAN), 0.0)
