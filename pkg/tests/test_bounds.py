"""Root-finding layer: collapse times, cutoff bounds, and crossings.

Solver outputs are checked against analytically inverted laws, against
roots frozen from 40-digit bisection, and against each other (the cutoff
bound and the collapse-time solve are the same root approached from two
different axes).
"""

import math

import pytest
from hypothesis import given, settings, strategies as st

from cslbounds.bounds import (
    DEFAULT_FREQUENCY_SOLVER,
    DEFAULT_TIME_SOLVER,
    BoundResult,
    SolverConfig,
    collapse_time,
    collapse_time_curve,
    collapse_time_for_scenario,
    cutoff_lower_bound,
    fluctuation_bound,
    lambda_rescale,
    small_omega_cutoff,
    white_collapse_time,
)
from cslbounds.collapse import CollapseParams, white_cubic_coefficient
from cslbounds.errors import (
    AlreadyCollapsing,
    MonotonicityViolation,
    NeverCollapsing,
    NoRootInBudget,
    WhiteNotNormalizable,
)
from cslbounds.fluctuations import FluctuationMeasure
from cslbounds.scenarios import preset
from cslbounds.spectral import CutoffKind, CutoffSpec

PARAMS = CollapseParams()

# white-noise collapse times per preset, frozen from 40-digit K^(-1/3)
WHITE_TC_REFERENCE = [
    ("detection-2mA", 8.1585277322185189e-06),
    ("nand-13.8mA", 4.2854401141259489e-06),
    ("flash-500mA", 1.2950855504635406e-06),
]

# Lorentzian cutoff bounds (scenario, t_m) -> omega_M root, frozen from
# 40-digit bisection of the exponent
CUTOFF_REFERENCE = [
    ("nand-13.8mA", 1e-4, 1.5741244867179875),
    ("flash-500mA", 1e-4, 0.043443619196190089),
    ("nand-13.8mA", 1e-5, 16624.629539256287),
    ("flash-500mA", 1e-5, 435.06581807809856),
]

# (t_c_white / t_m)^3 rate-rescale factors for the same four cells
RESCALE_REFERENCE = [
    ("flash-500mA", 1e-5, 2.1721778142328394e-3),
    ("nand-13.8mA", 1e-5, 7.8702094718581329e-2),
    ("flash-500mA", 1e-4, 2.1721778142328394e-6),
    ("nand-13.8mA", 1e-4, 7.8702094718581329e-5),
]


# -------------------------------------------------------------- config

def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        SolverConfig(rel_tol=1e-3)
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=5)
    with pytest.raises(ValueError):
        SolverConfig(growth=1.0)
    with pytest.raises(ValueError):
        SolverConfig(bracket_floor=1e6, bracket_ceiling=1e-12)
    assert DEFAULT_TIME_SOLVER.bracket_ceiling == 1e6
    assert DEFAULT_FREQUENCY_SOLVER.bracket_ceiling == 1e14


def test_bound_result_quantity_guards():
    r = BoundResult(1.0, "t_c", (0.9, 1.1), 12, 1e-12)
    assert r.t_c == 1.0
    with pytest.raises(ValueError):
        _ = r.omega_m_bound
    w = BoundResult(2.0, "omega_m_bound", (1.9, 2.1), 12, 1e-12)
    assert w.omega_m_bound == 2.0
    with pytest.raises(ValueError):
        _ = w.t_c


# ------------------------------------------------------- collapse_time

def test_collapse_time_inverts_cubic():
    result = collapse_time(lambda t: 1e15 * t**3)
    assert result.quantity == "t_c"
    assert result.value == pytest.approx(1e-5, rel=1e-9)
    assert result.bracket[0] <= result.value <= result.bracket[1]
    assert result.iterations > 0
    assert abs(result.residual) <= 1e-8


@settings(max_examples=60, deadline=None)
@given(
    log_c=st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
    p=st.floats(min_value=1.0, max_value=4.0, allow_nan=False),
)
def test_collapse_time_inverts_power_laws(log_c, p):
    c = 10.0**log_c
    result = collapse_time(lambda t: c * t**p)
    assert result.value == pytest.approx(c ** (-1.0 / p), rel=1e-9)
    assert abs(result.residual) <= 1e-8


def test_collapse_time_root_below_floor():
    # Gamma already exceeds 1 at the bracket floor; the solver must still
    # find the root by bisecting down from it
    result = collapse_time(lambda t: 1e13 * t)
    assert result.value == pytest.approx(1e-13, rel=1e-9)


def test_collapse_time_no_root_in_budget():
    with pytest.raises(NoRootInBudget):
        collapse_time(lambda t: 1e-40 * t)


def test_collapse_time_detects_decreasing_exponent():
    with pytest.raises(MonotonicityViolation):
        collapse_time(lambda t: 0.5 if t < 1e-3 else 0.2)


def test_collapse_time_rejects_invalid_exponent():
    with pytest.raises(ValueError):
        collapse_time(lambda t: -1.0)
    with pytest.raises(ValueError):
        collapse_time(lambda t: math.nan)


def test_iteration_budget_is_enforced():
    tight = SolverConfig(max_iterations=10)
    with pytest.raises(NoRootInBudget):
        collapse_time(lambda t: 1e15 * t**3, tight)


# ------------------------------------------------- white collapse times

@pytest.mark.parametrize("name,tc_ref", WHITE_TC_REFERENCE)
def test_white_collapse_times_frozen(name, tc_ref):
    scenario = preset(name)
    result = collapse_time_for_scenario(PARAMS, CutoffSpec.white(), scenario)
    assert result.t_c == pytest.approx(tc_ref, rel=1e-8)
    assert abs(result.residual) <= 1e-8


@pytest.mark.parametrize("name,tc_ref", WHITE_TC_REFERENCE)
def test_solver_matches_analytic_cube_root(name, tc_ref):
    scenario = preset(name)
    k = white_cubic_coefficient(PARAMS, scenario)
    solved = collapse_time_for_scenario(PARAMS, CutoffSpec.white(), scenario).t_c
    assert solved == pytest.approx(white_collapse_time(k), rel=1e-8)
    assert abs(k * solved**3 - 1.0) <= 1e-8


def test_white_collapse_time_validation():
    with pytest.raises(ValueError):
        white_collapse_time(0.0)
    with pytest.raises(ValueError):
        white_collapse_time(math.inf)


def test_colored_collapse_is_slower_than_white():
    scenario = preset("flash-500mA")
    white_tc = collapse_time_for_scenario(PARAMS, CutoffSpec.white(), scenario).t_c
    for kind in (CutoffKind.LORENTZIAN, CutoffKind.GAUSSIAN):
        colored_tc = collapse_time_for_scenario(
            PARAMS, CutoffSpec(kind, 1e5), scenario
        ).t_c
        assert colored_tc > white_tc


# --------------------------------------------------- cutoff_lower_bound

@pytest.mark.parametrize("name,t_m,omega_ref", CUTOFF_REFERENCE)
def test_cutoff_bounds_frozen(name, t_m, omega_ref):
    result = cutoff_lower_bound(PARAMS, preset(name), t_m)
    assert result.quantity == "omega_m_bound"
    assert result.omega_m_bound == pytest.approx(omega_ref, rel=1e-9)
    assert abs(result.residual) <= 1e-8


@pytest.mark.parametrize("name,t_m,omega_ref", CUTOFF_REFERENCE)
def test_cutoff_bound_agrees_with_time_solve(name, t_m, omega_ref):
    """Same root from the other axis: at the bounding cutoff, the collapse
    time equals the measurement time."""
    scenario = preset(name)
    omega = cutoff_lower_bound(PARAMS, scenario, t_m).omega_m_bound
    tc = collapse_time_for_scenario(
        PARAMS, CutoffSpec.lorentzian(omega), scenario
    ).t_c
    assert tc == pytest.approx(t_m, rel=1e-8)


def test_small_omega_law_where_valid():
    """omega* = 2/(K t_m^4) holds to 0.5% while omega* t_m < 1e-2; the
    (nand, 1e-5) cell sits outside that regime and visibly departs."""
    for name, t_m, omega_ref in CUTOFF_REFERENCE:
        k = white_cubic_coefficient(PARAMS, preset(name))
        law = small_omega_cutoff(k, t_m)
        if omega_ref * t_m < 1e-2:
            assert law == pytest.approx(omega_ref, rel=5e-3)
        else:
            assert abs(law / omega_ref - 1.0) > 5e-3


def test_small_omega_cutoff_validation():
    with pytest.raises(ValueError):
        small_omega_cutoff(0.0, 1e-4)
    with pytest.raises(ValueError):
        small_omega_cutoff(1e15, -1e-4)


def test_cutoff_bound_rejects_white():
    with pytest.raises(ValueError):
        cutoff_lower_bound(PARAMS, preset("flash-500mA"), 1e-4, CutoffKind.WHITE)
    with pytest.raises(ValueError):
        cutoff_lower_bound(PARAMS, preset("flash-500mA"), 0.0)


def test_cutoff_bound_never_collapsing():
    # 2 mA cannot collapse in a microsecond even with white noise
    with pytest.raises(NeverCollapsing):
        cutoff_lower_bound(PARAMS, preset("detection-2mA"), 1e-6)


def test_cutoff_bound_already_collapsing():
    # after 10 s even an omega_M at the bracket floor has collapsed
    with pytest.raises(AlreadyCollapsing):
        cutoff_lower_bound(PARAMS, preset("flash-500mA"), 10.0)


def test_cutoff_bound_ceiling_exhausted():
    low_ceiling = SolverConfig(bracket_ceiling=1e-2)
    with pytest.raises(NoRootInBudget):
        cutoff_lower_bound(
            PARAMS, preset("flash-500mA"), 1e-4, config=low_ceiling
        )


@pytest.mark.parametrize(
    "kind", [CutoffKind.HEAVISIDE, CutoffKind.GAUSSIAN, CutoffKind.EXPONENTIAL]
)
def test_cutoff_bound_other_kernels_same_order(kind):
    # all memory kernels with the same cutoff suppress comparably, so the
    # bounds land within one decade of the Lorentzian one
    lor = cutoff_lower_bound(PARAMS, preset("flash-500mA"), 1e-4).omega_m_bound
    other = cutoff_lower_bound(
        PARAMS, preset("flash-500mA"), 1e-4, kind
    ).omega_m_bound
    assert lor / 10 < other < lor * 10


# ----------------------------------------------------- fluctuation_bound

def test_fluctuation_bound_endpoint_frozen():
    for t_m, omega_ref in ((1e-4, 9.9995457944465352e4), (1e-5, 9.9995457944465352e5)):
        result = fluctuation_bound(FluctuationMeasure.ENDPOINT, t_m)
        assert result.omega_m_bound == pytest.approx(omega_ref, rel=1e-9)
        assert abs(result.residual) <= 1e-10


def test_fluctuation_bound_window_frozen():
    result = fluctuation_bound(FluctuationMeasure.WINDOW, 1e-4)
    assert result.omega_m_bound * 1e-4 == pytest.approx(18.944271916622273, rel=1e-9)


def test_fluctuation_bound_scales_inversely_with_window():
    a = fluctuation_bound(FluctuationMeasure.ENDPOINT, 1e-4).omega_m_bound
    b = fluctuation_bound(FluctuationMeasure.ENDPOINT, 1e-5).omega_m_bound
    assert b == pytest.approx(10.0 * a, rel=1e-8)


def test_fluctuation_bound_validation():
    with pytest.raises(ValueError):
        fluctuation_bound(FluctuationMeasure.ENDPOINT, 0.0)
    with pytest.raises(ValueError):
        fluctuation_bound(FluctuationMeasure.ENDPOINT, 1e-4, threshold=0.0)
    with pytest.raises(ValueError):
        fluctuation_bound(FluctuationMeasure.ENDPOINT, 1e-4, threshold=1.0)
    with pytest.raises(WhiteNotNormalizable):
        fluctuation_bound(FluctuationMeasure.ENDPOINT, 1e-4, CutoffKind.WHITE)


def test_fluctuation_bound_crossing_below_floor():
    high_floor = SolverConfig(bracket_floor=1e10, bracket_ceiling=1e14)
    with pytest.raises(NoRootInBudget):
        fluctuation_bound(FluctuationMeasure.ENDPOINT, 1e-4, config=high_floor)


def test_fluctuation_bound_ceiling_exhausted():
    low_ceiling = SolverConfig(bracket_ceiling=1e3)
    with pytest.raises(NoRootInBudget):
        fluctuation_bound(FluctuationMeasure.ENDPOINT, 1e-4, config=low_ceiling)


# -------------------------------------------------------- rate rescale

@pytest.mark.parametrize("name,t_m,factor_ref", RESCALE_REFERENCE)
def test_lambda_rescale_frozen(name, t_m, factor_ref):
    tc = dict(WHITE_TC_REFERENCE)[name]
    assert lambda_rescale(tc, t_m) == pytest.approx(factor_ref, rel=1e-10)


def test_lambda_rescale_validation():
    with pytest.raises(ValueError):
        lambda_rescale(0.0, 1e-4)
    with pytest.raises(ValueError):
        lambda_rescale(1e-6, 0.0)
    assert lambda_rescale(1e-4, 1e-4) == 1.0


# ---------------------------------------------------------------- curve

def test_collapse_time_curve_decreases_with_cutoff():
    scenario = preset("flash-500mA")
    grid = [1e2, 1e4, 1e6]
    curve = collapse_time_curve(PARAMS, scenario, CutoffKind.LORENTZIAN, grid)
    assert len(curve) == 3
    assert curve[0] > curve[1] > curve[2]
    # and the curve approaches the white-noise floor from above
    white_tc = collapse_time_for_scenario(PARAMS, CutoffSpec.white(), scenario).t_c
    assert curve[-1] > white_tc
