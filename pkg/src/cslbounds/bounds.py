"""Root-finding layer: collapse times, cutoff bounds, threshold crossings.

Three inversions, all of monotone scalar maps, all solved the same way —
geometric bracket expansion followed by bisection:

  * Gamma(t) = 1 in t gives the collapse time t_C of a scenario;
  * Gamma(t_m; omega_M) = 1 in omega_M gives the smallest cutoff that
    completes collapse within a measurement of duration t_m (equivalent to
    t_C(omega_M) = t_m, since Gamma is strictly increasing in t);
  * normalized fluctuation measure = threshold in omega_M gives the
    cutoff above which the noise is effectively averaged away.

Bisection is deliberate: every target function here is cheap, smooth, and
monotone, so robustness beats iteration count.  Monotonicity is asserted
on every sample the solver draws rather than assumed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .collapse import CollapseParams, gamma_current, white_cubic_coefficient
from .errors import (
    AlreadyCollapsing,
    MonotonicityViolation,
    NeverCollapsing,
    NoRootInBudget,
    WhiteNotNormalizable,
)
from .fluctuations import FluctuationMeasure, normalized_measure
from .scenarios import MeasurementScenario
from .spectral import CutoffKind, CutoffSpec

__all__ = [
    "SolverConfig",
    "BoundResult",
    "DEFAULT_TIME_SOLVER",
    "DEFAULT_FREQUENCY_SOLVER",
    "collapse_time",
    "collapse_time_for_scenario",
    "white_collapse_time",
    "cutoff_lower_bound",
    "small_omega_cutoff",
    "fluctuation_bound",
    "lambda_rescale",
    "collapse_time_curve",
]


@dataclass(frozen=True)
class SolverConfig:
    """Bracketing/bisection controls shared by every inversion."""

    rel_tol: float = 1e-10
    max_iterations: int = 200
    growth: float = 10.0
    bracket_floor: float = 1e-12
    bracket_ceiling: float = 1e6

    def __post_init__(self) -> None:
        if not (0.0 < self.rel_tol < 1e-4):
            raise ValueError(f"rel_tol must be in (0, 1e-4), got {self.rel_tol}")
        if self.max_iterations < 10:
            raise ValueError(f"max_iterations must be at least 10, got {self.max_iterations}")
        if not (self.growth > 1.0 and math.isfinite(self.growth)):
            raise ValueError(f"growth must exceed 1, got {self.growth}")
        if not (0.0 < self.bracket_floor < self.bracket_ceiling):
            raise ValueError(
                f"need 0 < bracket_floor < bracket_ceiling, got "
                f"({self.bracket_floor}, {self.bracket_ceiling})"
            )


# time roots live in [1e-12 s, 1e6 s]; frequency roots get a wider ceiling
# because interesting cutoffs range up to ~1e11 1/s and beyond
DEFAULT_TIME_SOLVER = SolverConfig()
DEFAULT_FREQUENCY_SOLVER = SolverConfig(bracket_ceiling=1e14)


@dataclass(frozen=True)
class BoundResult:
    """A solved bound: the root plus the evidence it is one.

    quantity says what `value` is ("t_c" or "omega_m_bound"); the matching
    property returns it and the other raises, so results cannot be mixed up.
    """

    value: float
    quantity: str
    bracket: tuple[float, float]
    iterations: int
    residual: float

    @property
    def t_c(self) -> float:
        if self.quantity != "t_c":
            raise ValueError(f"result holds {self.quantity!r}, not a collapse time")
        return self.value

    @property
    def omega_m_bound(self) -> float:
        if self.quantity != "omega_m_bound":
            raise ValueError(f"result holds {self.quantity!r}, not a cutoff bound")
        return self.value


def _require_monotone(f_prev: float, f_new: float, increasing: bool, what: str) -> None:
    slack = 1e-12 * max(abs(f_prev), abs(f_new), 1e-300)
    bad = (f_new < f_prev - slack) if increasing else (f_new > f_prev + slack)
    if bad:
        direction = "increase" if increasing else "decrease"
        raise MonotonicityViolation(
            f"{what} sampled by the solver failed to {direction}: "
            f"{f_prev!r} then {f_new!r}"
        )


def _bisect(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    target: float,
    increasing: bool,
    config: SolverConfig,
    iterations: int,
    quantity: str,
) -> BoundResult:
    """Bisect a monotone fn on a bracket known to straddle fn = target."""
    while hi - lo > config.rel_tol * hi:
        if iterations >= config.max_iterations:
            raise NoRootInBudget(
                f"bisection did not converge within {config.max_iterations} iterations"
            )
        mid = 0.5 * (lo + hi)
        above = fn(mid) >= target
        iterations += 1
        if above == increasing:
            hi = mid
        else:
            lo = mid
    root = 0.5 * (lo + hi)
    return BoundResult(
        value=root,
        quantity=quantity,
        bracket=(lo, hi),
        iterations=iterations,
        residual=fn(root) - target,
    )


def collapse_time(
    gamma_fn: Callable[[float], float],
    config: SolverConfig | None = None,
) -> BoundResult:
    """Solve Gamma(t) = 1 for the collapse time of a monotone exponent map.

    gamma_fn must vanish at t = 0 and increase strictly for t > 0; the
    solver checks the increase on every point it samples.
    """
    cfg = config if config is not None else DEFAULT_TIME_SOLVER
    iterations = 0
    lo = cfg.bracket_floor
    g_lo = gamma_fn(lo)
    if not (math.isfinite(g_lo) and g_lo >= 0.0):
        raise ValueError(f"gamma_fn({lo}) = {g_lo} is not a valid exponent")
    if g_lo >= 1.0:
        # root sits below the floor; Gamma(0) = 0 supplies the lower end
        return _bisect(gamma_fn, 0.0, lo, 1.0, True, cfg, iterations, "t_c")
    hi = lo
    g_hi = g_lo
    while g_hi < 1.0:
        if hi >= cfg.bracket_ceiling:
            raise NoRootInBudget(
                f"Gamma is still {g_hi:.3e} < 1 at the bracket ceiling "
                f"{cfg.bracket_ceiling:.3e} s: no collapse in budget"
            )
        lo, g_lo = hi, g_hi
        hi = min(hi * cfg.growth, cfg.bracket_ceiling)
        g_hi = gamma_fn(hi)
        iterations += 1
        _require_monotone(g_lo, g_hi, True, "Gamma(t)")
    return _bisect(gamma_fn, lo, hi, 1.0, True, cfg, iterations, "t_c")


def collapse_time_for_scenario(
    params: CollapseParams,
    spec: CutoffSpec,
    scenario: MeasurementScenario,
    config: SolverConfig | None = None,
) -> BoundResult:
    """Collapse time of a current-carrying scenario under a given kernel."""
    return collapse_time(lambda t: gamma_current(params, spec, scenario, t), config)


def white_collapse_time(k_coeff: float) -> float:
    """Analytic inversion of the white-noise cubic law: t_C = K^(-1/3)."""
    if not (k_coeff > 0.0 and math.isfinite(k_coeff)):
        raise ValueError(f"cubic coefficient must be positive, got {k_coeff}")
    return k_coeff ** (-1.0 / 3.0)


def cutoff_lower_bound(
    params: CollapseParams,
    scenario: MeasurementScenario,
    t_m: float,
    kind: CutoffKind = CutoffKind.LORENTZIAN,
    config: SolverConfig | None = None,
) -> BoundResult:
    """Smallest cutoff whose collapse completes within the measurement time.

    Solves Gamma(t_m; omega_M) = 1 in omega_M, which is the same root as
    t_C(omega_M) = t_m because Gamma increases strictly in t.
    """
    if not (t_m > 0.0 and math.isfinite(t_m)):
        raise ValueError(f"t_m must be positive, got {t_m}")
    if kind is CutoffKind.WHITE:
        raise ValueError("the white kernel has no cutoff to bound")
    cfg = config if config is not None else DEFAULT_FREQUENCY_SOLVER

    # the white kernel is the omega_M -> infinity envelope: if even it
    # cannot collapse by t_m, no finite cutoff can
    gamma_white = white_cubic_coefficient(params, scenario) * t_m**3
    if gamma_white <= 1.0:
        raise NeverCollapsing(
            f"white-noise exponent at t_m is {gamma_white:.3e} <= 1; "
            f"no cutoff makes the scenario collapse within {t_m:.3e} s"
        )

    def gamma_at(omega: float) -> float:
        return gamma_current(params, CutoffSpec(kind, omega), scenario, t_m)

    iterations = 0
    lo = cfg.bracket_floor
    g_lo = gamma_at(lo)
    if g_lo >= 1.0:
        raise AlreadyCollapsing(
            f"exponent is already {g_lo:.3e} >= 1 at omega_M = {lo:.3e} 1/s; "
            "every cutoff in range collapses before the measurement ends"
        )
    hi = lo
    g_hi = g_lo
    while g_hi < 1.0:
        if hi >= cfg.bracket_ceiling:
            raise NoRootInBudget(
                f"exponent is still {g_hi:.3e} < 1 at the cutoff ceiling "
                f"{cfg.bracket_ceiling:.3e} 1/s"
            )
        lo, g_lo = hi, g_hi
        hi = min(hi * cfg.growth, cfg.bracket_ceiling)
        g_hi = gamma_at(hi)
        iterations += 1
        _require_monotone(g_lo, g_hi, True, "Gamma(t_m; omega_M)")
    return _bisect(gamma_at, lo, hi, 1.0, True, cfg, iterations, "omega_m_bound")


def small_omega_cutoff(k_coeff: float, t_m: float) -> float:
    """Small-cutoff law omega* = 2 / (K t_m^4).

    Leading order of the Lorentzian kernel for omega*t_m << 1; accurate to
    0.5% only while omega* * t_m < 1e-2.
    """
    if not (k_coeff > 0.0 and t_m > 0.0):
        raise ValueError("k_coeff and t_m must be positive")
    return 2.0 / (k_coeff * t_m**4)


def fluctuation_bound(
    measure: FluctuationMeasure,
    t_m: float,
    kind: CutoffKind = CutoffKind.LORENTZIAN,
    threshold: float = 0.1,
    config: SolverConfig | None = None,
) -> BoundResult:
    """Cutoff above which a normalized fluctuation measure falls below threshold.

    The normalized measures start at 1 for omega_M*t_m -> 0 and decrease,
    so the crossing is the smallest cutoff whose noise is averaged down to
    the threshold within the measurement window.
    """
    if kind is CutoffKind.WHITE:
        raise WhiteNotNormalizable("white noise has no normalized measure to invert")
    if not (t_m > 0.0 and math.isfinite(t_m)):
        raise ValueError(f"t_m must be positive, got {t_m}")
    if not (0.0 < threshold < 1.0):
        raise ValueError(f"threshold must be in (0, 1), got {threshold}")
    cfg = config if config is not None else DEFAULT_FREQUENCY_SOLVER

    def level(omega: float) -> float:
        return normalized_measure(measure, CutoffSpec(kind, omega), t_m)

    iterations = 0
    lo = cfg.bracket_floor
    f_lo = level(lo)
    if f_lo <= threshold:
        raise NoRootInBudget(
            f"measure is already {f_lo:.3e} <= threshold at the bracket floor "
            f"omega_M = {lo:.3e} 1/s; the crossing lies below it"
        )
    hi = lo
    f_hi = f_lo
    while f_hi > threshold:
        if hi >= cfg.bracket_ceiling:
            raise NoRootInBudget(
                f"measure is still {f_hi:.3e} > {threshold} at the cutoff "
                f"ceiling {cfg.bracket_ceiling:.3e} 1/s"
            )
        lo, f_lo = hi, f_hi
        hi = min(hi * cfg.growth, cfg.bracket_ceiling)
        f_hi = level(hi)
        iterations += 1
        _require_monotone(f_lo, f_hi, False, "normalized fluctuation measure")
    return _bisect(level, lo, hi, threshold, False, cfg, iterations, "omega_m_bound")


def lambda_rescale(t_c_white: float, t_m: float) -> float:
    """Factor by which the collapse rate could shrink with t_C still = t_m.

    Under the white-noise cubic law Gamma = K t^3 with K proportional to
    the rate, stretching t_C from t_c_white to t_m rescales the rate by
    (t_c_white / t_m)^3.
    """
    if not (t_c_white > 0.0 and t_m > 0.0):
        raise ValueError("t_c_white and t_m must be positive")
    return (t_c_white / t_m) ** 3


def collapse_time_curve(
    params: CollapseParams,
    scenario: MeasurementScenario,
    kind: CutoffKind,
    omega_grid: Sequence[float],
    config: SolverConfig | None = None,
) -> list[float]:
    """t_C at each cutoff of a grid — the exclusion curve of a scenario."""
    return [
        collapse_time_for_scenario(params, CutoffSpec(kind, w), scenario, config).t_c
        for w in omega_grid
    ]
