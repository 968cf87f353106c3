"""Fluctuation measures of the collapse noise over a measurement window.

For a stationary noise field with correlation function delta_gamma, two
window statistics control whether the noise can imprint a record during a
measurement of duration t:

  i_tilde(t) = (1/t) * integral_0^t delta_gamma(s) ds
             = <xi(t) * mean of xi over [0, t]>,

the correlation between the endpoint value and the window average, and

  j_tilde(t) = (2/t^2) * integral_0^t (t - s) delta_gamma(s) ds
             = <(mean of xi over [0, t])^2> = 2 * Lambda(t) / t^2,

the variance of the window average itself.

Dividing by the peak correlation delta_gamma(0) gives dimensionless
versions in (0, 1]: they start at 1 for windows much shorter than the
noise memory and decay once the window out-lasts the memory.  A window is
"long enough to average the noise away" when the normalized measure drops
below a chosen threshold; solving for that crossing is done in `bounds`.
"""

from __future__ import annotations

import enum
import math

from .errors import WhiteNotNormalizable
from .specfun import erf, si
from .spectral import CutoffKind, CutoffSpec, delta_gamma_zero, lambda_big

__all__ = [
    "FluctuationMeasure",
    "i_tilde",
    "j_tilde",
    "i_normalized",
    "j_normalized",
    "normalized_measure",
]


class FluctuationMeasure(enum.Enum):
    """Which window statistic a bound is built on."""

    ENDPOINT = "endpoint"  # i_tilde: endpoint-vs-window-average correlation
    WINDOW = "window"  # j_tilde: variance of the window average


def _check_time(t: float) -> None:
    if not (t > 0.0 and math.isfinite(t)):
        raise ValueError(f"t must be positive and finite, got {t}")


def i_tilde(spec: CutoffSpec, t: float) -> float:
    """Correlation of the endpoint noise with the window average, in 1/s."""
    _check_time(t)
    if spec.kind is CutoffKind.WHITE:
        # half of the unit delta mass sits inside the window
        return 0.5 / t
    x = spec.omega_m * t
    if spec.kind is CutoffKind.LORENTZIAN:
        return -math.expm1(-x) / (2.0 * t)
    if spec.kind is CutoffKind.HEAVISIDE:
        return si(x) / (math.pi * t)
    if spec.kind is CutoffKind.GAUSSIAN:
        return erf(0.5 * x) / (2.0 * t)
    return math.atan(x) / (math.pi * t)


def j_tilde(spec: CutoffSpec, t: float) -> float:
    """Variance of the window-averaged noise, 2*Lambda(t)/t^2, in 1/s."""
    _check_time(t)
    return 2.0 * lambda_big(spec, t) / (t * t)


def i_normalized(spec: CutoffSpec, t: float) -> float:
    """i_tilde divided by the peak correlation delta_gamma(0); lies in (0, 1]."""
    _check_time(t)
    if spec.kind is CutoffKind.WHITE:
        raise WhiteNotNormalizable(
            "the white kernel has no finite peak correlation to normalize by"
        )
    x = spec.omega_m * t
    if spec.kind is CutoffKind.LORENTZIAN:
        return -math.expm1(-x) / x
    if spec.kind is CutoffKind.HEAVISIDE:
        return si(x) / x
    if spec.kind is CutoffKind.GAUSSIAN:
        return math.sqrt(math.pi) * erf(0.5 * x) / x
    return math.atan(x) / x


def j_normalized(spec: CutoffSpec, t: float) -> float:
    """j_tilde divided by delta_gamma(0); lies in (0, 1]."""
    _check_time(t)
    if spec.kind is CutoffKind.WHITE:
        raise WhiteNotNormalizable(
            "the white kernel has no finite peak correlation to normalize by"
        )
    return j_tilde(spec, t) / delta_gamma_zero(spec)


def normalized_measure(measure: FluctuationMeasure, spec: CutoffSpec, t: float) -> float:
    """Dispatch to i_normalized or j_normalized."""
    if measure is FluctuationMeasure.ENDPOINT:
        return i_normalized(spec, t)
    if measure is FluctuationMeasure.WINDOW:
        return j_normalized(spec, t)
    raise TypeError(f"not a FluctuationMeasure: {measure!r}")
