"""Decay exponents of the collapse master equation for displaced masses.

The off-diagonal superposition damping factorizes into a coupling piece and
the accumulated noise kernel Lambda(t).  In the small-displacement diagonal
approximation a rigid species of N particles, n nucleons each, displaced by
a distance Delta, contributes

    Gamma(t) = lambda * n^2 * N * Delta^2 / (2 r_c^2) * Lambda(t),

additive over species.  The current-driven form specializes this to ions
dragged through an electrolyte by a measurement current (Delta = v t grows
with time), and the sphere form generalizes the coupling to an extended
uniform ball of radius R via a Gaussian-weighted form factor in k space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .constants import ATOMIC_MASS, ELEMENTARY_CHARGE
from .errors import DisplacementTooLarge
from .spectral import CutoffSpec, lambda_big

if TYPE_CHECKING:  # pragma: no cover
    from .scenarios import MeasurementScenario

__all__ = [
    "CollapseParams",
    "DisplacedSpecies",
    "gamma_point",
    "gamma_current",
    "white_cubic_coefficient",
    "ions_displaced",
    "sphere_form_factor",
    "sphere_form_factor_mc",
    "gamma_sphere",
]

_PI_32 = math.pi**1.5
# displacement must stay well under the correlation length for the
# quadratic expansion of the spatial Gaussian to hold
_DISPLACEMENT_RATIO_MAX = 0.1
_BRACKET_SERIES_SWITCH = 0.1


@dataclass(frozen=True)
class CollapseParams:
    """Collapse-noise coupling parameters.

    rate: collapse rate per nucleon [1/s]; r_c: noise correlation length [m];
    m0: reference nucleon mass [kg] converting masses to nucleon counts.
    """

    rate: float = 1e-8
    r_c: float = 1e-7
    m0: float = ATOMIC_MASS

    def __post_init__(self) -> None:
        for name in ("rate", "r_c", "m0"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive and finite, got {v}")


@dataclass(frozen=True)
class DisplacedSpecies:
    """A rigidly displaced particle species: count particles of n nucleons
    each, all moved by the same distance."""

    name: str
    n: float
    count: float
    displacement: float

    def __post_init__(self) -> None:
        if not (self.n > 0 and math.isfinite(self.n)):
            raise ValueError(f"n must be positive, got {self.n}")
        if not (self.count > 0 and math.isfinite(self.count)):
            raise ValueError(f"count must be positive, got {self.count}")
        if not (self.displacement >= 0 and math.isfinite(self.displacement)):
            raise ValueError(f"displacement must be nonnegative, got {self.displacement}")

    def approximation_ok(self, r_c: float) -> bool:
        """True when the displacement is small enough for the quadratic expansion."""
        return self.displacement < _DISPLACEMENT_RATIO_MAX * r_c


def _check_displacement(delta: float, r_c: float, label: str) -> None:
    if delta >= _DISPLACEMENT_RATIO_MAX * r_c:
        raise DisplacementTooLarge(
            f"{label}: displacement {delta:.3e} m is not small against "
            f"r_c = {r_c:.3e} m (limit {_DISPLACEMENT_RATIO_MAX * r_c:.3e} m)"
        )


def gamma_point(
    params: CollapseParams,
    spec: CutoffSpec,
    species: Sequence[DisplacedSpecies],
    t: float,
) -> float:
    """Decay exponent for point-like displaced species, additive over species."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    coupling = 0.0
    for s in species:
        _check_displacement(s.displacement, params.r_c, s.name)
        coupling += s.n**2 * s.count * s.displacement**2
    return params.rate * coupling / (2.0 * params.r_c**2) * lambda_big(spec, t)


def gamma_current(
    params: CollapseParams,
    spec: CutoffSpec,
    scenario: "MeasurementScenario",
    t: float,
) -> float:
    """Decay exponent for battery ions dragged by the measurement current.

    Each ion species carries n nucleons and drifts at velocity v_s, so at
    time t a particle current I/e has displaced N_s = (I/e) h / v_s ions by
    Delta_s = v_s t, giving

        Gamma(t) = lambda * (I/e) * h * t^2 * Lambda(t)
                   * sum_s n_s^2 v_s / (2 r_c^2).

    I is the electric current; the division by the elementary charge makes
    it a particle throughput (ions per second).  Strictly increasing in t.
    """
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    battery = scenario.battery
    particle_current = scenario.i_electric / ELEMENTARY_CHARGE
    weight = sum(s.n**2 * battery.velocity_of(s) for s in battery.species)
    return (
        params.rate
        * particle_current
        * battery.h_electrolyte
        * t**2
        * lambda_big(spec, t)
        * weight
        / (2.0 * params.r_c**2)
    )


def white_cubic_coefficient(params: CollapseParams, scenario: "MeasurementScenario") -> float:
    """K such that the white-noise decay exponent is exactly K t^3."""
    battery = scenario.battery
    particle_current = scenario.i_electric / ELEMENTARY_CHARGE
    weight = sum(s.n**2 * battery.velocity_of(s) for s in battery.species)
    return params.rate * particle_current * battery.h_electrolyte * weight / (4.0 * params.r_c**2)


def ions_displaced(i_electric: float, h: float, v: float) -> float:
    """Number of ions a current has pushed across the electrolyte: (I/e) h / v."""
    for name, val in (("i_electric", i_electric), ("h", h), ("v", v)):
        if not (val > 0 and math.isfinite(val)):
            raise ValueError(f"{name} must be positive, got {val}")
    return i_electric / ELEMENTARY_CHARGE * h / v


def _bracket(x: float) -> float:
    """e^{-x} - 1 + (x/2)(e^{-x} + 1), with the series
    sum_{k>=3} (-1)^(k+1) (k-2) x^k / (2 k!) below the cancellation regime."""
    if x < _BRACKET_SERIES_SWITCH:
        total = 0.0
        fact = 2.0
        xn = x * x
        k = 2
        while k < 60:
            k += 1
            fact *= k
            xn *= x
            term = (k - 2.0) * xn / (2.0 * fact)
            if k % 2 == 0:
                term = -term
            total += term
            if abs(term) <= 1e-17 * abs(total):
                break
        return total
    return math.expm1(-x) * (1.0 + 0.5 * x) + x


def sphere_form_factor(R: float, r_c: float) -> float:
    """Gaussian-weighted k-space form factor of a uniform ball, units 1/m^5.

    With u = R/r_c this is

        (pi^{3/2}/r_c^5) * [e^{-u^2} - 1 + (u^2/2)(e^{-u^2} + 1)] * 6/u^6,

    which tends to pi^{3/2}/(2 r_c^5) as R -> 0 (the bracket is u^6/12 to
    leading order), recovering the point coupling.
    """
    if not (R > 0 and math.isfinite(R)):
        raise ValueError(f"R must be positive, got {R}")
    if not (r_c > 0 and math.isfinite(r_c)):
        raise ValueError(f"r_c must be positive, got {r_c}")
    u2 = (R / r_c) ** 2
    return _PI_32 / r_c**5 * _bracket(u2) * 6.0 / (u2**3)


def _ball_transform(kR: np.ndarray) -> np.ndarray:
    """Normalized Fourier transform of a uniform ball, 3(sin y - y cos y)/y^3."""
    out = np.empty_like(kR)
    small = kR < 0.1
    y = kR[small]
    y2 = y * y
    out[small] = 1.0 - y2 / 10.0 + y2 * y2 / 280.0 - y2 * y2 * y2 / 15120.0
    y = kR[~small]
    out[~small] = 3.0 * (np.sin(y) - y * np.cos(y)) / y**3
    return out


def sphere_form_factor_mc(
    R: float,
    r_c: float,
    n_samples: int = 200_000,
    seed: int = 0,
) -> tuple[float, float]:
    """Monte-Carlo estimate of the sphere form factor, with standard error.

    Importance-samples k from the Gaussian weight e^{-r_c^2 k^2} (normal
    components with variance 1/(2 r_c^2)) and averages k_x^2 |mu(kR)|^2,
    where mu is the ball transform.  The estimate is a deterministic
    function of (seed, n_samples); samples may be sharded as long as the
    stream order is preserved.
    """
    if n_samples < 2:
        raise ValueError(f"n_samples must be at least 2, got {n_samples}")
    rng = np.random.default_rng(seed)
    sigma = 1.0 / (r_c * math.sqrt(2.0))
    k = rng.normal(0.0, sigma, size=(n_samples, 3))
    k_norm = np.sqrt(np.sum(k * k, axis=1))
    vals = k[:, 0] ** 2 * _ball_transform(k_norm * R) ** 2
    weight_norm = _PI_32 / r_c**3  # int e^{-r_c^2 k^2} d^3k
    estimate = weight_norm * float(vals.mean())
    std_error = weight_norm * float(vals.std(ddof=1)) / math.sqrt(n_samples)
    return estimate, std_error


def gamma_sphere(
    params: CollapseParams,
    spec: CutoffSpec,
    n: float,
    count: float,
    R: float,
    delta: float,
    t: float,
) -> float:
    """Decay exponent for count identical uniform balls of radius R.

    The point-form coupling n^2/(2 r_c^2) is replaced by the exact k-space
    factor r_c^3 n^2 / pi^{3/2} times the sphere form factor; as R -> 0
    this reduces to gamma_point for the same species.
    """
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    _check_displacement(delta, params.r_c, "sphere")
    form = sphere_form_factor(R, params.r_c)
    coupling = params.rate * params.r_c**3 * n**2 * delta**2 * count / _PI_32
    return coupling * form * lambda_big(spec, t)
