"""Noise spectral kernels, their time correlators, and the accumulated kernel.

A stationary collapse noise is characterized here by a frequency-cutoff
kernel gamma(omega) with gamma(0) = 1 and 0 <= gamma <= 1.  Five kinds are
supported (the enumeration is closed):

    white        gamma = 1                        (no cutoff)
    heaviside    gamma = 1 for omega <= omega_m, else 0
    gaussian     gamma = exp(-omega^2/omega_m^2)
    exponential  gamma = exp(-omega/omega_m)
    lorentzian   gamma = omega_m^2/(omega^2 + omega_m^2)

Two derived objects drive everything downstream:

    delta_gamma(tau) = (1/pi) int_0^inf gamma(omega) cos(omega tau) domega
        the time correlator of the noise (a Dirac delta for white noise,
        which therefore has no pointwise value);

    lambda_big(t)    = (1/pi) int_0^inf gamma(omega) (1 - cos(omega t))/omega^2 domega
        the accumulated kernel, i.e. the double time integral of
        delta_gamma over [0,t]^2 halved; it equals t/2 for white noise and
        is what multiplies the coupling in every decay exponent.

Closed forms are implemented for all kinds; ``lambda_big_quadrature``
evaluates the defining integral by adaptive quadrature as an independent
cross-check path and is kept deliberately separate from the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate

from .errors import QuadratureNonConvergence, WhiteNotPointwise
from .specfun import erf, si

__all__ = [
    "CutoffKind",
    "CutoffSpec",
    "gamma_of_omega",
    "delta_gamma",
    "delta_gamma_zero",
    "lambda_big",
    "lambda_big_quadrature",
    "spectral_mass",
    "spectral_mass_cutoff",
]

_SQRT_PI = math.sqrt(math.pi)
# below this x, e^{-x}+x-1 and friends switch to their power series
_SERIES_SWITCH = 0.1


class CutoffKind(Enum):
    WHITE = "white"
    HEAVISIDE = "heaviside"
    GAUSSIAN = "gaussian"
    EXPONENTIAL = "exponential"
    LORENTZIAN = "lorentzian"


@dataclass(frozen=True)
class CutoffSpec:
    """A cutoff kernel kind plus its cutoff frequency.

    omega_m is the cutoff frequency in 1/s; it must be omitted (None) for
    white noise and positive for every other kind.
    """

    kind: CutoffKind
    omega_m: float | None = None

    def __post_init__(self) -> None:
        if self.kind is CutoffKind.WHITE:
            if self.omega_m is not None:
                raise ValueError("white noise takes no cutoff frequency")
        else:
            if self.omega_m is None:
                raise ValueError(f"{self.kind.value} requires a cutoff frequency")
            if not (self.omega_m > 0 and math.isfinite(self.omega_m)):
                raise ValueError(f"omega_m must be positive and finite, got {self.omega_m}")

    @classmethod
    def white(cls) -> "CutoffSpec":
        return cls(CutoffKind.WHITE)

    @classmethod
    def heaviside(cls, omega_m: float) -> "CutoffSpec":
        return cls(CutoffKind.HEAVISIDE, omega_m)

    @classmethod
    def gaussian(cls, omega_m: float) -> "CutoffSpec":
        return cls(CutoffKind.GAUSSIAN, omega_m)

    @classmethod
    def exponential(cls, omega_m: float) -> "CutoffSpec":
        return cls(CutoffKind.EXPONENTIAL, omega_m)

    @classmethod
    def lorentzian(cls, omega_m: float) -> "CutoffSpec":
        return cls(CutoffKind.LORENTZIAN, omega_m)


def gamma_of_omega(spec: CutoffSpec, omega):
    """Kernel value gamma(omega) in [0, 1]; accepts scalars or numpy arrays.

    The heaviside step keeps gamma(omega_m) = 1 (closed support).
    """
    if isinstance(omega, np.ndarray):
        return _gamma_array(spec, omega)
    if omega < 0:
        raise ValueError(f"omega must be nonnegative, got {omega}")
    kind, om = spec.kind, spec.omega_m
    if kind is CutoffKind.WHITE:
        return 1.0
    if kind is CutoffKind.HEAVISIDE:
        return 1.0 if omega <= om else 0.0
    if kind is CutoffKind.GAUSSIAN:
        return math.exp(-((omega / om) ** 2))
    if kind is CutoffKind.EXPONENTIAL:
        return math.exp(-omega / om)
    return om * om / (omega * omega + om * om)


def _gamma_array(spec: CutoffSpec, omega: np.ndarray) -> np.ndarray:
    if np.any(omega < 0):
        raise ValueError("omega must be nonnegative")
    kind, om = spec.kind, spec.omega_m
    if kind is CutoffKind.WHITE:
        return np.ones_like(omega, dtype=float)
    if kind is CutoffKind.HEAVISIDE:
        return np.where(omega <= om, 1.0, 0.0)
    if kind is CutoffKind.GAUSSIAN:
        return np.exp(-((omega / om) ** 2))
    if kind is CutoffKind.EXPONENTIAL:
        return np.exp(-omega / om)
    return om * om / (omega * omega + om * om)


def delta_gamma(spec: CutoffSpec, tau: float) -> float:
    """Time correlator delta_gamma(tau), even in tau.

    White noise raises WhiteNotPointwise: its correlator is a Dirac delta.
    """
    kind, om = spec.kind, spec.omega_m
    if kind is CutoffKind.WHITE:
        raise WhiteNotPointwise("the white-noise correlator has no pointwise value")
    at = abs(tau)
    if kind is CutoffKind.LORENTZIAN:
        return 0.5 * om * math.exp(-om * at)
    if kind is CutoffKind.GAUSSIAN:
        return om / (2.0 * _SQRT_PI) * math.exp(-0.25 * (om * at) ** 2)
    if kind is CutoffKind.EXPONENTIAL:
        x = om * at
        return om / math.pi / (1.0 + x * x)
    # heaviside: sin(omega_m tau)/(pi tau) -> omega_m/pi as tau -> 0
    x = om * at
    if x < 1e-8:
        return om / math.pi
    return math.sin(x) / (math.pi * at)


def delta_gamma_zero(spec: CutoffSpec) -> float:
    """Zero-lag correlator value delta_gamma(0) = (1/pi) int_0^inf gamma."""
    kind, om = spec.kind, spec.omega_m
    if kind is CutoffKind.WHITE:
        raise WhiteNotPointwise("the white-noise correlator has no pointwise value")
    if kind is CutoffKind.LORENTZIAN:
        return 0.5 * om
    if kind is CutoffKind.GAUSSIAN:
        return om / (2.0 * _SQRT_PI)
    return om / math.pi  # heaviside and exponential coincide at zero lag


def _expm1_plus(x: float) -> float:
    """e^{-x} + x - 1 = sum_{k>=2} (-x)^k/k!, evaluated without cancellation."""
    if x < _SERIES_SWITCH:
        total = 0.0
        term = -x
        k = 1
        while k < 60:
            k += 1
            term *= -x / k
            total += term
            if abs(term) <= 1e-17 * abs(total):
                break
        return total
    return math.expm1(-x) + x


def lambda_big(spec: CutoffSpec, t: float) -> float:
    """Accumulated kernel Lambda(t) by closed form.

    Lambda is 0 at t = 0, nondecreasing, bounded above by the white value
    t/2, and tends to delta_gamma(0) t^2/2 as t -> 0 for every cutoff kind.
    """
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if t == 0.0:
        return 0.0
    kind, om = spec.kind, spec.omega_m
    if kind is CutoffKind.WHITE:
        return 0.5 * t
    x = om * t
    if kind is CutoffKind.LORENTZIAN:
        return _expm1_plus(x) / (2.0 * om)
    if kind is CutoffKind.GAUSSIAN:
        u = 0.5 * x
        return math.expm1(-u * u) / (om * _SQRT_PI) + 0.5 * t * erf(u)
    if kind is CutoffKind.EXPONENTIAL:
        return (t * math.atan(x) - math.log1p(x * x) / (2.0 * om)) / math.pi
    # heaviside; cos(x)-1 written as -2 sin^2(x/2) to avoid cancellation
    return (-2.0 * math.sin(0.5 * x) ** 2 / om + t * si(x)) / math.pi


def _osc(x: float) -> float:
    """(1 - cos x)/x^2 = 2 sin^2(x/2)/x^2, stable for all x; 1/2 at x = 0."""
    if x == 0.0:
        return 0.5
    u = 0.5 * x
    s = math.sin(u) / u
    return 0.5 * s * s


def _decade_points(theta: float, lo: float, hi: float) -> list[float]:
    """Breakpoints theta*10^k inside (lo, hi); they force the adaptive rule
    to resolve a kernel whose scale theta sits decades below the interval."""
    if theta <= 0.0:
        return []
    pts = []
    k = -2
    while k < 40:
        p = theta * 10.0**k
        if p >= hi:
            break
        if p > lo:
            pts.append(p)
        k += 1
    return pts


def _quad_piece(fn, a, b, *, rel_tol, limit, points=None, weight=None, scale=0.0):
    """One QUADPACK call returning (value, error_estimate)."""
    kwargs: dict = {"limit": limit, "full_output": 1}
    if weight is not None:
        kwargs["weight"] = weight
        kwargs["wvar"] = 1.0
        # the infinite-range cosine transform accepts only an absolute target
        kwargs["epsabs"] = max(rel_tol * scale, 1e-290)
        if math.isfinite(b):
            kwargs["epsrel"] = rel_tol
        else:
            kwargs["limlst"] = max(limit, 50)
    else:
        kwargs["epsabs"] = max(rel_tol * scale, 0.0)
        kwargs["epsrel"] = rel_tol
        if points:
            kwargs["points"] = points
    out = integrate.quad(fn, a, b, **kwargs)
    return out[0], out[1]


def lambda_big_quadrature(
    spec: CutoffSpec,
    t: float,
    rel_tol: float = 1e-10,
    max_subdivisions: int = 400,
) -> float:
    """Accumulated kernel by adaptive quadrature of the defining integral.

    Substituting x = omega t,

        Lambda(t) = (t/pi) int_0^inf gamma(x/t) 2 sin^2(x/2) / x^2 dx,

    the head [0, 2 pi] is integrated directly with breakpoints at decade
    multiples of omega_m t, and the tail is split into a smooth part and a
    cosine transform handled by the oscillatory QUADPACK rules.  Works for
    every kind including white (the integral converges for gamma = 1).

    Raises QuadratureNonConvergence when the accumulated error estimate
    exceeds the requested tolerance by a wide margin.
    """
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if t == 0.0:
        return 0.0
    kind = spec.kind
    theta = (spec.omega_m or 0.0) * t
    limit = max_subdivisions

    def f_head(x: float) -> float:
        return gamma_of_omega(spec, x / t) * _osc(x)

    def f_tail(x: float) -> float:
        return gamma_of_omega(spec, x / t) / (x * x)

    B = 2.0 * math.pi
    pieces_err = 0.0

    if kind is CutoffKind.HEAVISIDE and theta <= B:
        head, err = _quad_piece(
            f_head, 0.0, theta, rel_tol=rel_tol, limit=limit,
            points=_decade_points(theta, 0.0, theta),
        )
        total = head
        pieces_err = err
    else:
        head, err = _quad_piece(
            f_head, 0.0, B, rel_tol=rel_tol, limit=limit,
            points=_decade_points(theta, 0.0, B),
        )
        pieces_err += err
        total = head
        # tail is zero when a monotone kernel has underflowed by x = 2 pi
        tail_gone = kind is not CutoffKind.WHITE and gamma_of_omega(spec, B / t) == 0.0
        if not tail_gone:
            if kind is CutoffKind.HEAVISIDE:
                t1, err1 = _quad_piece(
                    f_tail, B, theta, rel_tol=rel_tol, limit=limit,
                    points=_decade_points(theta, B, theta),
                )
                t2, err2 = _quad_piece(
                    f_tail, B, theta, rel_tol=rel_tol, limit=limit,
                    weight="cos", scale=head + t1,
                )
            else:
                # finite stretch with breakpoints, then the pure remainder
                C = max(1e3 * theta, 1e3 * B)
                t1a, err1a = _quad_piece(
                    f_tail, B, C, rel_tol=rel_tol, limit=limit,
                    points=_decade_points(theta, B, C),
                )
                if gamma_of_omega(spec, C / t) == 0.0:
                    t1b, err1b = 0.0, 0.0
                else:
                    t1b, err1b = _quad_piece(
                        f_tail, C, math.inf, rel_tol=rel_tol, limit=limit,
                        scale=head + t1a,
                    )
                t1, err1 = t1a + t1b, err1a + err1b
                t2, err2 = _quad_piece(
                    f_tail, B, math.inf, rel_tol=rel_tol, limit=limit,
                    weight="cos", scale=head + t1,
                )
            total = head + t1 - t2
            pieces_err += err1 + err2

    if not math.isfinite(total) or pieces_err > 1e3 * rel_tol * abs(total) + 1e-280:
        raise QuadratureNonConvergence(
            f"quadrature error estimate {pieces_err:.3e} too large for "
            f"result {total:.6e} (kind={kind.value}, omega_m={spec.omega_m}, t={t})"
        )
    return t * total / math.pi


def spectral_mass(spec: CutoffSpec, omega: float) -> float:
    """Integral of the kernel over [0, omega] (closed forms)."""
    if omega < 0:
        raise ValueError(f"omega must be nonnegative, got {omega}")
    kind, om = spec.kind, spec.omega_m
    if kind is CutoffKind.WHITE:
        return omega
    if kind is CutoffKind.HEAVISIDE:
        return min(omega, om)
    if kind is CutoffKind.GAUSSIAN:
        return om * _SQRT_PI / 2.0 * erf(omega / om)
    if kind is CutoffKind.EXPONENTIAL:
        return -om * math.expm1(-omega / om)
    return om * math.atan(omega / om)


def spectral_mass_cutoff(spec: CutoffSpec, fraction: float = 0.999) -> float:
    """Frequency below which the kernel holds the given fraction of its mass.

    White noise has unbounded total mass, so no such frequency exists;
    callers gate that case themselves (the sampler raises WhiteNotSamplable).
    """
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must be in (0, 1), got {fraction}")
    kind, om = spec.kind, spec.omega_m
    if kind is CutoffKind.WHITE:
        raise ValueError("white noise has unbounded spectral mass")
    if kind is CutoffKind.HEAVISIDE:
        return om
    if kind is CutoffKind.LORENTZIAN:
        return om * math.tan(fraction * math.pi / 2.0)
    if kind is CutoffKind.EXPONENTIAL:
        return -om * math.log1p(-fraction)
    from scipy.special import erfinv

    return om * float(erfinv(fraction))
