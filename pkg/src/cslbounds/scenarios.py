"""Measurement-chain scenarios: battery ion transport and wire heating.

A minimal measurement consists of a detector producing a current pulse, an
amplifier, and a recording stage, all powered by a lithium-ion battery.
The mass motion available to collapse dynamics is the ion drift inside the
battery electrolyte (the electron contribution is mass-suppressed) plus,
in principle, thermal phonon displacements in the wiring from Joule
heating — the latter is estimated here and shown to be negligible.

Presets are data, not code; three named scenarios cover a single-photon
detection pulse (2 mA), a NAND memory write (13.8 mA), and a flash write
(500 mA).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .collapse import CollapseParams, DisplacedSpecies, gamma_point
from .constants import BOLTZMANN, REDUCED_PLANCK
from .spectral import CutoffSpec

__all__ = [
    "IonSpecies",
    "BatteryModel",
    "MeasurementScenario",
    "WireModel",
    "HeatingReport",
    "wire_volume",
    "atom_count",
    "wire_resistance",
    "dissipated_power",
    "temperature_rise",
    "thermal_displacement_scale",
    "phonon_displacement",
    "gamma_heating",
    "heating_report",
    "PRESETS",
    "preset",
]

# heating chain reference times: the recording stage heats the wire, but the
# kernel can also be read at the much shorter detection timescale — both
# readings appear in heating_report
_HEATING_TIME = 1e-4
_DETECTION_TIME = 1e-8


@dataclass(frozen=True)
class IonSpecies:
    """An electrolyte ion species: n nucleons, optional own drift velocity.

    velocity None means the species moves at the battery drift velocity.
    """

    name: str
    n: float
    velocity: float | None = None

    def __post_init__(self) -> None:
        if not (self.n > 0 and math.isfinite(self.n)):
            raise ValueError(f"n must be positive, got {self.n}")
        if self.velocity is not None and not (self.velocity > 0 and math.isfinite(self.velocity)):
            raise ValueError(f"velocity must be positive, got {self.velocity}")


_DEFAULT_SPECIES = (IonSpecies("Li+", 7.0), IonSpecies("PF6-", 145.0))


@dataclass(frozen=True)
class BatteryModel:
    """Electrolyte transport model: drift velocity, gap, and ion species."""

    v_drift: float = 2.8e-7
    h_electrolyte: float = 1e-4
    species: tuple[IonSpecies, ...] = _DEFAULT_SPECIES

    def __post_init__(self) -> None:
        if not (self.v_drift > 0 and math.isfinite(self.v_drift)):
            raise ValueError(f"v_drift must be positive, got {self.v_drift}")
        if not (self.h_electrolyte > 0 and math.isfinite(self.h_electrolyte)):
            raise ValueError(f"h_electrolyte must be positive, got {self.h_electrolyte}")
        if not self.species:
            raise ValueError("battery needs at least one ion species")

    def velocity_of(self, species: IonSpecies) -> float:
        return self.v_drift if species.velocity is None else species.velocity

    def with_momentum_conserving_anion(self) -> "BatteryModel":
        """Variant where every species heavier than the lightest drifts slower
        by the mass ratio (momentum conservation estimate)."""
        n_min = min(s.n for s in self.species)
        new = tuple(
            s if s.n == n_min else replace(s, velocity=self.v_drift * n_min / s.n)
            for s in self.species
        )
        return replace(self, species=new)


@dataclass(frozen=True)
class MeasurementScenario:
    """A measurement current plus its stage durations and battery."""

    label: str
    i_electric: float
    t_pulse: float = 1e-9
    t_detect: float = 1e-8
    t_amplify: float = 1e-8
    t_record: float = 1e-4
    battery: BatteryModel = field(default_factory=BatteryModel)

    def __post_init__(self) -> None:
        for name in ("i_electric", "t_pulse", "t_detect", "t_amplify", "t_record"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive, got {v}")
        if self.t_pulse > self.t_detect:
            raise ValueError(
                f"t_pulse ({self.t_pulse}) must not exceed t_detect ({self.t_detect})"
            )

    def measurement_time(self, mode: str = "record") -> float:
        """Measurement duration: the recording time (default) or the stage sum."""
        if mode == "record":
            return self.t_record
        if mode == "sum":
            return self.t_detect + self.t_amplify + self.t_record
        raise ValueError(f"mode must be 'record' or 'sum', got {mode!r}")


PRESETS: dict[str, MeasurementScenario] = {
    "detection-2mA": MeasurementScenario("detection-2mA", 2e-3),
    "nand-13.8mA": MeasurementScenario("nand-13.8mA", 13.8e-3),
    "flash-500mA": MeasurementScenario("flash-500mA", 0.5),
}


def preset(name: str) -> MeasurementScenario:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise KeyError(f"unknown preset {name!r}; known presets: {known}") from None


@dataclass(frozen=True)
class WireModel:
    """A current-carrying copper wire, for the Joule-heating estimate."""

    length: float = 1e-2
    radius: float = 1e-3
    resistivity: float = 1.68e-8
    mass_density: float = 8.92e3
    atomic_mass: float = 1.05e-25
    heat_capacity: float = 385.0
    debye_temperature: float = 343.0
    reference_temperature: float = 298.0
    nucleons_per_atom: float = 63.5

    def __post_init__(self) -> None:
        for name in (
            "length", "radius", "resistivity", "mass_density", "atomic_mass",
            "heat_capacity", "debye_temperature", "reference_temperature",
            "nucleons_per_atom",
        ):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                raise ValueError(f"{name} must be positive, got {v}")


def wire_volume(w: WireModel) -> float:
    return math.pi * w.radius**2 * w.length


def atom_count(w: WireModel) -> float:
    return w.mass_density * wire_volume(w) / w.atomic_mass


def wire_resistance(w: WireModel) -> float:
    return w.length * w.resistivity / (math.pi * w.radius**2)


def dissipated_power(w: WireModel, i_electric: float) -> float:
    if i_electric < 0:
        raise ValueError(f"i_electric must be nonnegative, got {i_electric}")
    return i_electric**2 * wire_resistance(w)


def temperature_rise(w: WireModel, i_electric: float, t: float) -> float:
    """Adiabatic temperature increase after heating for time t."""
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    wire_mass = w.mass_density * wire_volume(w)
    return dissipated_power(w, i_electric) * t / (wire_mass * w.heat_capacity)


def thermal_displacement_scale(w: WireModel) -> float:
    """Typical atomic displacement x_r at the reference temperature,
    sqrt((18 hbar / (m omega_D)) (T_r / T_D)) with omega_D = k_B T_D / hbar."""
    omega_d = BOLTZMANN * w.debye_temperature / REDUCED_PLANCK
    return math.sqrt(
        18.0 * REDUCED_PLANCK / (w.atomic_mass * omega_d)
        * (w.reference_temperature / w.debye_temperature)
    )


def phonon_displacement(w: WireModel, delta_t: float) -> float:
    """Mean extra displacement from a temperature rise: x_r * dT / (2 T_r)."""
    if delta_t < 0:
        raise ValueError(f"delta_t must be nonnegative, got {delta_t}")
    return thermal_displacement_scale(w) * delta_t / (2.0 * w.reference_temperature)


def gamma_heating(
    params: CollapseParams,
    spec: CutoffSpec,
    w: WireModel,
    i_electric: float,
    t: float,
) -> float:
    """Decay exponent of the heated wire with the whole chain at one time t."""
    if i_electric == 0.0 or t == 0.0:
        return 0.0
    delta = phonon_displacement(w, temperature_rise(w, i_electric, t))
    species = DisplacedSpecies("wire-atoms", w.nucleons_per_atom, atom_count(w), delta)
    return gamma_point(params, spec, [species], t)


@dataclass(frozen=True)
class HeatingReport:
    """Every intermediate of the wire-heating chain plus both exponent readings."""

    volume: float
    atoms: float
    resistance: float
    power: float
    temperature_rise: float
    displacement_scale: float
    displacement: float
    gamma: float
    gamma_time: float
    gamma_detection_scale: float


def heating_report(
    params: CollapseParams,
    spec: CutoffSpec,
    w: WireModel,
    i_electric: float,
    t: float = _HEATING_TIME,
) -> HeatingReport:
    """Full heating chain at the caller's t, plus a second exponent reading.

    gamma is the consistent evaluation with every stage at time t.
    gamma_detection_scale keeps the temperature rise accumulated over the
    recording stage (1e-4 s) but reads the kernel at the detection
    timescale (1e-8 s); the two readings differ by the kernel ratio alone.
    """
    dt_rise = temperature_rise(w, i_electric, _HEATING_TIME)
    delta = phonon_displacement(w, dt_rise)
    match_species = DisplacedSpecies("wire-atoms", w.nucleons_per_atom, atom_count(w), delta)
    return HeatingReport(
        volume=wire_volume(w),
        atoms=atom_count(w),
        resistance=wire_resistance(w),
        power=dissipated_power(w, i_electric),
        temperature_rise=dt_rise,
        displacement_scale=thermal_displacement_scale(w),
        displacement=delta,
        gamma=gamma_heating(params, spec, w, i_electric, t),
        gamma_time=t,
        gamma_detection_scale=gamma_point(params, spec, [match_species], _DETECTION_TIME),
    )
