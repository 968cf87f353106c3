"""Collapse-noise cutoff bounds from minimal measurement scenarios.

A library and CLI around one chain of reasoning: a measurement needs a
current, a current displaces mass, displaced mass is what spontaneous
collapse acts on — so demanding that collapse completes within the
measurement puts a lower bound on the collapse-noise frequency cutoff.

Layers, bottom to top:

  spectral      cutoff kernels gamma(omega), correlators delta_gamma,
                and the double integral Lambda(t) (closed forms and an
                adaptive-quadrature oracle)
  collapse      decay exponents Gamma(t) for displaced point groups,
                drifting ion currents, and rigid spheres
  scenarios     battery/ion presets, measurement stage times, and the
                wire Joule-heating estimate
  fluctuations  window statistics of the noise and their normalizations
  bounds        monotone root solves: collapse times, cutoff bounds,
                threshold crossings, rate rescaling
  noise_mc      stochastic oracle re-estimating the analytic results
  cli           command-line front end over all of the above
"""

from .bounds import (
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
from .collapse import (
    CollapseParams,
    DisplacedSpecies,
    gamma_current,
    gamma_point,
    gamma_sphere,
    ions_displaced,
    sphere_form_factor,
    sphere_form_factor_mc,
    white_cubic_coefficient,
)
from .errors import (
    AlreadyCollapsing,
    CslBoundsError,
    DisplacementTooLarge,
    MonotonicityViolation,
    NeverCollapsing,
    NoRootInBudget,
    QuadratureNonConvergence,
    ResolutionTooCoarse,
    SolverError,
    WhiteNotNormalizable,
    WhiteNotPointwise,
    WhiteNotSamplable,
)
from .fluctuations import (
    FluctuationMeasure,
    i_normalized,
    i_tilde,
    j_normalized,
    j_tilde,
    normalized_measure,
)
from .noise_mc import (
    CellCheck,
    McEstimate,
    NoiseTrajectory,
    PREREGISTERED_CELLS,
    estimate_i,
    estimate_lambda,
    sample_lorentzian,
    sample_spectral,
    suite_passes,
    time_average,
    verify_preregistered,
    write_trajectory_csv,
)
from .scenarios import (
    PRESETS,
    BatteryModel,
    HeatingReport,
    IonSpecies,
    MeasurementScenario,
    WireModel,
    atom_count,
    dissipated_power,
    gamma_heating,
    heating_report,
    phonon_displacement,
    preset,
    temperature_rise,
    thermal_displacement_scale,
    wire_resistance,
    wire_volume,
)
from .spectral import (
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

__version__ = "1.0.0"

__all__ = [
    "AlreadyCollapsing",
    "BatteryModel",
    "BoundResult",
    "CellCheck",
    "CollapseParams",
    "CslBoundsError",
    "CutoffKind",
    "CutoffSpec",
    "DisplacedSpecies",
    "DisplacementTooLarge",
    "FluctuationMeasure",
    "HeatingReport",
    "IonSpecies",
    "McEstimate",
    "MeasurementScenario",
    "MonotonicityViolation",
    "NeverCollapsing",
    "NoiseTrajectory",
    "NoRootInBudget",
    "PREREGISTERED_CELLS",
    "PRESETS",
    "QuadratureNonConvergence",
    "ResolutionTooCoarse",
    "SolverConfig",
    "SolverError",
    "WhiteNotNormalizable",
    "WhiteNotPointwise",
    "WhiteNotSamplable",
    "WireModel",
    "atom_count",
    "collapse_time",
    "collapse_time_curve",
    "collapse_time_for_scenario",
    "cutoff_lower_bound",
    "delta_gamma",
    "delta_gamma_zero",
    "dissipated_power",
    "estimate_i",
    "estimate_lambda",
    "fluctuation_bound",
    "gamma_current",
    "gamma_heating",
    "gamma_of_omega",
    "gamma_point",
    "gamma_sphere",
    "heating_report",
    "i_normalized",
    "i_tilde",
    "ions_displaced",
    "j_normalized",
    "j_tilde",
    "lambda_big",
    "lambda_big_quadrature",
    "lambda_rescale",
    "normalized_measure",
    "phonon_displacement",
    "preset",
    "sample_lorentzian",
    "sample_spectral",
    "small_omega_cutoff",
    "spectral_mass",
    "spectral_mass_cutoff",
    "sphere_form_factor",
    "sphere_form_factor_mc",
    "suite_passes",
    "temperature_rise",
    "thermal_displacement_scale",
    "time_average",
    "verify_preregistered",
    "white_collapse_time",
    "white_cubic_coefficient",
    "wire_resistance",
    "wire_volume",
    "write_trajectory_csv",
]
