"""Deterministic output formatting: CSV curves and the comparison table.

CSV files carry '#'-prefixed metadata lines, then a header row, then data
rows in scientific notation with 9 significant digits; identical inputs
produce byte-identical files.

The comparison table puts every headline number next to its reference
value with a relative deviation.  Two rows carry an ANNOTATED note: they
are documented discrepancies where the reference value disagrees with its
own defining formula (or mixes evaluation timescales), and the table
shows the formula result rather than silently reproducing either number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bounds import (
    cutoff_lower_bound,
    fluctuation_bound,
    lambda_rescale,
    white_collapse_time,
)
from .collapse import CollapseParams, ions_displaced, white_cubic_coefficient
from .fluctuations import FluctuationMeasure
from .scenarios import PRESETS, WireModel, heating_report
from .spectral import CutoffSpec

__all__ = [
    "format_csv",
    "ReportRow",
    "build_report",
    "format_report",
]


def format_value(x: float) -> str:
    return f"{x:.8e}"


def format_csv(
    header: Sequence[str],
    rows: Iterable[Sequence[float]],
    metadata: Sequence[tuple[str, str]] = (),
) -> str:
    """Render metadata, header, and numeric rows as a deterministic CSV."""
    lines = [f"# {key}={value}" for key, value in metadata]
    lines.append(",".join(header))
    for row in rows:
        cells = [format_value(float(cell)) for cell in row]
        if any(not math.isfinite(float(cell)) for cell in row):
            raise ValueError(f"refusing to emit non-finite row {row!r}")
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ReportRow:
    """One comparison: a computed quantity against its reference value."""

    name: str
    computed: float
    reference: float
    note: str = ""

    @property
    def rel_dev(self) -> float:
        return (self.computed - self.reference) / self.reference


_ONE_DIGIT = "reference quoted to one significant figure"


def build_report(params: CollapseParams | None = None) -> list[ReportRow]:
    """Every headline number, computed fresh, next to its reference value."""
    p = params if params is not None else CollapseParams()
    detect = PRESETS["detection-2mA"]
    nand = PRESETS["nand-13.8mA"]
    flash = PRESETS["flash-500mA"]
    rows: list[ReportRow] = []

    for scen, ref in ((detect, 4.46e18), (nand, 3.08e19), (flash, 1.11e21)):
        n = ions_displaced(scen.i_electric, scen.battery.h_electrolyte, scen.battery.v_drift)
        rows.append(ReportRow(f"displaced ions ({scen.label})", n, ref))

    t_white: dict[str, float] = {}
    for scen, ref in ((detect, 8.16e-6), (nand, 4.29e-6), (flash, 1.30e-6)):
        t_c = white_collapse_time(white_cubic_coefficient(p, scen))
        t_white[scen.label] = t_c
        rows.append(ReportRow(f"white collapse time [s] ({scen.label})", t_c, ref))

    for scen, t_m, ref, note in (
        (flash, 1e-5, 2.2e-3, ""),
        (nand, 1e-5, 7.9e-2, ""),
        (flash, 1e-4, 2.2e-6, ""),
        (
            nand, 1e-4, 7.9e-6,
            "ANNOTATED: reference disagrees with its own cubic law by 10x; "
            "formula value shown",
        ),
    ):
        factor = lambda_rescale(t_white[scen.label], t_m)
        rows.append(
            ReportRow(f"rate rescale factor ({scen.label}, t_m={t_m:g} s)", factor, ref, note)
        )

    for scen, t_m, ref in (
        (nand, 1e-4, 1.0),
        (flash, 1e-4, 5e-2),
        (nand, 1e-5, 1e4),
        (flash, 1e-5, 5e2),
    ):
        bound = cutoff_lower_bound(p, scen, t_m).omega_m_bound
        rows.append(
            ReportRow(
                f"cutoff lower bound [1/s] ({scen.label}, t_m={t_m:g} s)",
                bound,
                ref,
                _ONE_DIGIT,
            )
        )

    for t_m, ref in ((1e-4, 1e5), (1e-5, 1e6)):
        bound = fluctuation_bound(FluctuationMeasure.ENDPOINT, t_m).omega_m_bound
        rows.append(
            ReportRow(
                f"averaging cutoff, endpoint measure [1/s] (t_m={t_m:g} s)",
                bound,
                ref,
                _ONE_DIGIT,
            )
        )
    t_m = 1e-4
    crossing = fluctuation_bound(FluctuationMeasure.WINDOW, t_m).omega_m_bound * t_m
    rows.append(ReportRow("window-measure crossing omega_m*t_m", crossing, 18.94))

    wire = WireModel()
    heat = heating_report(p, CutoffSpec.white(), wire, flash.i_electric)
    rows.extend(
        [
            ReportRow("wire volume [m^3]", heat.volume, 3.14e-8),
            ReportRow("wire atom count", heat.atoms, 2.67e21),
            ReportRow("wire resistance [ohm]", heat.resistance, 5.35e-5),
            ReportRow("dissipated power [W]", heat.power, 1.34e-5),
            ReportRow("temperature rise [K]", heat.temperature_rise, 1.24e-8),
            ReportRow(
                "thermal displacement scale [m]", heat.displacement_scale, 2e-11, _ONE_DIGIT
            ),
            ReportRow("heating displacement [m]", heat.displacement, 4e-22, _ONE_DIGIT),
            ReportRow(
                "heating exponent, detection-scale reading",
                heat.gamma_detection_scale,
                4.3e-21,
                "ANNOTATED: reference mixes the recording-stage temperature rise "
                "with a detection-timescale kernel; both readings shown",
            ),
            ReportRow(
                "heating exponent, consistent at t=1e-4 s",
                heat.gamma,
                1e-16,
                "reference is a ceiling, not a target",
            ),
        ]
    )
    return rows


def format_report(rows: Sequence[ReportRow]) -> str:
    """Fixed-width table with a relative-deviation column and notes."""
    name_width = max(len(r.name) for r in rows)
    lines = [
        f"{'quantity':<{name_width}}  {'computed':>13}  {'reference':>13}  {'rel_dev':>9}  note"
    ]
    for r in rows:
        lines.append(
            f"{r.name:<{name_width}}  {r.computed:>13.6e}  {r.reference:>13.6e}  "
            f"{100.0 * r.rel_dev:>+8.2f}%  {r.note}".rstrip()
        )
    return "\n".join(lines) + "\n"
