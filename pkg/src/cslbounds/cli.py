"""Command-line front end.

Eight subcommands over the library: curve emission (`lambda-curve`),
scalar solves (`collapse-time`, `cutoff-bound`, `fluct-bound`), chain
reports (`heating`, `ions`, `report`), and the stochastic verification
suite (`mc-verify`).  Output is plain key=value lines or CSV with
'#'-prefixed metadata; given the same config and seed it is
byte-identical across runs.

Exit codes: 0 success; 1 usage or configuration error; 2 solver failure
(no root in budget, monotonicity violation, non-convergent quadrature);
3 stochastic verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Callable, Sequence

from .bounds import (
    collapse_time_for_scenario,
    collapse_time_curve,
    cutoff_lower_bound,
    fluctuation_bound,
)
from .collapse import ions_displaced
from .config import (
    ConfigError,
    cutoff_spec_from,
    collapse_params_from,
    exclusion_marker_from,
    kind_from,
    load_config,
    mc_options_from,
    parse_grid,
    scenario_from,
    solver_from,
    time_mode_from,
)
from .errors import (
    CslBoundsError,
    MonotonicityViolation,
    QuadratureNonConvergence,
    SolverError,
)
from .fluctuations import FluctuationMeasure, i_normalized, j_normalized
from .noise_mc import suite_passes, verify_preregistered
from .reporting import build_report, format_csv, format_report, format_value
from .scenarios import PRESETS, WireModel, heating_report
from .spectral import (
    CutoffKind,
    CutoffSpec,
    lambda_big,
    lambda_big_quadrature,
)

__all__ = ["run", "entrypoint", "build_parser"]

_KIND_NAMES = [k.value for k in CutoffKind]


class _UsageError(Exception):
    """Bad command line, reported with exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; this front end reserves 2
    # for solver failures, so usage problems are rerouted to exit 1
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _check_finite(name: str, value: float, upper: float | None = None) -> float:
    if not math.isfinite(value) or value < 0.0:
        raise QuadratureNonConvergence(f"{name} produced invalid value {value!r}")
    if upper is not None and value > upper:
        raise QuadratureNonConvergence(
            f"{name} produced {value!r} above its bound {upper!r}"
        )
    return value


def _cmd_lambda_curve(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    t_grid = parse_grid(args.t_grid)
    lam = lambda_big_quadrature if args.quadrature else lambda_big

    if args.omega_m is not None:
        omegas = parse_grid(args.omega_m)
    else:
        file_omega = cfg.get("cutoff", {}).get("omega_m")
        omegas = None if file_omega is None else [float(file_omega)]

    curves: list[tuple[str, CutoffSpec]] = []
    if args.cutoff == "all":
        if omegas is None:
            raise ConfigError("--cutoff all needs --omega-m (a single frequency)")
        if len(omegas) != 1:
            raise ConfigError("--cutoff all takes exactly one --omega-m value")
        curves.append(("lambda_white", CutoffSpec.white()))
        for kind in CutoffKind:
            if kind is not CutoffKind.WHITE:
                curves.append((f"lambda_{kind.value}", CutoffSpec(kind, omegas[0])))
        cutoff_label = "all"
        meta_omega = format_value(omegas[0])
    else:
        kind = kind_from(cfg, args.cutoff)
        cutoff_label = kind.value
        if kind is CutoffKind.WHITE:
            curves.append(("lambda_white", CutoffSpec.white()))
            meta_omega = ""
        else:
            if omegas is None:
                raise ConfigError(f"cutoff kind {kind.value!r} needs --omega-m")
            for w in omegas:
                curves.append((f"lambda_{kind.value}_{format_value(w)}", CutoffSpec(kind, w)))
            meta_omega = ",".join(format_value(w) for w in omegas)

    rows = []
    for t in t_grid:
        row = [t]
        for _, spec in curves:
            # colored-noise suppression can never beat the white growth t/2
            row.append(_check_finite("lambda", lam(spec, t), upper=0.5 * t * (1.0 + 1e-9)))
        rows.append(row)
    metadata = [
        ("command", "lambda-curve"),
        ("cutoff", cutoff_label),
        ("omega_m", meta_omega),
        ("t_grid", args.t_grid),
        ("method", "quadrature" if args.quadrature else "closed-form"),
    ]
    _emit(format_csv(["t"] + [name for name, _ in curves], rows, metadata), args.output)
    return 0


def _cmd_collapse_time(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    params = collapse_params_from(cfg)
    scenario = scenario_from(cfg, args.preset, args.current)
    spec = cutoff_spec_from(cfg, args.cutoff, args.omega_m, default_kind=CutoffKind.WHITE)
    result = collapse_time_for_scenario(params, spec, scenario, solver_from(cfg, "time"))
    lines = [
        f"scenario={scenario.label}",
        f"cutoff={spec.kind.value}",
        f"omega_m_1_per_s={'' if spec.omega_m is None else format_value(spec.omega_m)}",
        f"t_c_s={format_value(result.t_c)}",
        f"iterations={result.iterations}",
        f"residual={result.residual:.3e}",
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_cutoff_bound(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    params = collapse_params_from(cfg)
    scenario = scenario_from(cfg, args.preset, args.current)
    kind = kind_from(cfg, args.cutoff)
    if kind is CutoffKind.WHITE:
        raise ConfigError("cutoff-bound needs a colored kernel, not white")
    mode = time_mode_from(cfg, args.t_mode)
    t_m = args.t_m if args.t_m is not None else scenario.measurement_time(mode)
    solver = solver_from(cfg, "frequency")
    result = cutoff_lower_bound(params, scenario, t_m, kind, solver)

    if args.omega_grid is not None:
        grid = parse_grid(args.omega_grid)
        curve = collapse_time_curve(params, scenario, kind, grid, solver_from(cfg, "time"))
        for a, b in zip(curve, curve[1:]):
            if b > a * (1.0 + 1e-9):
                raise MonotonicityViolation(
                    "collapse-time curve failed to decrease with the cutoff"
                )
        rows = [[w, _check_finite("t_c", t)] for w, t in zip(grid, curve)]
        metadata = [
            ("command", "cutoff-bound"),
            ("scenario", scenario.label),
            ("cutoff", kind.value),
            ("t_m_s", format_value(t_m)),
            ("omega_m_bound_1_per_s", format_value(result.omega_m_bound)),
            ("exclusion_marker_omega_m", format_value(exclusion_marker_from(cfg))),
        ]
        _emit(format_csv(["omega_m", "t_c"], rows, metadata), args.output)
        return 0

    lines = [
        f"scenario={scenario.label}",
        f"cutoff={kind.value}",
        f"t_m_s={format_value(t_m)}",
        f"omega_m_bound_1_per_s={format_value(result.omega_m_bound)}",
        f"iterations={result.iterations}",
        f"residual={result.residual:.3e}",
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_fluct_bound(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    kind = kind_from(cfg, args.cutoff)
    solver = solver_from(cfg, "frequency")
    measures = {
        "I": (FluctuationMeasure.ENDPOINT,),
        "J": (FluctuationMeasure.WINDOW,),
        "both": (FluctuationMeasure.ENDPOINT, FluctuationMeasure.WINDOW),
    }[args.measure]

    if args.omega_grid is not None:
        grid = parse_grid(args.omega_grid)
        rows = []
        for w in grid:
            spec = CutoffSpec(kind, w)
            rows.append(
                [
                    w,
                    _check_finite("i_norm", i_normalized(spec, args.t_m), upper=1.0 + 1e-12),
                    _check_finite("j_norm", j_normalized(spec, args.t_m), upper=1.0 + 1e-12),
                ]
            )
        metadata = [
            ("command", "fluct-bound"),
            ("cutoff", kind.value),
            ("t_m_s", format_value(args.t_m)),
            ("threshold", format_value(args.threshold)),
        ]
        _emit(format_csv(["omega_m", "i_norm", "j_norm"], rows, metadata), args.output)
        return 0

    label = {FluctuationMeasure.ENDPOINT: "I", FluctuationMeasure.WINDOW: "J"}
    lines = []
    for measure in measures:
        result = fluctuation_bound(measure, args.t_m, kind, args.threshold, solver)
        lines.append(
            f"measure={label[measure]} cutoff={kind.value} "
            f"t_m_s={format_value(args.t_m)} threshold={args.threshold:g} "
            f"omega_m_bound_1_per_s={format_value(result.omega_m_bound)}"
        )
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_heating(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    params = collapse_params_from(cfg)
    scenario = scenario_from(cfg, args.preset, args.current)
    spec = cutoff_spec_from(cfg, args.cutoff, args.omega_m, default_kind=CutoffKind.WHITE)
    report = heating_report(params, spec, WireModel(), scenario.i_electric, args.t)
    lines = [
        f"scenario={scenario.label}",
        f"i_electric_a={format_value(scenario.i_electric)}",
        f"volume_m3={format_value(report.volume)}",
        f"atom_count={format_value(report.atoms)}",
        f"resistance_ohm={format_value(report.resistance)}",
        f"power_w={format_value(report.power)}",
        f"temperature_rise_k={format_value(report.temperature_rise)}",
        f"displacement_scale_m={format_value(report.displacement_scale)}",
        f"displacement_m={format_value(report.displacement)}",
        f"gamma={format_value(report.gamma)}",
        f"gamma_time_s={format_value(report.gamma_time)}",
        f"gamma_detection_scale={format_value(report.gamma_detection_scale)}",
    ]
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_ions(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    if args.preset is not None or args.current is not None:
        scenarios = [scenario_from(cfg, args.preset, args.current)]
    else:
        scenarios = list(PRESETS.values())
    lines = []
    for scen in scenarios:
        n = ions_displaced(scen.i_electric, scen.battery.h_electrolyte, scen.battery.v_drift)
        lines.append(
            f"label={scen.label} i_electric_a={format_value(scen.i_electric)} "
            f"ions={format_value(n)}"
        )
    _emit("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_mc_verify(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    size, seed, minimum = mc_options_from(cfg, args.ensemble, args.seed)
    checks = verify_preregistered(ensemble_size=size, seed=seed)
    lines = []
    for index, check in enumerate(checks, start=1):
        lines.append(
            f"cell={index} kind={check.kind.value} "
            f"omega_m={format_value(check.omega_m)} t={format_value(check.t)} "
            f"lambda_z={check.lambda_z:+.2f} i_z={check.i_z:+.2f} "
            f"status={'PASS' if check.passed else 'FAIL'}"
        )
    passed = sum(1 for c in checks if c.passed)
    ok = suite_passes(checks, minimum)
    lines.append(
        f"suite={'PASS' if ok else 'FAIL'} cells_passed={passed}/{len(checks)} "
        f"ensemble={size} seed={seed}"
    )
    _emit("\n".join(lines) + "\n", args.output)
    return 0 if ok else 3


def _cmd_report(args: argparse.Namespace) -> int:
    cfg = load_config(args.config)
    params = collapse_params_from(cfg)
    _emit(format_report(build_report(params)), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cslbounds",
        description="Collapse-noise cutoff bounds from measurement scenarios.",
    )
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--config", help="TOML config file (or set CSLBOUNDS_CONFIG)")
    common.add_argument("-o", "--output", help="output file path, '-' for stdout")

    scen = _Parser(add_help=False)
    scen.add_argument("--preset", choices=sorted(PRESETS), help="named scenario")
    scen.add_argument("--current", type=float, help="override current [A]")

    p = sub.add_parser(
        "lambda-curve",
        parents=[common],
        help="emit Lambda(t) curves as CSV",
    )
    p.add_argument("--cutoff", choices=_KIND_NAMES + ["all"], help="kernel (default lorentzian)")
    p.add_argument("--omega-m", help="cutoff frequency list, e.g. 1e6,1e8,4e10")
    p.add_argument("--t-grid", default="log:1e-12:1e-3:200")
    p.add_argument(
        "--quadrature",
        action="store_true",
        help="evaluate by adaptive quadrature instead of closed forms",
    )
    p.set_defaults(handler=_cmd_lambda_curve)

    p = sub.add_parser(
        "collapse-time",
        parents=[common, scen],
        help="solve Gamma(t)=1 for a scenario",
    )
    p.add_argument("--cutoff", choices=_KIND_NAMES, help="kernel (default white)")
    p.add_argument("--omega-m", type=float, help="cutoff frequency [1/s]")
    p.set_defaults(handler=_cmd_collapse_time)

    p = sub.add_parser(
        "cutoff-bound",
        parents=[common, scen],
        help="smallest cutoff collapsing within the measurement time",
    )
    p.add_argument("--cutoff", choices=_KIND_NAMES, help="kernel (default lorentzian)")
    p.add_argument("--t-m", type=float, help="measurement time [s]")
    p.add_argument("--t-mode", choices=["record", "sum"], help="measurement-time rule")
    p.add_argument("--omega-grid", help="emit the t_C(omega_m) curve on this grid")
    p.set_defaults(handler=_cmd_cutoff_bound)

    p = sub.add_parser(
        "fluct-bound",
        parents=[common],
        help="cutoff above which noise averages below threshold",
    )
    p.add_argument("--measure", default="both", choices=["I", "J", "both"])
    p.add_argument("--t-m", type=float, default=1e-4, help="measurement time [s]")
    p.add_argument("--threshold", type=float, default=0.1)
    p.add_argument("--cutoff", choices=_KIND_NAMES, help="kernel (default lorentzian)")
    p.add_argument("--omega-grid", help="emit i_norm/j_norm curves on this grid")
    p.set_defaults(handler=_cmd_fluct_bound)

    p = sub.add_parser(
        "heating",
        parents=[common, scen],
        help="wire Joule-heating chain report",
    )
    p.add_argument("--t", type=float, default=1e-4, help="heating duration [s]")
    p.add_argument("--cutoff", choices=_KIND_NAMES, help="kernel (default white)")
    p.add_argument("--omega-m", type=float, help="cutoff frequency [1/s]")
    p.set_defaults(handler=_cmd_heating)

    p = sub.add_parser(
        "ions",
        parents=[common, scen],
        help="displaced-ion counts per scenario",
    )
    p.set_defaults(handler=_cmd_ions)

    p = sub.add_parser(
        "mc-verify",
        parents=[common],
        help="run the stochastic oracle suite",
    )
    p.add_argument("--ensemble", type=int, help="trajectories per cell")
    p.add_argument("--seed", type=int, help="base seed for all cells")
    p.set_defaults(handler=_cmd_mc_verify)

    p = sub.add_parser(
        "report",
        parents=[common],
        help="every headline number vs its reference value",
    )
    p.set_defaults(handler=_cmd_report)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse and execute one command; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help exits argparse internally
        code = exc.code if isinstance(exc.code, int) else 0
        return 0 if code == 0 else 1
    handler: Callable[[argparse.Namespace], int] | None = getattr(args, "handler", None)
    if handler is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return handler(args)
    except SolverError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2
    except QuadratureNonConvergence as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 2
    except (CslBoundsError, ConfigError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entrypoint()
