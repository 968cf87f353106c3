"""Configuration: TOML files, environment default, grids, and precedence.

Settings come from three layers — command-line flags, a TOML config file,
and built-in defaults — with that precedence.  The config file path is
taken from the `--config` flag or, failing that, the CSLBOUNDS_CONFIG
environment variable.  Every built-in default equals the reference
parameter choice, so a bare invocation reproduces the headline numbers.

Grid syntax (for time and frequency grids):
  "log:1e-12:1e-3:200"  200 log-spaced points from 1e-12 to 1e-3
  "lin:0.1:1.0:10"      10 evenly spaced points
  "1e6,1e8,4e10"        an explicit, strictly increasing list
"""

from __future__ import annotations

import math
import os
from dataclasses import replace

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .bounds import SolverConfig
from .collapse import CollapseParams
from .scenarios import MeasurementScenario, preset
from .spectral import CutoffKind, CutoffSpec

__all__ = [
    "ENV_CONFIG_PATH",
    "MAX_GRID_POINTS",
    "DEFAULT_EXCLUSION_MARKER",
    "ConfigError",
    "load_config",
    "parse_grid",
    "parse_kind",
    "collapse_params_from",
    "kind_from",
    "cutoff_spec_from",
    "scenario_from",
    "solver_from",
    "exclusion_marker_from",
]

ENV_CONFIG_PATH = "CSLBOUNDS_CONFIG"
MAX_GRID_POINTS = 1_000_000

# frequency annotated on exclusion curves as "excluded by bulk heating";
# quoted, not computed — it marks the top of the interesting cutoff range
DEFAULT_EXCLUSION_MARKER = 4e10

_SCHEMA: dict[str, set[str]] = {
    "collapse": {"rate", "r_c"},
    "cutoff": {"kind", "omega_m", "exclusion_marker_omega_m"},
    "scenario": {
        "preset", "label", "i_electric", "t_pulse", "t_detect",
        "t_amplify", "t_record", "v_drift", "h_electrolyte", "time_mode",
    },
    "solver": {
        "rel_tol", "max_iterations", "growth",
        "time_floor", "time_ceiling", "frequency_floor", "frequency_ceiling",
    },
    "mc": {"ensemble_size", "seed", "minimum_pass"},
}


class ConfigError(ValueError):
    """A config file or option set that cannot be acted on."""


def load_config(path: str | None) -> dict:
    """Read and validate a TOML config file; {} when no path applies.

    Explicit path wins; otherwise the CSLBOUNDS_CONFIG environment
    variable is consulted.  Unknown sections or keys are errors.
    """
    if path is None:
        path = os.environ.get(ENV_CONFIG_PATH) or None
    if path is None:
        return {}
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path!r}: {exc}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {path!r} is not valid TOML: {exc}") from exc
    for section, body in raw.items():
        if section not in _SCHEMA:
            known = ", ".join(sorted(_SCHEMA))
            raise ConfigError(f"unknown config section [{section}]; known: {known}")
        if not isinstance(body, dict):
            raise ConfigError(f"config section [{section}] must be a table")
        for key in body:
            if key not in _SCHEMA[section]:
                known = ", ".join(sorted(_SCHEMA[section]))
                raise ConfigError(
                    f"unknown key {key!r} in [{section}]; known: {known}"
                )
    return raw


def _section(cfg: dict, name: str) -> dict:
    return cfg.get(name, {})


def _pick(flag_value, cfg: dict, section: str, key: str, default):
    """Precedence: command-line flag, then config file, then default."""
    if flag_value is not None:
        return flag_value
    return _section(cfg, section).get(key, default)


def parse_grid(text: str) -> list[float]:
    """Parse grid syntax into a positive, strictly increasing list."""
    parts = text.split(":")
    if parts[0] in ("log", "lin"):
        if len(parts) != 4:
            raise ConfigError(
                f"grid {text!r} must look like '{parts[0]}:start:stop:count'"
            )
        try:
            start, stop = float(parts[1]), float(parts[2])
            count = int(parts[3])
        except ValueError as exc:
            raise ConfigError(f"grid {text!r}: {exc}") from exc
        if count < 2:
            raise ConfigError(f"grid {text!r} needs at least 2 points")
        if not (0.0 < start < stop) or not math.isfinite(stop):
            raise ConfigError(f"grid {text!r} needs 0 < start < stop")
        if count > MAX_GRID_POINTS:
            raise ConfigError(f"grid {text!r} exceeds {MAX_GRID_POINTS} points")
        if parts[0] == "log":
            lg0, lg1 = math.log10(start), math.log10(stop)
            pts = [10.0 ** (lg0 + i * (lg1 - lg0) / (count - 1)) for i in range(count)]
        else:
            pts = [start + i * (stop - start) / (count - 1) for i in range(count)]
        pts[0], pts[-1] = start, stop
        return pts
    try:
        pts = [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise ConfigError(f"grid {text!r}: {exc}") from exc
    if not pts:
        raise ConfigError(f"grid {text!r} is empty")
    if len(pts) > MAX_GRID_POINTS:
        raise ConfigError(f"grid {text!r} exceeds {MAX_GRID_POINTS} points")
    if any(not (p > 0.0 and math.isfinite(p)) for p in pts):
        raise ConfigError(f"grid {text!r} must be positive and finite")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise ConfigError(f"grid {text!r} must be strictly increasing")
    return pts


def parse_kind(name: str) -> CutoffKind:
    try:
        return CutoffKind(name.lower())
    except ValueError:
        known = ", ".join(k.value for k in CutoffKind)
        raise ConfigError(f"unknown cutoff kind {name!r}; known: {known}") from None


def collapse_params_from(cfg: dict, rate: float | None = None, r_c: float | None = None) -> CollapseParams:
    try:
        return CollapseParams(
            rate=_pick(rate, cfg, "collapse", "rate", 1e-8),
            r_c=_pick(r_c, cfg, "collapse", "r_c", 1e-7),
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def kind_from(
    cfg: dict,
    kind_name: str | None,
    default_kind: CutoffKind = CutoffKind.LORENTZIAN,
) -> CutoffKind:
    """Cutoff kind with flag > file > per-command default precedence."""
    if kind_name is not None:
        return parse_kind(kind_name)
    sec = _section(cfg, "cutoff")
    if "kind" in sec:
        return parse_kind(sec["kind"])
    return default_kind


def cutoff_spec_from(
    cfg: dict,
    kind_name: str | None,
    omega_m: float | None,
    default_kind: CutoffKind = CutoffKind.WHITE,
) -> CutoffSpec:
    """Assemble the cutoff kernel from flags, file, and a per-command default."""
    kind = kind_from(cfg, kind_name, default_kind)
    omega = _pick(omega_m, cfg, "cutoff", "omega_m", None)
    try:
        if kind is CutoffKind.WHITE:
            return CutoffSpec.white()
        if omega is None:
            raise ConfigError(f"cutoff kind {kind.value!r} needs omega_m")
        return CutoffSpec(kind, float(omega))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def scenario_from(
    cfg: dict,
    preset_name: str | None = None,
    current: float | None = None,
    default_preset: str = "flash-500mA",
) -> MeasurementScenario:
    """Assemble the measurement scenario; inline current overrides the preset."""
    sec = _section(cfg, "scenario")
    name = preset_name if preset_name is not None else sec.get("preset", default_preset)
    try:
        base = preset(name)
    except KeyError as exc:
        raise ConfigError(str(exc.args[0])) from exc
    overrides: dict = {}
    for key in ("label", "i_electric", "t_pulse", "t_detect", "t_amplify", "t_record"):
        if key in sec:
            overrides[key] = sec[key]
    battery = base.battery
    if "v_drift" in sec or "h_electrolyte" in sec:
        battery = replace(
            battery,
            v_drift=sec.get("v_drift", battery.v_drift),
            h_electrolyte=sec.get("h_electrolyte", battery.h_electrolyte),
        )
        overrides["battery"] = battery
    if current is not None:
        overrides["i_electric"] = current
        overrides.setdefault("label", f"custom-{current:g}A")
    try:
        return replace(base, **overrides) if overrides else base
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def time_mode_from(cfg: dict, flag: str | None) -> str:
    mode = _pick(flag, cfg, "scenario", "time_mode", "record")
    if mode not in ("record", "sum"):
        raise ConfigError(f"time_mode must be 'record' or 'sum', got {mode!r}")
    return mode


def solver_from(cfg: dict, domain: str) -> SolverConfig:
    """Solver controls for the 'time' or 'frequency' domain."""
    sec = _section(cfg, "solver")
    if domain == "time":
        floor = sec.get("time_floor", 1e-12)
        ceiling = sec.get("time_ceiling", 1e6)
    elif domain == "frequency":
        floor = sec.get("frequency_floor", 1e-12)
        ceiling = sec.get("frequency_ceiling", 1e14)
    else:
        raise ValueError(f"domain must be 'time' or 'frequency', got {domain!r}")
    try:
        return SolverConfig(
            rel_tol=sec.get("rel_tol", 1e-10),
            max_iterations=sec.get("max_iterations", 200),
            growth=sec.get("growth", 10.0),
            bracket_floor=floor,
            bracket_ceiling=ceiling,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def mc_options_from(
    cfg: dict,
    ensemble: int | None = None,
    seed: int | None = None,
) -> tuple[int, int, int]:
    """(ensemble_size, seed, minimum passing cells) for the oracle suite."""
    size = int(_pick(ensemble, cfg, "mc", "ensemble_size", 10_000))
    chosen_seed = int(_pick(seed, cfg, "mc", "seed", 20260819))
    minimum = int(_pick(None, cfg, "mc", "minimum_pass", 9))
    if size < 2:
        raise ConfigError(f"ensemble_size must be at least 2, got {size}")
    if chosen_seed < 0:
        raise ConfigError(f"seed must be nonnegative, got {chosen_seed}")
    if not (0 < minimum <= 10):
        raise ConfigError(f"minimum_pass must be in 1..10, got {minimum}")
    return size, chosen_seed, minimum


def exclusion_marker_from(cfg: dict) -> float:
    value = float(_section(cfg, "cutoff").get("exclusion_marker_omega_m", DEFAULT_EXCLUSION_MARKER))
    if not (value > 0.0 and math.isfinite(value)):
        raise ConfigError(f"exclusion_marker_omega_m must be positive, got {value}")
    return value
