"""Scenario configuration, parameter sweeps and table emission."""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .dynamics import TimeGrid, evolve, parallel_ergotropy, t_min
from .model import ModelParams, Preset, PresetError, build_all, initial_state
from .observables import ObservableRecord, PeakKind, find_peak, record_trajectory

OBSERVABLES = ("ergotropy", "power", "coherence", "steering", "energy")
SWEEPABLE = ("D", "delta", "gamma")
CSV_COLUMNS = ("sweep_param", "sweep_value", "t") + OBSERVABLES
PRECISION = 12

# Default window length in units of t_min for each model.
DEFAULT_WINDOW = {Preset.ISING: 1.0, Preset.CUSTOM: 1.0, Preset.XXZ: 4.0, Preset.XYZ: 4.0}
DEFAULT_STEPS = 2001

# Record attribute feeding each output column.
_RECORD_FIELD = {"ergotropy": "ergotropy", "power": "power", "coherence": "coherence",
                 "steering": "steering", "energy": "mean_energy"}


class ConfigError(ValueError):
    """Invalid scenario configuration; the message names the offending field."""


class EmitError(OSError):
    pass


@dataclass(frozen=True)
class Sweep:
    parameter: str
    values: tuple

    def __post_init__(self):
        if self.parameter not in SWEEPABLE:
            raise ConfigError(f"sweep.parameter: expected one of {', '.join(SWEEPABLE)}, "
                              f"got {self.parameter!r}")
        try:
            values = tuple(float(v) for v in self.values)
        except (TypeError, ValueError):
            raise ConfigError(f"sweep.values: expected a list of numbers, got {self.values!r}") from None
        if not values:
            raise ConfigError("sweep.values: must not be empty")
        if not all(math.isfinite(v) for v in values):
            raise ConfigError("sweep.values: all values must be finite")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class ScenarioConfig:
    preset: Preset
    params: ModelParams
    grid: TimeGrid
    observables: tuple = OBSERVABLES
    sweep: Sweep | None = None
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "preset", Preset.parse(self.preset))
        obs = tuple(self.observables)
        if not obs:
            raise ConfigError("observables: at least one observable is required")
        unknown = [o for o in obs if o not in OBSERVABLES]
        if unknown:
            raise ConfigError(f"observables: unknown {', '.join(map(repr, unknown))}; "
                              f"expected a subset of {', '.join(OBSERVABLES)}")
        # canonical order, duplicates dropped
        object.__setattr__(self, "observables", tuple(o for o in OBSERVABLES if o in obs))
        for p in self.points():
            try:
                build_all(p, self.preset)
            except PresetError as exc:
                where = f" (sweep {self.sweep.parameter})" if self.sweep else ""
                raise ConfigError(f"params{where}: {exc}") from None

    def points(self) -> list[ModelParams]:
        if self.sweep is None:
            return [self.params]
        return [dataclasses.replace(self.params, **{self.sweep.parameter: v})
                for v in self.sweep.values]

    def to_dict(self) -> dict:
        d = {
            "label": self.label,
            "model": self.preset.value,
            "params": dataclasses.asdict(self.params),
            "grid": dataclasses.asdict(self.grid),
            "observables": list(self.observables),
        }
        if self.sweep is not None:
            d["sweep"] = {"parameter": self.sweep.parameter, "values": list(self.sweep.values)}
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "ScenarioConfig":
        return parse_config(data)


_PARAM_KEYS = tuple(f.name for f in dataclasses.fields(ModelParams))
_TOP_KEYS = ("label", "model", "params", "grid", "observables", "sweep")


def _number(value, where):
    if isinstance(value, bool):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    try:
        out = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: expected a number, got {value!r}") from None
    if not math.isfinite(out):
        raise ConfigError(f"{where}: must be finite, got {value!r}")
    return out


def preset_defaults(preset: Preset) -> dict:
    """Anisotropy values pinned by a preset; XYZ pins nothing."""
    if preset is Preset.ISING:
        return {"gamma": 1.0, "delta": 0.0}
    if preset is Preset.XXZ:
        return {"gamma": 0.0}
    return {}


def parse_config(data: dict) -> ScenarioConfig:
    """Build a :class:`ScenarioConfig` from the JSON config schema.

    Missing ``params`` entries fall back to the preset's pinned values and then
    to the :class:`ModelParams` defaults, except that the XYZ model requires
    ``gamma`` and ``delta`` explicitly.  A missing ``grid.t_end`` selects the
    model's default window.
    """
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object at top level")
    unknown = sorted(set(data) - set(_TOP_KEYS))
    if unknown:
        raise ConfigError(f"config: unknown key(s) {', '.join(unknown)}")
    try:
        preset = Preset.parse(data.get("model", "custom"))
    except PresetError as exc:
        raise ConfigError(f"model: {exc}") from None

    raw = data.get("params", {}) or {}
    if not isinstance(raw, dict):
        raise ConfigError("params: expected an object")
    unknown = sorted(set(raw) - set(_PARAM_KEYS))
    if unknown:
        raise ConfigError(f"params: unknown key(s) {', '.join(unknown)}")
    values = dict(preset_defaults(preset))
    values.update({k: _number(v, f"params.{k}") for k, v in raw.items()})
    sweep_raw = data.get("sweep")
    swept = sweep_raw.get("parameter") if isinstance(sweep_raw, dict) else None
    if preset is Preset.XYZ:
        for key in ("gamma", "delta"):
            if key not in values and swept != key:
                raise ConfigError(f"params.{key}: required for the xyz model "
                                  f"(the anisotropy {key} has no default)")
            values.setdefault(key, 1.0)
    try:
        params = ModelParams(**values)
    except ValueError as exc:
        raise ConfigError(f"params: {exc}") from None

    grid_raw = data.get("grid", {}) or {}
    if not isinstance(grid_raw, dict):
        raise ConfigError("grid: expected an object")
    unknown = sorted(set(grid_raw) - {"t_start", "t_end", "steps"})
    if unknown:
        raise ConfigError(f"grid: unknown key(s) {', '.join(unknown)}")
    t_start = _number(grid_raw.get("t_start", 0.0), "grid.t_start")
    if "t_end" in grid_raw:
        t_end = _number(grid_raw["t_end"], "grid.t_end")
    else:
        t_end = DEFAULT_WINDOW[preset] * t_min(params.omega)
    steps = grid_raw.get("steps", DEFAULT_STEPS)
    try:
        grid = TimeGrid(t_start, t_end, steps)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"grid: {exc}") from None

    obs = data.get("observables", list(OBSERVABLES))
    if isinstance(obs, str):
        obs = [o.strip() for o in obs.split(",") if o.strip()]
    if not isinstance(obs, (list, tuple)):
        raise ConfigError("observables: expected a list of names")

    sweep = None
    if sweep_raw is not None:
        if not isinstance(sweep_raw, dict):
            raise ConfigError("sweep: expected an object with 'parameter' and 'values'")
        if not isinstance(sweep_raw.get("values"), (list, tuple)):
            raise ConfigError("sweep.values: expected a list of numbers")
        sweep = Sweep(str(sweep_raw.get("parameter")), tuple(sweep_raw["values"]))

    label = data.get("label", "")
    if not isinstance(label, str):
        raise ConfigError("label: expected a string")
    return ScenarioConfig(preset=preset, params=params, grid=grid, observables=tuple(obs),
                          sweep=sweep, label=label)


def load_config(path) -> dict:
    """Read a JSON config file into a dict (not yet validated)."""
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path}: invalid JSON ({exc})") from None


@dataclass
class SeriesResult:
    """Records and peaks for one sweep value (or the single base point)."""

    value: object
    params: ModelParams | None
    records: list
    peaks: dict = field(default_factory=dict)


@dataclass
class SweepResult:
    parameter: str | None
    series: list
    observables: tuple = OBSERVABLES
    label: str = ""

    def peak_table(self) -> list[dict]:
        rows = []
        for s in self.series:
            for kind, p in s.peaks.items():
                rows.append({"sweep_param": self.parameter or "", "sweep_value": s.value,
                             "kind": PeakKind(kind).value, "t_peak": p.t_peak,
                             "value_peak": p.value_peak})
        return rows


def _run_point(params: ModelParams, preset: Preset, grid: TimeGrid, value) -> SeriesResult:
    hs = build_all(params, preset)
    traj = evolve(hs.h_total, initial_state(), grid)
    records = record_trajectory(traj, hs.h_free)
    peaks = {k: find_peak(records, k) for k in (PeakKind.ERGOTROPY, PeakKind.POWER)}
    return SeriesResult(value=value, params=params, records=records, peaks=peaks)


def run_scenario(cfg: ScenarioConfig, max_workers: int | None = None) -> SweepResult:
    """Evolve and measure every sweep point of ``cfg``.

    Sweep points are independent; with ``max_workers > 1`` they run on a
    thread pool.  Results keep the input sweep order either way.
    """
    points = cfg.points()
    values = list(cfg.sweep.values) if cfg.sweep else [None]
    args = [(p, cfg.preset, cfg.grid, v) for p, v in zip(points, values)]
    if max_workers and max_workers > 1 and len(args) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            series = list(pool.map(lambda a: _run_point(*a), args))
    else:
        series = [_run_point(*a) for a in args]
    return SweepResult(parameter=cfg.sweep.parameter if cfg.sweep else None, series=series,
                       observables=cfg.observables, label=cfg.label)


@dataclass
class ChargingComparison:
    collective: SeriesResult
    parallel: SeriesResult
    analytic: SeriesResult

    def as_sweep(self, observables=OBSERVABLES, label="") -> SweepResult:
        """Pack the three series into one table keyed by ``sweep_param = charging``."""
        return SweepResult(parameter="charging",
                           series=[self.collective, self.parallel, self.analytic],
                           observables=tuple(observables), label=label)


def compare_charging(params: ModelParams, grid: TimeGrid, preset=Preset.CUSTOM) -> ChargingComparison:
    """Collective charging against the uncoupled (``J = D = 0``) baseline on one grid.

    The third series is the closed-form parallel ergotropy; only its ergotropy
    and power columns are populated.
    """
    collective = _run_point(params, Preset.parse(preset), grid, "collective")
    parallel = _run_point(params.parallel(), Preset.CUSTOM, grid, "parallel")
    nan = float("nan")
    zeta = parallel_ergotropy(grid.times, params.omega, params.omega0)
    records = [ObservableRecord(float(t), float(z), float(z / t) if t > 0 else 0.0, nan, nan, nan)
               for t, z in zip(grid.times, zeta)]
    analytic = SeriesResult(value="parallel_analytic", params=params.parallel(), records=records,
                            peaks={k: find_peak(records, k) for k in (PeakKind.ERGOTROPY, PeakKind.POWER)})
    return ChargingComparison(collective, parallel, analytic)


def fmt(x) -> str:
    """Float to text with 12 significant digits; NaN becomes the empty cell."""
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x):
        return ""
    out = f"{x:.{PRECISION}g}"
    return "0" if out == "-0" else out


def _rows(result: SweepResult):
    for s in result.series:
        for r in s.records:
            row = {"sweep_param": result.parameter or "",
                   "sweep_value": fmt(s.value) if s.value is not None else "",
                   "t": fmt(r.t)}
            for name in OBSERVABLES:
                row[name] = fmt(getattr(r, _RECORD_FIELD[name])) if name in result.observables else ""
            yield row


def _json_value(text):
    if text == "":
        return None
    try:
        return float(text)
    except ValueError:
        return text


def to_csv(result: SweepResult) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(_rows(result))
    return buf.getvalue()


def to_json(result: SweepResult) -> str:
    records = [{k: _json_value(v) if k != "sweep_param" else v for k, v in row.items()}
               for row in _rows(result)]
    peaks = [{"sweep_param": p["sweep_param"], "sweep_value": _json_value(fmt(p["sweep_value"])),
              "kind": p["kind"], "t_peak": float(fmt(p["t_peak"])),
              "value_peak": float(fmt(p["value_peak"]))}
             for p in result.peak_table()]
    doc = {"label": result.label, "columns": list(CSV_COLUMNS), "records": records, "peaks": peaks}
    return json.dumps(doc, indent=1) + "\n"


def emit(result: SweepResult, format: str = "csv", destination=None) -> None:
    """Write ``result`` as CSV or JSON to a path, or to stdout when ``destination`` is None/'-'."""
    if format == "csv":
        text = to_csv(result)
    elif format == "json":
        text = to_json(result)
    else:
        raise ValueError(f"unknown format {format!r}; expected csv or json")
    if destination is None or str(destination) == "-":
        sys.stdout.write(text)
        return
    path = Path(destination)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise EmitError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
