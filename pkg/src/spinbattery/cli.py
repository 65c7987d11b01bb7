"""Command line entry point: ``spinbattery {simulate,sweep,compare,figures}``.

Exit status: 0 on success, 1 on configuration or usage errors, 2 on I/O errors.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .dynamics import TimeGrid
from .figures import XYZ_GAMMA, write_figures
from .model import PresetError
from .runner import (
    OBSERVABLES,
    ConfigError,
    EmitError,
    compare_charging,
    emit,
    load_config,
    parse_config,
    run_scenario,
)

log = logging.getLogger("spinbattery")

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _add_model_flags(p):
    p.add_argument("--config", help="JSON scenario file; flags below override its values")
    p.add_argument("--model", help="ising, xxz, xyz or custom")
    for flag, dest in (("--J", "J"), ("--gamma", "gamma"), ("--delta", "delta"), ("--D", "D"),
                       ("--omega", "omega"), ("--omega0", "omega0")):
        p.add_argument(flag, dest=dest, type=float)
    p.add_argument("--t-end", dest="t_end", type=float, help="window end in units of 1/omega")
    p.add_argument("--steps", type=int, help="number of grid points (default 2001)")
    p.add_argument("--observables", help=f"comma-separated subset of {','.join(OBSERVABLES)}")
    p.add_argument("--label")
    _add_output_flags(p)


def _add_output_flags(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default="-", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinbattery", description="Two-cell spin-chain quantum battery simulator")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("simulate", help="run one scenario")
    _add_model_flags(p)

    p = sub.add_parser("sweep", help="run a scenario over a list of D, delta or gamma values")
    _add_model_flags(p)
    p.add_argument("--sweep-param", choices=("D", "delta", "gamma"))
    p.add_argument("--sweep-values", help="comma-separated values")

    p = sub.add_parser("compare", help="collective vs parallel charging on the same grid")
    _add_model_flags(p)

    p = sub.add_parser("figures", help="write the built-in figure data sets")
    p.add_argument("--out", default="figures", help="output directory")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--steps", type=int, default=2001)
    p.add_argument("--gamma", type=float, default=XYZ_GAMMA,
                   help=f"anisotropy for the XYZ figures (default {XYZ_GAMMA})")
    return parser


def _scenario(args, require_sweep=False):
    data = load_config(args.config) if args.config else {}
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object at top level")
    data = dict(data)
    if args.model is not None:
        data["model"] = args.model
    params = dict(data.get("params") or {})
    for key in ("J", "gamma", "delta", "D", "omega", "omega0"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    data["params"] = params
    grid = dict(data.get("grid") or {})
    if args.t_end is not None:
        grid["t_end"] = args.t_end
    if args.steps is not None:
        grid["steps"] = args.steps
    data["grid"] = grid
    if args.observables is not None:
        data["observables"] = args.observables
    if args.label is not None:
        data["label"] = args.label
    if getattr(args, "sweep_param", None) or getattr(args, "sweep_values", None):
        sweep = dict(data.get("sweep") or {})
        if args.sweep_param:
            sweep["parameter"] = args.sweep_param
        if args.sweep_values:
            try:
                sweep["values"] = [float(v) for v in args.sweep_values.split(",") if v.strip()]
            except ValueError:
                raise ConfigError(f"sweep.values: cannot parse {args.sweep_values!r}") from None
        data["sweep"] = sweep
    if require_sweep and not data.get("sweep"):
        raise ConfigError("sweep: the sweep command needs --sweep-param/--sweep-values or a sweep block")
    return parse_config(data)


def _run(args) -> int:
    if args.command == "figures":
        if args.steps < 2:
            raise ConfigError("steps: must be >= 2")
        paths = write_figures(args.out, args.format, args.steps, args.gamma)
        for p in paths:
            log.info("wrote %s", p)
        return EXIT_OK
    cfg = _scenario(args, require_sweep=args.command == "sweep")
    if args.command == "compare":
        if cfg.sweep is not None:
            raise ConfigError("sweep: compare does not accept a sweep block")
        result = compare_charging(cfg.params, cfg.grid, cfg.preset).as_sweep(cfg.observables, cfg.label)
    else:
        result = run_scenario(cfg)
    emit(result, args.format, args.out)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return _run(args)
    except (ConfigError, PresetError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EmitError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        name = getattr(exc, "filename", None)
        print(f"I/O error: {name + ': ' if name else ''}{exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
