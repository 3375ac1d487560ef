"""Command-line entry point.

    spinrevival run CONFIG [--out CSV] [--svg SVG]
    spinrevival plot CSV --columns a,b,c --out SVG
    spinrevival basin [--grid r:75,chi:144] --out CSV
    spinrevival preset NAME [--out CSV] | --list | --show NAME

Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O.
"""

import argparse
import logging
import sys
from pathlib import Path

from . import config as config_mod
from .errors import ConfigError, DomainError, NumericalError
from .measures import basin_scan
from .output import read_csv, render_plot, write_basin_csv, write_csv
from .scenario import run_scenario

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_IO = 0, 2, 3, 4

log = logging.getLogger("spinrevival")


def _execute(cfg, out, svg, workers):
    series = run_scenario(cfg, workers=workers)
    out = out or cfg.out_path or f"{cfg.name or 'scenario'}.csv"
    write_csv(series, out)
    log.info("wrote %s (%d rows)", out, len(series))
    if svg is None and cfg.outputs:
        svg = str(Path(out).with_suffix(".svg"))
    if svg:
        render_plot(series, cfg.outputs or ["s_lin", "p_ee", "p_att_plus", "tangle"], svg,
                    title=cfg.name)
        log.info("wrote %s", svg)


def cmd_run(args):
    _execute(config_mod.load_config(args.config), args.out, args.svg, args.workers)


def cmd_preset(args):
    if args.list:
        print("\n".join(config_mod.preset_names()))
        return
    if args.name is None:
        raise ConfigError("preset", "a preset name or --list is required")
    if args.show:
        sys.stdout.write(config_mod.preset_text(args.name))
        return
    _execute(config_mod.load_preset(args.name), args.out, args.svg, args.workers)


def cmd_plot(args):
    columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    render_plot(read_csv(args.csv), columns, args.out)


def _parse_grid(text):
    sizes = {}
    for part in text.split(","):
        key, _, value = part.partition(":")
        key = key.strip()
        if key not in ("r", "chi") or not value.strip().isdigit():
            raise ConfigError("grid", f"expected r:<int>,chi:<int>, got {text!r}")
        sizes[key] = int(value)
    return sizes.get("r", 75), sizes.get("chi", 144)


def cmd_basin(args):
    r_points, chi_points = _parse_grid(args.grid)
    try:
        r, chi, tau = basin_scan(r_points, chi_points, theta=args.theta)
    except DomainError as exc:
        raise ConfigError("grid", str(exc)) from exc
    write_basin_csv(r, chi, tau, args.out)


def build_parser():
    parser = argparse.ArgumentParser(prog="spinrevival", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a scenario config file")
    p.add_argument("config")
    p.add_argument("--out", help="CSV path (default: out_path from the config)")
    p.add_argument("--svg", help="also render the config's outputs to this SVG")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("preset", help="run or inspect a bundled preset")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true", help="list bundled presets")
    p.add_argument("--show", action="store_true", help="print the preset config")
    p.add_argument("--out")
    p.add_argument("--svg")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_preset)

    p = sub.add_parser("plot", help="plot columns of a CSV file")
    p.add_argument("csv")
    p.add_argument("--columns", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("basin", help="tangle over the basin-of-attraction disc")
    p.add_argument("--grid", default="r:75,chi:144")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_basin)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        args.func(args)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
