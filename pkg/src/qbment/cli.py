"""
Command line interface.

    qbment sweep   [--config FILE] [overrides] [--out PREFIX] [--outputs csv,svg]
    qbment tde     [--config FILE] [overrides]
    qbment figures [--which 1|2|3|all] [--outdir DIR]

Exit codes: 0 success, 1 configuration error, 2 numerical failure.
"""

import argparse
import os
import sys

from . import __version__
from .config import build_config, load_config, parse_value
from .errors import ConfigError, ParameterError, QBMError
from .harness import SVG_QUANTITIES, emit_csv, emit_svg, figure_bundles, run_sweep

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2

# flag -> config key
_OVERRIDES = {
    "omega": "omega",
    "gamma": "gamma",
    "lambda_cutoff": "lambda_cutoff",
    "temp": "temperature",
    "r": "r",
    "t_start": "t_start",
    "t_end": "t_end",
    "steps": "steps",
    "quad_tol": "quad_tol",
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(f"{self.prog}: {message}")


def _add_run_options(p):
    p.add_argument("--config", metavar="FILE", help="key = value configuration file")
    p.add_argument("--omega", help="oscillator frequency [1/ns]")
    p.add_argument("--gamma", help="damping rate [1/ns]")
    p.add_argument("--lambda-cutoff", dest="lambda_cutoff", help="bath cutoff [1/ns]")
    p.add_argument("--temp", "--temperature", dest="temp", help="bath temperature [1/ns]")
    p.add_argument("--r", help="initial two-mode squeezing")
    p.add_argument("--t-start", dest="t_start", help="first time [ns]")
    p.add_argument("--t-end", dest="t_end", help="last time [ns]")
    p.add_argument("--steps", help="number of grid points")
    p.add_argument("--quad-tol", dest="quad_tol", help="quadrature relative tolerance")


def make_parser():
    parser = _Parser(prog="qbment", description=__doc__.split("\n\n")[0].strip())
    parser.add_argument("--version", action="version", version=f"qbment {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("sweep", help="run a sweep and write CSV/SVG output")
    _add_run_options(p)
    p.add_argument("--out", default="sweep", metavar="PREFIX",
                   help="output path prefix (default: sweep)")
    p.add_argument("--outputs", default="csv", help="comma list of csv, svg (default: csv)")
    p.add_argument("--quantities", default=",".join(SVG_QUANTITIES),
                   help="comma list of SVG plots: zeta, lambda, negativity")

    p = sub.add_parser("tde", help="print the disentanglement time only")
    _add_run_options(p)

    p = sub.add_parser("figures", help="run the built-in figure parameter sets")
    p.add_argument("--which", default="all", choices=["1", "2", "3", "all"])
    p.add_argument("--outdir", default=".", help="output directory (default: .)")
    return parser


def _split(text):
    return [item.strip() for item in text.split(",") if item.strip()]


def config_from_args(args):
    values = load_config(args.config) if args.config else {}
    for flag, key in _OVERRIDES.items():
        raw = getattr(args, flag, None)
        if raw is not None:
            values[key] = parse_value(key, raw)
    outputs = _split(getattr(args, "outputs", "csv") or "")
    return build_config(values, outputs=outputs)


def _cmd_sweep(args, out):
    config = config_from_args(args)
    quantities = _split(args.quantities)
    if "svg" in config.outputs:
        if not quantities:
            raise ConfigError("no SVG quantity selected", key="quantities")
        bad = [q for q in quantities if q not in SVG_QUANTITIES]
        if bad:
            raise ConfigError(f"unknown SVG quantity {bad[0]!r}", key="quantities")
    result = run_sweep(config)
    written = []
    if "csv" in config.outputs:
        written.append(emit_csv(result, f"{args.out}.csv"))
    if "svg" in config.outputs:
        for q in quantities:
            written.append(emit_svg(result, q, f"{args.out}_{q}.svg"))
    print(_tde_line(result.t_de), file=out)
    for path in written:
        print(f"wrote {path}", file=out)


def _tde_line(t_de):
    return "t_DE: none" if t_de is None else f"t_DE: {t_de:.6g}"


def _cmd_tde(args, out):
    result = run_sweep(config_from_args(args))
    print(_tde_line(result.t_de), file=out)


def _cmd_figures(args, out):
    bundles = figure_bundles()
    names = sorted(bundles) if args.which == "all" else [f"fig{args.which}"]
    os.makedirs(args.outdir, exist_ok=True)
    for name in names:
        for label, config, quantity in bundles[name]:
            result = run_sweep(config)
            csv_path = emit_csv(result, os.path.join(args.outdir, f"{label}.csv"))
            svg_path = emit_svg(result, quantity, os.path.join(args.outdir, f"{label}_{quantity}.svg"))
            print(f"{label}: {_tde_line(result.t_de)}", file=out)
            print(f"wrote {csv_path}", file=out)
            print(f"wrote {svg_path}", file=out)


_COMMANDS = {"sweep": _cmd_sweep, "tde": _cmd_tde, "figures": _cmd_figures}


def main(argv=None, out=None, err=None):
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = make_parser().parse_args(argv)
        if args.command is None:
            raise ConfigError("a subcommand is required: sweep, tde or figures")
        _COMMANDS[args.command](args, out)
    except (ConfigError, ParameterError) as exc:
        print(f"qbment: configuration error: {exc}", file=err)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"qbment: I/O error: {exc}", file=err)
        return EXIT_CONFIG
    except QBMError as exc:
        t = getattr(exc, "t", None)
        where = "" if t is None or str(t) in str(exc) else f" at t = {t} ns"
        print(f"qbment: numerical failure{where}: {exc}", file=err)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
