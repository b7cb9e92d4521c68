"""Command-line front end.

Subcommands::

    fdas run        one strategy at one operating point, CSV on stdout
    fdas sweep-w    MM-AS, LI-AS and MO-WS against the weight w
    fdas sweep-snr  strategies against the average SNR

Exit status is 0 on success, 1 for an invalid configuration and 2 for a
usage error.
"""

from __future__ import annotations

import argparse
import math
import sys

from .errors import ConfigError, InvalidArgumentError
from .montecarlo import (
    DEFAULT_SAMPLES,
    SimConfig,
    run_trials,
    sweep_snr,
    sweep_weight,
    tune_weight,
)
from .selection import SCALES, Strategy, StrategyKind, empirical_weight
from .tables import config_provenance, run_table, sweep_table

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_USAGE = 2

STRATEGY_FLAGS = {
    "mm": StrategyKind.MM_AS,
    "li": StrategyKind.LI_AS,
    "mo-ws": StrategyKind.MO_WS,
    "mo-ewc": StrategyKind.MO_EWC,
}


def parse_grid(text):
    """Parse ``start:stop:step`` into an inclusive ascending list."""
    try:
        start, stop, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}")
    if not all(math.isfinite(v) for v in (start, stop, step)) or step <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"invalid grid {text!r}")
    n = int(math.floor((stop - start) / step + 1e-9))
    return [round(start + k * step, 10) for k in range(n + 1)]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p):
    p.add_argument("--config", metavar="PATH", help="key=value file; flags override it")
    p.add_argument("--mt", type=int, default=4, help="transmit antennas")
    p.add_argument("--mr", type=int, default=4, help="receive antennas")
    p.add_argument("--snr-db", type=float, default=15.0, help="average SNR gamma0 in dB")
    p.add_argument("--eta-db", type=float, default=-10.0,
                   help="self-interference cancellation factor in dB (<= 0)")
    p.add_argument("--gamma-t-db", type=float, default=10.0,
                   help="SINR threshold in dB, both links")
    p.add_argument("--gamma-t-ul-db", type=float, default=None,
                   help="UL SINR threshold in dB, overrides --gamma-t-db for the UL")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, default=1.0, help="MO-EWC sharpness")
    p.add_argument("--scale", choices=SCALES, default="amplitude",
                   help="gain scale for the multi-objective score")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", metavar="PATH")


def build_parser():
    parser = _Parser(prog="fdas", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="simulate one strategy at one operating point")
    _common(run)
    run.add_argument("--strategy", choices=sorted(STRATEGY_FLAGS), default="mm")
    run.add_argument("--w", type=float, default=None, help="multi-objective weight")
    run.add_argument("--auto-w", action="store_true",
                     help="empirical weight for mo-ws, grid-searched weight for mo-ewc")
    run.add_argument("--w-grid", type=parse_grid, default=None,
                     help="search grid used by --auto-w with mo-ewc")

    sw = sub.add_parser("sweep-w", help="sum throughput versus the weight w")
    _common(sw)
    sw.add_argument("--w-grid", type=parse_grid, default=parse_grid("0:1:0.05"))
    sw.add_argument("--svg", metavar="PATH")

    ss = sub.add_parser("sweep-snr", help="sum throughput versus the average SNR")
    _common(ss)
    ss.add_argument("--snr-grid", type=parse_grid, default=parse_grid("0:30:2.5"))
    ss.add_argument("--mo-method", choices=("ws", "ewc"), default="ws")
    ss.add_argument("--w", type=float, default=None, help="fixed multi-objective weight")
    ss.add_argument("--auto-w", action="store_true",
                    help="empirical weight for ws, grid-searched weight for ewc")
    ss.add_argument("--w-grid", type=parse_grid, default=None,
                    help="search grid used by --auto-w with ewc")
    ss.add_argument("--svg", metavar="PATH")
    return parser


def _config_tokens(path, parser):
    """Translate a key=value file into flag tokens placed before the CLI flags."""
    tokens = []
    flags = {opt for a in parser._actions for opt in a.option_strings}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            flag = "--" + key.strip().replace("_", "-")
            if not sep or flag not in flags or flag == "--config":
                raise ConfigError({f"{path}:{lineno}": f"unknown or malformed entry {line!r}"})
            value = value.strip()
            if flag in ("--auto-w",):
                if value.lower() in ("1", "true", "yes", "on"):
                    tokens.append(flag)
            else:
                tokens += [flag, value]
    return tokens


def _base_config(args, strategy):
    ul = args.gamma_t_db if args.gamma_t_ul_db is None else args.gamma_t_ul_db
    return SimConfig(m_t=args.mt, m_r=args.mr, snr_db=args.snr_db, eta_db=args.eta_db,
                     gamma_t_dl_db=args.gamma_t_db, gamma_t_ul_db=ul,
                     n_samples=args.samples, seed=args.seed, strategy=strategy)


def _emit(table, args, out):
    text = table.to_csv()
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def cmd_run(args, out):
    kind = STRATEGY_FLAGS[args.strategy]
    strategy = Strategy(kind, p=args.p, scale=args.scale)
    config = _base_config(args, strategy)
    extra = {}
    if strategy.is_multi_objective:
        if args.auto_w and kind is StrategyKind.MO_WS:
            config = config.replace(strategy=strategy.with_weight(
                empirical_weight(config.eta, config.snr_db)))
            extra["weight_rule"] = "empirical"
        elif args.auto_w:
            w, _ = tune_weight(config.replace(strategy=strategy.with_weight(0.0)),
                               args.w_grid, workers=args.workers)
            config = config.replace(strategy=strategy.with_weight(w))
            extra["weight_rule"] = "grid-search"
        elif args.w is None:
            raise ConfigError({"w": f"{strategy.label} needs --w or --auto-w"})
        else:
            config = config.replace(strategy=strategy.with_weight(args.w))
    estimate = run_trials(config, workers=args.workers)
    out.write(_emit(run_table(config, estimate, **extra), args, out))


def cmd_sweep_w(args, out):
    base = _base_config(args, Strategy.mo_ws(None, args.scale))
    rows = sweep_weight(base, args.w_grid, workers=args.workers)
    prov = config_provenance(base, w_grid=_grid_text(args.w_grid))
    table = sweep_table("w", rows, ["MM-AS", "LI-AS", "MO-WS"], prov)
    _finish(table, args, out)


def cmd_sweep_snr(args, out):
    if args.mo_method == "ws":
        mo = Strategy.mo_ws(args.w, args.scale)
    else:
        mo = Strategy.mo_ewc(args.w, args.p, args.scale)
    base = _base_config(args, mo)
    rows = sweep_snr(base, args.snr_grid, [Strategy.mm(args.scale), Strategy.li(args.scale), mo],
                     auto_weight=args.auto_w, tune_grid=args.w_grid, workers=args.workers)
    prov = config_provenance(base, snr_grid=_grid_text(args.snr_grid),
                             mo_method=args.mo_method, auto_w=int(args.auto_w))
    table = sweep_table("snr_db", rows, ["MM-AS", "LI-AS", mo.label], prov)
    _finish(table, args, out)


def _grid_text(grid):
    return " ".join(f"{v:g}" for v in grid)


def _finish(table, args, out):
    text = _emit(table, args, out)
    if not args.csv:
        out.write(text)
    if args.svg:
        from .plotting import write_svg

        write_svg(table, args.svg)


COMMANDS = {"run": cmd_run, "sweep-w": cmd_sweep_w, "sweep-snr": cmd_sweep_snr}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        pre = _Parser(add_help=False)
        pre.add_argument("--config")
        known, _ = pre.parse_known_args(argv)
        if known.config and argv and argv[0] in COMMANDS:
            sub = parser._subparsers._group_actions[0].choices[argv[0]]
            argv = [argv[0]] + _config_tokens(known.config, sub) + argv[1:]
        args = parser.parse_args(argv)
        if args.workers < 1:
            raise ConfigError({"workers": "must be >= 1"})
        COMMANDS[args.command](args, out)
    except (ConfigError, InvalidArgumentError) as exc:
        print(f"fdas: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"fdas: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
