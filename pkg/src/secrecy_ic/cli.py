"""Command-line entry point.

Exit status: 0 on success, 1 on a domain error (or a failed ``verify``
check), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .analysis import secrecy_penalty, select_scheme
from .channel import RateUnits, load_config, validate_config
from .errors import ChannelError
from .figures import reproduce_fig
from .low_snr import (
    SLOPE_CSV_HEADER, Regime, eb_n0_min, rate_derivatives, slope_region_boundary, to_db,
    wideband_slope,
)
from .oracle import VERIFY_CSV_HEADER, random_valid_configs, verification_rows
from .rates import REGION_CSV_HEADER, Scheme, achievable_region
from .report import csv_text, kv_text

SCHEMES = {"tdma": Scheme.TDMA, "mux": Scheme.MULTIPLEXED, "an": Scheme.ARTIFICIAL_NOISE}
REGIMES = {"secrecy": Regime.SECRECY, "nosecrecy": Regime.NO_SECRECY}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secrecy-ic",
        description="Secrecy rate regions and low-SNR analysis of the two-user weak "
                    "Gaussian interference channel.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help, config=True):
        p = sub.add_parser(name, help=help)
        if config:
            p.add_argument("--config", required=True, metavar="PATH", help="key=value channel file")
        p.add_argument("--output", metavar="PATH", help="output file (default: stdout)")
        return p

    add("validate", "check a channel config and print derived quantities")

    p = add("region", "achievable secrecy-rate region frontier as CSV")
    p.add_argument("--scheme", choices=SCHEMES, required=True)
    p.add_argument("--grid", type=int, default=101, metavar="N")
    p.add_argument("--units", choices=[u.value for u in RateUnits], default="nats")
    p.add_argument("--lambda", dest="lam", type=float, metavar="X",
                   help="fixed jamming fraction for --scheme an (default: swept)")

    p = add("lowsnr", "zero-SNR derivatives, minimum energy per bit and slopes")
    p.add_argument("--scheme", choices=["tdma", "mux"], required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--theta", type=float, default=1.0)

    p = add("slopes", "sampled slope-region boundaries as CSV")
    p.add_argument("--scheme", choices=["tdma", "mux"], help="default: both")
    p.add_argument("--regime", choices=REGIMES, help="default: both")
    p.add_argument("--grid", type=int, default=101, metavar="N")

    for name, text in (("select", "TDMA vs multiplexed verdict"),
                       ("penalty", "energy and slope penalty of secrecy")):
        p = add(name, text + " (JSON block, or CSV when --output ends in .csv)")
        if name == "penalty":
            p.add_argument("--grid", type=int, default=1001, metavar="N")

    p = add("verify", "numerical oracle checks of the closed forms", config=False)
    p.add_argument("--config", metavar="PATH", help="check this config instead of random ones")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100, metavar="N", help="random configs to check")
    p.add_argument("--grid", type=int, default=101, metavar="N")

    p = sub.add_parser("reproduce-fig", help="write the datasets behind figure N")
    p.add_argument("--fig", type=int, choices=range(1, 6), required=True, metavar="N")
    p.add_argument("--output", required=True, metavar="DIR")
    p.add_argument("--grid", type=int, default=101, metavar="N")
    p.add_argument("--units", choices=[u.value for u in RateUnits], default="nats")
    return parser


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _record(obj_dict, output, db_keys=()):
    if output and str(output).endswith(".csv"):
        return csv_text(tuple(obj_dict), [tuple(obj_dict.values())], db_columns=db_keys)
    return kv_text(obj_dict, db_keys)


def _cmd_validate(args):
    v = validate_config(load_config(args.config))
    items = {name: getattr(v, name) for name in ("g11", "g12", "g21", "g22", "sigma2", "p1", "p2")}
    items.update(snr1=v.snr1, snr2=v.snr2, m1=v.margin.m1, m2=v.margin.m2,
                 positive1=v.margin.positive1, positive2=v.margin.positive2)
    return _record(items, args.output), 0


def _cmd_region(args):
    cfg = load_config(args.config)
    region = achievable_region(cfg, SCHEMES[args.scheme], args.grid, lam=args.lam)
    return csv_text(REGION_CSV_HEADER, region.csv_rows(RateUnits(args.units))), 0


def _cmd_lowsnr(args):
    cfg = load_config(args.config)
    scheme = SCHEMES[args.scheme]
    param = args.alpha if scheme is Scheme.TDMA else args.theta
    rows = []
    for regime in Regime:
        der = rate_derivatives(cfg, scheme, param, regime)
        ebs = eb_n0_min(cfg, regime)
        for user, (d1, d2, eb) in enumerate(((der.d1_r1, der.d2_r1, ebs[0]),
                                             (der.d1_r2, der.d2_r2, ebs[1])), start=1):
            rows.append((regime.value, scheme.value, param, user, d1, d2, eb,
                         float(to_db(eb)), wideband_slope(d1, d2)))
    header = ("regime", "scheme", "param", "user", "d1", "d2",
              "eb_n0_min", "eb_n0_min_db", "slope")
    return csv_text(header, rows, db_columns=("eb_n0_min_db",)), 0


def _cmd_slopes(args):
    cfg = load_config(args.config)
    regimes = [REGIMES[args.regime]] if args.regime else list(Regime)
    schemes = [SCHEMES[args.scheme]] if args.scheme else [Scheme.TDMA, Scheme.MULTIPLEXED]
    rows = []
    for regime in regimes:
        for scheme in schemes:
            rows.extend(slope_region_boundary(cfg, scheme, regime, args.grid).csv_rows())
    return csv_text(SLOPE_CSV_HEADER, rows), 0


def _cmd_select(args):
    return _record(select_scheme(load_config(args.config)).as_dict(), args.output), 0


def _cmd_penalty(args):
    report = secrecy_penalty(load_config(args.config), args.grid)
    return _record(report.as_dict(), args.output, db_keys=("delta_eb_1", "delta_eb_2")), 0


def _cmd_verify(args):
    if args.config:
        pairs = [("config", load_config(args.config))]
    else:
        configs = random_valid_configs(args.seed, args.count)
        pairs = [(f"{args.seed}:{i}", c) for i, c in enumerate(configs)]
    rows = [row for label, cfg in pairs
            for row in verification_rows(cfg, label, grid_resolution=args.grid)]
    status = 0 if all(r.passed for r in rows) else 1
    return csv_text(VERIFY_CSV_HEADER, (r.csv_row() for r in rows)), status


def _cmd_reproduce(args):
    paths = reproduce_fig(args.fig, args.output, args.grid, RateUnits(args.units))
    return "".join(f"{p}\n" for p in paths), 0


COMMANDS = {
    "validate": _cmd_validate, "region": _cmd_region, "lowsnr": _cmd_lowsnr,
    "slopes": _cmd_slopes, "select": _cmd_select, "penalty": _cmd_penalty,
    "verify": _cmd_verify, "reproduce-fig": _cmd_reproduce,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text, status = COMMANDS[args.command](args)
    except ChannelError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.command == "reproduce-fig":
        sys.stdout.write(text)
    else:
        _emit(text, args.output)
    return status


def main() -> None:
    sys.exit(run())
