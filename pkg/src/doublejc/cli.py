"""Command-line front end.

Exit codes: 0 success, 1 usage/invalid parameters, 2 I/O failure,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from pathlib import Path

from . import analysis, figures, oracle, verification
from .errors import DoubleJCError
from .model import BellFamily, CouplingParams

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3
OUTPUT_DIR_ENV = "DOUBLEJC_OUTPUT_DIR"

_PI_LITERAL = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_angle(text: str) -> float:
    """Radians, either a plain number or a literal such as ``pi/4`` or ``-3pi/4``."""
    m = _PI_LITERAL.match(text)
    if m:
        coef, den = m.groups()
        if coef in ("", "+", None):
            c = 1.0
        elif coef == "-":
            c = -1.0
        else:
            c = float(coef)
        value = c * math.pi / (float(den) if den else 1.0)
    else:
        try:
            value = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"angle must be finite: {text!r}")
    return value


def _finite(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return value


def _family(text: str) -> BellFamily:
    try:
        return BellFamily(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"family must be one of {', '.join(f.value for f in BellFamily)}") from None


def read_config(path) -> dict[str, str]:
    """Flat ``key=value`` file; blank lines and ``#`` comments are ignored."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


def _add_coupling(p, gb_default=1.0):
    p.add_argument("--ga", type=_finite, default=1.0, help="coupling g_A (rad/time)")
    p.add_argument("--gb", type=_finite, default=gb_default,
                   help="coupling g_B (rad/time); also the reference g of the gt axis")
    p.add_argument("--omega", type=_finite, default=1.0, help="atomic frequency")
    p.add_argument("--omega0", type=_finite, default=1.0, help="cavity frequency")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="doublejc", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="key=value file mirroring the flags; flags win")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    scan = sub.add_parser("scan", help="concurrence time series as CSV",
                          description="Atomic concurrence on a uniform time grid. "
                          "The gt column uses g = g_B.")
    scan.add_argument("--family", type=_family, default=BellFamily.AB)
    scan.add_argument("--theta", type=parse_angle, default=math.pi / 4,
                      help="mixing angle in radians (accepts pi/4 style literals)")
    _add_coupling(scan)
    scan.add_argument("--tmax", type=parse_angle, default=2 * math.pi,
                      help="end of the grid (accepts pi literals)")
    scan.add_argument("--points", type=int, default=1001)
    scan.add_argument("--mode", choices=("closed", "oracle"), default="closed")
    scan.add_argument("--axis", choices=("absolute", "dimensionless"), default="absolute",
                      help="whether --tmax is t or g_B*t")
    scan.add_argument("--cutoff", type=int, default=oracle.DEFAULT_CUTOFF)
    scan.add_argument("--dt", type=_finite, default=None)
    scan.add_argument("--out", help="CSV path ('-' for stdout)")

    per = sub.add_parser("period", help="ratio class, period and zeros as JSON")
    per.add_argument("--family", type=_family, default=BellFamily.AB)
    per.add_argument("--theta", type=parse_angle, default=math.pi / 4)
    _add_coupling(per)
    per.add_argument("--tol", type=_finite, default=analysis.DEFAULT_TOL)
    per.add_argument("--max-den", type=int, default=analysis.DEFAULT_MAX_DEN)

    ver = sub.add_parser("verify", help="run a self-check suite")
    ver.add_argument("--suite", choices=verification.SUITES + ("all",), default="all")
    _add_coupling(ver)
    ver.add_argument("--ratio", type=_finite, default=None,
                     help="set g_A = ratio * g_B (shift suite needs an integer)")
    ver.add_argument("--cutoff", type=int, default=None)
    ver.add_argument("--dt", type=_finite, default=None)

    fig = sub.add_parser("figure", help="write the CSV curves of one figure")
    fig.add_argument("name", choices=sorted(figures.FIGURES))
    fig.add_argument("--outdir", default=None,
                     help=f"output directory (default ${OUTPUT_DIR_ENV} or .)")
    return parser


def _parse(parser, argv):
    args = parser.parse_args(argv)
    if args.config:
        try:
            conf = read_config(args.config)
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in subparser._actions}
        unknown = set(conf) - known
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
        converted = {}
        for action in subparser._actions:
            if action.dest in conf:
                raw = conf[action.dest]
                converted[action.dest] = action.type(raw) if action.type else raw
                if action.choices is not None and converted[action.dest] not in action.choices:
                    raise UsageError(f"config {action.dest}={raw!r} not in {list(action.choices)}")
        subparser.set_defaults(**converted)
        args = parser.parse_args(argv)
    return args


def _params(args) -> CouplingParams:
    gb = args.gb
    ga = args.ratio * gb if getattr(args, "ratio", None) is not None else args.ga
    return CouplingParams(g_a=ga, g_b=gb, omega_atom=args.omega, omega_cavity=args.omega0)


def _outdir(given) -> Path:
    return Path(given or os.environ.get(OUTPUT_DIR_ENV) or ".")


def cmd_scan(args) -> int:
    params = _params(args)
    t_max = args.tmax / params.g_b if args.axis == "dimensionless" else args.tmax
    res = analysis.scan(args.family, args.theta, params, t_max, args.points,
                        mode=args.mode, cutoff=args.cutoff, dt=args.dt)
    meta = {
        "family": res.family.value,
        "theta": figures.format_value(res.theta),
        "g_a": figures.format_value(params.g_a),
        "g_b": figures.format_value(params.g_b),
        "omega_atom": figures.format_value(params.omega_atom),
        "omega_cavity": figures.format_value(params.omega_cavity),
        "mode": res.mode,
    }
    gt = params.g_b * res.times
    out = args.out
    if out is None and os.environ.get(OUTPUT_DIR_ENV):
        out = str(_outdir(None) / f"scan_{res.family.value}.csv")
    if out in (None, "-"):
        figures._write_rows(sys.stdout, res.times, gt, res.values, meta)
    else:
        figures.write_csv(out, res.times, gt, res.values, meta)
    return EXIT_OK


def cmd_period(args) -> int:
    params = _params(args)
    report = analysis.period(params, args.family, args.theta, args.tol, args.max_den)
    if report.ratio.rational and not report.identically_zero:
        zeros = analysis.count_zeros(args.family, params, args.tol, args.max_den)
        report.zeros, report.zero_count = zeros.zeros, zeros.zero_count
        report.law_verdict = zeros.law_verdict
    payload = {"family": args.family.value, **report.as_dict()}
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    params = _params(args)
    suites = verification.SUITES if args.suite == "all" else (args.suite,)
    checks = []
    for suite in suites:
        if suite == "oracle":
            checks += verification.oracle_suite(params, args.dt, args.cutoff or oracle.DEFAULT_CUTOFF)
        elif suite == "shift":
            checks += verification.shift_suite(params)
        else:
            checks += verification.conservation_suite(params, args.cutoff or 3, args.dt)
    for check in checks:
        print(check.line())
    failed = [c.name for c in checks if not c.passed]
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_figure(args) -> int:
    for path in figures.write_figure(args.name, _outdir(args.outdir)):
        print(path)
    return EXIT_OK


COMMANDS = {"scan": cmd_scan, "period": cmd_period, "verify": cmd_verify, "figure": cmd_figure}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _parse(parser, argv)
        return COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (UsageError, DoubleJCError, argparse.ArgumentTypeError) as exc:
        print(f"doublejc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"doublejc: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
