"""Command-line interface: ``srwidth table|spectrum|width|exact|verify``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
import warnings
from dataclasses import dataclass
from typing import Sequence

from .exact_spectrum import (
    HARMONIC_CAP,
    BetaGamma,
    TruncationError,
    TruncationWarning,
    default_nu_max,
    harmonic_spectrum,
    total_fraction_closed_form,
)
from .numerics import NumericsError, solver_tolerance
from .ultra import TABLE_ORDER, Polarization, spectral_densities
from .verification import LEVELS, run_checks
from .widths import SUMMARY_FIELDS, discrete_effective_width, effective_width, half_width, summary_table

log = logging.getLogger("srwidth")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass(frozen=True)
class OutputFormat:
    kind: str = "csv"
    precision: int = 6

    def __post_init__(self):
        if self.kind not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.kind!r}")
        if not 4 <= self.precision <= 15:
            raise ValueError(f"precision must be in [4, 15], got {self.precision}")

    def text(self, value) -> str:
        if value is None:
            return ""
        if isinstance(value, (bool, str)):
            return str(value).lower() if isinstance(value, bool) else value
        if isinstance(value, int):
            return str(value)
        return f"%#.{self.precision}g" % value

    def number(self, value):
        """Value rounded to the requested significant digits, for JSON."""
        if isinstance(value, (bool, int, str)) or value is None:
            return value
        if not math.isfinite(value):
            return None
        return float(f"%.{self.precision}g" % value)


def render_csv(header: Sequence[str], rows: Sequence[Sequence], fmt: OutputFormat) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt.text(v) for v in row])
    return buf.getvalue()


def render_json(obj, fmt: OutputFormat) -> str:
    def walk(o):
        if isinstance(o, dict):
            return {k: walk(v) for k, v in o.items()}
        if isinstance(o, (list, tuple)):
            return [walk(v) for v in o]
        return fmt.number(o)

    return json.dumps(walk(obj), indent=2) + "\n"


# --------------------------------------------------------------------------- #
# Commands
# --------------------------------------------------------------------------- #

def cmd_table(args, fmt: OutputFormat) -> tuple[str, int]:
    rows = summary_table()
    if fmt.kind == "json":
        return render_json({r.s.key: r.values() for r in rows}, fmt), EXIT_OK
    header = ["quantity"] + [r.s.key for r in rows]
    body = [[name] + [getattr(r, name) for r in rows] for name in SUMMARY_FIELDS]
    return render_csv(header, body, fmt), EXIT_OK


def _components(arg) -> tuple[Polarization, ...]:
    return TABLE_ORDER if arg is None else (arg,)


def cmd_spectrum(args, fmt: OutputFormat) -> tuple[str, int]:
    comps = _components(args.component)
    n = int(math.floor((args.y_max - args.y_min) / args.step * (1 + 1e-12))) + 1
    ys = [args.y_min + i * args.step for i in range(n)]
    rows = []
    for y in ys:
        f = spectral_densities(y)
        rows.append([y] + [f[s] for s in comps])
    if fmt.kind == "json":
        data = {"y": ys}
        data.update({s.key: [r[i + 1] for r in rows] for i, s in enumerate(comps)})
        return render_json(data, fmt), EXIT_OK
    return render_csv(["y"] + [s.key for s in comps], rows, fmt), EXIT_OK


_EFFECTIVE_FIELDS = ("y1", "y2", "delta", "a1", "a2", "b", "residual_power", "residual_density")
_HALF_FIELDS = ("y3", "y4", "f_max", "a3", "a4", "d")


def cmd_width(args, fmt: OutputFormat) -> tuple[str, int]:
    comps = _components(args.component)
    if args.mode == "effective":
        fields, solve = _EFFECTIVE_FIELDS, effective_width
    else:
        fields, solve = _HALF_FIELDS, half_width
    sols = [solve(s) for s in comps]
    if fmt.kind == "json":
        data = {sol.s.key: {f: getattr(sol, f) for f in fields} for sol in sols}
        return render_json(data, fmt), EXIT_OK
    rows = [[sol.s.key] + [getattr(sol, f) for f in fields] for sol in sols]
    return render_csv(("component",) + fields, rows, fmt), EXIT_OK


def cmd_exact(args, fmt: OutputFormat) -> tuple[str, int]:
    bg = BetaGamma.from_beta(args.beta)
    nu_max = args.nu_max or default_nu_max(bg)
    comps = _components(args.component)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        spec = harmonic_spectrum(bg, nu_max)
        if args.what == "harmonics":
            rows = [[nu] + [float(spec[s][nu - 1]) for s in comps] for nu in range(1, nu_max + 1)]
            header = ["nu"] + [s.key for s in comps]
            data = {"beta": bg.beta, "gamma": bg.gamma, "nu": list(range(1, nu_max + 1))}
            data.update({s.key: [float(v) for v in spec[s]] for s in comps})
        else:
            rows, data = [], {"beta": bg.beta, "gamma": bg.gamma, "nu_max": nu_max}
            for s in comps:
                win = discrete_effective_width(s, bg, nu_max)
                closed = total_fraction_closed_form(s, bg)
                entry = {
                    "total": math.fsum(spec[s]),
                    "closed_form": closed,
                    "nu1": win.nu1,
                    "nu2": win.nu2,
                    "lambda": win.lam,
                    "coverage": win.coverage,
                }
                data[s.key] = entry
                rows.append([s.key] + list(entry.values()))
            header = ["component", "total", "closed_form", "nu1", "nu2", "lambda", "coverage"]
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if fmt.kind == "json":
        return render_json(data, fmt), EXIT_OK
    return render_csv(header, rows, fmt), EXIT_OK


def cmd_verify(args, fmt: OutputFormat) -> tuple[str, int]:
    tolerance = {"solver_abs_tol": args.tol if args.tol is not None else "default"}
    report = run_checks(args.level, command=f"verify --level {args.level}", tolerance=tolerance)
    for check in report.failures:
        print(f"failed: {check.line()}", file=sys.stderr)
    code = EXIT_OK if report.passed else EXIT_FAILURE
    if fmt.kind == "json":
        return render_json(report.to_dict(), fmt), code
    rows = [[c.name, c.measured, c.bound, c.passed, c.detail] for c in report.checks]
    print(f"{'PASS' if report.passed else 'FAIL'}: {len(report.checks) - len(report.failures)}"
          f"/{len(report.checks)} checks, {report.wall_time:.2f} s", file=sys.stderr)
    return render_csv(["check", "measured", "bound", "passed", "detail"], rows, fmt), code


# --------------------------------------------------------------------------- #
# Parser
# --------------------------------------------------------------------------- #

def _precision(text: str) -> int:
    value = int(text)
    if not 4 <= value <= 15:
        raise argparse.ArgumentTypeError(f"must be in [4, 15], got {value}")
    return value


def _positive(text: str) -> float:
    value = float(text)
    if not value > 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text}")
    return value


def _nonnegative(text: str) -> float:
    value = float(text)
    if not value >= 0 or not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be a nonnegative number, got {text}")
    return value


def _component(text: str) -> Polarization:
    try:
        return Polarization.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _beta(text: str) -> float:
    value = float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"must satisfy 0 < beta < 1, got {text}")
    return value


def _nu_max(text: str) -> int:
    value = int(text)
    if not 1 <= value <= HARMONIC_CAP:
        raise argparse.ArgumentTypeError(f"must be in [1, {HARMONIC_CAP}], got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--precision", type=_precision, default=6,
                        help="significant digits, 4..15 (default 6)")
    common.add_argument("--tol", type=_positive, default=None,
                        help="absolute x-tolerance of the root finder and maximizer")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="srwidth",
        description="Spectral widths of synchrotron radiation polarization components.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", parents=[common], help="all characteristics of every component")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("spectrum", parents=[common], help="spectral densities on a y grid")
    p.add_argument("--y-min", type=_nonnegative, default=0.0)
    p.add_argument("--y-max", type=_positive, default=3.0)
    p.add_argument("--step", type=_positive, default=0.005)
    p.add_argument("--component", type=_component, default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("width", parents=[common], help="effective width or half-width")
    p.add_argument("--mode", choices=("effective", "half"), default="effective")
    p.add_argument("--component", type=_component, default=None)
    p.set_defaults(func=cmd_width)

    p = sub.add_parser("exact", parents=[common], help="finite-velocity harmonic spectrum")
    p.add_argument("--beta", type=_beta, required=True)
    p.add_argument("--nu-max", type=_nu_max, default=None)
    p.add_argument("--component", type=_component, default=None)
    p.add_argument("--what", choices=("harmonics", "summary"), default="harmonics",
                   help="per-harmonic powers, or totals and discrete windows")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("verify", parents=[common], help="run the self-checks")
    p.add_argument("--level", choices=LEVELS, default="fast")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "spectrum" and not args.y_min < args.y_max:
        parser.error(f"--y-min ({args.y_min}) must be below --y-max ({args.y_max})")
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    fmt = OutputFormat(args.format, args.precision)
    try:
        with solver_tolerance(args.tol):
            text, code = args.func(args, fmt)
    except (NumericsError, TruncationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
