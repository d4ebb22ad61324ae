"""Command-line front end.

    $ stirling-series expand --family mortici-ab --order 3
    (-alpha + 1/12)*x^2 + (alpha - 1/12)*x^3 + O(x^4)
    $ stirling-series optimize --family mortici-ab
    $ stirling-series rate --formula mortici-eq2-opt
    $ stirling-series table --n 10,50,100,500 --format markdown
    $ stirling-series compare --format csv --output errors.csv
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from .algebra import format_rational, parse_rational
from .bigfloat import BigFloat
from .catalog import (
    CATALOG,
    TABLE_FORMULAS,
    FormulaId,
    arithmetic_error_bound,
    get_formula,
    log_error,
    relative_error,
)
from .errors import PrecisionError, StirlingSeriesError
from .families import FamilyId, build_difference_series, make_family
from .rates import estimate_rate_empirical, infer_rate, optimize_family

SUBCOMMANDS = ("expand", "optimize", "rate", "table", "compare")
FORMATS = ("markdown", "csv", "json")
DEFAULT_N = (10, 50, 100, 500)
DEFAULT_RATE_N = (100, 200, 400, 800, 1600)
DEFAULT_MAX_N = 100_000

_DEFAULT_FORMAT = {"expand": "markdown", "optimize": "json"}
_TABLE_HEADERS = {FormulaId.MORTICI_EQ1: "mu_n", FormulaId.RAMANUJAN: "rho_n", FormulaId.EQ5: "tau_n"}


@dataclass
class RunConfig:
    subcommand: str
    family: str = FamilyId.MORTICI_AB.value
    fixed: dict[str, Fraction] = field(default_factory=dict)
    formula: str = FormulaId.MORTICI_EQ2_OPT.value
    formulas: tuple[str, ...] = tuple(f.value for f in FormulaId)
    order: int = 10
    precision: int = 60
    n_values: tuple[int, ...] = DEFAULT_N
    output_format: str = "markdown"
    output_path: str | None = None
    sig_digits: int = 5

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")
        if self.subcommand in ("expand", "optimize") and self.order < 2:
            raise ValueError("--order must be at least 2")
        if self.precision < 10:
            raise ValueError("--precision must be at least 10")
        if self.subcommand in ("rate", "table", "compare") and not self.n_values:
            raise ValueError("--n must list at least one value")
        if any(n < 1 for n in self.n_values):
            raise ValueError("--n values must be positive")
        if self.sig_digits < 1:
            raise ValueError("--sig-digits must be positive")


# -- rendering helpers --------------------------------------------------------


def _markdown_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    lines = ["| " + " | ".join(headers) + " |", "|" + "|".join("---" for _ in headers) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines)


def _csv(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2)


def _certified_sci(value: BigFloat, precision: int, sig_digits: int, what: str) -> str:
    """Render ``value`` only if all requested digits lie above the rounding error."""
    floor = arithmetic_error_bound(precision)
    if abs(value) <= floor * BigFloat(10 ** sig_digits, precision):
        raise PrecisionError(
            f"{what}: {sig_digits} significant digits are not certified at "
            f"{precision} digits of precision; raise --precision"
        )
    return value.to_sci(sig_digits)


# -- subcommands --------------------------------------------------------------


def _family(config: RunConfig):
    return make_family(config.family, config.fixed)


def _cmd_expand(config: RunConfig) -> str:
    spec = _family(config)
    series = build_difference_series(spec, config.order)
    rows = [(k, str(c)) for k, c in series.items() if not c.is_zero()]
    if config.output_format == "markdown":
        return str(series)
    if config.output_format == "csv":
        return _csv(["exponent", "coefficient"], rows)
    return _json({
        "family": spec.id.value,
        "free": list(spec.symbols),
        "fixed": {k: format_rational(v) for k, v in spec.fixed.items()},
        "order": config.order,
        "series": str(series),
        "coefficients": [{"exponent": k, "coefficient": c} for k, c in rows],
    })


def _cmd_optimize(config: RunConfig) -> str:
    result = optimize_family(_family(config), config.order)
    payload = result.to_dict()
    payload["order"] = config.order
    if config.output_format == "json":
        return _json(payload)
    rows = [(f"assign {a['symbol']}", a["value"]) for a in payload["assignments"]]
    rows += [(key, payload[key]) for key in (
        "difference_exponent", "difference_limit", "sequence_exponent", "sequence_limit")]
    if config.output_format == "csv":
        return _csv(["quantity", "value"], rows)
    return _markdown_table(["quantity", "value"], rows) + f"\n\nfinal series: {payload['final_series']}"


def _cmd_rate(config: RunConfig) -> str:
    desc = get_formula(config.formula)
    p, sig = config.precision, config.sig_digits
    points = [(n, log_error(desc.id, n, p)) for n in config.n_values]
    empirical = estimate_rate_empirical(points, p)
    symbolic = None
    if desc.family is not None:
        report = infer_rate(build_difference_series(desc.family, config.order))
        limit = report.sequence_limit.constant_value()
        symbolic = {
            "sequence_exponent": report.sequence_exponent,
            "sequence_limit": format_rational(limit),
            "sequence_limit_decimal": BigFloat(limit, p).to_sci(sig),
        }
    emp = {"order": empirical.order.to_sci(sig), "limit": empirical.limit.to_sci(sig)}
    pts = [(n, v.to_sci(sig)) for n, v in points]
    if config.output_format == "json":
        return _json({
            "formula": desc.id.value,
            "expected_order": desc.error_order,
            "symbolic": symbolic,
            "empirical": emp,
            "points": [{"n": n, "log_error": v} for n, v in pts],
        })
    sym_row = (
        ("symbolic", symbolic["sequence_exponent"], symbolic["sequence_limit_decimal"])
        if symbolic else ("symbolic", "-", "-")
    )
    rows = [sym_row, ("empirical", emp["order"], emp["limit"])]
    if config.output_format == "csv":
        return _csv(["source", "order", "limit"], rows)
    out = [f"rate of ln(n!) - ln({desc.id.value}(n))", "",
           _markdown_table(["source", "order", "limit"], rows), "",
           _markdown_table(["n", "z_n"], pts)]
    return "\n".join(out)


def _error_records(config: RunConfig, formulas: Sequence[FormulaId]) -> list[tuple[int, str, str]]:
    records = []
    for n in config.n_values:
        for f in formulas:
            rec = relative_error(f, n, config.precision)
            text = _certified_sci(
                rec.relative_error, config.precision, config.sig_digits, f"{f.value} at n={n}"
            )
            records.append((n, f.value, text))
    return records


def _render_errors(config: RunConfig, formulas: Sequence[FormulaId], headers: Sequence[str]) -> str:
    records = _error_records(config, formulas)
    if config.output_format == "csv":
        return _csv(["n", "formula_id", "relative_error"], records)
    if config.output_format == "json":
        return _json({
            "precision": config.precision,
            "sig_digits": config.sig_digits,
            "records": [
                {"n": n, "formula_id": f, "relative_error": v} for n, f, v in records
            ],
        })
    by_n: dict[int, dict[str, str]] = {}
    for n, f, v in records:
        by_n.setdefault(n, {})[f] = v
    rows = [[n] + [by_n[n][f.value] for f in formulas] for n in config.n_values]
    return _markdown_table(["n", *headers], rows)


def _cmd_table(config: RunConfig) -> str:
    return _render_errors(config, TABLE_FORMULAS, [_TABLE_HEADERS[f] for f in TABLE_FORMULAS])


def _cmd_compare(config: RunConfig) -> str:
    formulas = [FormulaId(f) for f in config.formulas]
    return _render_errors(config, formulas, [f.value for f in formulas])


_COMMANDS = {
    "expand": _cmd_expand,
    "optimize": _cmd_optimize,
    "rate": _cmd_rate,
    "table": _cmd_table,
    "compare": _cmd_compare,
}


def render(config: RunConfig) -> str:
    """Produce the report text for ``config``."""
    config.validate()
    return _COMMANDS[config.subcommand](config)


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    """Run one command; returns the process exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        text = render(config)
    except PrecisionError as exc:
        print(f"error: {exc}", file=stderr)
        return 3
    except (StirlingSeriesError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if config.output_path:
        try:
            with open(config.output_path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {config.output_path}: {exc}", file=stderr)
            return 4
    else:
        print(text, file=stdout)
    return 0


# -- argument parsing ---------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _assignment(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep or not name.strip():
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name.strip(), parse_rational(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {value!r}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="output_format", choices=FORMATS, default=None)
    common.add_argument("--output", dest="output_path", default=None, help="write to file instead of stdout")

    family = argparse.ArgumentParser(add_help=False)
    family.add_argument("--family", choices=[f.value for f in FamilyId], default=FamilyId.MORTICI_AB.value)
    family.add_argument(
        "--fix", action="append", type=_assignment, default=[], metavar="NAME=VALUE",
        help="pin a parameter to an exact rational (repeatable)",
    )
    family.add_argument("--order", type=int, default=10, help="truncation order in x = 1/n")

    numeric = argparse.ArgumentParser(add_help=False)
    numeric.add_argument("--precision", type=int, default=60, help="decimal digits")
    numeric.add_argument("--sig-digits", type=int, default=5)
    numeric.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)

    parser = argparse.ArgumentParser(
        prog="stirling-series",
        description="Series expansions, parameter optimization and error tables "
                    "for Stirling-type factorial approximations.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("expand", parents=[common, family], help="print the difference series")
    sub.add_parser("optimize", parents=[common, family], help="eliminate leading coefficients")
    p_rate = sub.add_parser("rate", parents=[common, numeric], help="symbolic vs empirical rate")
    p_rate.add_argument("--formula", choices=[f.value for f in FormulaId], default=FormulaId.MORTICI_EQ2_OPT.value)
    p_rate.add_argument("--n", dest="n_values", type=_int_list, default=DEFAULT_RATE_N)
    p_rate.add_argument("--order", type=int, default=10)
    p_table = sub.add_parser("table", parents=[common, numeric], help="mu/rho/tau relative error table")
    p_table.add_argument("--n", dest="n_values", type=_int_list, default=DEFAULT_N)
    p_cmp = sub.add_parser("compare", parents=[common, numeric], help="relative errors of every formula")
    p_cmp.add_argument("--n", dest="n_values", type=_int_list, default=DEFAULT_N)
    p_cmp.add_argument(
        "--formulas", type=lambda s: tuple(s.split(",")), default=tuple(f.value for f in FormulaId),
        help="comma-separated formula ids",
    )
    return parser


def parse_config(argv: Sequence[str] | None = None) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(subcommand=args.subcommand)
    config.output_format = args.output_format or _DEFAULT_FORMAT.get(args.subcommand, "markdown")
    config.output_path = args.output_path
    if hasattr(args, "family"):
        config.family = args.family
        config.fixed = dict(args.fix)
    for name in ("order", "precision", "sig_digits", "n_values", "formula", "formulas"):
        if hasattr(args, name):
            setattr(config, name, getattr(args, name))
    if hasattr(args, "formulas"):
        bad = [f for f in args.formulas if f not in {x.value for x in FormulaId}]
        if bad:
            parser.error(f"unknown formula ids: {', '.join(bad)}")
    if hasattr(args, "max_n") and any(n > args.max_n for n in config.n_values):
        parser.error(f"--n values above --max-n {args.max_n} are refused")
    try:
        config.validate()
    except ValueError as exc:
        parser.error(str(exc))
    return config


def main(argv: Sequence[str] | None = None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
