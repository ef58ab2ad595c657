"""Command-line front door: tables, diagnostics, verification, search.

Every command writes a deterministic report: same argv, same bytes, no
timestamps or machine identifiers.  Three renderings are available through
``--format``: an aligned text table, CSV with a header row (``.`` decimal
separator, no locale dependence), and JSON.  The CSV and JSON payloads carry
exactly the strings the text report displays, so parsing them recovers the
displayed values.

Numeric cells are rounded half away from zero via exact integer arithmetic
on the underlying rational value; no double rounding through binary floats.
Constants derived from the recursions are labeled UPPER-BOUND ESTIMATE:
the recursion is an inequality, so the computed numbers bound the true
constants from above and nothing here certifies sharpness.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field as dataclass_field
from typing import Optional, Sequence

import gmpy2
from gmpy2 import mpfr

from bhconstants.constants import (
    RN_TABLE_CHECKPOINTS,
    ScalarField,
    bn_log2,
    BnForm,
    complex_closed,
    complex_improved,
    complex_recursive,
    consistency_report,
    ratio_diagnostics,
    real_closed,
    real_power_of_two,
    real_recursive,
    rn_log2,
    sn,
)
from bhconstants.khintchine import Regime
from bhconstants.numerics import PrecisionContext, exp2
from bhconstants.verifier import (
    SearchStrategy,
    bh_ratio,
    diagonal_form,
    form_to_json,
    littlewood_form,
    load_form,
    report_to_json,
    search_lower_bound,
)

__all__ = ["main"]

UPPER_BOUND_LABEL = "UPPER-BOUND ESTIMATE"


# ---------------------------------------------------------------------------
# deterministic decimal rendering
# ---------------------------------------------------------------------------


def fmt_fixed(x, places: int) -> str:
    """Decimal string with ``places`` digits, ties away from zero.

    The value is converted to an exact rational first and rounded with
    integer arithmetic, so the result does not depend on any float or MPFR
    rounding step.
    """
    q = gmpy2.mpq(x)
    num, den = int(q.numerator), int(q.denominator)
    sign = "-" if num < 0 else ""
    scaled = abs(num) * 10**places
    quot, rem = divmod(scaled, den)
    if 2 * rem >= den:
        quot += 1
    digits = str(quot).rjust(places + 1, "0")
    if places:
        return f"{sign}{digits[:-places]}.{digits[-places:]}"
    return f"{sign}{digits}"


def fmt_sci(x, mantissa_places: int = 3) -> str:
    """Scientific notation via the host float formatter (diagnostic cells)."""
    return f"{float(x):.{mantissa_places}e}"


def approx_cell(log2_value: mpfr, ctx: PrecisionContext) -> str:
    """Reference-table magnitude: 5 decimals under 10, integers under 10^4,
    then 10^k with k = round(log10)."""
    with ctx.gmpy_context():
        log10_value = log2_value / gmpy2.log2(mpfr(10))
        if log10_value < 4:
            value = exp2(log2_value, ctx)
            return fmt_fixed(value, 5) if value < 10 else fmt_fixed(value, 0)
        return f"10^{fmt_fixed(log10_value, 0)}"


def log2_cell(log2_value: mpfr) -> str:
    # full working precision, deterministic; consumers needing the value
    # numerically can parse it back at matching precision
    return str(log2_value)


# ---------------------------------------------------------------------------
# report documents and renderers
# ---------------------------------------------------------------------------


@dataclass
class ReportDoc:
    command: str
    columns: list
    rows: list
    notes: list = dataclass_field(default_factory=list)
    text_lines: Optional[list] = None  # overrides tabular text rendering


def render_text(doc: ReportDoc) -> str:
    if doc.text_lines is not None:
        return "\n".join(doc.text_lines) + "\n"
    widths = [len(c) for c in doc.columns]
    for row in doc.rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = []
    for note in doc.notes:
        lines.append(f"# {note}")
    lines.append("  ".join(c.rjust(widths[i]) for i, c in enumerate(doc.columns)))
    for row in doc.rows:
        lines.append("  ".join(cell.rjust(widths[i]) for i, cell in enumerate(row)))
    return "\n".join(lines) + "\n"


def render_csv(doc: ReportDoc) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(doc.columns)
    writer.writerows(doc.rows)
    return buf.getvalue()


def render_json(doc: ReportDoc) -> str:
    payload = {
        "command": doc.command,
        "columns": list(doc.columns),
        "rows": [dict(zip(doc.columns, row)) for row in doc.rows],
        "notes": list(doc.notes),
    }
    return json.dumps(payload, indent=2) + "\n"


RENDERERS = {"text": render_text, "csv": render_csv, "json": render_json}


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _parse_checkpoints(raw: str) -> list:
    try:
        values = [int(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"bad --checkpoints list: {exc}") from exc
    if not values:
        raise ValueError("--checkpoints needs at least one index")
    return values


def cmd_rn_table(args, ctx: PrecisionContext) -> ReportDoc:
    if args.checkpoints is not None:
        points = _parse_checkpoints(args.checkpoints)
    else:
        points = [n for n in RN_TABLE_CHECKPOINTS if n <= args.upto]
        if not points:
            raise ValueError(f"no checkpoints at or below {args.upto}")
    rows = []
    for n in points:
        r_log2 = rn_log2(n, ctx=ctx)
        with ctx.gmpy_context():
            r_val = exp2(r_log2, ctx)
            s_val = exp2(-r_log2, ctx)
        rows.append((str(n), fmt_fixed(r_val, 5), fmt_fixed(s_val, 5)))
    return ReportDoc("rn-table", ["n", "r_n", "s_n"], rows)


_CONSTANT_DISPATCH = {
    ("real", "recursive"): lambda n, ctx, regime: real_recursive(
        n, ctx, regime if regime is not None else Regime.GAMMA_FORMULA),
    ("real", "closed"): lambda n, ctx, regime: real_closed(n, ctx),
    ("real", "power2"): lambda n, ctx, regime: real_power_of_two(n, ctx),
    ("complex", "recursive"): lambda n, ctx, regime: complex_recursive(n, ctx),
    ("complex", "closed"): lambda n, ctx, regime: complex_closed(n, ctx),
    ("complex", "improved"): lambda n, ctx, regime: complex_improved(n, ctx),
}

_REGIME_TOKENS = {"gamma": Regime.GAMMA_FORMULA, "small-p": Regime.SMALL_P_POWER}


def cmd_constants(args, ctx: PrecisionContext) -> ReportDoc:
    key = (args.field, args.method)
    if key not in _CONSTANT_DISPATCH:
        raise ValueError(
            f"method '{args.method}' is not available for field '{args.field}'")
    regime = None
    if args.regime is not None:
        if key != ("real", "recursive"):
            raise ValueError(
                "--regime applies only to --field real --method recursive")
        regime = _REGIME_TOKENS[args.regime]
    estimate = _CONSTANT_DISPATCH[key](args.n, ctx, regime)
    approx = approx_cell(estimate.log2_value, ctx)
    columns = ["n", "field", "method", "regime", "log2", "approx"]
    regime_cell = estimate.regime.value if estimate.regime is not None else ""
    row = (str(estimate.n), estimate.field.value, estimate.method.value,
           regime_cell, log2_cell(estimate.log2_value), approx)
    text = [
        UPPER_BOUND_LABEL,
        f"n = {estimate.n}  field = {estimate.field.value}  "
        f"method = {estimate.method.value}",
    ]
    if estimate.regime is not None:
        text.append(f"regime = {estimate.regime.value}")
    text.append(f"log2(C) = {log2_cell(estimate.log2_value)}")
    if estimate.rn_component is not None:
        text.append(f"r_n = {fmt_fixed(estimate.rn_component, 5)}")
    text.append(f"C ≈ {approx}")
    doc = ReportDoc("constants", columns, [row], notes=[UPPER_BOUND_LABEL],
                    text_lines=text)
    return doc


def cmd_ratios(args, ctx: PrecisionContext) -> ReportDoc:
    field = ScalarField(args.field)
    rows_out = []
    for row in ratio_diagnostics(args.upto, field=field, ctx=ctx):
        rows_out.append((str(row.n), fmt_fixed(row.ratio, 8),
                         fmt_fixed(row.identity, 8),
                         fmt_sci(row.deviation_from_limit)))
    columns = ["n", "consecutive_ratio", "rn_identity", "dev_from_2^(1/8)"]
    notes = [
        f"{UPPER_BOUND_LABEL} ratios C_n/C_(n-2) for field={field.value}",
        "limit 2^(1/8) is conjectural: deviation is reported, not asserted",
    ]
    return ReportDoc("ratios", columns, rows_out, notes=notes)


def cmd_consistency(args, ctx: PrecisionContext) -> ReportDoc:
    report = consistency_report(ctx)
    rows_out = []
    for row in report.rows:
        with ctx.gmpy_context():
            p2 = exp2(row.power_of_two_log2, ctx)
            cl = exp2(row.closed_log2, ctx)
        rows_out.append((str(row.n), fmt_fixed(p2, 5), fmt_fixed(cl, 5),
                         fmt_sci(row.relative_gap),
                         "yes" if row.flagged else "no"))
    columns = ["n", "power_of_two", "closed_form", "relative_gap", "flagged"]
    notes = [
        "power-of-two formulas vs Gamma-regime closed form, even n in [2, 14]",
        f"rows with |relative_gap| > {report.threshold:g} are flagged",
    ]
    return ReportDoc("consistency", columns, rows_out, notes=notes)


def cmd_bn(args, ctx: PrecisionContext) -> ReportDoc:
    if args.upto < 3:
        raise ValueError(f"--upto must be >= 3, got {args.upto}")
    points = sorted(set(range(3, 11)) | set(RN_TABLE_CHECKPOINTS))
    points = [n for n in points if 3 <= n <= args.upto]
    rows_out = []
    with ctx.gmpy_context():
        sqrt2 = gmpy2.sqrt(mpfr(2))
    for n in points:
        rec = bn_log2(n, BnForm.RECURSION_FORM, ctx)
        gam = bn_log2(n, BnForm.GAMMA_FORM, ctx)
        with ctx.gmpy_context():
            rec_v = exp2(rec, ctx)
            gam_v = exp2(gam, ctx)
            rel_gap = exp2(rec - gam, ctx) - 1
            dist = abs(gam_v - sqrt2)
        rows_out.append((str(n), fmt_fixed(rec_v, 5), fmt_fixed(gam_v, 5),
                         fmt_sci(rel_gap), fmt_sci(dist)))
    columns = ["n", "recursion_form", "gamma_form", "rel_gap", "dist_to_sqrt2"]
    notes = ["B_n in two algebraic forms; the limit sqrt(2) is approached from above"]
    return ReportDoc("bn", columns, rows_out, notes=notes)


def _named_form(token: str):
    if token == "littlewood":
        return littlewood_form()
    if token == "diagonal":
        return diagonal_form()
    if token.startswith("file:"):
        return load_form(token[len("file:"):])
    raise ValueError(
        f"unknown form '{token}': expected littlewood, diagonal, or file:PATH")


def _bound_for(field: ScalarField, n: int, ctx: PrecisionContext) -> float:
    if field is ScalarField.REAL:
        return real_recursive(n, ctx).value.to_float()
    return complex_recursive(n, ctx).value.to_float()


def cmd_verify(args, ctx: PrecisionContext) -> ReportDoc:
    form = _named_form(args.form)
    report = bh_ratio(form)
    bound = _bound_for(form.field, form.n, ctx)
    payload = report_to_json(report)
    witness_cell = json.dumps(payload["witness"])
    columns = ["form", "n", "N", "field", "mixed_norm", "sup_norm", "ratio",
               "certified", "upper_bound", "witness"]
    row = (args.form, str(form.n), str(form.N), form.field.value,
           repr(report.mixed_norm), repr(report.sup_norm), repr(report.ratio),
           report.certified.value, repr(bound), witness_cell)
    text = [
        f"form = {args.form}  n = {form.n}  N = {form.N}  field = {form.field.value}",
        f"mixed norm = {report.mixed_norm!r}",
        f"sup norm   = {report.sup_norm!r}  ({report.certified.value})",
        f"ratio      = {report.ratio!r}",
        f"{UPPER_BOUND_LABEL} for this arity = {bound!r}",
        f"ratio <= bound: {'yes' if report.ratio <= bound * (1 + 1e-9) else 'NO'}",
        f"witness    = {witness_cell}",
    ]
    return ReportDoc("verify", columns, [row], notes=[UPPER_BOUND_LABEL],
                     text_lines=text)


def cmd_search(args, ctx: PrecisionContext) -> ReportDoc:
    strategy = SearchStrategy(args.strategy)
    report, form = search_lower_bound(args.n, args.N, strategy,
                                      budget=args.budget, seed=args.seed)
    bound = _bound_for(form.field, form.n, ctx)
    payload = report_to_json(report)
    coeff_cell = json.dumps(form_to_json(form)["coefficients"])
    witness_cell = json.dumps(payload["witness"])
    columns = ["n", "N", "strategy", "budget", "seed", "best_ratio",
               "mixed_norm", "sup_norm", "certified", "upper_bound",
               "coefficients", "witness"]
    row = (str(args.n), str(args.N), strategy.value, str(args.budget),
           str(args.seed), repr(report.ratio), repr(report.mixed_norm),
           repr(report.sup_norm), report.certified.value, repr(bound),
           coeff_cell, witness_cell)
    text = [
        f"search n = {args.n}  N = {args.N}  strategy = {strategy.value}  "
        f"budget = {args.budget}  seed = {args.seed}",
        f"best ratio = {report.ratio!r}  (empirical lower bound)",
        f"mixed norm = {report.mixed_norm!r}",
        f"sup norm   = {report.sup_norm!r}  ({report.certified.value})",
        f"{UPPER_BOUND_LABEL} for this arity = {bound!r}",
        f"coefficients = {coeff_cell}",
        f"witness      = {witness_cell}",
    ]
    return ReportDoc("search", columns, [row], notes=[UPPER_BOUND_LABEL],
                     text_lines=text)


HANDLERS: dict = {
    "rn-table": cmd_rn_table,
    "constants": cmd_constants,
    "ratios": cmd_ratios,
    "consistency": cmd_consistency,
    "bn": cmd_bn,
    "verify": cmd_verify,
    "search": cmd_search,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_global_flags(target: argparse.ArgumentParser, top_level: bool) -> None:
    # accepted both before and after the subcommand; the subparser copies
    # use SUPPRESS so an absent flag never clobbers a top-level value
    def default(value):
        return value if top_level else argparse.SUPPRESS

    target.add_argument("--precision", type=int, metavar="BITS",
                        default=default(128),
                        help="working mantissa bits (default 128, minimum 53)")
    target.add_argument("--format", choices=("text", "csv", "json"),
                        default=default("text"),
                        help="output rendering (default text)")
    target.add_argument("--out", metavar="PATH", default=default(None),
                        help="write the report to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, top_level=False)

    parser = argparse.ArgumentParser(
        prog="bhc",
        description="Numerical upper-bound estimates for Bohnenblust-Hille "
                    "constants, with desk-scale verification tools.")
    _add_global_flags(parser, top_level=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rn-table", parents=[common],
                       help="checkpoint table of r_n and s_n = 1/r_n")
    p.add_argument("--upto", type=int, default=RN_TABLE_CHECKPOINTS[-1],
                   metavar="N", help="print default checkpoints up to N")
    p.add_argument("--checkpoints", metavar="n1,n2,...", default=None,
                   help="explicit comma-separated even indices (overrides --upto)")

    p = sub.add_parser("constants", parents=[common],
                       help="one constant estimate with full-precision log2")
    p.add_argument("--field", choices=("real", "complex"), required=True)
    p.add_argument("--method", choices=("recursive", "closed", "power2", "improved"),
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--regime", choices=tuple(_REGIME_TOKENS), default=None,
                   help="Khintchine regime for the real recursion")

    p = sub.add_parser("ratios", parents=[common],
                       help="consecutive-ratio diagnostics C_n/C_(n-2)")
    p.add_argument("--field", choices=("real", "complex"), required=True)
    p.add_argument("--upto", type=int, required=True, metavar="N")

    sub.add_parser("consistency", parents=[common],
                   help="power-of-two vs closed-form discrepancy report")

    p = sub.add_parser("bn", parents=[common],
                       help="the auxiliary sequence B_n in both algebraic forms")
    p.add_argument("--upto", type=int, required=True, metavar="N")

    p = sub.add_parser("verify", parents=[common],
                       help="norms, ratio, and witness for a concrete form")
    p.add_argument("--form", required=True, metavar="{littlewood,diagonal,file:PATH}")

    p = sub.add_parser("search", parents=[common],
                       help="empirical lower-bound search over sign forms")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True, metavar="DIM")
    p.add_argument("--strategy", required=True,
                   choices=tuple(s.value for s in SearchStrategy))
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ctx = PrecisionContext(mantissa_bits=args.precision)
        doc = HANDLERS[args.command](args, ctx)
        payload = RENDERERS[args.format](doc)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"bhc: error: {exc}", file=sys.stderr)
        return 2
    if args.out is not None:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"bhc: error: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
