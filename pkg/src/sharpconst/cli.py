"""Command-line interface.

Subcommands: ``lambda``, ``table``, ``scan`` and ``verify``. Data goes to
stdout (or ``--out``), diagnostics to stderr. Exit codes: 0 when a
verification holds or a computation succeeds, 1 when a verification
finds a violation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from decimal import Decimal
from typing import Any, Sequence

import numpy as np

from . import bestconst, geometry, simplex, verifier
from .errors import CrossCheckFailed, SharpConstError
from .verifier import Verdict, VerificationReport

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 10_000
DEFAULT_DIGITS = 15
MAX_TABLE_N = 10_000

VERIFY_TARGETS = (
    "ineq1", "ineq4", "ineq5", "ahg", "sos3", "sosv", "lowerform",
    "oracle", "euler", "quintic", "p2rr", "ig", "cevian",
)


class UsageError(Exception):
    pass


# --- rendering -----------------------------------------------------------------


def _fmt(value: Any, digits: int) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (float, np.floating)):
        return format(float(value), f".{digits}g")
    if isinstance(value, Decimal):
        return str(value)
    return str(value)


def _json_value(value: Any) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return format(v, ".17g") if math.isfinite(v) else "null"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in value) + "]"
    if isinstance(value, Decimal):
        return '"' + str(value) + '"'
    text = str(value).replace("\\", "\\\\").replace('"', '\\"')
    return '"' + text + '"'


def render(rows: list[dict], fmt: str, digits: int) -> str:
    if not rows:
        return ""
    columns = list(rows[0])
    if fmt == "json":
        records = [
            "{" + ", ".join(f'"{k}": {_json_value(r[k])}' for k in columns) + "}"
            for r in rows
        ]
        if len(records) == 1:
            return records[0] + "\n"
        return "[\n  " + ",\n  ".join(records) + "\n]\n"
    cells = [[_cell(r[k], digits) for k in columns] for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(cells)
        return buf.getvalue()
    lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
    lines += ["| " + " | ".join(row) + " |" for row in cells]
    return "\n".join(lines) + "\n"


def _cell(value: Any, digits: int) -> str:
    if isinstance(value, (list, tuple)):
        # witness coordinates: shortest round-trip repr so the point replays exactly
        return " ".join(repr(float(v)) if isinstance(v, (float, np.floating)) else str(v) for v in value)
    return _fmt(value, digits)


# --- commands ------------------------------------------------------------------


def _check_order(n: int) -> None:
    if n == 2:
        raise UsageError("there is no best constant for n=2: the inequality holds for every lambda > 0")
    if n < 2:
        raise UsageError(f"n must be at least 3, got {n}")


def _lambda_row(n: int, tol: float) -> dict:
    r = bestconst.compute_lambda(n, tol)
    return {
        "n": n,
        "t_n": r.t_n,
        "p_n(t_n)": r.p_at_tn,
        "lambda": r.lambda_n,
        "lower_bound": r.lower_bound,
        "upper_bound": r.upper_bound,
        "improved_upper": r.improved_upper,
        "bracket_width": r.t_bracket.width,
        "iterations": r.t_bracket.iterations,
    }


def cmd_lambda(args) -> tuple[list[dict], int]:
    _check_order(args.n)
    return [_lambda_row(args.n, args.tol)], 0


def cmd_table(args) -> tuple[list[dict], int]:
    lo, hi = args.n_from, args.n_to
    if not 3 <= lo <= hi <= MAX_TABLE_N:
        raise UsageError(f"need 3 <= --from <= --to <= {MAX_TABLE_N}, got {lo}..{hi}")
    rows = []
    for n in range(lo, hi + 1):
        r = bestconst.compute_lambda(n, args.tol)
        rows.append({
            "n": n,
            "t_n": r.t_n,
            "lambda": r.lambda_n,
            "lower_bound": r.lower_bound,
            "upper_bound": r.upper_bound,
            "improved_upper": r.improved_upper,
        })
    return rows, 0


def cmd_scan(args) -> tuple[list[dict], int]:
    _check_order(args.n)
    if args.points < 10:
        raise UsageError(f"--points must be at least 10, got {args.points}")
    t = np.arange(1, args.points + 1) / args.points
    p = bestconst.pn_value(args.n, t)
    g = simplex.eval_g_reduced_array(args.n, t)
    return [{"t": float(a), "p_n": float(b), "g_reduced": float(c)} for a, b, c in zip(t, p, g)], 0


def _parse_point(text: str | None) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(v) for v in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"cannot parse --point {text!r}") from exc


def _default_lambda(n: int) -> float:
    return bestconst.compute_lambda(n).lambda_n


def _need_n(args, least: int = 3) -> int:
    if args.n is None:
        raise UsageError(f"--n is required for target {args.target}")
    if args.n < least:
        raise UsageError(f"--n must be at least {least} for target {args.target}")
    return args.n


def _triangles(args, point):
    if point is not None:
        if len(point) != 3:
            raise UsageError("--point for a triangle target takes 3 side lengths")
        return [geometry.Triangle(*point)], 0
    return geometry.sample_triangles(args.samples, args.seed)


def _positive_triples(args, point):
    if point is not None:
        if len(point) != 3 or min(point) <= 0:
            raise UsageError("--point takes 3 positive numbers")
        return np.array([point])
    # simplex triples spread over scales 1e-2 .. 1e2
    x = simplex.sample_array(3, args.samples, args.seed)
    scale = 10.0 ** (4 * simplex.sample_array(2, args.samples, args.seed + 1)[:, :1] - 2)
    return x * scale


def _identity_report(label, param, lhs, rhs, rows) -> VerificationReport:
    lhs = np.asarray(lhs, dtype=float)
    # lhs >= 0 is the inequality; the identity itself was asserted on the way in
    margins = lhs / np.maximum(1.0, np.abs(rhs))
    return verifier.summarize(label, 3, param, margins, [tuple(r) for r in rows.tolist()])


def run_verify(args) -> VerificationReport:
    target = args.target
    point = _parse_point(args.point)
    param = args.param

    if target in ("ineq1", "ineq4", "ineq5", "ahg"):
        n = _need_n(args, 2 if target == "ineq1" else 3)
        if point is not None:
            if len(point) != n:
                raise UsageError(f"--point needs {n} coordinates")
            pts = np.array([simplex.make_point(point).coords]) if target != "ahg" else np.array([point])
            scan = False
        else:
            pts = simplex.sample_array(n, args.samples, args.seed)
            scan = True
        if target == "ineq1":
            if param is None:
                if n < 3:
                    raise UsageError("--param is required for n=2 (no best constant exists)")
                param = _default_lambda(n)
            return verifier.check_ineq1(n, param, pts, include_reduced_scan=scan)
        if target == "ineq4":
            return verifier.check_ineq4(n, verifier.nu_best(n) if param is None else param, pts,
                                        include_reduced_scan=scan)
        if target == "ineq5":
            return verifier.check_ineq5(n, pts)
        return verifier.check_ahg(n, n - 1 if param is None else param, pts)

    if target in ("sos3", "sosv"):
        x = _positive_triples(args, point)
        if target == "sos3":
            lhs, rhs = verifier.sos_identity_n3(x[:, 0], x[:, 1], x[:, 2])
            return _identity_report("sos3", None, lhs, rhs, x)
        v = 3.0 if param is None else param
        lhs, rhs = verifier.sos_identity_quintic(v, x[:, 0], x[:, 1], x[:, 2])
        return _identity_report("sosv", v, lhs, rhs, x)

    if target == "lowerform":
        n = _need_n(args)
        s_values = point if point is not None else list(np.arange(1, args.samples + 1) / (args.samples + 1))
        margins = [verifier.check_lower_bound_form(n, s) / (n**3 / (n - 1)) for s in s_values]
        return verifier.summarize("lowerform", n, None, margins, [(float(s),) for s in s_values])

    if target == "oracle":
        n = _need_n(args)
        m = args.grid_res if args.grid_res is not None else 30 * n
        res = verifier.brute_force_min_g(n, m)
        lam = _default_lambda(n)
        margin = (res.min_value - lam) / lam
        # grid minimum can sit above lambda_n but never below it
        return verifier.summarize("oracle", n, float(m), [margin], [res.argmin])

    if target == "euler":
        tris, _ = _triangles(args, point)
        return geometry.check_euler(8.0 if param is None else param, tris, include_family_scan=point is None)
    if target == "quintic":
        return geometry.check_quintic(_triangles(args, point)[0])
    if target == "p2rr":
        return geometry.check_p2rr(_triangles(args, point)[0])
    if target == "ig":
        return geometry.check_ig(_triangles(args, point)[0])
    if target == "cevian":
        if point is not None:
            if len(point) != 6:
                raise UsageError("--point for cevian takes 3 sides followed by 3 weights")
            configs = [(geometry.Triangle(*point[:3]), tuple(point[3:]))]
        else:
            configs, _ = geometry.sample_cevian_configs(args.samples, args.seed)
        return geometry.check_cevian(configs)
    raise UsageError(f"unknown target {target!r}")


def _witness_coords(w) -> Any:
    if w is None:
        return []
    if isinstance(w, simplex.SimplexPoint):
        return list(w.coords)
    if isinstance(w, geometry.Triangle):
        return [w.a, w.b, w.c]
    if isinstance(w, tuple) and len(w) == 2 and isinstance(w[0], geometry.Triangle):
        return [w[0].a, w[0].b, w[0].c, *w[1]]
    return list(w)


def report_row(rep: VerificationReport) -> dict:
    return {
        "inequality": rep.inequality_id,
        "n": rep.n,
        "parameter": rep.parameter,
        "samples": rep.samples_tested,
        "min_margin": rep.min_margin,
        "verdict": rep.verdict.value,
        "witness": _witness_coords(rep.argmin_witness),
    }


def cmd_verify(args) -> tuple[list[dict], int]:
    if args.samples < 1:
        raise UsageError("--samples must be positive")
    rep = run_verify(args)
    return [report_row(rep)], 0 if rep.verdict is Verdict.HOLDS else 1


# --- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json", "markdown"), default="markdown")
    common.add_argument("--digits", type=int, default=DEFAULT_DIGITS,
                        help=f"significant digits for csv/markdown (default {DEFAULT_DIGITS})")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")
    common.add_argument("--tol", type=float, default=bestconst.DEFAULT_TOL,
                        help=f"bracket width for t_n (default {bestconst.DEFAULT_TOL:g})")

    parser = argparse.ArgumentParser(prog="sharpconst", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lambda", parents=[common], help="best constant lambda_n for one n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_lambda)

    p = sub.add_parser("table", parents=[common], help="lambda_n and bounds over a range of n")
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("scan", parents=[common], help="(t, p_n(t), g_reduced(t)) plot data")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--points", type=int, default=1000)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", parents=[common], help="run a verification campaign")
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--param", type=float, default=None,
                   help="lambda, nu, l, v or mu depending on the target")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                   help=f"random samples (default {DEFAULT_SAMPLES})")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"sampling seed (default {DEFAULT_SEED})")
    p.add_argument("--grid-res", type=int, default=None, help="grid resolution m for the oracle")
    p.add_argument("--point", default=None, help="replay a single point, comma or space separated")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, code = args.func(args)
    except CrossCheckFailed as exc:
        print(f"sharpconst {args.command}: identity check failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, SharpConstError) as exc:
        print(f"sharpconst {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = render(rows, args.format, args.digits)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
