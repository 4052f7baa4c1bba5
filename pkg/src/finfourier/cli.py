"""Command-line interface: ``finfourier {transform,table,verify,parseval}``.

Numbers are printed with 17 significant digits.  JSON output is one document
carrying ``"schema": "finfourier/1"``; diagnostics go to standard error.
Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import dataclass

from .errors import EvaluationError, ParameterError
from .parseval import parseval_partial_sum
from .polyfamilies import Family, FamilySpec
from .transforms import FAMILY_METHODS, MethodId, hat
from .verification import SUITES, run_suites

SCHEMA = "finfourier/1"
TABLE_FIELDS = ("family", "n", "params", "lambda", "method", "re", "im", "est_rel_err", "flags")
PARSEVAL_FIELDS = ("n", "m", "alpha", "beta", "J", "partial_sum", "target", "residual",
                   "tail_est")
VERIFY_FIELDS = ("suite", "passed", "worst", "tolerance", "cases", "detail")
TOL_RANGE = (1e-13, 1e-2)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(x) -> str:
    """17 significant digits; ints and strings unchanged."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


# -- argument parsing -----------------------------------------------------------


def _grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected START:STOP:COUNT")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}")
    if count < 2 or not start < stop:
        raise argparse.ArgumentTypeError("grid needs COUNT >= 2 and START < STOP")
    return start, stop, count


def _degrees(text: str) -> list[int]:
    """INT, A..B (inclusive) or a comma list of either."""
    out = []
    for part in text.split(","):
        m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+)\s*)?", part)
        if not m:
            raise argparse.ArgumentTypeError(f"bad degree {part!r}")
        lo = int(m.group(1))
        hi = int(m.group(2)) if m.group(2) else lo
        if hi < lo:
            raise argparse.ArgumentTypeError(f"empty degree range {part!r}")
        out.extend(range(lo, hi + 1))
    return out


def _tol(text: str) -> float:
    try:
        t = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad tolerance {text!r}")
    if not TOL_RANGE[0] <= t <= TOL_RANGE[1]:
        raise argparse.ArgumentTypeError(
            f"tolerance must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]")
    return t


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=_tol, default=None,
                        help="tolerance in [1e-13, 1e-2] (default 1e-10)")

    poly = argparse.ArgumentParser(add_help=False)
    poly.add_argument("--family", choices=[f.value for f in Family], required=True)
    poly.add_argument("--n", type=_degrees, required=True,
                      help="degree: INT, A..B or a comma list")
    poly.add_argument("--alpha", type=float)
    poly.add_argument("--beta", type=float)
    poly.add_argument("--nu", type=float)
    poly.add_argument("--method", default="auto", help="method id, 'all' or 'auto'")

    parser = argparse.ArgumentParser(
        prog="finfourier",
        description="Finite Fourier transforms of classical orthogonal polynomials on [-1, 1].")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("transform", parents=[common, poly], help="transform at one lambda")
    p.add_argument("--lambda", dest="lam", type=float, required=True)

    p = sub.add_parser("table", parents=[common, poly], help="transforms over a lambda grid")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambda-grid", dest="grid", type=_grid)
    g.add_argument("--lambda", dest="lam", type=float)

    p = sub.add_parser("verify", parents=[common], help="run self-check suites")
    p.add_argument("--suite", action="append", choices=["all", *SUITES],
                   help="suite to run (repeatable; default all)")
    p.add_argument("--jmax", type=int, default=256)

    p = sub.add_parser("parseval", parents=[common], help="Parseval partial sums")
    p.add_argument("--family", choices=(Family.JACOBI.value, Family.LEGENDRE.value),
                   default=Family.JACOBI.value)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None, help="second degree (default: n)")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--jmax", type=int, default=256)
    return parser


# -- the run configuration ---------------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: Family | None
    degrees: tuple[int, ...]
    params: dict
    lambdas: tuple[float, ...]
    methods: tuple[str, ...]
    tol: float
    fmt: str
    seed: int


def _spec(family: Family, n: int, params: dict) -> FamilySpec:
    if family is Family.JACOBI:
        if params.get("alpha") is None or params.get("beta") is None:
            raise UsageError("jacobi needs --alpha and --beta")
        return FamilySpec.jacobi(n, params["alpha"], params["beta"])
    if family is Family.GEGENBAUER:
        if params.get("nu") is None:
            raise UsageError("gegenbauer needs --nu")
        return FamilySpec.gegenbauer(n, params["nu"])
    return FamilySpec(family, n)


def _methods(family: Family, text: str) -> tuple[str, ...]:
    if text == "auto":
        return ("auto",)
    if text == "all":
        return tuple(m.value for m in FAMILY_METHODS[family])
    try:
        return (MethodId.parse(text).value,)
    except ParameterError as exc:
        raise UsageError(str(exc))


def make_config(args) -> RunConfig:
    family = Family(args.family)
    if args.command == "table" and args.grid:
        start, stop, count = args.grid
        step = (stop - start) / (count - 1)
        lams = tuple(start + i * step if i < count - 1 else stop for i in range(count))
    else:
        lams = (args.lam,)
    if not all(math.isfinite(x) for x in lams):
        raise UsageError("lambda must be finite")
    params = {k: getattr(args, k) for k in ("alpha", "beta", "nu")}
    return RunConfig(args.command, family, tuple(args.n), params, lams,
                     _methods(family, args.method),
                     1e-10 if args.tol is None else args.tol, args.format, args.seed)


# -- computing rows ----------------------------------------------------------------


def _params_text(spec: FamilySpec) -> str:
    return ";".join(f"{k}={fmt(v)}" for k, v in spec.params().items())


def transform_rows(cfg: RunConfig) -> list[dict]:
    rows = []
    for n in cfg.degrees:
        spec = _spec(cfg.family, n, cfg.params)
        for lam in cfg.lambdas:
            for method in cfg.methods:
                res = hat(spec, lam, method, oracle_tol=cfg.tol)
                rows.append({
                    "family": spec.family.value,
                    "n": spec.n,
                    "params": _params_text(spec),
                    "lambda": lam,
                    "method": res.method.value,
                    "re": res.value.real + 0.0,
                    "im": res.value.imag + 0.0,
                    "est_rel_err": float(res.est_rel_err),
                    "flags": ";".join(sorted(res.flags)),
                })
                if res.est_rel_err > cfg.tol:
                    print(f"warning: {spec.label()} lambda={fmt(lam)} {res.method.value}: "
                          f"estimated relative error {res.est_rel_err:.3g} exceeds tol "
                          f"{cfg.tol:g}", file=sys.stderr)
    return rows


def parseval_rows(n: int, m: int, alpha: float, beta: float, jmax: int) -> tuple[dict, list]:
    rep = parseval_partial_sum(n, m, alpha, beta, jmax)
    rows = []
    prev = None
    for J, s in rep.octaves:
        rows.append({
            "n": rep.n, "m": rep.m, "alpha": rep.alpha, "beta": rep.beta, "J": J,
            "partial_sum": s, "target": rep.target, "residual": abs(s - rep.target),
            "tail_est": abs(s - prev) if prev is not None else abs(s),
        })
        prev = s
    summary = {
        "n": rep.n, "m": rep.m, "alpha": rep.alpha, "beta": rep.beta, "J": rep.J,
        "partial_sum": rep.partial_sum.real, "target": rep.target,
        "residual": rep.residual, "tail_est": rep.tail_est,
    }
    return summary, rows


# -- output ------------------------------------------------------------------------

_MARK = "\ufdd0"  # a noncharacter: never escaped by json.dumps, never in our strings
_NUM = re.compile(f'"{_MARK}([^"]*?){_MARK}"')


def _json_ready(obj):
    if isinstance(obj, float):
        if math.isfinite(obj):
            return _MARK + fmt(obj) + _MARK
        return None
    if isinstance(obj, dict):
        return {k: _json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_ready(v) for v in obj]
    return obj


def to_json(doc: dict) -> str:
    """JSON with every float written at 17 significant digits."""
    text = json.dumps(_json_ready({"schema": SCHEMA, **doc}), indent=2, ensure_ascii=False)
    return _NUM.sub(lambda m: m.group(1), text) + "\n"


def to_csv(fields, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([fmt(r[f]) for f in fields])
    return buf.getvalue()


def to_text(fields, rows) -> str:
    cells = [list(fields)] + [[fmt(r[f]) for f in fields] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(fields))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() + "\n"
                   for row in cells)


def emit_table(cfg: RunConfig, rows: list[dict]) -> str:
    if cfg.fmt == "json":
        return to_json({"command": cfg.command, "rows": rows})
    if cfg.fmt == "csv":
        return to_csv(TABLE_FIELDS, rows)
    return to_text(TABLE_FIELDS, rows)


# -- commands ----------------------------------------------------------------------


def _cmd_transform(args) -> int:
    cfg = make_config(args)
    if args.command == "transform" and len(cfg.degrees) != 1:
        raise UsageError("transform takes a single degree; use table for several")
    sys.stdout.write(emit_table(cfg, transform_rows(cfg)))
    return EXIT_OK


def _cmd_verify(args) -> int:
    names = args.suite or ["all"]
    results = run_suites(names, tol=args.tol, seed=args.seed, jmax=args.jmax)
    ok = all(r.passed for r in results)
    rows = [{"suite": r.name, "passed": r.passed, "worst": r.worst, "tolerance": r.tolerance,
             "cases": r.cases, "detail": r.detail} for r in results]
    if args.format == "json":
        out = to_json({"command": "verify", "seed": args.seed, "passed": ok, "suites": rows})
    elif args.format == "csv":
        out = to_csv(VERIFY_FIELDS, rows)
    else:
        out = "".join(r.line() + "\n" for r in results)
        out += f"{sum(r.passed for r in results)}/{len(results)} suites passed\n"
    sys.stdout.write(out)
    for r in results:
        if not r.passed:
            print(f"suite {r.name} failed: worst={fmt(r.worst)} tol={fmt(r.tolerance)}",
                  file=sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_parseval(args) -> int:
    if args.jmax < 1:
        raise UsageError("--jmax must be >= 1")
    alpha, beta = args.alpha, args.beta
    if args.family == Family.LEGENDRE.value:
        alpha = beta = 0.0
    m = args.n if args.m is None else args.m
    summary, rows = parseval_rows(args.n, m, alpha, beta, args.jmax)
    if args.format == "json":
        out = to_json({"command": "parseval", "summary": summary, "octaves": rows})
    elif args.format == "csv":
        out = to_csv(PARSEVAL_FIELDS, rows)
    else:
        out = to_text(PARSEVAL_FIELDS, rows)
    sys.stdout.write(out)
    return EXIT_OK


_COMMANDS = {
    "transform": _cmd_transform,
    "table": _cmd_transform,
    "verify": _cmd_verify,
    "parseval": _cmd_parseval,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (UsageError, ParameterError) as exc:
        print(f"finfourier: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EvaluationError as exc:
        print(f"finfourier: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
