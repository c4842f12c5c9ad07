"""Command line interface: ``padiclog {mu,verify,logpoly,valuations,digits}``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import distribution as dist
from .exact import INF, format_valuation, quad_vp
from .hecke import HeckeData, classify, hensel_vp_auto
from .logmatrix import log_truncation
from .oracle import mu_oracle
from .serialization import distribution_record, mat_to_json, mat_to_text, polymat_to_json
from .verify import GridSpec, run_grid


def _add_ctx_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--p", type=int, required=True, help="prime p")
    sp.add_argument("--ap", type=int, required=True, help="Hecke eigenvalue a_p")
    sp.add_argument("--eps", type=int, default=1, choices=(1, -1), help="eps(p), default 1")
    sp.add_argument("--n-max", type=int, default=12, help="depth guard (default 12)")


def _add_format(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=("json", "text"), default="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padiclog", description="Digit form of the logarithm-matrix distribution.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("mu", help="value of mu on b + p^n Z_p")
    _add_ctx_args(sp)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--oracle", action="store_true", help="cross-check against the constant-term oracle")
    _add_format(sp)

    sp = sub.add_parser("verify", help="run the verification grid")
    sp.add_argument("--grid", help="GridSpec JSON file (default: built-in grid)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--output", help="also write the JSON report here")
    _add_format(sp)

    sp = sub.add_parser("logpoly", help="sparse coefficients of Log^(n)")
    _add_ctx_args(sp)
    sp.add_argument("--n", type=int, required=True)
    _add_format(sp)

    sp = sub.add_parser("valuations", help="minimum valuations of mu entries per level")
    _add_ctx_args(sp)
    sp.add_argument("--n", type=int, required=True, help="largest level")
    sp.add_argument("--n-min", type=int, default=1)
    _add_format(sp)

    sp = sub.add_parser("digits", help="base-p digits and zero-run structure of b")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--b", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    _add_format(sp)
    return parser


def _ctx(parser: argparse.ArgumentParser, args: argparse.Namespace) -> HeckeData:
    try:
        return HeckeData(args.p, args.ap, args.eps, args.n_max)
    except ValueError as exc:
        parser.error(str(exc))
        raise  # unreachable


def _check_n(parser: argparse.ArgumentParser, ctx: HeckeData, n: int) -> None:
    if not 1 <= n <= ctx.n_max:
        parser.error(f"--n must satisfy 1 <= n <= n_max={ctx.n_max}, got {n}")


def _emit(args: argparse.Namespace, payload: Any, text: str) -> None:
    if args.format == "json":
        json.dump(payload, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def cmd_mu(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    ctx = _ctx(parser, args)
    _check_n(parser, ctx, args.n)
    dv = dist.mu(ctx, args.b, args.n)
    record = distribution_record(dv)
    status = 0
    lines = [
        f"ctx: p={ctx.p} ap={ctx.ap} eps={ctx.eps} ({classify(ctx)})",
        f"coset: {dv.b} + {ctx.p}^{dv.n} Z_p",
        f"digits: {list(dv.digit_string.digits)}",
        f"runs: {list(dv.runs.runs)}",
        f"mu = {mat_to_text(dv.matrix)}",
    ]
    if dist.CONSECUTIVE_NONZERO in dv.flags:
        lines.append("note: consecutive nonzero digits")
    if dist.FIRST_COLUMN_ONLY in dv.flags:
        lines.append("note: ordinary case, only the first column is certified")
    if args.oracle:
        o = mu_oracle(ctx, dv.b, dv.n)
        match = o == dv.matrix
        record["oracle"] = "match" if match else "mismatch"
        if not match:
            record["oracle_matrix"] = mat_to_json(o)
            status = 1
        lines.append(f"oracle: {record['oracle']}")
    _emit(args, record, "\n".join(lines))
    return status


def cmd_verify(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    try:
        grid = GridSpec.load(args.grid) if args.grid else GridSpec()
        report = run_grid(grid, seed=args.seed, jobs=args.jobs)
    except (ValueError, OSError) as exc:
        parser.error(str(exc))
    data = report.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(data, fh, indent=2)
    lines = []
    for r in data["checks"]:
        params = " ".join(f"{k}={v}" for k, v in r["params"].items())
        lines.append(f"{'PASS' if r['passed'] else 'FAIL'}  {r['check']:<22} {params}  cells={r['cells']}")
        if r["witness"] is not None:
            lines.append(f"      witness: {json.dumps(r['witness'])}")
    s = data["summary"]
    lines.append(f"{s['passed']}/{s['total']} checks passed over {s['cells']} cells")
    _emit(args, data, "\n".join(lines))
    return 0 if report.ok else 1


def cmd_logpoly(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    ctx = _ctx(parser, args)
    _check_n(parser, ctx, args.n)
    m = log_truncation(ctx, args.n)
    payload = {"ctx": ctx.to_json(), "n": args.n, "variable": "x = 1+T", "matrix": polymat_to_json(m)}
    lines = [f"Log^({args.n}) for p={ctx.p} ap={ctx.ap} eps={ctx.eps}, variable x = 1+T"]
    for (i, j), f in zip(((0, 0), (0, 1), (1, 0), (1, 1)), m):
        lines.append(f"[{i}][{j}] degree {f.degree()}: {f}")
    _emit(args, payload, "\n".join(lines))
    return 0


def valuation_profile(ctx: HeckeData, n_min: int, n_max: int) -> list[dict[str, Any]]:
    """Minimum entry valuation of mu over all b, per level and per column."""
    rows = []
    for n in range(n_min, n_max + 1):
        cols = [INF, INF]
        for b in range(ctx.p**n):
            m = dist.mu(ctx, b, n).matrix
            for j in (0, 1):
                for e in m.column(j):
                    v = hensel_vp_auto(e, ctx) if ctx.is_ordinary else quad_vp(e)
                    cols[j] = min(cols[j], v)
        row = {
            "n": n,
            "min_vp_col1": format_valuation(cols[0]),
            "min_vp_col2": format_valuation(cols[1]),
            "min_vp": format_valuation(min(cols)),
        }
        if ctx.is_ordinary:
            row["bound_col1"] = "0"
        else:
            row["bound"] = format_valuation(Fraction(-(n + 3), 2))
        rows.append(row)
    return rows


def cmd_valuations(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    ctx = _ctx(parser, args)
    _check_n(parser, ctx, args.n)
    if not 1 <= args.n_min <= args.n:
        parser.error(f"--n-min must satisfy 1 <= n-min <= n, got {args.n_min}")
    rows = valuation_profile(ctx, args.n_min, args.n)
    kind = classify(ctx)
    payload = {"ctx": ctx.to_json(), "case": kind, "rows": rows}
    bound_key = "bound_col1" if ctx.is_ordinary else "bound"
    lines = [f"p={ctx.p} ap={ctx.ap} eps={ctx.eps} ({kind})", f"{'n':>3} {'col1':>8} {'col2':>8} {'min':>8} {bound_key:>10}"]
    for r in rows:
        lines.append(f"{r['n']:>3} {r['min_vp_col1']:>8} {r['min_vp_col2']:>8} {r['min_vp']:>8} {r[bound_key]:>10}")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_digits(parser: argparse.ArgumentParser, args: argparse.Namespace) -> int:
    from .exact import is_prime

    if not is_prime(args.p):
        parser.error(f"p must be prime, got {args.p}")
    if args.n < 1:
        parser.error(f"--n must be >= 1, got {args.n}")
    ds = dist.digits(args.b, args.n, args.p)
    rs = dist.run_structure(ds)
    payload = {"p": ds.p, "n": ds.n, "b": ds.b, "digits": list(ds.digits), "runs": list(rs.runs), "l": rs.l}
    text = f"b = {ds.b} mod {ds.p}^{ds.n}\ndigits: {list(ds.digits)}\nruns: {list(rs.runs)} (l={rs.l})"
    _emit(args, payload, text)
    return 0


COMMANDS = {
    "mu": cmd_mu,
    "verify": cmd_verify,
    "logpoly": cmd_logpoly,
    "valuations": cmd_valuations,
    "digits": cmd_digits,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return COMMANDS[args.command](parser, args)


if __name__ == "__main__":
    sys.exit(main())
