"""Command-line front end: ``pgamma <command> ...``.

Exit codes: 0 success, 1 verification failures, 2 bad arguments,
3 precision precondition violated.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .factorial import FactorialVariant, factorial_q
from .gamma import gamma_p, gamma_q
from .mahler import coefficients
from .padic import PadicInt, PrecisionError, PrimeContext, from_integer, from_rational
from .verify import DEFAULT_GRIDS, SUITES, run_suite

DEFAULT_PRECISION = 12


class UsageError(Exception):
    pass


def default_precision() -> int:
    raw = os.environ.get("PGAM_DEFAULT_PREC")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"PGAM_DEFAULT_PREC must be an integer, got {raw!r}")
    if value < 1:
        raise UsageError("PGAM_DEFAULT_PREC must be >= 1")
    return value


def parse_padic(text: str, p: int, precision: int) -> PadicInt:
    """Integer ``-7``, rational ``a/b``, or digit list ``d0,d1,...`` (lowest digit first)."""
    text = text.strip()
    try:
        if "," in text:
            ds = [int(d) for d in text.split(",")]
            if any(not 0 <= d < p for d in ds):
                raise UsageError(f"digits must lie in [0, {p - 1}]")
            n = min(precision, len(ds))
            return PadicInt(p, n, sum(d * p**j for j, d in enumerate(ds[:n])))
        if "/" in text:
            a, b = text.split("/")
            return from_rational(int(a), int(b), p, precision)
        return from_integer(int(text), p, precision)
    except ValueError as exc:
        if isinstance(exc, PrecisionError):
            raise
        raise UsageError(f"cannot parse p-adic argument {text!r}: {exc}")


def parse_int_list(text: str) -> list[int]:
    """``3``, ``1,2,5`` or an inclusive range ``1..200``."""
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def parse_contexts(text: str) -> list[tuple[int, int]]:
    pairs = []
    for part in text.split(","):
        p, t = part.split(":")
        pairs.append((int(p), int(t)))
    return pairs


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        out = json.dumps(payload, indent=2)
    else:
        out = text
    print(out)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def _context(args) -> PrimeContext:
    return PrimeContext(args.p, args.t, _precision(args))


def _precision(args) -> int:
    prec = args.prec if args.prec is not None else default_precision()
    if prec < 1:
        raise UsageError("--prec must be >= 1")
    return prec


def cmd_factorial(args) -> int:
    ctx = _context(args)
    if args.n < 0:
        raise UsageError("-n must be >= 0")
    value = factorial_q(args.n, ctx, FactorialVariant(args.variant))
    _emit(args, {"p": ctx.p, "t": ctx.t, "q": ctx.q, "n": args.n, "variant": args.variant, "value": str(value)}, str(value))
    return 0


def cmd_table(args) -> int:
    ctx = _context(args)
    if args.max < 0:
        raise UsageError("--max must be >= 0")
    variant = FactorialVariant(args.variant)
    ns = list(range(args.max + 1))
    values = [factorial_q(n, ctx, variant) for n in ns]
    cells = [str(v) for v in values]
    width = [max(len(str(n)), len(c)) for n, c in zip(ns, cells)]
    head = f"n!_{ctx.p}^{ctx.t}"
    lab = max(len(head), 1)
    row1 = "n".ljust(lab) + " | " + " ".join(str(n).rjust(w) for n, w in zip(ns, width))
    row2 = head.ljust(lab) + " | " + " ".join(c.rjust(w) for c, w in zip(cells, width))
    payload = {"p": ctx.p, "t": ctx.t, "q": ctx.q, "variant": args.variant, "n": ns, "values": cells}
    _emit(args, payload, f"{row1}\n{row2}")
    return 0


def _gamma_out(args, value: PadicInt, x: PadicInt, t: int | None) -> int:
    payload = {
        "p": value.p,
        "x": args.x,
        "precision": value.precision,
        "residue": str(value.residue),
        "digits": value.digit_string(),
    }
    if t is not None:
        payload["t"] = t
    _emit(args, payload, f"{value}\n{value.digit_string()}")
    return 0


def cmd_gamma_p(args) -> int:
    x = parse_padic(args.x, args.p, _precision(args))
    return _gamma_out(args, gamma_p(x), x, None)


def cmd_gamma_q(args) -> int:
    ctx = _context(args)
    x = parse_padic(args.x, ctx.p, _precision(args))
    return _gamma_out(args, gamma_q(x, ctx), x, ctx.t)


def cmd_mahler(args) -> int:
    if args.K < 0:
        raise UsageError("-K must be >= 0")
    ctx = _context(args)
    mc = coefficients(ctx, args.K)
    lines = ["eta  v_p  a_eta"]
    for e, (a, v) in enumerate(zip(mc.coeffs, mc.valuations)):
        lines.append(f"{e:<4} {'inf' if v is None else v:<4} {a}")
    _emit(args, mc.to_json(), "\n".join(lines))
    return 0


def cmd_verify(args) -> int:
    grid = dict(DEFAULT_GRIDS[args.suite])
    if args.contexts:
        grid["contexts"] = parse_contexts(args.contexts)
    elif args.p is not None or args.t is not None:
        ps = parse_int_list(args.p) if args.p else sorted({p for p, _ in grid["contexts"]})
        ts = parse_int_list(args.t) if args.t else sorted({t for _, t in grid["contexts"]})
        grid["contexts"] = [(p, t) for p in ps for t in ts]
    for flag, key in (("n_max", "n_max"), ("m_max", "m_max"), ("samples", "samples"), ("deg", "deg"), ("K", "K"), ("prec", "prec")):
        value = getattr(args, flag)
        if value is not None and key in grid:
            grid[key] = value
    if args.s:
        s = parse_int_list(args.s)
        for key in ("s_odd", "s_two", "s"):
            if key in grid:
                grid[key] = s
    if args.a:
        a = parse_int_list(args.a)
        grid["a"] = (min(a), max(a))
    if args.r:
        grid["r"] = parse_int_list(args.r)
    if args.multipliers:
        grid["multipliers"] = parse_int_list(args.multipliers)
    report = run_suite(args.suite, grid, seed=args.seed)
    text = [report.summary()]
    for f in report.failures[:20]:
        text.append(f"  FAIL {f['input']}: observed {f['observed']}, expected {f['expected']}")
    if args.suite == "gf":
        for key, r in report.details["reports"].items():
            verdict = "classical convention exact" if r["classical_exact"] else f"best: {r['best_convention']}"
            text.append(f"  {key}: {verdict}; closed form exact: {r['closed_form_exact']}")
    _emit(args, report.to_json(), "\n".join(text))
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=None, help="p-adic digits (default: $PGAM_DEFAULT_PREC or 12)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="also write the JSON payload to this path")

    ctx = argparse.ArgumentParser(add_help=False)
    ctx.add_argument("-p", "--p", type=int, default=3)
    ctx.add_argument("-t", "--t", type=int, default=1)

    parser = argparse.ArgumentParser(prog="pgamma", description="q-adic factorials and the generalized p-adic gamma function")
    sub = parser.add_subparsers(dest="command", required=True)

    f = sub.add_parser("factorial", parents=[common, ctx], help="n!_q as an exact integer")
    f.add_argument("-n", type=int, required=True)
    f.add_argument("--variant", choices=[v.value for v in FactorialVariant], default="qskip")
    f.set_defaults(func=cmd_factorial)

    tb = sub.add_parser("table", parents=[common, ctx], help="n!_q for n = 0..max")
    tb.add_argument("--max", type=int, default=11)
    tb.add_argument("--variant", choices=[v.value for v in FactorialVariant], default="qskip")
    tb.set_defaults(func=cmd_table)

    gp = sub.add_parser("gamma-p", parents=[common], help="Morita Gamma_p(x)")
    gp.add_argument("-p", "--p", type=int, default=3)
    gp.add_argument("-x", required=True, help="integer, a/b, or digits d0,d1,...")
    gp.set_defaults(func=cmd_gamma_p)

    gq = sub.add_parser("gamma-q", parents=[common, ctx], help="generalized Gamma_q(x)")
    gq.add_argument("-x", required=True, help="integer, a/b, or digits d0,d1,...")
    gq.set_defaults(func=cmd_gamma_q)

    m = sub.add_parser("mahler", parents=[common, ctx], help="Mahler coefficients of Gamma_q(x+1)")
    m.add_argument("-K", type=int, required=True)
    m.set_defaults(func=cmd_mahler)

    v = sub.add_parser("verify", parents=[common], help="run a verification sweep")
    v.add_argument("suite", choices=sorted(SUITES))
    v.add_argument("--p", help="primes, e.g. 3 or 3,5")
    v.add_argument("--t", help="exponents, e.g. 1,2")
    v.add_argument("--contexts", help="p:t pairs, e.g. 2:2,3:2,5:1")
    v.add_argument("--s", help="window exponents s")
    v.add_argument("--a", help="window starts, e.g. 1..200")
    v.add_argument("--r", help="binomial-ratio levels r")
    v.add_argument("--multipliers", help="Gauss-Legendre multipliers")
    v.add_argument("--n-max", dest="n_max", type=int)
    v.add_argument("--m-max", dest="m_max", type=int)
    v.add_argument("--samples", type=int)
    v.add_argument("--deg", type=int)
    v.add_argument("-K", type=int)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PrecisionError as exc:
        print(f"pgamma: precision: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError, ZeroDivisionError) as exc:
        print(f"pgamma: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
