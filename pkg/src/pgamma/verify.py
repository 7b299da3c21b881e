"""Parameter sweeps over the congruences and identities, with JSON reports.

Each suite takes a grid (plain dict, defaults below) and a seed, and
returns a :class:`VerificationReport`. A suite fails iff its failure list
is non-empty. Randomness comes only from ``random.Random(seed)``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import gamma as G
from .factorial import factorial_q, ratio_congruence, wilson_check
from .mahler import coefficients, evaluate, gf_compare
from .padic import PrimeContext, from_integer, vp_int

__all__ = ["VerificationReport", "SUITES", "DEFAULT_GRIDS", "run_suite"]

CONTEXT_GRID = [(2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)]


@dataclass
class VerificationReport:
    suite: str
    grid: dict
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, inp: dict, observed, expected) -> bool:
        self.checked += 1
        if not cond:
            self.failures.append({"input": inp, "observed": str(observed), "expected": str(expected)})
        return cond

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "grid": self.grid,
            "checked": self.checked,
            "failures": self.failures,
            "elapsed_ms": self.elapsed_ms,
        }
        if self.details:
            out["details"] = self.details
        return out

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} failures"
        return f"{self.suite}: {self.checked} checks, {status}"


def _residues(rng: random.Random, p: int, prec: int, count: int) -> list[int]:
    return [rng.randrange(p**prec) for _ in range(count)]


def _ctx_list(grid: dict) -> list[PrimeContext]:
    return [PrimeContext(p, t) for p, t in grid["contexts"]]


def suite_wilson(grid: dict, rng: random.Random, rep: VerificationReport) -> None:
    a_lo, a_hi = grid["a"]
    for ctx in _ctx_list(grid):
        for s in grid["s_odd"] if ctx.p != 2 else grid["s_two"]:
            for a in range(a_lo, a_hi + 1):
                v = wilson_check(a, s, ctx)
                rep.check(v.holds, {"p": ctx.p, "t": ctx.t, "s": s, "a": a}, v.residue, v.expected % v.modulus)


def suite_ratio(grid: dict, rng: random.Random, rep: VerificationReport) -> None:
    for ctx in _ctx_list(grid):
        for s in grid["s_odd"] if ctx.p != 2 else grid["s_two"]:
            for n in range(grid["n_max"] + 1):
                for m in range(1, grid["m_max"] + 1):
                    v = ratio_congruence(n, m, s, ctx)
                    rep.check(v.holds, {"p": ctx.p, "t": ctx.t, "s": s, "n": n, "m": m}, v.residue, v.expected % v.modulus)


def suite_ota(grid: dict, rng: random.Random, rep: VerificationReport) -> None:
    for ctx in _ctx_list(grid):
        for n in range(grid["n_max"] + 1):
            truth = G.gamma_q_nat(n + 1, ctx)
            inp = {"p": ctx.p, "t": ctx.t, "n": n}
            rep.check(G.ota_gamma(n, ctx) == truth, {**inp, "form": "ota"}, G.ota_gamma(n, ctx), truth)
            for case in ("general", "mq+lambda"):
                val = G.gamma_q_closed(n, ctx, case)
                rep.check(val == truth, {**inp, "form": case}, val, truth)
        # valuation law, with the factorial built incrementally
        f = 1
        for n in range(grid["v_max"] + 1):
            if n and n % ctx.q:
                f *= n
            if n in grid["v_probe"] or n == grid["v_max"]:
                rep.check(f == factorial_q(n, ctx), {"p": ctx.p, "t": ctx.t, "n": n, "form": "factorial"}, "", "")
            b = G.exponents(n, ctx).B
            rep.check(vp_int(f, ctx.p) == b, {"p": ctx.p, "t": ctx.t, "n": n, "form": "valuation"}, vp_int(f, ctx.p), b)


def suite_closed(grid: dict, rng: random.Random, rep: VerificationReport) -> None:
    for ctx in _ctx_list(grid):
        for s in grid["s"]:
            qs = ctx.q**s
            for case, n in (("q^s-1", qs - 1), ("q^s", qs)):
                val, truth = G.gamma_q_closed(n, ctx, case), G.gamma_q_nat(n + 1, ctx)
                rep.check(val == truth, {"p": ctx.p, "t": ctx.t, "s": s, "case": case}, val, truth)
            lo, hi = G.exponents(qs - 1, ctx), G.exponents(qs, ctx)
            inp = {"p": ctx.p, "t": ctx.t, "s": s}
            rep.check(hi.B == lo.B, {**inp, "relation": "B"}, hi.B, lo.B)
            rep.check(hi.A == lo.A + ctx.t, {**inp, "relation": "A+t"}, hi.A, lo.A + ctx.t)


def suite_functional(grid: dict, rng: random.Random, rep: VerificationReport) -> None:
    prec = grid["prec"]
    for ctx in _ctx_list(grid):
        xs = list(range(1, grid["int_max"] + 1)) + _residues(rng, ctx.p, prec, grid["samples"])
        for x in xs:
            xp = from_integer(x, ctx.p, prec)
            pred, branch = G.functional_step(xp, ctx)
            direct = G.gamma_q(xp + 1, ctx)
            rep.check(pred.congruent(direct), {"p": ctx.p, "t": ctx.t, "x": str(x), "branch": branch}, pred, direct)


def suite_complement(grid: dict, rng: random.Random, rep: VerificationReport) -> None:
    prec = grid["prec"]
    branches: dict[str, int] = {}
    for ctx in _ctx_list(grid):
        for x in _residues(rng, ctx.p, prec, grid["samples"]):
            c = G.complement(from_integer(x, ctx.p, prec), ctx)
            key = f"{ctx.p}:{ctx.t}:{c.branch}"
            branches[key] = branches.get(key, 0) + 1
            rep.check(c.holds, {"p": ctx.p, "t": ctx.t, "x": str(x), "branch": c.branch}, c.lhs, c.rhs)
    for p, t in grid["half_contexts"]:
        ctx = PrimeContext(p, t)
        g = G.gamma_q(ctx.embed(Fraction(1, 2), grid["half_prec"] + t - 1), ctx)
        sq = g * g
        # the complement sign at x = 1/2, where R_t(1/2) = (q + 1)/2
        sign = (-1) ** (t - 1 + (ctx.q + 1) // 2)
        rep.check(sq.congruent(sign), {"p": p, "t": t, "x": "1/2", "form": "square"}, sq, sign)
    rep.details["branches"] = branches


def suite_gauss_legendre(grid: dict, rng: random.Random, rep: VerificationReport) -> None:
    prec = grid["prec"]
    for ctx in _ctx_list(grid):
        xs = list(range(grid["int_max"] + 1)) + _residues(rng, ctx.p, prec, grid["samples"])
        for n in grid["multipliers"]:
            for x in xs:
                c = G.gauss_legendre(from_integer(x, ctx.p, prec), n, ctx)
                rep.check(c.holds, {"p": ctx.p, "t": ctx.t, "N": n, "x": str(x)}, c.lhs, c.rhs)
            z, ok = G.roots_product(n, ctx, precision=grid["roots_prec"] + ctx.t - 1)
            rep.check(ok and z.precision >= grid["roots_prec"], {"p": ctx.p, "t": ctx.t, "N": n, "form": "roots"}, z**4, 1)


def suite_binomial_ratio(grid: dict, rng: random.Random, rep: VerificationReport) -> None:
    for ctx in _ctx_list(grid):
        for b in range(2, ctx.q - 1):
            for a in range(1, b):
                for r in grid["r"]:
                    res = G.binomial_ratio(a, b, r, ctx, precision=grid["prec"])
                    inp = {"p": ctx.p, "t": ctx.t, "a": a, "b": b, "r": r}
                    rep.check(res.holds, {**inp, "form": "exact"}, res.lhs, res.rhs)
                    rep.check(res.second_holds, {**inp, "form": "negative-arguments"}, res.second_lhs, res.second_rhs)


def suite_mahler(grid: dict, rng: random.Random, rep: VerificationReport) -> None:
    prec, tol = grid["prec"], grid["tol"]
    decay = {}
    for ctx in _ctx_list(grid):
        mc = coefficients(ctx, grid["K"])
        tag = {"p": ctx.p, "t": ctx.t}
        for n in range(grid["recon_n"] + 1):
            val, truth = mc.reconstruct(n), G.gamma_q_nat(n + 1, ctx)
            rep.check(val == truth, {**tag, "n": n, "form": "reconstruction"}, val, truth)
        vals = [v for v in mc.valuations]
        head = min(v for v in vals[:51] if v is not None)
        tail = min((v for v in vals[150:201] if v is not None), default=None)
        last = vals[grid["K"]]
        decay[f"{ctx.p}:{ctx.t}"] = {"min_0_50": head, "min_150_200": tail, "v_K": last}
        rep.check(tail is None or tail > head, {**tag, "form": "decay-window"}, tail, f"> {head}")
        rep.check(last is None or last >= grid["v_K_min"], {**tag, "form": "decay-last"}, last, f">= {grid['v_K_min']}")
        for x in _residues(rng, ctx.p, prec, grid["samples"]):
            xp = from_integer(x, ctx.p, prec)
            approx = evaluate(xp, mc, grid["eval_K"])
            direct = G.gamma_q(xp + 1, ctx)
            ok = approx.precision >= tol and approx.congruent(direct, tol)
            rep.check(ok, {**tag, "x": str(x), "form": "evaluation"}, approx, direct)
    rep.details["decay"] = decay


def suite_gf(grid: dict, rng: random.Random, rep: VerificationReport) -> None:
    reports = {}
    for ctx in _ctx_list(grid):
        r = gf_compare(ctx, grid["deg"])
        reports[f"{ctx.p}:{ctx.t}"] = r.to_json()
        inp = {"p": ctx.p, "t": ctx.t, "deg": grid["deg"]}
        rep.check(r.closed_form_exact, {**inp, "form": "closed"}, "mismatch", "exact")
        if ctx.t == 1:
            rep.check(r.classical_exact, {**inp, "form": "classical"}, r.best_convention, "classical convention exact")
    rep.details["reports"] = reports


DEFAULT_GRIDS: dict[str, dict] = {
    "wilson": {
        "contexts": [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2), (2, 1), (2, 2), (2, 3)],
        "s_odd": [1, 2],
        "s_two": [3, 4],
        "a": (1, 200),
    },
    "ratio": {
        "contexts": [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (7, 2), (2, 1), (2, 2)],
        "s_odd": [1, 2],
        "s_two": [3, 4],
        "n_max": 100,
        "m_max": 3,
    },
    "ota": {"contexts": CONTEXT_GRID, "n_max": 500, "v_max": 2000, "v_probe": [0, 1, 500, 1000]},
    "closed": {"contexts": CONTEXT_GRID, "s": [1, 2]},
    "functional": {"contexts": CONTEXT_GRID, "int_max": 300, "samples": 100, "prec": 8},
    "complement": {
        "contexts": [(3, 1), (3, 2), (5, 1), (5, 2), (2, 2), (2, 3)],
        "samples": 200,
        "prec": 8,
        "half_contexts": [(p, t) for p in (3, 5, 7) for t in (1, 2, 3)],
        "half_prec": 6,
    },
    "gauss-legendre": {
        "contexts": [(3, 1), (3, 2), (5, 1), (5, 2)],
        "multipliers": [2, 4],
        "int_max": 50,
        "samples": 20,
        "prec": 8,
        "roots_prec": 6,
    },
    "binomial-ratio": {"contexts": [(2, 2), (3, 2), (5, 1)], "r": [1, 2, 3], "prec": 8},
    "mahler": {
        "contexts": CONTEXT_GRID,
        "K": 200,
        "recon_n": 100,
        "eval_K": 100,
        "samples": 20,
        "prec": 12,
        "tol": 6,
        "v_K_min": 6,
    },
    "gf": {"contexts": [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (5, 2)], "deg": 30},
}

SUITES: dict[str, Callable] = {
    "wilson": suite_wilson,
    "ratio": suite_ratio,
    "ota": suite_ota,
    "closed": suite_closed,
    "functional": suite_functional,
    "complement": suite_complement,
    "gauss-legendre": suite_gauss_legendre,
    "binomial-ratio": suite_binomial_ratio,
    "mahler": suite_mahler,
    "gf": suite_gf,
}


def run_suite(name: str, overrides: dict | None = None, seed: int = 0) -> VerificationReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    grid = {**DEFAULT_GRIDS[name], **(overrides or {})}
    rep = VerificationReport(name, _jsonable(grid))
    start = time.perf_counter()
    SUITES[name](grid, random.Random(seed), rep)
    rep.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return rep


def _jsonable(grid: dict) -> dict:
    out = {}
    for k, v in grid.items():
        if isinstance(v, (list, tuple)):
            v = [list(e) if isinstance(e, tuple) else e for e in v]
        out[k] = v
    out["seed_note"] = "random residues drawn from random.Random(seed)"
    return out
