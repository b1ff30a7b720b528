"""Command line front end.

Five commands, one report shape.  Every command emits either a human
summary (default) or, with --json, a machine report with a fixed schema
(shipped at towerlab/schemas/report.schema.json): schema_version, a job
echo, a verdict string, witnesses (places rendered as their refinement
chains), integer-pair bounds, and a notes array carrying the library's
discrepancy flags.  Reports are deterministic: keys are sorted, places are
sorted, and the factorization seed is fixed (override with TOWERLAB_SEED).

Exit codes: 0 when the verdict is positive (holds / true / exact bounds
computed), 1 when a well-formed analysis returns a negative or inconclusive
verdict, 2 on any error (bad input, parse failure, internal refusal).

Polynomial grammar for --F/--f/--g: integer literals (reduced mod p),
variables x and y, operators + - * ^ and parentheses; ^ binds tightest,
then *, then + and -, all left-associative.  Field elements for --a/--b
use the same grammar with the single variable t naming a generator of
GF(q) over its prime field.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import ffield
from .basicfield import genus_from_table, ram_table, reconcile_different, zeta_genus
from .checker import FamilyParams, check_theorem, verify_family_facts
from .errors import TowerlabError
from .ffield import BivarPoly, FFElem, FFPoly, FiniteField, make_field
from .omfactor import PlaceExt
from .pyramid import RamHypotheses, climb, render_pyramid
from .ratfunc import RatPlace

__all__ = ["ParseError", "JobSpec", "parse_poly", "parse_elem", "run", "main"]

SCHEMA_VERSION = 1


class ParseError(TowerlabError):
    """Syntax error in a polynomial expression; carries position and the
    set of token kinds that would have been accepted there."""

    def __init__(self, message: str, pos: int, expected: tuple[str, ...]):
        self.pos = pos
        self.expected = tuple(sorted(expected))
        super().__init__(
            f"{message} at offset {pos}; expected one of: "
            + ", ".join(self.expected)
        )


def _tokenize(expr: str):
    toks = []
    i, n = 0, len(expr)
    while i < n:
        ch = expr[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and expr[j].isdigit():
                j += 1
            toks.append(("INT", expr[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (expr[j].isalnum() or expr[j] == "_"):
                j += 1
            toks.append(("NAME", expr[i:j], i))
            i = j
            continue
        if ch in "+-*^()":
            toks.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(
            f"unexpected character {ch!r}", i,
            ("integer", "variable", "+", "-", "*", "^", "(", ")"),
        )
    toks.append(("EOF", "", n))
    return toks


class _Parser:
    """Recursive descent over expr := term (('+'|'-') term)*,
    term := factor ('*' factor)*, factor := '-' factor | atom ('^' INT)*,
    atom := INT | NAME | '(' expr ')'.  Evaluates as it parses; the ring is
    whatever the scalar/variable environment supplies."""

    def __init__(self, expr: str, env: dict, scalar):
        self.toks = _tokenize(expr)
        self.idx = 0
        self.env = env
        self.scalar = scalar
        self.atoms = ("integer", "(") + tuple(sorted(env))

    def peek(self):
        return self.toks[self.idx]

    def take(self):
        tok = self.toks[self.idx]
        self.idx += 1
        return tok

    def parse(self):
        val = self.expr()
        kind, text, pos = self.peek()
        if kind != "EOF":
            raise ParseError(
                f"trailing input {text!r}", pos, ("+", "-", "*", "^", "end")
            )
        return val

    def expr(self):
        kind, _, _ = self.peek()
        if kind == "+":
            self.take()
        val = self.term()
        while True:
            kind, _, _ = self.peek()
            if kind == "+":
                self.take()
                val = val + self.term()
            elif kind == "-":
                self.take()
                val = val - self.term()
            else:
                return val

    def term(self):
        val = self.factor()
        while self.peek()[0] == "*":
            self.take()
            val = val * self.factor()
        return val

    def factor(self):
        kind, _, _ = self.peek()
        if kind == "-":
            self.take()
            return -self.factor()
        val = self.atom()
        while self.peek()[0] == "^":
            self.take()
            kind, text, pos = self.peek()
            if kind != "INT":
                raise ParseError("exponent must be an integer", pos, ("integer",))
            self.take()
            val = val ** int(text)
        return val

    def atom(self):
        kind, text, pos = self.take()
        if kind == "INT":
            return self.scalar(int(text))
        if kind == "NAME":
            if text not in self.env:
                raise ParseError(f"unknown variable {text!r}", pos, self.atoms)
            return self.env[text]
        if kind == "(":
            val = self.expr()
            kind, _, pos = self.peek()
            if kind != ")":
                raise ParseError("unbalanced parenthesis", pos, (")",))
            self.take()
            return val
        raise ParseError(f"unexpected token {text!r}", pos, self.atoms)


def parse_poly(expr: str, field: FiniteField) -> BivarPoly:
    """Exact bivariate polynomial from an expression in x and y."""
    one = FFPoly(field, [1])
    env = {
        "x": BivarPoly(field, [FFPoly(field, [0, 1])]),
        "y": BivarPoly(field, [FFPoly(field, []), one]),
    }

    def scalar(n: int) -> BivarPoly:
        return BivarPoly(field, [FFPoly(field, [n % field.p])])

    return _Parser(expr, env, scalar).parse()


def parse_unipoly(expr: str, field: FiniteField, what: str) -> FFPoly:
    """Univariate polynomial in x (no y allowed)."""
    F = parse_poly(expr, field)
    if F.deg_y() > 0:
        raise ParseError(f"{what} must not involve y", 0, ("x-only expression",))
    return F.ycoeff(0)


def parse_elem(expr: str, field: FiniteField) -> FFElem:
    """Field element from an expression in t (a generator over GF(p))."""
    env = {"t": field.gen()}

    def scalar(n: int) -> FFElem:
        return field.elem(n % field.p)

    val = _Parser(expr, env, scalar).parse()
    if not isinstance(val, FFElem):
        raise ParseError("expected a field element", 0, ("t", "integer"))
    return val


@dataclass(frozen=True)
class JobSpec:
    """One CLI invocation: the command plus its echoed parameters."""

    command: str
    params: dict


def _frac(x) -> str:
    return str(Fraction(x))


def _place_json(name: str, pl: PlaceExt) -> dict:
    return {
        "name": name,
        "base": repr(pl.base),
        "side": pl.side,
        "e": pl.e,
        "f": pl.f,
        "d_min": pl.dmin,
        "d_max": pl.dmax,
        "d_exact": pl.d_exact,
        "residue_degree_abs": pl.residue_degree_abs(),
        "refinement": [
            [k, None if s is None else _frac(s), r] for k, s, r in pl.refinement
        ],
    }


def _report(job: JobSpec, verdict: str, witnesses=(), bounds=None, notes=(),
            data=None) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "job": {"command": job.command, **job.params},
        "verdict": verdict,
        "witnesses": list(witnesses),
        "bounds": dict(bounds or {}),
        "notes": list(notes),
        "data": dict(data or {}),
    }


def _field_of(job: JobSpec) -> FiniteField:
    return make_field(job.params["p"], job.params.get("k", 1))


def _run_analyze(job: JobSpec):
    K = _field_of(job)
    F = parse_poly(job.params["F"], K)
    rt = ram_table(F, max_depth=job.params["max_depth"])
    gr = genus_from_table(rt)
    wits, bounds = [], {}
    for P, pls in rt.rows:
        for idx, pl in enumerate(pls):
            name = f"{repr(P)}#{idx}"
            wits.append(_place_json(name, pl))
            bounds[name + ":d"] = [pl.dmin, pl.dmax]
    lo, hi = gr.diff_degree_bounds
    bounds["different_degree"] = [lo, hi]
    g_hi = max(gr.genus, (hi + 2 - 2 * rt.m) // 2)
    bounds["genus"] = [gr.genus, gr.genus if gr.exact else g_hi]
    verdict = "exact" if gr.exact else "bounds"
    data = {"m": rt.m, "genus": gr.genus, "genus_exact": gr.exact}
    return 0, _report(job, verdict, wits, bounds, (), data)


def _run_check_theorem(job: JobSpec):
    K = _field_of(job)
    F = parse_poly(job.params["F"], K)
    f = parse_unipoly(job.params["f"], K, "--f")
    v = check_theorem(F, f)
    wits = [_place_json(n, pl) for n, pl in sorted(v.witnesses.items())]
    bounds = {w["name"] + ":d": [w["d_min"], w["d_max"]] for w in wits}
    data = {"failed_conditions": list(v.failed_conditions)}
    if v.hypotheses is not None:
        h = v.hypotheses
        data["hypotheses"] = {
            "m": h.m, "n": h.n, "r": h.r, "p": h.p,
            "d_prime_min": h.d_prime_min,
        }
        data["conclusion"] = v.conclusion
    verdict = "holds" if v.holds else "fails"
    return (0 if v.holds else 1), _report(job, verdict, wits, bounds, v.notes, data)


def _run_climb(job: JobSpec):
    h = RamHypotheses(
        m=job.params["m"],
        n=job.params["n"],
        r=job.params["r"],
        p=job.params["p"],
        d_prime_min=job.params.get("d_prime_min") or 0,
    )
    rep = climb(h, job.params["levels"])
    data = {
        "c": _frac(rep.c),
        "levels": [
            {
                "i": lv.i,
                "degree": lv.degree,
                "d_bound": lv.d_bound,
                "genus_contribution": _frac(lv.genus_contribution),
            }
            for lv in rep.levels
        ],
        "series_terms": [_frac(t) for t in rep.series_terms],
        "series_partial_sums": [_frac(s) for s in rep.series_partial_sums],
    }
    bounds = {
        f"level_{lv.i}:d": [lv.d_bound, lv.d_bound] for lv in rep.levels
    }
    code = 0 if rep.verdict == "InfiniteGenus" else 1
    return code, _report(job, rep.verdict, (), bounds, rep.notes, data)


def _run_family(job: JobSpec):
    q = job.params["q"]
    p, s = _prime_power(q)
    K = make_field(p, s)
    params = FamilyParams(
        q=q,
        a=parse_elem(job.params["a"], K),
        b=parse_elem(job.params["b"], K),
        g=parse_unipoly(job.params["g"], K, "--g"),
    )
    rep = verify_family_facts(params)
    wits = [_place_json(n, pl) for n, pl in sorted(rep.witnesses.items())]
    bounds = {w["name"] + ":d": [w["d_min"], w["d_max"]] for w in wits}
    data = {
        "F": rep.tower.F.to_str(),
        "m": params.m,
        "c": repr(params.c),
        "checks": [
            {"name": c.name, "title": c.title, "passed": c.passed,
             "detail": c.detail}
            for c in rep.checks
        ],
    }
    ok = rep.all_pass
    return (0 if ok else 1), _report(
        job, "true" if ok else "fails", wits, bounds, rep.notes, data
    )


def _run_genus(job: JobSpec):
    K = _field_of(job)
    F = parse_poly(job.params["F"], K)
    rt = ram_table(F, max_depth=job.params["max_depth"])
    gr = genus_from_table(rt)
    lo, hi = gr.diff_degree_bounds
    cap = job.params.get("cap") or max(1, gr.genus, (hi + 2 - 2 * rt.m) // 2)
    z = zeta_genus(F, cap, max_depth=job.params["max_depth"])
    notes = []
    if gr.exact:
        agree = z == gr.genus
        genus = gr.genus
    else:
        rt = reconcile_different(rt, z)  # raises if z is not in the interval
        gr = genus_from_table(rt)
        agree = gr.exact and gr.genus == z
        genus = gr.genus
        notes.append(
            "wild different exponents were fixed by the independent "
            "point-count genus oracle"
        )
    bounds = {
        "different_degree": list(gr.diff_degree_bounds),
        "genus": [genus, genus],
    }
    data = {"genus": genus, "zeta_genus": z, "riemann_hurwitz_genus": genus,
            "cap": cap}
    verdict = "true" if agree else "false"
    return (0 if agree else 1), _report(job, verdict, (), bounds, notes, data)


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise TowerlabError(f"q = {q} is not a prime power")
    p = min(d for d in range(2, q + 1) if q % d == 0)
    s, t = 0, q
    while t % p == 0:
        t //= p
        s += 1
    if t != 1 or not ffield.is_prime(p):
        raise TowerlabError(f"q = {q} is not a prime power")
    return p, s


_RUNNERS = {
    "analyze": _run_analyze,
    "check-theorem": _run_check_theorem,
    "climb": _run_climb,
    "family": _run_family,
    "genus": _run_genus,
}


def run(job: JobSpec) -> tuple[int, dict]:
    """Execute one job; returns (exit_code, report).  Errors become a
    structured error report with exit code 2."""
    try:
        return _RUNNERS[job.command](job)
    except TowerlabError as exc:
        rep = _report(job, "error")
        rep["error"] = {"type": type(exc).__name__, "message": str(exc)}
        return 2, rep


def _text_summary(job: JobSpec, report: dict) -> str:
    lines = [f"{job.command}: verdict {report['verdict']}"]
    if "error" in report:
        err = report["error"]
        lines.append(f"  {err['type']}: {err['message']}")
        return "\n".join(lines)
    data = report["data"]
    if report["witnesses"]:
        rows = [
            (
                w["name"], str(w["e"]), str(w["f"]),
                f"[{w['d_min']},{w['d_max']}]"
                if w["d_exact"] is None else str(w["d_exact"]),
                " ; ".join(
                    f"{k} @ {s if s is not None else 'inf'}"
                    + (f" -> {r}" if r is not None else "")
                    for k, s, r in w["refinement"]
                ),
            )
            for w in report["witnesses"]
        ]
        head = ("place", "e", "f", "d", "refinement")
        widths = [
            max(len(head[c]), *(len(r[c]) for r in rows))
            for c in range(len(head))
        ]
        fmt = "  ".join("{:<%d}" % w for w in widths)
        lines.append("  " + fmt.format(*head))
        for r in rows:
            lines.append("  " + fmt.format(*r))
    if job.command == "climb":
        lines.append("  level  degree  d_bound  partial_sum")
        for lv, s in zip(data["levels"], data["series_partial_sums"]):
            lines.append(
                f"  {lv['i']:>5}  {lv['degree']:>6}  {lv['d_bound']:>7}  {s}"
            )
        if job.params["levels"] <= 4:
            h = RamHypotheses(
                m=job.params["m"], n=job.params["n"], r=job.params["r"],
                p=job.params["p"],
                d_prime_min=job.params.get("d_prime_min") or 0,
            )
            lines.append("")
            lines.append(render_pyramid(h, job.params["levels"]))
    if job.command == "family":
        for c in data["checks"]:
            mark = "pass" if c["passed"] else "FAIL"
            lines.append(f"  ({c['name']}) {mark}  {c['title']}: {c['detail']}")
    if job.command == "check-theorem" and data["failed_conditions"]:
        for reason in data["failed_conditions"]:
            lines.append(f"  failed {reason}")
    if "genus" in data:
        lines.append(f"  genus = {data['genus']}")
    if "zeta_genus" in data:
        lines.append(f"  independent point-count genus = {data['zeta_genus']}")
    for note in report["notes"]:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def _build_argparser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="towerlab",
        description="ramification analysis for recursive towers of function "
        "fields over finite fields",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp, poly=True):
        sp.add_argument("--p", type=int, required=True, help="characteristic")
        sp.add_argument("--k", type=int, default=1,
                        help="extension degree, base field GF(p^k)")
        if poly:
            sp.add_argument("--F", required=True,
                            help="defining polynomial F(x, y)")
        sp.add_argument("--max-depth", type=int, default=8, dest="max_depth")
        sp.add_argument("--json", action="store_true",
                        help="emit the machine-readable report")

    sp = sub.add_parser("analyze", help="ramification table and genus bounds")
    common(sp)

    sp = sub.add_parser("check-theorem",
                        help="verify the infinite-genus criterion for (F, f)")
    common(sp)
    sp.add_argument("--f", required=True,
                    help="monic irreducible f(x); the criterion uses its "
                    "zero on both sides")

    sp = sub.add_parser("climb", help="per-level lower bounds in the tower")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--d-prime-min", type=int, default=None,
                    dest="d_prime_min")
    sp.add_argument("--levels", type=int, default=8)
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("family",
                        help="build and verify one member of the built-in "
                        "wild-tower family")
    sp.add_argument("--q", type=int, required=True, help="prime power")
    sp.add_argument("--a", default="0", help="element of GF(q), in t")
    sp.add_argument("--b", default="1", help="nonzero element of GF(q), in t")
    sp.add_argument("--g", required=True, help="polynomial in x, deg < q+1")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("genus",
                        help="genus with an independent point-count cross-check")
    common(sp)
    sp.add_argument("--cap", type=int, default=None,
                    help="genus search cap for the point-count oracle")
    return ap


def main(argv=None) -> int:
    seed = os.environ.get("TOWERLAB_SEED")
    if seed is not None:
        ffield.FACTOR_SEED = int(seed)
    args = _build_argparser().parse_args(argv)
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "json") and v is not None
    }
    job = JobSpec(command=args.command, params=params)
    code, report = run(job)
    if args.json:
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(_text_summary(job, report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
