"""Command-line front end: ``phachain <command> [flags]``.

Exit codes: 0 success, 1 computation failure (structured JSON error on
stdout), 2 invalid usage.
"""

from __future__ import annotations

import argparse
import math
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import chain, closed_form, numeric, susy, weyl
from .expr import ParseError, parse_rational, parse_ratfun
from .ratfun import PoleError, RatFun


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"malformed rational {text!r}: {exc}") from None


def _rational_list(text: str) -> list:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _float_list(text: str) -> list:
    try:
        return [float(parse_rational(t)) for t in text.split(",") if t.strip()]
    except (ParseError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"malformed number list {text!r}") from None


def _ratfun(var: str = "x"):
    def conv(text: str) -> RatFun:
        try:
            return parse_ratfun(text, var)
        except (ParseError, ZeroDivisionError) as exc:
            raise argparse.ArgumentTypeError(f"malformed expression {text!r}: {exc}") from None

    return conv


def _seed(text: str) -> susy.SeedSpec:
    parts = _float_list(text)
    if len(parts) not in (1, 2):
        raise argparse.ArgumentTypeError(f"--seed expects 'eps,nu', got {text!r}")
    return susy.SeedSpec(parts[0], parts[1] if len(parts) == 2 else 0.0)


def _fs(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class _Usage(Exception):
    pass


# -- output helpers ------------------------------------------------------

def _emit_table(out, header, rows, fmt, extra=None):
    if fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in row])
    else:
        payload = {"columns": list(header), "rows": [list(r) for r in rows]}
        if extra:
            payload.update(extra)
        out.write(json.dumps(payload) + "\n")


# -- commands --------------------------------------------------------------

def cmd_seed(args, out):
    sol = chain.symmetric_seed(args.n, args.lam, args.c0)
    if args.format == "csv":
        _emit_table(out, ["i", "eps", "alpha", "f"],
                    [(i, _fs(e), _fs(a), str(f)) for i, (e, a, f) in enumerate(zip(sol.params.eps, sol.alpha, sol.f))],
                    "csv")
    else:
        out.write(chain.solution_to_json(sol) + "\n")


def _member_record(member) -> dict:
    rec = chain.solution_to_dict(member.solution)
    return {"index": member.index, "word": weyl.format_word(member.word), **rec}


def cmd_orbit(args, out):
    if args.m < 1:
        raise _Usage("--m must be >= 1")
    orb = weyl.orbit(args.m + 1, args.depth, args.lam, args.c0)
    if args.edges:
        _emit_table(out, ["source", "generator", "target"],
                    [(s, str(g), t) for s, g, t in orb.edges], args.format)
        return
    if args.format == "csv":
        n = args.m + 1
        header = ["index", "word"] + [f"alpha_{i}" for i in range(n)] + [f"f_{i}" for i in range(n)]
        rows = [[m.index, weyl.format_word(m.word)] + [_fs(a) for a in m.alpha] + [str(f) for f in m.solution.f]
                for m in orb]
        _emit_table(out, header, rows, "csv")
    else:
        for m in orb:
            out.write(json.dumps(_member_record(m)) + "\n")


def _load_solution(args) -> chain.ChainSolution:
    if args.input:
        text = sys.stdin.read() if args.input == "-" else open(args.input).read()
        return chain.solution_from_json(text.strip().splitlines()[0])
    if not args.f:
        raise _Usage("give --input or at least one --f")
    n = len(args.f)
    eps = args.eps if args.eps is not None else [Fraction(0)] * n
    if len(eps) != n:
        raise _Usage(f"--eps needs {n} values")
    try:
        params = chain.ChainParams(n, args.lam, tuple(eps), args.c0)
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    return chain.ChainSolution(params, tuple(args.f))


def cmd_residual(args, out):
    sol = _load_solution(args)
    res = chain.chain_residuals(sol)
    total = chain.sum_rule_check(sol)
    if args.format == "csv":
        _emit_table(out, ["equation", "residual"], [(i, str(r)) for i, r in enumerate(res)], "csv")
    else:
        out.write(json.dumps({
            "is_solution": all(r.is_zero() for r in res),
            "residuals": [chain.ratfun_to_dict(r) for r in res],
            "residuals_text": [str(r) for r in res],
            "sum_derivative": str(total),
            "lambda": _fs(sol.params.lam),
        }) + "\n")


def cmd_relations(args, out):
    report = weyl.verify_relations(args.m, args.trials, seed=args.seed)
    if args.format == "csv":
        _emit_table(out, ["relation", "status", "checked", "witness"],
                    [(c.name, c.status, c.checked, c.witness or "") for c in report.checks], "csv")
    else:
        out.write(json.dumps(report.to_dict()) + "\n")


def cmd_potential(args, out):
    v = chain.potential_from_f1(args.f1, args.eps1, unscaled=args.unscaled)
    if args.format == "csv":
        _emit_table(out, ["V"], [(str(v),)], "csv")
    else:
        out.write(json.dumps({"V": chain.ratfun_to_dict(v), "text": str(v),
                              "form": "unscaled" if args.unscaled else "factorization"}) + "\n")


def cmd_susy(args, out):
    seeds = args.seed or []
    xs = np.linspace(-args.x_max, args.x_max, args.points)
    report = susy.nonsingularity_check(seeds, xs)
    if not report.ok:
        raise susy.SingularTransformation(report.nodes)
    v = susy.partner_potential(seeds, xs)
    # a bound-state seed psi_n maps to zero: that level is gone from the partner
    levels = range(args.states + 1)
    gone = [n for n in levels if any(math.isclose(float(s.eps), n + 0.5, abs_tol=1e-12) for s in seeds)]
    kept = [n for n in levels if n not in gone]
    phis = [susy.transformed_state(seeds, n, xs) for n in kept]
    header = ["x", "V1"] + [f"phi_{n}" for n in kept]
    rows = [[float(x), float(vv)] + [float(p[i]) for p in phis] for i, (x, vv) in enumerate(zip(xs, v))]
    eps = [Fraction(s.eps).limit_denominator(10**12) for s in seeds]
    ladder = susy.ladder_polynomial(eps)
    # extremal energies = roots of N(E); the ones at eps_j + 1 are formal (non-normalizable)
    extremal = [Fraction(1, 2)] + [r for e in eps for r in (e, e + 1)]
    spectrum = susy.ladder_spectrum(extremal, args.ladder_count)
    extra = {
        "seeds": [{"eps": s.eps, "nu": s.nu} for s in seeds],
        "nonsingularity": report.to_dict(),
        "annihilated": gone,
        "ladder_polynomial": ladder.to_dict(),
        "spectra": {"extremal": [_fs(e) for e in extremal],
                    "ladders": [[_fs(e) for e in lad] for lad in spectrum["ladders"]]},
    }
    _emit_table(out, header, rows, args.format, extra)


def cmd_integrate(args, out):
    n = len(args.init)
    eps = args.eps if args.eps is not None else [-(i * args.lam) / n for i in range(n)]
    if len(eps) != n:
        raise _Usage(f"--eps needs {n} values")
    if n % 2 == 0:
        raise _Usage(f"period {n} is even; only odd periods can be integrated")
    params = chain.ChainParams(n, args.lam, tuple(eps), 0)
    sc = numeric.rk4_integrate(args.init, params, numeric.Grid(args.x0, args.x1, args.steps))
    header = ["x"] + [f"f_{i + 1}" for i in range(n)]
    rows = [[float(x)] + [float(v) for v in sc.f[:, k]] for k, x in enumerate(sc.x)]
    _emit_table(out, header, rows, args.format)


def cmd_painleve(args, out):
    x0, x1, steps = args.grid
    xs = np.linspace(x0, x1, int(steps) + 1)
    if args.five:
        if args.w is None:
            raise _Usage("--five needs --w")
        w = args.w
        dw, d2w = w.derivative(), w.derivative().derivative()
        p = closed_form.P5Params(args.c1, args.c2, args.c3, args.c4)
        res = closed_form.painleve5_residual(w.eval_array, p, xs, dw=dw.eval_array, d2w=d2w.eval_array)
        _emit_table(out, ["z", "residual"], [(float(z), float(r)) for z, r in zip(xs, res)], args.format,
                    {"max_residual": float(np.max(np.abs(res)))})
        return
    if args.g is None:
        raise _Usage("--four needs --g")
    g = args.g
    if args.fit:
        params, res = closed_form.fit_painleve4_params(g)
        if params is None:
            extra = {"fit": None, "residual": str(res)}
        else:
            extra = {"fit": {"b0": _fs(params.b0), "b1": _fs(params.b1)}, "residual": "0"}
        p = params or closed_form.P4Params(0, 0)
    else:
        if args.b0 is None or args.b1 is None:
            raise _Usage("--four needs --b0 and --b1 (or --fit)")
        p = closed_form.P4Params(args.b0, args.b1)
        res = closed_form.painleve4_residual_ratfun(g, p)
        extra = {"residual": str(res)}
    _, vals = closed_form.painleve4_residual(g, p, xs)
    extra["exact_zero"] = res.is_zero()
    extra["max_residual"] = float(np.max(np.abs(vals)))
    _emit_table(out, ["x", "residual"], [(float(x), float(r)) for x, r in zip(xs, vals)], args.format, extra)


# -- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="phachain", description="Dressing chains, Bäcklund orbits and SUSY partners.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt="json"):
        p.add_argument("--format", choices=("json", "csv"), default=fmt)
        return p

    p = common(sub.add_parser("seed", help="symmetric seed solution"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(1))
    p.add_argument("--c0", type=_rational, default=Fraction(0))
    p.set_defaults(func=cmd_seed)

    p = common(sub.add_parser("orbit", help="Bäcklund orbit of the seed (JSON lines)"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(1))
    p.add_argument("--c0", type=_rational, default=Fraction(0))
    p.add_argument("--depth", type=int, default=1)
    p.add_argument("--edges", action="store_true", help="emit the adjacency list instead of members")
    p.set_defaults(func=cmd_orbit)

    p = common(sub.add_parser("residual", help="exact chain residuals"))
    p.add_argument("--input", help="solution JSON file ('-' for stdin)")
    p.add_argument("--f", action="append", type=_ratfun(), help="one link; repeat per link")
    p.add_argument("--eps", type=_rational_list)
    p.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(1))
    p.add_argument("--c0", type=_rational, default=Fraction(0))
    p.set_defaults(func=cmd_residual)

    p = common(sub.add_parser("relations", help="verify the Weyl group relations"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_relations)

    p = common(sub.add_parser("potential", help="potential from f_1"))
    p.add_argument("--f1", type=_ratfun(), required=True)
    p.add_argument("--eps1", type=_rational, default=Fraction(0))
    p.add_argument("--unscaled", action="store_true", help="use V = f1' + f1^2 + eps1")
    p.set_defaults(func=cmd_potential)

    p = common(sub.add_parser("susy", help="oscillator SUSY partner"), fmt="csv")
    p.add_argument("--seed", action="append", type=_seed, help="'eps,nu'; repeat per seed")
    p.add_argument("--x-max", type=float, default=6.0)
    p.add_argument("--points", type=int, default=2001)
    p.add_argument("--states", type=int, default=5, help="emit phi_0..phi_N")
    p.add_argument("--ladder-count", type=int, default=5)
    p.set_defaults(func=cmd_susy)

    p = common(sub.add_parser("integrate", help="RK4 integration of an odd-period chain"), fmt="csv")
    p.add_argument("--init", type=_float_list, required=True, help="f_1..f_n at x0")
    p.add_argument("--lambda", dest="lam", type=_rational, default=Fraction(1))
    p.add_argument("--eps", type=_rational_list)
    p.add_argument("--x0", type=float, default=1.0)
    p.add_argument("--x1", type=float, default=2.0)
    p.add_argument("--steps", type=int, default=1000)
    p.set_defaults(func=cmd_integrate)

    p = common(sub.add_parser("painleve", help="Painlevé IV/V residuals"), fmt="csv")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--four", action="store_true")
    which.add_argument("--five", action="store_true")
    p.add_argument("--g", type=_ratfun("x"), help="Painlevé IV candidate g(x)")
    p.add_argument("--b0", type=_rational)
    p.add_argument("--b1", type=_rational)
    p.add_argument("--fit", action="store_true", help="solve for (b0, b1) instead of taking them")
    p.add_argument("--w", type=_ratfun("z"), help="Painlevé V candidate w(z)")
    for c in ("c1", "c2", "c3", "c4"):
        p.add_argument(f"--{c}", type=float, default=0.0)
    p.add_argument("--grid", type=_float_list, default=[0.5, 2.0, 30.0], help="x0,x1,steps")
    p.set_defaults(func=cmd_painleve)
    return ap


# flags whose values may legitimately start with "-" (e.g. --g "-2x")
_VALUE_FLAGS = {"--g", "--w", "--f", "--f1", "--b0", "--b1", "--eps", "--eps1", "--init", "--lambda",
                "--c0", "--c1", "--c2", "--c3", "--c4", "--seed", "--grid", "--x0", "--x1"}


def _glue_values(argv):
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    buf = io.StringIO()
    try:
        args.func(args, buf)
    except _Usage as exc:
        print(f"phachain {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (PoleError, ZeroDivisionError, ArithmeticError, numeric.BlowUp, ValueError) as exc:
        out.write(json.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 1
    out.write(buf.getvalue())
    return 0


if __name__ == "__main__":
    sys.exit(main())
