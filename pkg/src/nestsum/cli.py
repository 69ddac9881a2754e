"""Command-line front end: ``nestsum <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (pole, divergence,
argument outside the evaluator's range, failed verification) and 2 on a
usage error (bad flags or expression syntax).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from fractions import Fraction
from importlib import resources

import mpmath

from . import algebra, continuation, polylog, sums
from .algebra import GeneralIndex, HarmonicIndex, LinComb
from .grammar import (
    CountExpr,
    ParseError,
    PolylogExpr,
    SemanticError,
    SingleCyclotomicExpr,
    SumExpr,
    parse,
    to_text,
)

DEFAULT_DIGITS = 15

COUNTERS = {
    "all": algebra.count_all,
    "A": algebra.count_A,
    "D": algebra.count_D,
    "H": algebra.count_H,
    "ADH": algebra.count_ADH,
}

VERIFY_TOL = {"eq7": 1e-8, "eq9": 1e-8, "eq18": 1e-10, "eq27": 1e-6, "shuffle": 1e-10, "dup": 0.0}


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


class Divergent(Exception):
    def __init__(self, reason, symbol):
        super().__init__(reason)
        self.symbol = symbol


# ------------------------------------------------------------------ output


def fmt_decimal(v, digits: int) -> str:
    return mpmath.nstr(v, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def fmt_exact(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_tol(t: float) -> str:
    mant, exp = f"{t:e}".split("e")
    mant = mant.rstrip("0").rstrip(".")
    return f"{mant}e{int(exp)}"


def fmt_delta(v) -> str:
    return "0" if v == 0 else mpmath.nstr(v, 3, min_fixed=1, max_fixed=0)


def _factor_text(f) -> str:
    if isinstance(f, (HarmonicIndex, GeneralIndex)):
        return to_text(SumExpr(f))
    return to_text(PolylogExpr(tuple(Fraction(a) for a in f)))


def _key_text(key) -> str:
    if isinstance(key, tuple) and key and isinstance(key[0], (HarmonicIndex, GeneralIndex)):
        parts, i = [], 0
        while i < len(key):
            j = i
            while j < len(key) and key[j] == key[i]:
                j += 1
            t = _factor_text(key[i])
            parts.append(t if j - i == 1 else f"{t}^{j - i}")
            i = j
        return "*".join(parts)
    if key == ():
        return "1"
    return _factor_text(key)


def lincomb_text(lc: LinComb) -> str:
    if not lc:
        return "0"
    out = []
    for key, c in sorted(lc.items(), key=lambda kc: _key_text(kc[0])):
        body = _key_text(key)
        mag = abs(c)
        term = body if mag == 1 and body != "1" else (
            fmt_exact(mag) if body == "1" else f"{fmt_exact(mag)}*{body}")
        if not out:
            out.append(term if c > 0 else f"-{term}")
        else:
            out.append(f"{'+' if c > 0 else '-'} {term}")
    return " ".join(out)


def lincomb_json(lc: LinComb) -> list:
    terms = []
    for key, c in sorted(lc.items(), key=lambda kc: _key_text(kc[0])):
        terms.append({"coeff": fmt_exact(c), "term": _key_text(key)})
    return terms


# ------------------------------------------------------------ evaluation


def _exact_sum(e):
    if isinstance(e, SingleCyclotomicExpr):
        if e.N is None:
            raise UsageError("an argument N is required, e.g. SC[2,1,1](10)")
        return sums.eval_cyclotomic_single(e.l, e.m, e.n, e.N)
    if e.N is None:
        raise UsageError("an argument N is required, e.g. S[1](3)")
    if e.family == "harmonic":
        return sums.eval_harmonic(e.index, e.N)
    if e.family == "general":
        return sums.eval_ssum(e.index, e.N)
    return sums.eval_cyclotomic(e.index, e.N)


def _poly_letter(a):
    if isinstance(a, tuple):
        return polylog.CyclotomicLetter(*a)
    return polylog.RootLetter(a)


def eval_polylog(e: PolylogExpr, digits: int):
    if e.x is None:
        raise UsageError("an argument x is required, e.g. H[0,1](0.5)")
    harmonic = all(not isinstance(a, tuple) and a in (0, 1, -1) for a in e.letters)
    try:
        if harmonic and len(e.letters) <= polylog.MAX_HPL_WEIGHT:
            word = tuple(int(a) for a in e.letters)
            if e.x == 1:
                return polylog.hpl_at_one(word, digits + 5)
            return polylog.hpl_eval(word, e.x, digits + 5)
        # the harmonic letter 1 is 1/(1-y) = -1/(y-1)
        sign = -1 if sum(1 for a in e.letters if not isinstance(a, tuple) and a == 1) % 2 else 1
        letters = [_poly_letter(a) for a in e.letters]
        tol = 10.0 ** (-digits - 2)
        return sign * polylog.hpl_eval_general(letters, e.x, digits + 8, tol)
    except (ValueError, ArithmeticError) as exc:
        raise DomainError(str(exc)) from None


def run_verify(name: str, params: dict, tol: float | None):
    """Return (ok, delta, tol) for one named identity."""
    t = VERIFY_TOL.get(name)
    if t is None:
        raise UsageError(f"unknown identity {name!r}; choose from {', '.join(VERIFY_TOL)}")
    tol = t if tol is None else tol
    # work comfortably beyond the requested tolerance
    prec = max(30, int(-math.log10(tol)) + 10) if tol > 0 else 30
    with mpmath.workdps(prec + 10):
        return _run_verify(name, params, tol, prec)


def _run_verify(name, params, tol, prec):
    if name == "eq7":
        N = int(params.get("N", 3))
        if tol < 1e-30:
            raise ValueError("eq7 quadrature is capped at 40 digits; use a tolerance >= 1e-30")
        lhs, rhs = polylog.mellin_identity_sides(N, min(prec, 40))
        delta = abs(mpmath.mpf(lhs.numerator) / lhs.denominator - rhs)
    elif name == "eq9":
        res = sums.limit_to_infinity(HarmonicIndex((-2, 1, 1)), prec)
        delta = abs(res.value - polylog.sigma_m211_closed_form(prec))
    elif name == "eq18":
        x = params.get("x", Fraction(1, 2))
        if x == 1:
            delta = abs(polylog.arg_transform_rhs_at_one(prec))
        else:
            lhs, rhs = polylog.arg_transform_sides(x, prec)
            delta = abs(lhs - rhs)
    elif name == "eq27":
        N = int(params.get("N", 1))
        num = polylog.mellin_moment(polylog.Integrand(elliptic=True), N, 25)
        ex = polylog.elliptic_moment_exact(N)
        delta = abs(num - mpmath.mpf(ex.numerator) / ex.denominator)
    elif name == "shuffle":
        u = _word(params.get("u", "0,1"))
        v = _word(params.get("v", "-1"))
        x = params.get("x", Fraction(1, 2))
        lhs = polylog.hpl_eval(u, x) * polylog.hpl_eval(v, x)
        rhs = sum(c * polylog.hpl_eval(w, x) for w, c in algebra.shuffle(u, v).items())
        delta = abs(lhs - rhs)
    else:
        a, N = int(params.get("a", 2)), int(params.get("N", 10))
        p = abs(a)
        lhs = sums.eval_harmonic((p,), 2 * N) + sums.eval_harmonic((-p,), 2 * N)
        rhs = Fraction(2) ** (1 - p) * sums.eval_harmonic((p,), N)
        d = abs(lhs - rhs)
        return d == 0, mpmath.mpf(d.numerator) / d.denominator, 0.0
    return bool(delta < tol), delta, tol


def _word(text) -> tuple[int, ...]:
    if isinstance(text, tuple):
        return text
    try:
        return tuple(int(a) for a in str(text).split(",") if a.strip())
    except ValueError:
        raise UsageError(f"bad word {text!r}; expected comma-separated integers") from None


_FACTOR = re.compile(r"\s*(?:x\^(-?\d+)|x|H\[([^\]]*)\]\(x\)|T\(x\)|1)\s*")
_POLE = re.compile(r"\s*/\s*\(\s*x\s*([+-])\s*(\d+(?:\.\d+)?(?:/\d+)?)\s*\)\s*$")


def parse_integrand(text: str) -> polylog.Integrand:
    """``factor ("*" factor)* ["/(x±p)"]``, factors ``x^k``, ``H[w](x)``, ``T(x)``, ``1``."""
    body, pole = text, None
    m = _POLE.search(text)
    if m:
        body = text[: m.start()]
        p = Fraction(m.group(2))
        pole = p if m.group(1) == "-" else -p
    power, word, elliptic = 0, (), False
    pos = 0
    while True:
        f = _FACTOR.match(body, pos)
        if not f or f.end() == pos:
            raise UsageError(f"bad integrand at offset {pos}: expected x^k, H[..](x), T(x) or 1")
        tok = f.group(0).strip()
        if tok.startswith("x"):
            power += int(f.group(1)) if f.group(1) else 1
        elif tok.startswith("H"):
            if word:
                raise UsageError("at most one H[..](x) factor")
            word = _word(f.group(2))
        elif tok.startswith("T"):
            elliptic = True
        pos = f.end()
        if pos == len(body):
            break
        if body[pos] != "*":
            raise UsageError(f"bad integrand at offset {pos}: expected '*'")
        pos += 1
    try:
        return polylog.Integrand(word, power, pole, elliptic)
    except ValueError as exc:
        raise DomainError(str(exc)) from None


_COMPLEX = re.compile(
    r"^\s*(?:(?P<re>[+-]?\d+(?:\.\d+)?(?:/\d+)?)(?:\s*(?P<sign>[+-])\s*(?P<im>\d+(?:\.\d+)?(?:/\d+)?)?\s*i)?"
    r"|(?P<only>[+-]?\d*(?:\.\d+)?)\s*i)\s*$"
)


def parse_complex(text: str):
    """``re``, ``re±im i`` or ``im i`` with rational or decimal parts."""
    m = _COMPLEX.match(text)
    if not m or (m.group("re") is None and m.group("only") is None):
        raise UsageError(f"bad complex literal {text!r}; expected e.g. 2.5, 1-0.5i, 3i")

    def q(s):
        return mpmath.mpf(Fraction(s).numerator) / Fraction(s).denominator

    if m.group("re") is not None:
        re_ = q(m.group("re"))
        if m.group("sign") is None:
            return re_
        im = q(m.group("im") or "1")
        return mpmath.mpc(re_, im if m.group("sign") == "+" else -im)
    only = m.group("only")
    only = only + "1" if only in ("", "+", "-") else only
    return mpmath.mpc(0, q(only))


# ------------------------------------------------------------- commands


def cmd_eval(args, digits):
    e = parse(args.expr)
    if isinstance(e, (SumExpr, SingleCyclotomicExpr)):
        v = fmt_exact(_exact_sum(e))
        return {"type": "exact", "value": v}, v
    if isinstance(e, PolylogExpr):
        v = eval_polylog(e, digits)
        return _decimal(v, digits)
    if isinstance(e, CountExpr):
        return _count(e.kind, e.w)
    return _verify(e.name, {k: v for k, v in e.params}, None)


def _decimal(v, digits):
    s = fmt_decimal(v, digits)
    return {"type": "decimal", "value": s, "digits": digits}, s


def _count(kind, w):
    try:
        n = COUNTERS[kind](w)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    return {"type": "integer", "value": n}, str(n)


def _verify(name, params, tol):
    try:
        ok, delta, tol = run_verify(name, params, tol)
    except (ValueError, ArithmeticError) as exc:
        raise DomainError(str(exc)) from None
    tol_s = "exact" if tol == 0 else fmt_tol(tol)
    if tol == 0:
        text = "OK (exact)" if ok else f"FAIL (|Δ| = {fmt_delta(delta)})"
    else:
        text = f"OK (|Δ| < {tol_s})" if ok else f"FAIL (|Δ| = {fmt_delta(delta)} >= {tol_s})"
    obj = {"type": "verification", "ok": ok, "delta": fmt_delta(delta), "tolerance": tol_s}
    return obj, text


def cmd_limit(args, digits):
    e = parse(args.expr)
    if not isinstance(e, SumExpr) or e.family == "cyclotomic":
        raise UsageError("limit takes a harmonic or generalized sum, e.g. S[-2,1,1]")
    if e.N is not None:
        raise UsageError("limit takes an index without an argument N")
    res = sums.limit_to_infinity(e.index, digits + 5)
    if not res.converged:
        raise Divergent(res.reason, res.symbol)
    return _decimal(res.value, digits)


def cmd_product(args, digits):
    a, b = parse(args.left), parse(args.right)
    if isinstance(a, SumExpr) and isinstance(b, SumExpr):
        if a.N is not None or b.N is not None:
            raise UsageError("product takes indices without arguments")
        try:
            lc = algebra.stuffle(a.index, b.index)
        except TypeError as exc:
            raise UsageError(str(exc)) from None
    elif isinstance(a, PolylogExpr) and isinstance(b, PolylogExpr):
        if a.x is not None or b.x is not None:
            raise UsageError("product takes words without arguments")
        if any(isinstance(c, tuple) or c.denominator != 1 for c in a.letters + b.letters):
            raise UsageError("shuffle products take integer letters")
        lc = algebra.shuffle(tuple(int(c) for c in a.letters), tuple(int(c) for c in b.letters))
    else:
        raise UsageError("product needs two sums S[..] or two words H[..]")
    return {"type": "lincomb", "terms": lincomb_json(lc)}, lincomb_text(lc)


def cmd_reduce(args, digits):
    e = parse(args.expr)
    if not isinstance(e, SumExpr) or e.family != "harmonic" or e.N is not None:
        raise UsageError("reduce takes a harmonic index without argument, e.g. S[2,1]")
    try:
        lc = algebra.reduce_to_basis(e.index)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    return {"type": "lincomb", "terms": lincomb_json(lc)}, lincomb_text(lc)


def cmd_count(args, digits):
    return _count(args.kind, args.w)


def cmd_verify(args, digits):
    params = {}
    for key in ("N", "a"):
        if getattr(args, key) is not None:
            params[key] = getattr(args, key)
    if args.x is not None:
        params["x"] = _rational(args.x)
    if args.u is not None:
        params["u"] = _word(args.u)
    if args.v is not None:
        params["v"] = _word(args.v)
    return _verify(args.name, params, args.tol)


def cmd_mellin(args, digits):
    f = parse_integrand(args.integrand)
    if args.N < 0:
        raise UsageError("N must be non-negative")
    try:
        v = polylog.mellin_moment(f, args.N, digits + 5)
    except ArithmeticError as exc:
        raise DomainError(str(exc)) from None
    return _decimal(v, digits)


def cmd_continue(args, digits):
    N = parse_complex(args.N)
    try:
        v = continuation.continue_single(args.a, N, args.parity, digits + 5,
                                         args.N0, args.order)
    except (ValueError, ArithmeticError) as exc:
        raise DomainError(str(exc)) from None
    if isinstance(v, mpmath.mpc):
        re_, im = fmt_decimal(v.real, digits), fmt_decimal(abs(v.imag), digits)
        sign = "-" if v.imag < 0 else "+"
        obj = {"type": "complex", "re": re_, "im": fmt_decimal(v.imag, digits), "digits": digits}
        return obj, f"{re_} {sign} {im}i"
    return _decimal(v, digits)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {text!r}") from None


# ----------------------------------------------------------------- parser


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=None,
                        help="significant digits for numeric output (default 15 or $NESTSUM_PREC)")
    common.add_argument("--json", action="store_true", help="emit one JSON object")

    p = _ArgumentParser(prog="nestsum", description="Nested sums, polylogarithms and identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    s = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    s.add_argument("expr")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("limit", parents=[common], help="limit N -> infinity of a sum")
    s.add_argument("expr")
    s.set_defaults(func=cmd_limit)

    s = sub.add_parser("product", parents=[common], help="stuffle or shuffle product")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_product)

    s = sub.add_parser("reduce", parents=[common], help="rewrite over the Lyndon basis")
    s.add_argument("expr")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("count", parents=[common], help="basis-size formulas")
    g = s.add_mutually_exclusive_group(required=True)
    for flag, kind in (("--all", "all"), ("--a", "A"), ("--d", "D"), ("--h", "H"), ("--adh", "ADH")):
        g.add_argument(flag, dest="kind", action="store_const", const=kind)
    s.add_argument("w", type=int)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("verify", parents=[common], help="check a named identity")
    s.add_argument("name", choices=sorted(VERIFY_TOL))
    s.add_argument("--N", type=int)
    s.add_argument("--x")
    s.add_argument("--a", type=int)
    s.add_argument("--u", help="first word for 'shuffle', e.g. 0,1")
    s.add_argument("--v", help="second word for 'shuffle'")
    s.add_argument("--tol", type=float)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("mellin", parents=[common], help="Mellin moment int_0^1 x^N f(x) dx")
    s.add_argument("integrand")
    s.add_argument("--N", type=int, required=True)
    s.set_defaults(func=cmd_mellin)

    s = sub.add_parser("continue", parents=[common], help="S_a(N) at complex N")
    s.add_argument("a", type=int)
    s.add_argument("N", help="complex literal such as 0.5, 2+1i, -1.5-0.25i")
    s.add_argument("--parity", choices=("even", "odd"))
    s.add_argument("--N0", type=int, default=continuation.N0_DEFAULT)
    s.add_argument("--order", type=int, default=continuation.ORDER_DEFAULT)
    s.set_defaults(func=cmd_continue)
    return p


def _digits(args) -> int:
    if args.prec is not None:
        d = args.prec
    else:
        env = os.environ.get("NESTSUM_PREC")
        try:
            d = int(env) if env else DEFAULT_DIGITS
        except ValueError:
            raise UsageError(f"NESTSUM_PREC must be an integer, got {env!r}") from None
    if not 1 <= d <= 1000:
        raise UsageError("precision must be in 1..1000")
    return d


def load_schema() -> dict:
    return json.loads(resources.files("nestsum").joinpath("schema.json").read_text("utf-8"))


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    want_json = "--json" in argv
    command = next((a for a in argv if not a.startswith("-")), None)

    def emit_error(kind, message, code, **extra):
        if want_json:
            obj = {"type": kind, "message": message, **extra}
            out.write(json.dumps({"command": command, "result": obj}, ensure_ascii=False) + "\n")
        else:
            err.write(f"nestsum: {message}\n")
        return code

    try:
        args = parser.parse_args(argv)
        digits = _digits(args)
        with mpmath.workdps(digits + 10):
            obj, text = args.func(args, digits)
    except SemanticError as exc:
        return emit_error("error", str(exc), 1, offset=exc.offset, expected=list(exc.expected))
    except ParseError as exc:
        return emit_error("error", str(exc), 2, offset=exc.offset, expected=list(exc.expected))
    except UsageError as exc:
        return emit_error("error", str(exc), 2)
    except Divergent as exc:
        if want_json:
            obj = {"type": "divergent", "reason": str(exc), "symbol": exc.symbol}
            out.write(json.dumps({"command": command, "result": obj}, ensure_ascii=False) + "\n")
            return 1
        sym = f" [{exc.symbol}]" if exc.symbol else ""
        out.write(f"divergent: {exc}{sym}\n")
        return 1
    except DomainError as exc:
        return emit_error("error", str(exc), 1)
    if args.json:
        out.write(json.dumps({"command": args.command, "result": obj}, ensure_ascii=False) + "\n")
    else:
        out.write(text + "\n")
    if obj.get("type") == "verification" and not obj["ok"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
