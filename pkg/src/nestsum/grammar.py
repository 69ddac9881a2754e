"""Expression grammar for sums, polylogarithms, counts and identity checks.

::

    expr    := sum | single | hpl | count | verify
    sum     := "S" "[" entries "]" [ "(" [ "{" rat ("," rat)* "}" ";" ] int ")" ]
             | "S" "[" entries "]" "(" "{" rat ("," rat)* "}" ")"
    entries := int ("," int)*  |  triple ("," triple)*
    triple  := "(" int "," int "," int ")"
    single  := "SC" "[" int "," int "," int "]" [ "(" int ")" ]
    hpl     := "H" "[" [ letter ("," letter)* ] "]" [ "(" number ")" ]
    letter  := rat | "{" int "," int "}"
    count   := "N_" ("all" | "A" | "D" | "H" | "ADH") "(" int ")"
    verify  := "verify:" name [ "(" name "=" number ("," name "=" number)* ")" ]

Numbers are integers, fractions ``p/q`` or finite decimals; all are kept
as exact rationals.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import CyclotomicIndex, GeneralIndex, HarmonicIndex

__all__ = [
    "ParseError",
    "SemanticError",
    "SumExpr",
    "SingleCyclotomicExpr",
    "PolylogExpr",
    "CountExpr",
    "VerifyExpr",
    "parse",
    "to_text",
    "format_rational",
]

COUNT_KINDS = ("all", "A", "D", "H", "ADH")


class ParseError(ValueError):
    """Syntax error with the byte offset and the set of expected tokens."""

    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        exp = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{exp}")


class SemanticError(ParseError):
    """Well-formed input violating a domain constraint."""


@dataclass(frozen=True)
class SumExpr:
    index: HarmonicIndex | GeneralIndex | CyclotomicIndex
    N: int | None = None

    @property
    def family(self) -> str:
        return {HarmonicIndex: "harmonic", GeneralIndex: "general",
                CyclotomicIndex: "cyclotomic"}[type(self.index)]


@dataclass(frozen=True)
class SingleCyclotomicExpr:
    l: int
    m: int
    n: int
    N: int | None = None


@dataclass(frozen=True)
class PolylogExpr:
    """Letters: Fraction for root/harmonic letters, ``(k, l)`` for cyclotomic ones."""

    letters: tuple
    x: Fraction | None = None


@dataclass(frozen=True)
class CountExpr:
    kind: str
    w: int


@dataclass(frozen=True)
class VerifyExpr:
    name: str
    params: tuple[tuple[str, Fraction], ...] = ()

    def param(self, key, default=None):
        return dict(self.params).get(key, default)


_NUM = re.compile(r"-?\d+(?:\.\d+)?(?:/\d+)?")
_INT = re.compile(r"-?\d+")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self, tok: str) -> bool:
        self.ws()
        return self.s.startswith(tok, self.i)

    def eat(self, tok: str):
        self.ws()
        if not self.s.startswith(tok, self.i):
            raise ParseError(f"unexpected {self._here()}", self.i, [repr(tok)])
        self.i += len(tok)

    def _here(self) -> str:
        if self.i >= len(self.s):
            return "end of input"
        return repr(self.s[self.i])

    def integer(self) -> tuple[int, int]:
        self.ws()
        m = _INT.match(self.s, self.i)
        if not m:
            raise ParseError(f"unexpected {self._here()}", self.i, ["integer"])
        self.i = m.end()
        return int(m.group()), m.start()

    def number(self) -> tuple[Fraction, int]:
        self.ws()
        m = _NUM.match(self.s, self.i)
        if not m:
            raise ParseError(f"unexpected {self._here()}", self.i, ["number"])
        self.i = m.end()
        text = m.group()
        try:
            if "." in text and "/" in text:
                raise ValueError
            val = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise SemanticError(f"invalid number {text!r}", m.start()) from None
        return val, m.start()

    def name(self) -> str:
        self.ws()
        m = _NAME.match(self.s, self.i)
        if not m:
            raise ParseError(f"unexpected {self._here()}", self.i, ["name"])
        self.i = m.end()
        return m.group()

    def end(self):
        self.ws()
        if self.i != len(self.s):
            raise ParseError(f"trailing input {self._here()}", self.i, ["end of input"])

    # -------------------------------------------------------------- rules

    def expr(self):
        self.ws()
        if self.peek("SC["):
            out = self.single()
        elif self.peek("S["):
            out = self.sum()
        elif self.peek("H["):
            out = self.hpl()
        elif self.peek("N_"):
            out = self.count()
        elif self.peek("verify:"):
            out = self.verify()
        else:
            raise ParseError(f"unexpected {self._here()}", self.i,
                             ["'S['", "'SC['", "'H['", "'N_'", "'verify:'"])
        self.end()
        return out

    def _rats(self, close: str) -> list[Fraction]:
        vals = [self.number()[0]]
        while self.peek(","):
            self.eat(",")
            vals.append(self.number()[0])
        self.eat(close)
        return vals

    def sum(self):
        start = self.i
        self.eat("S")
        self.eat("[")
        triples = self.peek("(")
        entries = []
        while True:
            if triples:
                self.eat("(")
                pos = self.i
                a = self.integer()[0]
                self.eat(",")
                b = self.integer()[0]
                self.eat(",")
                c = self.integer()[0]
                self.eat(")")
                if not a > b >= 0 or c < 1:
                    raise SemanticError(f"cyclotomic triple ({a},{b},{c}) needs a > b >= 0, c >= 1", pos)
                entries.append((a, b, c))
            else:
                v, pos = self.integer()
                if v == 0:
                    raise SemanticError("index entries must be nonzero", pos)
                entries.append(v)
            if self.peek(","):
                self.eat(",")
                continue
            self.eat("]")
            break
        weights, N = None, None
        if self.peek("("):
            self.eat("(")
            if self.peek("{"):
                wpos = self.i
                self.eat("{")
                weights = self._rats("}")
                if len(weights) != len(entries):
                    raise SemanticError("number of weights differs from the index depth", wpos)
                if any(w == 0 for w in weights):
                    raise SemanticError("weights must be nonzero", wpos)
                if self.peek(";"):
                    self.eat(";")
                    N, pos = self.integer()
                    if N < 0:
                        raise SemanticError("N must be non-negative", pos)
            else:
                N, pos = self.integer()
                if N < 0:
                    raise SemanticError("N must be non-negative", pos)
            self.eat(")")
        if triples:
            ws = weights or [Fraction(1)] * len(entries)
            return SumExpr(CyclotomicIndex(tuple(zip(entries, ws))), N)
        if weights is None:
            return SumExpr(HarmonicIndex(tuple(entries)), N)
        if any(e < 0 for e in entries):
            raise SemanticError("generalized sums take positive exponents", start)
        return SumExpr(GeneralIndex(tuple(zip(entries, weights))), N)

    def single(self):
        self.eat("SC")
        self.eat("[")
        pos = self.i
        l = self.integer()[0]
        self.eat(",")
        m = self.integer()[0]
        self.eat(",")
        n = self.integer()[0]
        self.eat("]")
        if not l > m >= 1 or n == 0:
            raise SemanticError("single cyclotomic sum needs l > m >= 1 and n != 0", pos)
        N = None
        if self.peek("("):
            self.eat("(")
            N, npos = self.integer()
            if N < 0:
                raise SemanticError("N must be non-negative", npos)
            self.eat(")")
        return SingleCyclotomicExpr(l, m, n, N)

    def hpl(self):
        self.eat("H")
        self.eat("[")
        letters = []
        if not self.peek("]"):
            while True:
                if self.peek("{"):
                    self.eat("{")
                    pos = self.i
                    k = self.integer()[0]
                    self.eat(",")
                    l = self.integer()[0]
                    self.eat("}")
                    if k < 0 or l < 0:
                        raise SemanticError("cyclotomic letters need k, l >= 0", pos)
                    letters.append((k, l))
                else:
                    letters.append(self.number()[0])
                if self.peek(","):
                    self.eat(",")
                    continue
                break
        self.eat("]")
        x = None
        if self.peek("("):
            self.eat("(")
            x = self.number()[0]
            self.eat(")")
        return PolylogExpr(tuple(letters), x)

    def count(self):
        self.eat("N_")
        pos = self.i
        kind = self.name()
        if kind not in COUNT_KINDS:
            raise ParseError(f"unknown count {kind!r}", pos, COUNT_KINDS)
        self.eat("(")
        w, wpos = self.integer()
        self.eat(")")
        if w < 1:
            raise SemanticError("weight must be >= 1", wpos)
        return CountExpr(kind, w)

    def verify(self):
        self.eat("verify:")
        name = self.name()
        params = []
        if self.peek("("):
            self.eat("(")
            while True:
                key = self.name()
                self.eat("=")
                params.append((key, self.number()[0]))
                if self.peek(","):
                    self.eat(",")
                    continue
                break
            self.eat(")")
        return VerifyExpr(name, tuple(params))


def parse(text: str):
    """Parse one expression; raises :class:`ParseError` or :class:`SemanticError`."""
    return _Parser(text).expr()


def format_rational(q: Fraction) -> str:
    """Integer, finite decimal, or ``p/q``; always re-parses to the same value."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d == 1:
        places = max(twos, fives)
        scaled = abs(q.numerator) * 10**places // q.denominator
        digits = str(scaled).rjust(places + 1, "0")
        sign = "-" if q < 0 else ""
        return f"{sign}{digits[:-places]}.{digits[-places:]}"
    return f"{q.numerator}/{q.denominator}"


def to_text(e) -> str:
    """Print an expression in the grammar above."""
    if isinstance(e, SumExpr):
        idx = e.index
        if isinstance(idx, HarmonicIndex):
            head = "S[" + ",".join(map(str, idx.entries)) + "]"
            return head + (f"({e.N})" if e.N is not None else "")
        if isinstance(idx, GeneralIndex):
            head = "S[" + ",".join(str(m) for m in idx.exponents) + "]"
            ws = "{" + ",".join(format_rational(x) for x in idx.weights) + "}"
        else:
            head = "S[" + ",".join(f"({a},{b},{c})" for (a, b, c), _ in idx.entries) + "]"
            ws = "{" + ",".join(format_rational(s) for _, s in idx.entries) + "}"
        tail = f"{ws};{e.N}" if e.N is not None else ws
        return f"{head}({tail})"
    if isinstance(e, SingleCyclotomicExpr):
        return f"SC[{e.l},{e.m},{e.n}]" + (f"({e.N})" if e.N is not None else "")
    if isinstance(e, PolylogExpr):
        parts = [f"{{{a[0]},{a[1]}}}" if isinstance(a, tuple) else format_rational(a)
                 for a in e.letters]
        head = "H[" + ",".join(parts) + "]"
        return head + (f"({format_rational(e.x)})" if e.x is not None else "")
    if isinstance(e, CountExpr):
        return f"N_{e.kind}({e.w})"
    if isinstance(e, VerifyExpr):
        if not e.params:
            return f"verify:{e.name}"
        body = ",".join(f"{k}={format_rational(v)}" for k, v in e.params)
        return f"verify:{e.name}({body})"
    raise TypeError(f"not an expression: {e!r}")
