"""Polynomial text: a small recursive-descent parser and the matching printer.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/")? unary)*      juxtaposition multiplies
    unary  := ("+" | "-") unary | power
    power  := atom ("^" exponent)?              "**" is accepted for "^"
    atom   := INTEGER | NAME | "(" expr ")"

Names are either the polynomial variable or a symbol bound to a constant of
the coefficient domain (tower generators ``a0, a1, ...`` by default).  The
printer emits terms from the highest degree down and wraps multi-term
coefficients in parentheses, e.g. ``X^2 + (1/2 - 1/2*a0)*X + 1``; parsing the
printed text gives back the same polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction

from isoclass.arith.poly import QQ, Poly
from isoclass.errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str):
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text[pos:].lstrip()[:1])
        if m.group(1) is not None:
            out.append(("num", m.group(1)))
        elif m.group(2) is not None:
            out.append(("name", m.group(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


def default_symbols(dom) -> dict:
    if dom is QQ:
        return {}
    return {name: dom.gen(i) for i, name in enumerate(dom.names)}


def detect_variable(tokens, symbols) -> str:
    free = sorted({v for k, v in tokens if k == "name" and v not in symbols})
    if not free:
        return "X"
    if len(free) == 1:
        return free[0]
    if "X" in free:
        raise ParseError("more than one free variable", [v for v in free if v != "X"][0])
    raise ParseError("more than one free variable", free[1])


class _Parser:
    def __init__(self, tokens, dom, var, symbols):
        self.toks = tokens
        self.i = 0
        self.dom = dom
        self.var = var
        self.symbols = symbols

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ParseError(f"expected {op!r}", tok[1])

    def const(self, c):
        return Poly._raw((self.dom.convert(c),), self.dom)

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.peek() is not None:
            raise ParseError("unexpected token", self.peek()[1])
        return val

    def expr(self):
        val = self.term()
        while True:
            tok = self.peek()
            if tok == ("op", "+"):
                self.take()
                val = val + self.term()
            elif tok == ("op", "-"):
                self.take()
                val = val - self.term()
            else:
                return val

    def term(self):
        val = self.unary()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                val = val * self.unary()
            elif tok == ("op", "/"):
                self.take()
                d = self.unary()
                if d.degree != 0:
                    raise ParseError("division by a non-constant or zero", "/")
                val = val * (self.dom.one / d.coeffs[0])
            elif tok is not None and (tok[0] in ("num", "name") or tok == ("op", "(")):
                val = val * self.unary()
            else:
                return val

    def unary(self):
        tok = self.peek()
        if tok == ("op", "-"):
            self.take()
            return -self.unary()
        if tok == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.take()
            if tok == ("op", "("):
                tok = self.take()
                self.expect(")")
            if tok[0] != "num":
                raise ParseError("exponent must be a nonnegative integer", tok[1])
            return base ** int(tok[1])
        return base

    def atom(self):
        tok = self.take()
        kind, val = tok
        if kind == "num":
            return self.const(int(val))
        if kind == "name":
            if val == self.var:
                return Poly._raw((self.dom.zero, self.dom.one), self.dom)
            if val in self.symbols:
                return self.const(self.symbols[val])
            raise ParseError("unknown name", val)
        if val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError("unexpected token", val)


def parse_poly(text: str, dom=QQ, var: str | None = None, symbols: dict | None = None) -> Poly:
    if not isinstance(text, str):
        raise ParseError("expected polynomial text", text)
    toks = tokenize(text)
    if symbols is None:
        symbols = default_symbols(dom)
    if var is None:
        var = detect_variable(toks, symbols)
    return _Parser(toks, dom, var, symbols).parse()


def parse_element(text: str, dom=QQ, symbols: dict | None = None):
    """Parse a constant of ``dom`` (no polynomial variable allowed)."""
    p = parse_poly(text, dom, var="", symbols=symbols)
    return p.coeffs[0] if p.coeffs else dom.zero


def parse_rational(text: str) -> Fraction:
    return parse_element(text.strip(), QQ)


# -- printing -------------------------------------------------------------------


def elt_terms(dom, c):
    if dom is QQ:
        return [(c, "")] if c else []
    return dom.elt_terms(c)


def _term_text(q: Fraction, mon: str) -> str:
    q = abs(q)
    if not mon:
        return str(q)
    if q == 1:
        return mon
    return f"{q}*{mon}"


def format_terms(terms) -> str:
    if not terms:
        return "0"
    parts = []
    for k, (q, mon) in enumerate(terms):
        body = _term_text(q, mon)
        if k == 0:
            parts.append("-" + body if q < 0 else body)
        else:
            parts.append((" - " if q < 0 else " + ") + body)
    return "".join(parts)


def format_element(dom, c) -> str:
    return format_terms(elt_terms(dom, c))


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))


def format_poly(p: Poly, var: str = "X") -> str:
    if not p.coeffs:
        return "0"
    terms = []  # (sign, body)
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        ts = elt_terms(p.dom, c)
        xk = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if k == 0:
            terms.extend((q < 0, _term_text(q, mon)) for q, mon in ts)
        elif len(ts) == 1:
            q, mon = ts[0]
            pieces = [] if abs(q) == 1 else [str(abs(q))]
            if mon:
                pieces.append(mon)
            pieces.append(xk)
            terms.append((q < 0, "*".join(pieces)))
        else:
            terms.append((False, f"({format_terms(ts)})*{xk}"))
    out = []
    for k, (neg, body) in enumerate(terms):
        if k == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
