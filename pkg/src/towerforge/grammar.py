"""String grammar for polynomials and rational functions.

Parsing accepts integer coefficients, the field generator ``g``, variables
from the fixed symbol set, ``+ - * / ^`` and parentheses.  Juxtaposition
means multiplication (``XY^2T``), exponents may be braced (``T^{12}``) or
written as superscript digits, and a Unicode minus is accepted.  Printing is
canonical: terms in descending graded lex order joined by `` + ``.
"""

from __future__ import annotations

import re

from .fields import FieldCtx, FieldElem
from .polys import VAR_ORDER, MPoly, RatFun

__all__ = ["ParseError", "parse_poly", "parse_ratfun", "parse_element", "format_poly", "format_ratfun", "format_monomial"]

_SYMBOLS = sorted(set(VAR_ORDER) | {"g"}, key=len, reverse=True)
_SUPERSCRIPTS = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹", "0123456789")
_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<sup>[⁰¹²³⁴⁵⁶⁷⁸⁹]+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(){}]))")


class ParseError(ValueError):
    pass


def _split_identifier(word: str, pos: int) -> list[str]:
    word = word.replace("_", "")
    out = []
    i = 0
    while i < len(word):
        for sym in _SYMBOLS:
            if word.startswith(sym, i):
                out.append(sym)
                i += len(sym)
                break
        else:
            raise ParseError(f"unknown symbol in {word!r} at offset {pos}")
    return out


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    text = text.replace("−", "-").replace("·", "*").replace("⋅", "*")
    toks: list[tuple[str, object, int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at offset {pos}")
        if m.group("num") is not None:
            toks.append(("num", int(m.group("num")), m.start("num")))
        elif m.group("sup") is not None:
            toks.append(("op", "^", m.start("sup")))
            toks.append(("num", int(m.group("sup").translate(_SUPERSCRIPTS)), m.start("sup")))
        elif m.group("id") is not None:
            for sym in _split_identifier(m.group("id"), m.start("id")):
                toks.append(("id", sym, m.start("id")))
        else:
            toks.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, ctx: FieldCtx, text: str):
        self.ctx = ctx
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r} at offset {pos}")

    def parse(self):
        v = self.expr()
        kind, _, pos = self.peek()
        if kind != "end":
            raise ParseError(f"trailing input at offset {pos}")
        return v

    def expr(self):
        kind, val, _ = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        v = self.term()
        if sign < 0:
            v = -v
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                v = v + t if val == "+" else v - t
            else:
                return v

    def term(self):
        v = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                v = v * self.power()
            elif kind == "op" and val == "/":
                self.take()
                d = self.power()
                v = _as_rat(v, self.ctx) / d
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                v = v * self.power()
            else:
                return v

    def power(self):
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.peek()
            if kind == "op" and val in "{(":
                self.take()
                _, n, pos = self.take()
                if not isinstance(n, int):
                    raise ParseError(f"exponent must be an integer at offset {pos}")
                self.expect("}" if val == "{" else ")")
            else:
                kind, n, pos = self.take()
                if kind != "num":
                    raise ParseError(f"exponent must be a non-negative integer at offset {pos}")
            return base**n
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            return MPoly.const(self.ctx, val)
        if kind == "id":
            if val == "g":
                if self.ctx.is_prime:
                    raise ParseError(f"generator g is not available in the prime field {self.ctx.name}")
                return MPoly.const(self.ctx, FieldElem(self.ctx, self.ctx.gen_code))
            return MPoly.var(self.ctx, val)
        if kind == "op" and val in "({":
            v = self.expr()
            self.expect(")" if val == "(" else "}")
            return v
        raise ParseError(f"unexpected token {val!r} at offset {pos}")


def _as_rat(v, ctx: FieldCtx) -> RatFun:
    return v if isinstance(v, RatFun) else RatFun(v, _normalized=True)


def parse_ratfun(text: str, ctx: FieldCtx) -> RatFun:
    return _as_rat(_Parser(ctx, text).parse(), ctx)


def parse_poly(text: str, ctx: FieldCtx) -> MPoly:
    """Parse a polynomial; divisions are allowed only when the result is polynomial."""
    v = _Parser(ctx, text).parse()
    if isinstance(v, RatFun):
        if not v.is_polynomial():
            raise ParseError(f"{text!r} is not a polynomial")
        return v.as_poly()
    return v


def parse_element(text: str, ctx: FieldCtx) -> FieldElem:
    """Parse a constant expression such as ``g^2+1`` or ``1/g`` as an element of ctx."""
    v = parse_ratfun(text, ctx)
    if not (v.num.is_constant() and v.den.is_constant()):
        raise ParseError(f"{text!r} is not a field constant")
    return v.num.constant_value() / v.den.constant_value()


def format_monomial(vars, exps) -> str:
    parts = []
    for v, e in zip(vars, exps):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_poly(f: MPoly) -> str:
    if not f.terms:
        return "0"
    ctx = f.ctx
    out = []
    for e, c in f.sorted_terms():
        mono = format_monomial(f.vars, e)
        coef = ctx.format_code(c)
        if not ctx.is_prime and "+" in coef:
            coef = f"({coef})"
        if not mono:
            out.append(coef)
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{coef}*{mono}")
    return " + ".join(out)


def format_ratfun(r: RatFun) -> str:
    if r.is_polynomial():
        return format_poly(r.as_poly())
    return f"({format_poly(r.num)})/({format_poly(r.den)})"
