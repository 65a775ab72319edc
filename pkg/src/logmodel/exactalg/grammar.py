"""Polynomial text grammar: parser and canonical printer.

Literals are integers or p/q rationals, `i` is the imaginary unit, variables
are single letters among x y t u s, operators + - * ^ with parentheses.
Canonical output sorts terms by total degree, then by ascending exponent of
the second variable; scalars render via :func:`format_scalar`.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError
from .poly import Poly1, Poly2
from .scalars import GRat, format_scalar, is_zero

VAR_LETTERS = "xytus"


class _Tok:
    def __init__(self, kind, value=None):
        self.kind = kind
        self.value = value

    def __repr__(self):
        return f"Tok({self.kind},{self.value})"


def _tokenize(text):
    toks = []
    k = 0
    while k < len(text):
        ch = text[k]
        if ch.isspace():
            k += 1
            continue
        if ch.isdigit():
            j = k
            while j < len(text) and text[j].isdigit():
                j += 1
            num = int(text[k:j])
            if j < len(text) and text[j] == "/":
                j2 = j + 1
                while j2 < len(text) and text[j2].isdigit():
                    j2 += 1
                if j2 == j + 1:
                    raise ParseError(f"malformed rational near {text[k:j+1]!r}")
                toks.append(_Tok("num", Fraction(num, int(text[j + 1 : j2]))))
                k = j2
            else:
                toks.append(_Tok("num", Fraction(num)))
                k = j
            continue
        if ch == "i":
            toks.append(_Tok("imag"))
            k += 1
            continue
        if ch in VAR_LETTERS:
            toks.append(_Tok("var", ch))
            k += 1
            continue
        if ch in "+-*^()":
            toks.append(_Tok(ch))
            k += 1
            continue
        raise ParseError(f"unexpected character {ch!r}")
    toks.append(_Tok("end"))
    return toks


class _Parser:
    def __init__(self, toks, vars):
        self.toks = toks
        self.pos = 0
        self.vars = vars

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        t = self.toks[self.pos]
        if kind is not None and t.kind != kind:
            raise ParseError(f"expected {kind}, found {t.kind}")
        self.pos += 1
        return t

    def parse_expr(self):
        sign = 1
        if self.peek().kind in ("+", "-"):
            sign = -1 if self.take().kind == "-" else 1
        out = self.parse_term()
        if sign < 0:
            out = -out
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            term = self.parse_term()
            out = out + term if op == "+" else out - term
        return out

    def parse_term(self):
        out = self.parse_factor()
        while True:
            nxt = self.peek()
            if nxt.kind == "*":
                self.take()
                out = out * self.parse_factor()
            elif nxt.kind in ("num", "imag", "var", "("):
                # implicit multiplication (2x, x y, i*x written as ix)
                out = out * self.parse_factor()
            else:
                return out

    def parse_factor(self):
        base = self.parse_base()
        if self.peek().kind == "^":
            self.take()
            neg = False
            if self.peek().kind == "-":
                raise ParseError("negative exponents are not allowed")
            t = self.take("num")
            if t.value.denominator != 1 or t.value < 0:
                raise ParseError("exponent must be a nonnegative integer")
            return base.pow(int(t.value)) if not neg else base
        return base

    def parse_base(self):
        t = self.peek()
        if t.kind == "num":
            self.take()
            return Poly2.const(GRat(t.value), vars=self.vars)
        if t.kind == "imag":
            self.take()
            return Poly2.const(GRat(0, 1), vars=self.vars)
        if t.kind == "var":
            self.take()
            if t.value == self.vars[0]:
                return Poly2.var_x(vars=self.vars)
            if t.value == self.vars[1]:
                return Poly2.var_y(vars=self.vars)
            raise ParseError(
                f"variable {t.value!r} not among {self.vars}"
            )
        if t.kind == "(":
            self.take()
            inner = self.parse_expr()
            self.take(")")
            return inner
        if t.kind == "-":
            self.take()
            return -self.parse_base()
        raise ParseError(f"unexpected token {t.kind}")


def parse_poly2(text: str, vars=("x", "y")) -> Poly2:
    p = _Parser(_tokenize(text), tuple(vars))
    out = p.parse_expr()
    if p.peek().kind != "end":
        raise ParseError("trailing input after polynomial")
    return out


def parse_poly1(text: str, var="t") -> Poly1:
    # parse in a two-variable context with a dummy second variable
    dummy = "s" if var != "s" else "u"
    p2 = parse_poly2(text, vars=(var, dummy))
    if p2.degree_in(1) not in (0,) and p2.terms:
        if any(j > 0 for (_, j) in p2.terms):
            raise ParseError(f"expected a univariate polynomial in {var!r}")
    return p2.eval_y(0) if p2.terms else Poly1.zero(var=var)


def parse_scalar(text: str) -> GRat:
    p = parse_poly2(text, vars=("x", "y"))
    if any(k != (0, 0) for k in p.terms):
        raise ParseError("expected a scalar")
    return p.coeff(0, 0)


# ---------------------------------------------------------------------------
# Canonical printing.


def _format_monomial(c, exps, names):
    parts = []
    body = [f"{n}^{e}" if e > 1 else n for n, e in zip(names, exps) if e > 0]
    cs = format_scalar(c)
    if not body:
        return cs
    if cs == "1":
        pass
    elif cs == "-1":
        parts.append("-")
    else:
        parts.append(cs + "*")
    return "".join(parts) + "*".join(body)


def format_poly2(p: Poly2) -> str:
    if p.is_zero:
        return "0"
    keys = sorted(p.terms, key=lambda k: (k[0] + k[1], k[1], k[0]))
    chunks = []
    for k in keys:
        s = _format_monomial(p.terms[k], k, p.vars)
        if not chunks:
            chunks.append(s)
        elif s.startswith("-"):
            chunks.append(" - " + s[1:])
        else:
            chunks.append(" + " + s)
    return "".join(chunks)


def format_poly1(p: Poly1) -> str:
    if p.is_zero:
        return "0"
    chunks = []
    for k, c in enumerate(p.coeffs):
        if is_zero(c):
            continue
        s = _format_monomial(c, (k,), (p.var,))
        if not chunks:
            chunks.append(s)
        elif s.startswith("-"):
            chunks.append(" - " + s[1:])
        else:
            chunks.append(" + " + s)
    return "".join(chunks)
