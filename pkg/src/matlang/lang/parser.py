"""Recursive-descent parser for the concrete expression syntax.

    expr   := term { ("+" | "-") term }
    term   := unary { ("*" | ".*") unary }
    unary  := "-" unary | factor
    factor := atom { "'" | "^" int }
    atom   := "X" | int [ "/" int ] | "i"
            | "ones(" expr ")" | "diag(" expr ")" | "tr(" expr ")"
            | "apply(" fname { "," expr } ")" | "(" expr ")"
    fname  := ident [ "[" rational { "," rational } "]" ]

Scalar literals fold into constants; a constant multiplied with an
expression becomes ScalarMul.  ``a - b`` is sugar for ``a + (-1) * b`` with
the sign folded into an existing leading coefficient, and ``e^k`` is the
left-associated product of k copies of e.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import MatlangSyntaxError, SortError
from ..linalg import GaussianRational
from . import ast
from .functions import canonical_name

_SINGLE = set("+-*'^(),/[]")


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos

    def __repr__(self):
        return f"{self.kind}:{self.text}@{self.pos}"


class _Const:
    """A folded scalar literal during parsing."""

    __slots__ = ("c", "pos")

    def __init__(self, c, pos):
        self.c = GaussianRational.coerce(c)
        self.pos = pos


def _tokenize(text: str):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Tok("num", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("ident", text[i:j], i))
            i = j
        elif ch == "." and i + 1 < n and text[i + 1] == "*":
            toks.append(_Tok(".*", ".*", i))
            i += 2
        elif ch in _SINGLE:
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            raise MatlangSyntaxError(_byte_pos(text, i), "a valid token", text)
    toks.append(_Tok("eof", "", n))
    return toks


def _byte_pos(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0

    # token helpers
    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, kind, what=None):
        t = self.peek()
        if t.kind != kind:
            self.fail(t, what or repr(kind))
        return self.take()

    def fail(self, tok, expected):
        raise MatlangSyntaxError(_byte_pos(self.text, tok.pos), expected, self.text)

    def need_expr(self, v, what="an expression"):
        if isinstance(v, _Const):
            raise MatlangSyntaxError(_byte_pos(self.text, v.pos), f"{what}, not a bare scalar", self.text)
        return v

    # grammar
    def parse(self):
        v = self.expr()
        t = self.peek()
        if t.kind != "eof":
            self.fail(t, "end of input")
        return self.need_expr(v)

    def expr(self):
        left = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take()
            right = self.term()
            if isinstance(left, _Const) and isinstance(right, _Const):
                left = _Const(left.c + right.c if op.kind == "+" else left.c - right.c, left.pos)
                continue
            self.need_expr(left, "an expression before '+'")
            self.need_expr(right, "an expression after '+'")
            if op.kind == "-":
                if right.kind == "ScalarMul":
                    right = ast.ScalarMul(-right.c, right.e)
                else:
                    right = ast.ScalarMul(-1, right)
            left = ast.Add(left, right)
        return left

    def term(self):
        left = self.unary()
        while self.peek().kind in ("*", ".*"):
            op = self.take()
            right = self.unary()
            lc, rc = isinstance(left, _Const), isinstance(right, _Const)
            if op.kind == "*":
                if lc and rc:
                    left = _Const(left.c * right.c, left.pos)
                elif lc:
                    left = ast.ScalarMul(left.c, right)
                elif rc:
                    left = ast.ScalarMul(right.c, left)
                else:
                    left = ast.Mul(left, right)
            else:
                self.need_expr(left, "an expression before '.*'")
                self.need_expr(right, "an expression after '.*'")
                left = _pointwise(left, right)
        return left

    def unary(self):
        if self.peek().kind == "-":
            self.take()
            v = self.unary()
            if isinstance(v, _Const):
                return _Const(-v.c, v.pos)
            return ast.ScalarMul(-1, v)
        return self.factor()

    def factor(self):
        v = self.atom()
        while True:
            t = self.peek()
            if t.kind == "'":
                self.take()
                v = _Const(v.c.conj(), v.pos) if isinstance(v, _Const) else ast.ConjTranspose(v)
            elif t.kind == "^":
                self.take()
                kt = self.expect("num", "an integer exponent")
                k = int(kt.text)
                if k < 1:
                    self.fail(kt, "an exponent >= 1")
                v = _Const(v.c ** k, v.pos) if isinstance(v, _Const) else ast.power(v, k)
            else:
                return v

    def rational(self):
        t = self.peek()
        sign = 1
        if t.kind == "-":
            self.take()
            sign = -1
        num = self.expect("num", "an integer")
        value = Fraction(int(num.text))
        if self.peek().kind == "/":
            self.take()
            den = self.expect("num", "an integer denominator")
            if int(den.text) == 0:
                self.fail(den, "a nonzero denominator")
            value = value / int(den.text)
        return sign * value

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.take()
            value = Fraction(int(t.text))
            if self.peek().kind == "/":
                self.take()
                den = self.expect("num", "an integer denominator")
                if int(den.text) == 0:
                    self.fail(den, "a nonzero denominator")
                value = value / int(den.text)
            return _Const(value, t.pos)
        if t.kind == "(":
            self.take()
            v = self.expr()
            self.expect(")", "')'")
            return v
        if t.kind == "ident":
            name = t.text
            if name == "X":
                self.take()
                return ast.X
            if name == "i":
                self.take()
                return _Const(GaussianRational(0, 1), t.pos)
            if name in ("ones", "diag", "tr"):
                self.take()
                self.expect("(", "'('")
                inner = self.need_expr(self.expr())
                self.expect(")", "')'")
                return {"ones": ast.Ones, "diag": ast.Diag, "tr": ast.Trace}[name](inner)
            if name == "apply":
                self.take()
                self.expect("(", "'('")
                fn = self.expect("ident", "a function name").text
                params = None
                if self.peek().kind == "[":
                    self.take()
                    params = [self.rational()]
                    while self.peek().kind == ",":
                        self.take()
                        params.append(self.rational())
                    self.expect("]", "']'")
                args = []
                while self.peek().kind == ",":
                    self.take()
                    args.append(self.need_expr(self.expr()))
                if not args:
                    self.fail(self.peek(), "',' and at least one argument")
                self.expect(")", "')'")
                return ast.Apply(canonical_name(fn, params), args)
        self.fail(t, "an expression")


def _pointwise(a, b):
    """Pick VProd or Schur from the operand sorts."""
    from .sorts import Sort, sort_check

    try:
        sa = sort_check(a)
    except (SortError, Exception):
        return ast.Schur(a, b)
    if sa in (Sort.COL, Sort.ROW, Sort.SCAL):
        return ast.VProd(a, b)
    return ast.Schur(a, b)


def parse(text: str) -> ast.Expr:
    """Parse concrete syntax into an expression tree."""
    return _Parser(text).parse()
