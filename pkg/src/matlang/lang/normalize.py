"""Rewriting an expression as a linear combination of +/×-free expressions.

Multiplication, pointwise products, conjugate transposition, trace and diag
are (conjugate-)linear in each argument, so sums and scalar factors can be
pushed outward.  ``ones(e)`` only depends on the shape of e and is replaced
by ``ones`` of any single term.  Function application is not linear and is
kept as an atom with its arguments left as they are.
"""
from __future__ import annotations

from ..linalg import GaussianRational, ONE
from . import ast


def _merge(pairs):
    out: dict = {}
    for c, t in pairs:
        out[t] = out[t] + c if t in out else c
    return list(out.items())  # (term, coef) order of first appearance


def _linear(e: ast.Expr):
    memo: dict = {}
    for node in ast.iter_nodes(e):
        k = node.kind
        kids = [memo[c._id] for c in node.children]
        if k == "Var" or k == "Apply":
            res = [(node, ONE)]
        elif k == "Add":
            res = _merge([(c, t) for t, c in kids[0] + kids[1]])
        elif k == "ScalarMul":
            res = [(t, node.c * c) for t, c in kids[0]]
        elif k in ("Mul", "VProd", "Schur"):
            cls = type(node)
            res = _merge([(ca * cb, cls(ta, tb)) for ta, ca in kids[0] for tb, cb in kids[1]])
        elif k == "ConjTranspose":
            res = [(ast.ConjTranspose(t), c.conj()) for t, c in kids[0]]
        elif k in ("Trace", "Diag"):
            cls = type(node)
            res = [(cls(t), c) for t, c in kids[0]]
        elif k == "Ones":
            res = [(ast.Ones(kids[0][0][0]), ONE)]
        else:
            raise TypeError(k)
        memo[node._id] = res
    return memo[e._id]


def normalize_linear(e: ast.Expr) -> list:
    """[(coefficient, term), ...] with zero coefficients dropped."""
    return [(c, t) for t, c in _linear(e) if not c.is_zero()]


def from_linear(terms, zero_like: ast.Expr | None = None) -> ast.Expr:
    """Rebuild an expression from ``normalize_linear`` output."""
    parts = [t if c == ONE else ast.ScalarMul(c, t) for c, t in terms]
    if not parts:
        if zero_like is None:
            raise ValueError("empty combination needs a template for the zero value")
        return ast.ScalarMul(GaussianRational(0), zero_like)
    return ast.linear_sum(parts)


def is_linear_free(e: ast.Expr) -> bool:
    """No Add/ScalarMul outside of function-application arguments."""
    stack, seen = [e], set()
    while stack:
        n = stack.pop()
        if n._id in seen:
            continue
        seen.add(n._id)
        if n.kind in ("Add", "ScalarMul"):
            return False
        if n.kind != "Apply":
            stack.extend(n.children)
    return True
