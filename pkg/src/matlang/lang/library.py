"""Named sentences and expression builders."""
from __future__ import annotations

from fractions import Fraction

from . import ast
from .ast import X, ConjTranspose, Diag, Mul, Ones, ScalarMul, Trace


def one() -> ast.Expr:
    return Ones(X)


def one_t() -> ast.Expr:
    return ConjTranspose(Ones(X))


def cwalk(k: int) -> ast.Expr:
    """#cwalk_k = tr(X^k): closed walks of length k (k >= 1)."""
    return Trace(ast.power(X, k))


def walk(k: int) -> ast.Expr:
    """#walk_k = 1' X^k 1: walks of length k (k >= 0)."""
    if k == 0:
        return Mul(one_t(), one())
    return Mul(Mul(one_t(), ast.power(X, k)), one())


def degree_vector() -> ast.Expr:
    return Mul(X, one())


def shifted(v: ast.Expr, c) -> ast.Expr:
    """v - c * 1."""
    return ast.Add(v, ScalarMul(-ast.scalar_of(c), one()))


def value_selector_diag(v: ast.Expr, value, values) -> ast.Expr:
    """Col expression that is 1 where v == value and 0 where v takes another value in ``values``.

    Products of diagonal matrices stand in for pointwise products of vectors.
    """
    others = [c for c in sorted(set(values)) if c != value]
    if not others:
        return one()
    prod = ast.product([Diag(shifted(v, c)) for c in others])
    scale = Fraction(1)
    for c in others:
        scale *= Fraction(value) - Fraction(c)
    return ScalarMul(1 / scale, Mul(prod, one()))


def value_selector_vprod(v: ast.Expr, value, values) -> ast.Expr:
    """Same as value_selector_diag using pointwise vector products."""
    others = [c for c in sorted(set(values)) if c != value]
    if not others:
        return one()
    prod = ast.pointwise_product([shifted(v, c) for c in others], ast.VProd)
    scale = Fraction(1)
    for c in others:
        scale *= Fraction(value) - Fraction(c)
    return ScalarMul(1 / scale, prod)


def degree_count(d: int, max_degree: int, style: str = "diag") -> ast.Expr:
    """Number of vertices of degree d, valid on graphs with maximum degree <= max_degree.

    For d = max_degree and style "diag" this is the #3degr construction with
    the product taken over the smaller degrees.
    """
    values = range(max_degree + 1)
    if style == "diag":
        others = [c for c in values if c != d]
        if not others:
            return walk(0)
        prod = ast.product([Diag(shifted(degree_vector(), c)) for c in others])
        scale = Fraction(1)
        for c in others:
            scale *= d - c
        return ScalarMul(1 / scale, Mul(Mul(one_t(), prod), one()))
    sel = value_selector_vprod(degree_vector(), d, values)
    return Mul(one_t(), sel)


def three_degr() -> ast.Expr:
    """#3degr for graphs of maximum degree 3."""
    return degree_count(3, 3, "diag")


def laplacian() -> ast.Expr:
    """L(X) = diag(X 1) - X."""
    return ast.Add(Diag(degree_vector()), ScalarMul(-1, X))


def laplacian_trace(k: int) -> ast.Expr:
    """e_{L,k} = tr(L(X)^k)."""
    return Trace(ast.power(laplacian(), k))


def triangle_edges() -> ast.Expr:
    """apply[f_{>0}](X^2 .* X): indicator of edges lying on a triangle."""
    return ast.Apply("indicator_nonzero", [ast.Schur(ast.power(X, 2), X)])


def triangle_paths(k: int) -> ast.Expr:
    """#Δpaths_k = 1' (apply[f_{>0}](X^2 .* X))^k 1."""
    return Mul(Mul(one_t(), ast.power(triangle_edges(), k)), one())


def binary_diag(d: ast.Expr) -> ast.Expr:
    """1' ((D D - D)(D D - D)) 1 with D := d; zero iff the diagonal of real d is 0/1."""
    t = ast.Add(Mul(d, d), ScalarMul(-1, d))
    o = Ones(d)
    return Mul(Mul(ConjTranspose(o), Mul(t, t)), o)


def zerotest_diag(d: ast.Expr) -> ast.Expr:
    """1' D D 1; zero iff the real diagonal matrix D is zero."""
    o = Ones(d)
    return Mul(Mul(ConjTranspose(o), Mul(d, d)), o)


def count_ones(m: ast.Expr) -> ast.Expr:
    """#ones = 1' M 1."""
    return Mul(Mul(one_t(), m), one())


def trace_word(letters, alphabet) -> ast.Expr:
    """tr(w) for a word given as indices into a list of Mat expressions."""
    return Trace(ast.product([alphabet[i] for i in letters]))


CATALOG = {
    "cwalk": cwalk,
    "walk": walk,
    "laplacian_trace": laplacian_trace,
    "triangle_paths": triangle_paths,
}
