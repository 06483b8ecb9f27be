"""Random well-sorted expressions inside a fragment.

Used by the property tests and by the random stage of the
distinguishing-sentence search.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import ast
from .sorts import Fragment, Sort

M, C, R, S = Sort.MAT, Sort.COL, Sort.ROW, Sort.SCAL

# (tag, result sort, argument sorts, builder)
_PRODUCTIONS = [
    ("mul", M, (M, M), ast.Mul), ("mul", C, (M, C), ast.Mul), ("mul", R, (R, M), ast.Mul),
    ("mul", S, (R, C), ast.Mul), ("mul", M, (C, R), ast.Mul), ("mul", C, (C, S), ast.Mul),
    ("mul", R, (S, R), ast.Mul), ("mul", S, (S, S), ast.Mul),
    ("ones", C, (M,), ast.Ones), ("ones", C, (C,), ast.Ones), ("ones", S, (R,), ast.Ones),
    ("ones", S, (S,), ast.Ones),
    ("diag", M, (C,), ast.Diag), ("diag", S, (S,), ast.Diag),
    ("tr", S, (M,), ast.Trace), ("tr", S, (S,), ast.Trace),
    ("conj", M, (M,), ast.ConjTranspose), ("conj", R, (C,), ast.ConjTranspose),
    ("conj", C, (R,), ast.ConjTranspose), ("conj", S, (S,), ast.ConjTranspose),
    ("vprod", C, (C, C), ast.VProd), ("vprod", S, (S, S), ast.VProd),
    ("schur", M, (M, M), ast.Schur),
] + [("add", s, (s, s), ast.Add) for s in (M, C, R, S)] + [("smul", s, (s,), None) for s in (M, C, R, S)]

# exact catalog functions used for apply nodes: (name, arity)
DEFAULT_FUNCTIONS = (("indicator_nonzero", 1), ("abs2", 1), ("prod", 2), ("affine[2,-1]", 1), ("const[1]", 1))

_APPLY_TAG = {S: "apply_s", C: "apply_v", R: "apply_v", M: "apply_m"}


class ExprGenerator:
    """Sampler of random expressions of a requested sort within a fragment."""

    def __init__(self, fragment: Fragment, rng=None, functions=DEFAULT_FUNCTIONS,
                 coefficients=(-2, -1, 1, 2, 3, Fraction(1, 2)), leaf_bias: float = 0.3):
        self.fragment = fragment
        self.rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
        self.functions = list(functions)
        self.coefficients = list(coefficients)
        self.leaf_bias = leaf_bias
        self.prods = [p for p in _PRODUCTIONS if p[0] in fragment.allowed]
        for s, tag in _APPLY_TAG.items():
            if tag in fragment.allowed:
                for name, arity in self.functions:
                    self.prods.append((tag, s, (s,) * arity, name))
        self.cost = self._min_costs()

    def _min_costs(self):
        cost = {M: 1, C: math.inf, R: math.inf, S: math.inf}
        changed = True
        while changed:
            changed = False
            for _, out, args, _ in self.prods:
                c = 1 + sum(cost[a] for a in args)
                if c < cost[out]:
                    cost[out] = c
                    changed = True
        return cost

    def can_produce(self, sort: Sort) -> bool:
        return self.cost[sort] < math.inf

    def _build(self, prod, kids):
        tag, _, _, builder = prod
        if tag == "smul":
            c = self.coefficients[self.rng.integers(len(self.coefficients))]
            return ast.ScalarMul(c, kids[0])
        if isinstance(builder, str):
            return ast.Apply(builder, kids)
        return builder(*kids)

    def expr(self, sort: Sort, depth: int = 4) -> ast.Expr:
        if not self.can_produce(sort):
            raise ValueError(f"fragment {self.fragment} cannot produce sort {sort}")
        if sort is M and (depth <= 0 or self.rng.random() < self.leaf_bias):
            return ast.X
        options = [p for p in self.prods if p[1] is sort and all(self.can_produce(a) for a in p[2])]
        if depth <= 0:
            best = min(1 + sum(self.cost[a] for a in p[2]) for p in options)
            options = [p for p in options if 1 + sum(self.cost[a] for a in p[2]) == best]
        prod = options[self.rng.integers(len(options))]
        kids = [self.expr(a, depth - 1) for a in prod[2]]
        return self._build(prod, kids)

    def sentence(self, depth: int = 4) -> ast.Expr:
        return self.expr(S, depth)

    def pool(self, count: int, sort: Sort = S, depth: int = 4, max_tries: int | None = None) -> list:
        """Up to ``count`` distinct expressions of the given sort."""
        seen, out = set(), []
        tries = max_tries if max_tries is not None else 20 * count
        for _ in range(tries):
            e = self.expr(sort, depth)
            if e not in seen:
                seen.add(e)
                out.append(e)
                if len(out) == count:
                    break
        return out
