"""Abstract syntax for MATLANG expressions in the single variable X.

Nodes are immutable and hash-consed: every node carries an integer id that
is equal for structurally equal trees.  Equality and hashing are O(1), which
matters because synthesized expressions are DAGs whose tree size can be
exponential in their DAG size.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from ..linalg import GaussianRational

_counter = itertools.count()
_table: dict = {}


def _intern(key) -> int:
    got = _table.get(key)
    if got is None:
        got = _table.setdefault(key, next(_counter))
    return got


class Expr:
    """Base class; see the concrete node classes below."""

    __slots__ = ("_id",)
    kind = "expr"

    def _init(self, key):
        object.__setattr__(self, "_id", _intern((self.kind,) + key))

    def __setattr__(self, name, value):
        raise AttributeError("expressions are immutable")

    @property
    def children(self) -> tuple:
        return ()

    def __eq__(self, other):
        return isinstance(other, Expr) and self._id == other._id

    def __hash__(self):
        return self._id

    def __str__(self):
        return pretty(self)

    # convenience operators for building expressions in Python
    def __mul__(self, other):
        if isinstance(other, Expr):
            return Mul(self, other)
        return ScalarMul(other, self)

    def __rmul__(self, other):
        return ScalarMul(other, self)

    def __add__(self, other):
        return Add(self, other)

    def __sub__(self, other):
        return Add(self, ScalarMul(-1, other))

    @property
    def H(self):
        return ConjTranspose(self)


class Var(Expr):
    __slots__ = ()
    kind = "Var"

    def __init__(self):
        self._init(())

    def __repr__(self):
        return "Var()"


class _Unary(Expr):
    __slots__ = ("e",)

    def __init__(self, e: Expr):
        if not isinstance(e, Expr):
            raise TypeError(f"expected Expr, got {type(e).__name__}")
        object.__setattr__(self, "e", e)
        self._init((e._id,))

    @property
    def children(self):
        return (self.e,)

    def __repr__(self):
        return f"{self.kind}({self.e!r})"


class _Binary(Expr):
    __slots__ = ("a", "b")

    def __init__(self, a: Expr, b: Expr):
        if not isinstance(a, Expr) or not isinstance(b, Expr):
            raise TypeError("expected Expr operands")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        self._init((a._id, b._id))

    @property
    def children(self):
        return (self.a, self.b)

    def __repr__(self):
        return f"{self.kind}({self.a!r}, {self.b!r})"


class ConjTranspose(_Unary):
    __slots__ = ()
    kind = "ConjTranspose"


class Ones(_Unary):
    __slots__ = ()
    kind = "Ones"


class Diag(_Unary):
    __slots__ = ()
    kind = "Diag"


class Trace(_Unary):
    __slots__ = ()
    kind = "Trace"


class Mul(_Binary):
    __slots__ = ()
    kind = "Mul"


class Add(_Binary):
    __slots__ = ()
    kind = "Add"


class VProd(_Binary):
    __slots__ = ()
    kind = "VProd"


class Schur(_Binary):
    __slots__ = ()
    kind = "Schur"


class ScalarMul(Expr):
    __slots__ = ("c", "e")
    kind = "ScalarMul"

    def __init__(self, c, e: Expr):
        c = GaussianRational.coerce(c)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "e", e)
        self._init((c.re, c.im, e._id))

    @property
    def children(self):
        return (self.e,)

    def __repr__(self):
        return f"ScalarMul({self.c}, {self.e!r})"


class Apply(Expr):
    __slots__ = ("fn", "args")
    kind = "Apply"

    def __init__(self, fn: str, args):
        args = tuple(args)
        if not args:
            raise ValueError("apply needs at least one argument")
        object.__setattr__(self, "fn", str(fn))
        object.__setattr__(self, "args", args)
        self._init((self.fn,) + tuple(a._id for a in args))

    @property
    def children(self):
        return self.args

    def __repr__(self):
        return f"Apply({self.fn!r}, [{', '.join(repr(a) for a in self.args)}])"


X = Var()


def power(e: Expr, k: int) -> Expr:
    """Left-associated product e * e * ... * e (k >= 1 factors)."""
    if k < 1:
        raise ValueError("power needs k >= 1")
    out = e
    for _ in range(k - 1):
        out = Mul(out, e)
    return out


def ones_col(e: Expr = X) -> Expr:
    return Ones(e)


def ones_row(e: Expr = X) -> Expr:
    return ConjTranspose(Ones(e))


def all_ones(e: Expr = X) -> Expr:
    """J = 1 * 1^*"""
    return Mul(Ones(e), ConjTranspose(Ones(e)))


def identity(e: Expr = X) -> Expr:
    return Diag(Ones(e))


def linear_sum(terms) -> Expr:
    """Left-folded Add over a non-empty iterable of expressions."""
    terms = list(terms)
    if not terms:
        raise ValueError("empty sum")
    out = terms[0]
    for t in terms[1:]:
        out = Add(out, t)
    return out


def product(factors) -> Expr:
    factors = list(factors)
    if not factors:
        raise ValueError("empty product")
    out = factors[0]
    for f in factors[1:]:
        out = Mul(out, f)
    return out


def pointwise_product(factors, cls) -> Expr:
    factors = list(factors)
    out = factors[0]
    for f in factors[1:]:
        out = cls(out, f)
    return out


# --------------------------------------------------------------------------
# traversal helpers


def iter_nodes(e: Expr):
    """Each distinct node of the DAG exactly once (post-order)."""
    seen = set()
    stack = [(e, False)]
    while stack:
        node, done = stack.pop()
        if done:
            yield node
            continue
        if node._id in seen:
            continue
        seen.add(node._id)
        stack.append((node, True))
        for ch in reversed(node.children):
            if ch._id not in seen:
                stack.append((ch, False))


def dag_size(e: Expr) -> int:
    return sum(1 for _ in iter_nodes(e))


def tree_size(e: Expr) -> int:
    memo = {}
    for node in iter_nodes(e):
        memo[node._id] = 1 + sum(memo[c._id] for c in node.children)
    return memo[e._id]


def rebuild(node: Expr, children) -> Expr:
    """Copy of ``node`` with new children."""
    k = node.kind
    if k == "Var":
        return node
    if k == "ScalarMul":
        return ScalarMul(node.c, children[0])
    if k == "Apply":
        return Apply(node.fn, children)
    if isinstance(node, _Unary):
        return type(node)(children[0])
    return type(node)(children[0], children[1])


def substitute(e: Expr, replacement: Expr) -> Expr:
    """e with every occurrence of X replaced by ``replacement``."""
    memo = {}
    for node in iter_nodes(e):
        if node.kind == "Var":
            memo[node._id] = replacement
        else:
            memo[node._id] = rebuild(node, [memo[c._id] for c in node.children])
    return memo[e._id]


# --------------------------------------------------------------------------
# pretty printing

# precedence levels: 0 sum, 1 product, 2 postfix factor


def format_scalar(c: GaussianRational) -> str:
    """Literal text for a coefficient; re-parses to the same value."""
    if c.is_real():
        return str(c.re)
    if c.re == 0:
        return "i" if c.im == 1 else f"({c.im} * i)"
    return f"({c.re} + {c.im} * i)"


def _power_chain(e: Expr):
    """(base, k) if e is a left-associated product of k >= 2 copies of base."""
    if e.kind != "Mul":
        return None
    base = e.b
    k = 1
    node = e
    while node.kind == "Mul" and node.b == base:
        k += 1
        node = node.a
    if node != base:
        return None
    return base, k


def pretty(e: Expr) -> str:
    """Concrete syntax; ``parse(pretty(e)) == e``."""
    return _pp(e, 0)


def _wrap(s: str, needed: bool) -> str:
    return f"({s})" if needed else s


def _pp(e: Expr, level: int) -> str:
    k = e.kind
    if k == "Var":
        return "X"
    if k in ("Ones", "Diag", "Trace"):
        name = {"Ones": "ones", "Diag": "diag", "Trace": "tr"}[k]
        return f"{name}({_pp(e.e, 0)})"
    if k == "Apply":
        return "apply(" + ", ".join([e.fn] + [_pp(a, 0) for a in e.args]) + ")"
    if k == "ConjTranspose":
        return _pp(e.e, 2) + "'"
    if k == "Add":
        right = e.b
        if right.kind == "ScalarMul" and right.c.is_real() and right.c.re < 0:
            s = f"{_pp(e.a, 0)} - {format_scalar(-right.c)} * {_pp(right.e, 2)}"
        else:
            s = f"{_pp(e.a, 0)} + {_pp(right, 1)}"
        return _wrap(s, level > 0)
    if k == "ScalarMul":
        s = f"{format_scalar(e.c)} * {_pp(e.e, 2)}"
        return _wrap(s, level > 1)
    if k == "Mul":
        chain = _power_chain(e)
        if chain is not None:
            return f"{_pp(chain[0], 2)}^{chain[1]}"
        s = f"{_pp(e.a, 1)} * {_pp(e.b, 2)}"
        return _wrap(s, level > 1)
    if k in ("VProd", "Schur"):
        s = f"{_pp(e.a, 1)} .* {_pp(e.b, 2)}"
        return _wrap(s, level > 1)
    raise TypeError(f"unknown node {k}")


def scalar_of(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(Fraction(x))
