"""Evaluation of expressions on a concrete matrix.

Exact mode works over Gaussian rationals (:class:`ExactMatrix`); float mode
over complex numpy arrays.  Evaluation is memoized per node so shared
subexpressions of a DAG are computed once.
"""
from __future__ import annotations

import numpy as np

from ..errors import EvalModeError, NotSquare
from ..linalg import ExactMatrix, mat_mul
from . import ast
from .functions import lookup
from .sorts import sort_check


def _as_exact(a) -> ExactMatrix:
    if hasattr(a, "exact_adjacency"):
        a = a.exact_adjacency()
    if not isinstance(a, ExactMatrix):
        arr = np.asarray(a)
        if arr.dtype.kind in "iub":
            a = ExactMatrix.from_int_array(arr.astype(np.int64))
        else:
            a = ExactMatrix(arr.tolist())
    if not a.is_square():
        raise NotSquare(f"input matrix must be square, got {a.shape}")
    return a


def _as_float(a) -> np.ndarray:
    if hasattr(a, "exact_adjacency"):
        a = a.adjacency
    if isinstance(a, ExactMatrix):
        a = a.to_numpy()
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"input matrix must be square, got {a.shape}")
    return a


def requires_float(e: ast.Expr) -> bool:
    """True when e applies a function without an exact implementation."""
    return any(n.kind == "Apply" and not lookup(n.fn).exact for n in ast.iter_nodes(e))


def _exact_apply(fn, vals):
    r, c = vals[0].shape
    rows = []
    for i in range(r):
        rows.append([fn.exact_fn(*(v.entry(i, j) for v in vals)) for j in range(c)])
    return ExactMatrix(rows)


def _step_exact(node, kids, a):
    k = node.kind
    if k == "Var":
        return a
    if k == "ConjTranspose":
        return kids[0].conj_transpose()
    if k == "Ones":
        return ExactMatrix.ones(kids[0].rows, 1)
    if k == "Diag":
        v = kids[0]
        return v if v.shape == (1, 1) else v.diag_matrix()
    if k == "Trace":
        return ExactMatrix.scalar(kids[0].trace())
    if k == "Mul":
        return mat_mul(kids[0], kids[1])
    if k == "Add":
        return kids[0] + kids[1]
    if k == "ScalarMul":
        return kids[0].scale(node.c)
    if k in ("VProd", "Schur"):
        return kids[0].hadamard(kids[1])
    if k == "Apply":
        fn = lookup(node.fn)
        if not fn.exact:
            raise EvalModeError(f"{node.fn} has no exact implementation; use float mode")
        return _exact_apply(fn, kids)
    raise TypeError(k)


def _step_float(node, kids, a):
    k = node.kind
    if k == "Var":
        return a
    if k == "ConjTranspose":
        return kids[0].conj().T
    if k == "Ones":
        return np.ones((kids[0].shape[0], 1), dtype=complex)
    if k == "Diag":
        v = kids[0]
        return v if v.shape == (1, 1) else np.diag(v[:, 0])
    if k == "Trace":
        return np.array([[np.trace(kids[0])]], dtype=complex)
    if k == "Mul":
        return kids[0] @ kids[1]
    if k == "Add":
        return kids[0] + kids[1]
    if k == "ScalarMul":
        return complex(node.c) * kids[0]
    if k in ("VProd", "Schur"):
        return kids[0] * kids[1]
    if k == "Apply":
        out = np.asarray(lookup(node.fn).float_fn(*kids), dtype=complex)
        if not np.all(np.isfinite(out)):
            raise FloatingPointError(f"{node.fn} produced a non-finite value")
        return out
    raise TypeError(k)


def evaluate(e: ast.Expr, a, mode: str = "exact", check: bool = True):
    """Value of e on the matrix a.

    Returns an ExactMatrix in exact mode and a complex numpy array in float
    mode.  ``check=False`` skips the sort check for callers that already ran it.
    """
    if check:
        sort_check(e)
    if mode == "exact":
        if requires_float(e):
            raise EvalModeError("expression uses a function without an exact implementation; use float mode")
        a, step = _as_exact(a), _step_exact
    elif mode == "float":
        a, step = _as_float(a), _step_float
    else:
        raise ValueError(f"unknown mode {mode!r}")
    memo = {}
    for node in ast.iter_nodes(e):
        memo[node._id] = step(node, [memo[c._id] for c in node.children], a)
    return memo[e._id]


def evaluate_many(exprs, a, mode: str = "exact") -> list:
    """Evaluate several expressions sharing one memo table."""
    if mode == "exact":
        a, step = _as_exact(a), _step_exact
    else:
        a, step = _as_float(a), _step_float
    memo = {}
    out = []
    for e in exprs:
        sort_check(e)
        if mode == "exact" and requires_float(e):
            raise EvalModeError("expression uses a function without an exact implementation; use float mode")
        for node in ast.iter_nodes(e):
            if node._id not in memo:
                memo[node._id] = step(node, [memo[c._id] for c in node.children], a)
        out.append(memo[e._id])
    return out


def evaluate_scalar(e: ast.Expr, a, mode: str = "exact"):
    v = evaluate(e, a, mode)
    if mode == "exact":
        return v.scalar_value()
    if v.shape != (1, 1):
        raise ValueError(f"not a sentence: result shape {v.shape}")
    return complex(v[0, 0])
