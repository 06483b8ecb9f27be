"""Input-dependent expression synthesis.

``synthesize_eqpart_exprs`` replays colour refinement on a graph G inside
ML(·,*,1,diag,+,×): at each round the column j of M = A B is ``X * b_j`` and
the rows holding a given value combination are selected with products of
``diag(m_j - c 1)`` factors.  ``synthesize_stabcol_exprs`` does the same for
pair-colour refinement with Schur products.  The expressions depend on G
(they hard-code the values seen during G's run); the checking sentences
compare their behaviour on another graph H with that on G.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from ..lang import ast
from ..lang.ast import X, Diag, Mul, Ones, ScalarMul, Schur, VProd, ConjTranspose
from ..lang.evaluate import evaluate_many
from ..lang.library import binary_diag, count_ones, one, one_t, shifted, value_selector_diag, value_selector_vprod, zerotest_diag
from ..partitions import gdcr_step, initial_pair_colours, stab_step
from ..graph import Graph
from ..linalg import ExactMatrix


def _adj(g):
    return g.adjacency if isinstance(g, Graph) else np.asarray(g, dtype=np.int64)


def _select(v, value, values, style):
    if style == "diag":
        return value_selector_diag(v, value, values)
    return value_selector_vprod(v, value, values)


def _conj(parts, style):
    """Pointwise conjunction of Col selectors."""
    if not parts:
        return one()
    if len(parts) == 1:
        return parts[0]
    if style == "diag":
        return Mul(ast.product([Diag(p) for p in parts]), one())
    return ast.pointwise_product(parts, VProd)


def eqpart_rounds(g, style: str = "diag"):
    """List of per-round expression lists; the last entry is the stable one."""
    a = _adj(g)
    colours = [np.zeros(a.shape[0], dtype=np.int64)]
    k = 1
    exprs = [one()]
    rounds = [exprs]
    for _ in range(a.shape[0] + 1):
        new, k2, (m,), rows = gdcr_step([a], colours, k)
        if k2 == k:
            break
        ms = [Mul(X, b) for b in exprs]
        values = [sorted(set(int(x) for x in m[:, j])) for j in range(k)]
        nxt = []
        for row in rows:
            factors = [_select(ms[j], int(row[j]), values[j], style) for j in range(k) if len(values[j]) > 1]
            nxt.append(_conj(factors, style))
        exprs, colours, k = nxt, new, k2
        rounds.append(exprs)
    return rounds


def synthesize_eqpart_exprs(g, style: str = "diag", verify: bool = True) -> list:
    """Col expressions whose values on A_G are the coarsest equitable partition indicators."""
    exprs = eqpart_rounds(g, style)[-1]
    if verify:
        from ..partitions import coarsest_equitable_partition

        part = coarsest_equitable_partition(g).partition
        vals = evaluate_many(exprs, g)
        for i, v in enumerate(vals):
            if v != part.indicator(i):  # pragma: no cover - construction invariant
                raise AssertionError(f"eqpart_{i} does not reproduce part {i}")
    return exprs


# checking sentences


def eqpart_checking_sentences(g, style: str = "diag") -> list:
    """(name, sentence) pairs that all evaluate equally on G and H when the synthesized
    partition behaves on H as on G; a mismatch certifies that no common equitable
    partition exists."""
    a = _adj(g)
    exprs = synthesize_eqpart_exprs(g, style, verify=False)
    vals = evaluate_many(exprs, g)
    n = a.shape[0]
    b = np.array([[int(v.entry(i, 0).re) for v in vals] for i in range(n)], dtype=np.int64)
    quotient = (a @ b)[[int(np.flatnonzero(b[:, i])[0]) for i in range(b.shape[1])]]
    out = []
    for i, e in enumerate(exprs):
        out.append((f"size_{i}", Mul(one_t(), e)))
    for i, e in enumerate(exprs):
        if style == "diag":
            out.append((f"binary_diag_{i}", binary_diag(Diag(e))))
        else:
            t = ast.Add(VProd(e, e), ScalarMul(-1, e))
            out.append((f"binary_vec_{i}", Mul(one_t(), VProd(t, t))))
    total = ast.linear_sum(exprs)
    out.append(("partition_sum", Mul(one_t(), total)))
    cover = shifted(total, 1)
    if style == "diag":
        out.append(("cover_test", zerotest_diag(Diag(cover))))
    else:
        out.append(("cover_test", Mul(one_t(), VProd(cover, cover))))
    for i, ei in enumerate(exprs):
        for j, ej in enumerate(exprs):
            c = int(quotient[i, j])
            if style == "diag":
                inner = Mul(Mul(Mul(Diag(ei), X), Diag(ej)), one())
                test = Diag(ast.Add(inner, ScalarMul(-c, ei)))
                out.append((f"equi_test_{i}_{j}", zerotest_diag(test)))
            else:
                inner = VProd(ei, Mul(X, ej))
                u = ast.Add(inner, ScalarMul(-c, ei))
                out.append((f"equi_test_{i}_{j}", Mul(one_t(), VProd(u, u))))
    return out


# 2WL


def _all_ones_matrix():
    return Mul(Ones(X), ConjTranspose(Ones(X)))


def _ind(p_expr, value, values):
    """Schur-Wielandt extraction of the entries of p_expr equal to value."""
    others = [v for v in values if v != value]
    if not others:
        return _all_ones_matrix()
    factors = [ast.Add(p_expr, ScalarMul(-v, _all_ones_matrix())) for v in others]
    scale = Fraction(1)
    for v in others:
        scale *= value - v
    return ScalarMul(1 / scale, ast.pointwise_product(factors, Schur))


def stabcol_rounds(g):
    """Per-round dicts colour -> expression, starting from the initial colouring."""
    a = _adj(g)
    n = a.shape[0]
    init = {
        0: ast.Add(ast.Add(_all_ones_matrix(), ScalarMul(-1, X)), ScalarMul(-1, Diag(Ones(X)))),
        1: X,
        2: Diag(Ones(X)),
    }
    chi = initial_pair_colours(a)
    present = sorted(set(int(c) for c in chi.flat))
    exprs = {c: init[c] for c in present}
    rounds = [exprs]
    base = 3
    count = len(present)
    for _ in range(n * n + 1):
        (new,), k2 = stab_step([chi], base)
        if k2 == count:
            break
        # structure constants p^{c,d}(v1, v2) and the value sets P_{c,d}
        cols = sorted(exprs)
        ind = {c: (chi == c).astype(np.int64) for c in cols}
        pmats = {}
        for c in cols:
            for d in cols:
                pm = ind[c] @ ind[d]
                if pm.any():
                    pmats[(c, d)] = pm
        nxt = {}
        for colour in range(k2):
            mask = new == colour
            v1, v2 = np.argwhere(mask)[0]
            factors = []
            for (c, d), pm in pmats.items():
                vals = sorted(set(int(x) for x in pm.flat))
                if len(vals) == 1:
                    continue
                p_expr = Mul(exprs[c], exprs[d])
                factors.append(_ind(p_expr, int(pm[v1, v2]), vals))
            old = int(chi[v1, v2])
            base_expr = exprs[old]
            nxt[colour] = ast.pointwise_product([base_expr] + factors, Schur) if factors else base_expr
        exprs, chi, base, count = nxt, new, k2, k2
        rounds.append(exprs)
    return rounds


def synthesize_stabcol_exprs(g, verify: bool = True) -> list:
    """Mat expressions whose values on A_G are the stable edge partition's indicator matrices,
    ordered by canonical colour."""
    from ..partitions import stable_edge_partition

    last = stabcol_rounds(g)[-1]
    p = stable_edge_partition(g)
    # rounds use consecutive ids; map by matching indicator matrices
    vals = evaluate_many([last[c] for c in sorted(last)], g)
    out = []
    by_value = {}
    for c, v in zip(sorted(last), vals):
        by_value[v] = last[c]
    for c in p.classes:
        target = ExactMatrix.from_int_array(p.indicator(c))
        e = by_value.get(target)
        if e is None:  # pragma: no cover - construction invariant
            raise AssertionError(f"no synthesized expression for class {c}")
        out.append(e)
    return out


def stabcol_checking_sentences(g) -> list:
    """#ones, binary and cover sentences for every refinement round of G."""
    out = []
    for r, exprs in enumerate(stabcol_rounds(g)):
        mats = [exprs[c] for c in sorted(exprs)]
        for c, m in zip(sorted(exprs), mats):
            out.append((f"ones_{r}_{c}", count_ones(m)))
            t = ast.Add(Schur(m, m), ScalarMul(-1, m))
            out.append((f"binary_{r}_{c}", count_ones(Schur(t, t))))
        cover = ast.Add(ast.linear_sum(mats), ScalarMul(-1, _all_ones_matrix()))
        out.append((f"cover_{r}", count_ones(Schur(cover, cover))))
    return out
