"""Conjugacy witnesses T with A_G T = T A_H and their class predicates."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import EigenvaluePairingFailure, OrderMismatch, PreconditionFailed
from ..linalg import ExactMatrix, eig_sym, mat_mul
from ..partitions import Partition, common_equitable_partition
from .invariants import cospectral

CLASSES = (
    "orthogonal", "doubly-stochastic", "doubly-quasi-stochastic", "orthogonal-dqs",
    "orthogonal-compatible", "orthogonal-partition-preserving",
)


@dataclass
class ConjugacyWitness:
    matrix: object  # ExactMatrix (exact) or numpy array (float)
    cls: str
    exact: bool
    residuals: dict = field(default_factory=dict)
    partition_g: Partition | None = None
    partition_h: Partition | None = None

    def as_float(self) -> np.ndarray:
        return self.matrix.to_numpy() if self.exact else np.asarray(self.matrix)


# exact predicates


def _rows_cols(t: ExactMatrix):
    n = t.rows
    one = ExactMatrix.ones(n, 1)
    return mat_mul(t, one), mat_mul(t.transpose(), one), one


def is_doubly_quasi_stochastic(t: ExactMatrix) -> bool:
    r, c, one = _rows_cols(t)
    return r == one and c == one


def is_doubly_stochastic(t: ExactMatrix) -> bool:
    if not t.is_real():
        return False
    re, _, _ = t.numerators()
    return is_doubly_quasi_stochastic(t) and all(x >= 0 for x in re.flat)


def is_orthogonal_exact(t: ExactMatrix) -> bool:
    return mat_mul(t.transpose(), t) == ExactMatrix.identity(t.rows)


def conjugates(a: ExactMatrix, b: ExactMatrix, t: ExactMatrix) -> bool:
    return mat_mul(a, t) == mat_mul(t, b)


def _diag_ind(p: Partition, i: int) -> ExactMatrix:
    return p.indicator(i).diag_matrix()


def is_compatible(t: ExactMatrix, pg: Partition, ph: Partition) -> bool:
    """diag(1_Vi) T = T diag(1_Wi) for every matched part."""
    return all(mat_mul(_diag_ind(pg, i), t) == mat_mul(t, _diag_ind(ph, i)) for i in range(pg.size))


def preserves_partitions(t: ExactMatrix, pg: Partition, ph: Partition) -> bool:
    """1_Vi = T 1_Wi for every matched part."""
    return all(mat_mul(t, ph.indicator(i)) == pg.indicator(i) for i in range(pg.size))


# float predicates


def orthogonality_residual(o: np.ndarray) -> float:
    return float(np.abs(o.T @ o - np.eye(o.shape[0])).max())


def conjugation_residual(a, b, o) -> float:
    return float(np.abs(np.asarray(a) @ o - o @ np.asarray(b)).max())


def preservation_residual(o, pg: Partition, ph: Partition) -> float:
    bg, bh = pg.indicator_matrix(), ph.indicator_matrix()
    return float(np.abs(o @ bh - bg).max())


def rounded_preservation(o, pg: Partition, ph: Partition, tol: float) -> bool:
    """round(O 1_Wi) = 1_Vi exactly, with every entry within tol of an integer."""
    img = o @ ph.indicator_matrix()
    r = np.rint(img)
    return bool(np.abs(img - r).max() <= tol and np.array_equal(r.astype(np.int64), pg.indicator_matrix()))


# constructions


def fractional_isomorphism_witness(g, h) -> ConjugacyWitness | None:
    """Doubly stochastic S with blocks J / |V_i| on matched parts, verified exactly."""
    if g.n != h.n:
        raise OrderMismatch(g.n, h.n)
    cep = common_equitable_partition(g, h)
    if cep is None:
        return None
    pg, ph = cep.g.partition, cep.h.partition
    sizes = pg.part_sizes()
    rows = [[Fraction(1, sizes[cv]) if cv == cw else 0 for cw in ph.colours] for cv in pg.colours]
    s = ExactMatrix(rows)
    a, b = g.exact_adjacency(), h.exact_adjacency()
    checks = {
        "conjugation": conjugates(a, b, s),
        "doubly_stochastic": is_doubly_stochastic(s),
        "compatible": is_compatible(s, pg, ph),
    }
    if not all(checks.values()):  # pragma: no cover - guaranteed by the construction
        raise AssertionError(f"block witness failed its checks: {checks}")
    return ConjugacyWitness(s, "doubly-stochastic", True, {k: 0 if v else 1 for k, v in checks.items()}, pg, ph)


def _complement_eigenpairs(a: np.ndarray, p: Partition, tol: float):
    """Eigenpairs of a restricted to the orthogonal complement of the part indicators."""
    n = a.shape[0]
    b = p.indicator_matrix().astype(float)
    u = b / np.sqrt(b.sum(axis=0))
    proj = u @ u.T
    mu = 2.0 * float(np.abs(a).sum(axis=1).max(initial=0.0)) + 1.0
    m = a @ (np.eye(n) - proj) + mu * proj
    m = (m + m.T) / 2
    w, v = eig_sym(m, tol=min(tol, 1e-10))
    keep = w < mu - 0.5
    return w[keep], v[:, keep]


def _clusters(w: np.ndarray, gap: float):
    out, start = [], 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > gap:
            out.append((start, i))
            start = i
    return out


def orthogonal_partition_witness(g, h, tol: float = 1e-8) -> ConjugacyWitness:
    """Orthogonal O with A_G O = O A_H that preserves the common equitable partition."""
    if g.n != h.n:
        raise OrderMismatch(g.n, h.n)
    cep = common_equitable_partition(g, h)
    if cep is None or not cospectral(g, h):
        raise PreconditionFailed("graphs must be co-spectral with a common equitable partition")
    pg, ph = cep.g.partition, cep.h.partition
    a = g.adjacency.astype(float)
    b = h.adjacency.astype(float)
    wg, vg = _complement_eigenpairs(a, pg, tol)
    wh, vh = _complement_eigenpairs(b, ph, tol)
    if len(wg) != len(wh):
        raise EigenvaluePairingFailure(f"complement spaces have dimensions {len(wg)} and {len(wh)}")
    gap = 1e-7 * max(1.0, float(np.abs(a).max(initial=0.0)))
    cg, ch = _clusters(wg, gap), _clusters(wh, gap)
    if [e - s for s, e in cg] != [e - s for s, e in ch]:
        raise EigenvaluePairingFailure("eigenvalue multiplicities differ on the complement spaces")
    for (s1, _), (s2, _) in zip(cg, ch):
        if abs(wg[s1] - wh[s2]) > 10 * gap:
            raise EigenvaluePairingFailure(f"eigenvalues {wg[s1]} and {wh[s2]} do not match")
    sizes = np.array(pg.part_sizes(), dtype=float)
    o = (pg.indicator_matrix() / sizes) @ ph.indicator_matrix().T
    o = o + vg @ vh.T
    res = {
        "orthogonality": orthogonality_residual(o),
        "conjugation": conjugation_residual(a, b, o),
        "preservation": preservation_residual(o, pg, ph),
    }
    res["preservation_rounded"] = 0.0 if rounded_preservation(o, pg, ph, tol) else 1.0
    return ConjugacyWitness(o, "orthogonal-partition-preserving", False, res, pg, ph)


def permutation_witness(perm) -> ConjugacyWitness:
    """P with P[perm[v], v] = 1: A_{relabel(G, perm)} P = P A_G."""
    n = len(perm)
    rows = [[0] * n for _ in range(n)]
    for v, w in enumerate(perm):
        rows[w][v] = 1
    return ConjugacyWitness(ExactMatrix(rows), "orthogonal", True)
