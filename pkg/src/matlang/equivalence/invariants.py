"""Exact walk, closed-walk and Laplacian invariants."""
from __future__ import annotations

import numpy as np

from ..errors import OrderMismatch
from ..graph import Graph
from ..linalg import ExactMatrix, determinant


def _obj(g) -> np.ndarray:
    a = g.adjacency if isinstance(g, Graph) else np.asarray(g)
    return np.array(a.tolist(), dtype=object)


def _same_order(g, h):
    if g.n != h.n:
        raise OrderMismatch(g.n, h.n)


def trace_power_vector(g, kmax: int) -> list:
    """[tr(A^k) for k = 1..kmax] as Python ints."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    a = _obj(g)
    p = a.copy()
    out = [int(np.trace(p))]
    for _ in range(kmax - 1):
        p = p.dot(a)
        out.append(int(np.trace(p)))
    return out


def walk_count_vector(g, kmax: int) -> list:
    """[1' A^k 1 for k = 0..kmax]."""
    if kmax < 0:
        raise ValueError("kmax must be >= 0")
    a = _obj(g)
    v = np.array([1] * a.shape[0], dtype=object)
    out = [int(v.sum())]
    for _ in range(kmax):
        v = a.dot(v)
        out.append(int(v.sum()))
    return out


def cospectral(g: Graph, h: Graph) -> bool:
    """Equal tr(A^k) for k = 1..n, hence equal characteristic polynomials."""
    _same_order(g, h)
    return trace_power_vector(g, g.n) == trace_power_vector(h, h.n)


def same_walks(g: Graph, h: Graph) -> bool:
    """Equal walk counts for k = 0..2n-1 (co-main graphs)."""
    _same_order(g, h)
    k = 2 * g.n - 1
    return walk_count_vector(g, k) == walk_count_vector(h, k)


def cospectral_comain(g: Graph, h: Graph) -> bool:
    return cospectral(g, h) and same_walks(g, h)


def complement(g: Graph) -> Graph:
    n = g.n
    es = set(g.edges)
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in es])


def cospectral_with_complements(g: Graph, h: Graph) -> bool:
    """Second route to cospectral_comain: G, H and their complements are co-spectral."""
    return cospectral(g, h) and cospectral(complement(g), complement(h))


def laplacian_matrix(g) -> np.ndarray:
    a = g.adjacency if isinstance(g, Graph) else np.asarray(g)
    return np.diag(a.sum(axis=1)) - a


def spanning_trees(g) -> int:
    """Kirchhoff: any cofactor of the Laplacian."""
    lap = laplacian_matrix(g)
    n = lap.shape[0]
    if n == 1:
        return 1
    return int(determinant(ExactMatrix.from_int_array(lap[1:, 1:])).re)


def laplacian_invariants(g):
    """([tr(L^k) for k = 1..n], number of spanning trees)."""
    lap = laplacian_matrix(g)
    return trace_power_vector(lap, lap.shape[0]), spanning_trees(g)


def cospectral_plus_cep(g: Graph, h: Graph) -> bool:
    """Co-spectral with a common equitable partition."""
    from ..partitions import common_equitable_partition

    return cospectral(g, h) and common_equitable_partition(g, h) is not None
