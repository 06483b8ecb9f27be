"""Brute-force reference implementations used to check the library.

Nothing here imports the code under test except the Graph container, so an
agreement between an oracle and the library is an independent check.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

import networkx as nx
import numpy as np


def adjacency(g) -> np.ndarray:
    return np.asarray(g.adjacency if hasattr(g, "adjacency") else g, dtype=np.int64)


# walks


def count_walks(a, k: int, closed: bool = False) -> int:
    """Number of vertex sequences v0..vk with consecutive vertices adjacent."""
    a = adjacency(a)
    n = a.shape[0]
    nbrs = [list(np.flatnonzero(a[v])) for v in range(n)]
    total = 0
    for start in range(n):
        stack = [(start, 0)]
        while stack:
            v, d = stack.pop()
            if d == k:
                if not closed or v == start:
                    total += 1
                continue
            for w in nbrs[v]:
                stack.append((w, d + 1))
    return total


def count_spanning_trees(a) -> int:
    """Edge subsets of size n-1 that form a tree."""
    a = adjacency(a)
    n = a.shape[0]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if a[u, v]]
    count = 0
    for sub in itertools.combinations(edges, n - 1):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for u, v in sub:
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        count += ok
    return count


# set partitions and equitable partitions


@lru_cache(maxsize=None)
def set_partitions(n: int) -> np.ndarray:
    """All restricted growth strings of length n, one row per set partition."""
    rows = []

    def rec(prefix, top):
        if len(prefix) == n:
            rows.append(prefix)
            return
        for c in range(top + 2):
            rec(prefix + (c,), max(top, c))

    rec((0,), 0)
    out = np.array(rows, dtype=np.int64)
    out.setflags(write=False)
    return out


def equitable_partitions(a) -> list:
    """Every partition of the vertex set whose parts see constant neighbour counts."""
    a = adjacency(a)
    n = a.shape[0]
    labels = set_partitions(n)
    onehot = (labels[:, :, None] == np.arange(n)[None, None, :]).astype(np.int64)
    m = np.einsum("vw,bwc->bvc", a, onehot)  # m[b, v, c] = neighbours of v in part c
    same = labels[:, :, None] == labels[:, None, :]
    differ = (m[:, :, None, :] != m[:, None, :, :]).any(axis=3)
    ok = ~(same & differ).any(axis=(1, 2))
    out = []
    for b in np.flatnonzero(ok):
        lab = labels[b]
        k = int(lab.max()) + 1
        sizes = tuple(int((lab == c).sum()) for c in range(k))
        reps = [int(np.flatnonzero(lab == c)[0]) for c in range(k)]
        q = tuple(tuple(int(m[b, reps[i], j]) for j in range(k)) for i in range(k))
        out.append((tuple(int(x) for x in lab), sizes, q))
    return out


def _key(sizes, q):
    return tuple(sorted((sizes[i], tuple(sorted(zip(sizes, q[i])))) for i in range(len(sizes))))


def _match(sg, qg, sh, qh) -> bool:
    """Is there a bijection of parts preserving sizes and the quotient matrix?"""
    k = len(sg)
    assign = [-1] * k
    used = [False] * k

    def rec(i):
        if i == k:
            return True
        for j in range(k):
            if used[j] or sh[j] != sg[i] or sorted(qh[j]) != sorted(qg[i]):
                continue
            if any(qg[i][p] != qh[j][assign[p]] or qg[p][i] != qh[assign[p]][j] for p in range(i)):
                continue
            if qg[i][i] != qh[j][j]:
                continue
            assign[i], used[j] = j, True
            if rec(i + 1):
                return True
            assign[i], used[j] = -1, False
        return False

    return rec(0)


def brute_common_equitable_partition(g, h) -> bool:
    """Search every pair of equitable partitions for one with matching quotients."""
    a, b = adjacency(g), adjacency(h)
    if a.shape != b.shape:
        return False
    if sorted(a.sum(axis=1)) != sorted(b.sum(axis=1)):
        return False  # a common partition forces equal degree multisets
    buckets = {}
    for _, sizes, q in equitable_partitions(b):
        buckets.setdefault(_key(sizes, q), []).append((sizes, q))
    for _, sizes, q in equitable_partitions(a):
        for sh, qh in buckets.get(_key(sizes, q), ()):
            if _match(sizes, q, sh, qh):
                return True
    return False


def is_constant_on_parts(vec, colours) -> bool:
    vec = list(vec)
    seen = {}
    for x, c in zip(vec, colours):
        if seen.setdefault(c, x) != x:
            return False
    return True


# isomorphism


def brute_isomorphic(g, h) -> bool:
    """Try every permutation; only for small orders."""
    a, b = adjacency(g), adjacency(h)
    n = a.shape[0]
    if b.shape[0] != n or a.sum() != b.sum():
        return False
    for p in itertools.permutations(range(n)):
        if np.array_equal(a[np.ix_(p, p)], b):
            return True
    return False


def neighbourhood_shapes(g) -> list:
    """Sorted (edges, components) of every induced neighbourhood subgraph."""
    a = adjacency(g)
    full = nx.from_numpy_array(a)
    out = []
    for v in range(a.shape[0]):
        sub = full.subgraph(np.flatnonzero(a[v]).tolist())
        out.append((sub.number_of_edges(), nx.number_connected_components(sub)))
    return sorted(out)


# random graphs and perturbations


def random_graph(rng, n: int, p: float | None = None) -> np.ndarray:
    p = rng.uniform(0.2, 0.8) if p is None else p
    upper = np.triu(rng.random((n, n)) < p, 1)
    return (upper | upper.T).astype(np.int64)


def relabel(a, rng):
    a = adjacency(a)
    perm = rng.permutation(a.shape[0])
    return a[np.ix_(perm, perm)]


def degree_preserving_swaps(a, rng, swaps: int = 10):
    """Random double-edge swaps {u,v},{x,y} -> {u,x},{v,y}; degrees are kept."""
    a = adjacency(a).copy()
    n = a.shape[0]
    for _ in range(swaps):
        edges = np.argwhere(np.triu(a, 1))
        if len(edges) < 2:
            break
        i, j = rng.choice(len(edges), 2, replace=False)
        (u, v), (x, y) = edges[i], edges[j]
        if len({u, v, x, y}) < 4 or a[u, x] or a[v, y]:
            continue
        a[u, v] = a[v, u] = a[x, y] = a[y, x] = 0
        a[u, x] = a[x, u] = a[v, y] = a[y, v] = 1
    assert a.shape == (n, n)
    return a


def random_stochastic(rng, n: int, denominators=(1, 2, 3, 4)) -> list:
    """Random rational n x n matrix (as Fraction rows) with every row summing to one."""
    rows = []
    for _ in range(n):
        row = [Fraction(int(rng.integers(-3, 4)), int(rng.choice(denominators))) for _ in range(n - 1)]
        row.append(1 - sum(row))
        rows.append(row)
    return rows


def eig_orthogonal(a, b) -> np.ndarray:
    """O = V_a V_b^T from sorted eigenbases; A O = O B when a and b are cospectral."""
    wa, va = np.linalg.eigh(np.asarray(a, dtype=float))
    wb, vb = np.linalg.eigh(np.asarray(b, dtype=float))
    if not np.allclose(wa, wb, atol=1e-9):
        raise ValueError("not cospectral")
    return va @ vb.T
