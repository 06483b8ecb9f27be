"""Brute-force isomorphism testing with invariant pruning (intended for order <= 16)."""
from __future__ import annotations

import numpy as np

from ..graph import Graph
from ..partitions import refine_colours


def _components(sub: np.ndarray) -> int:
    seen = np.zeros(sub.shape[0], dtype=bool)
    count = 0
    for s in range(sub.shape[0]):
        if seen[s]:
            continue
        count += 1
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            for w in np.flatnonzero(sub[u] & ~seen):
                seen[w] = True
                stack.append(int(w))
    return count


def local_invariant(g: Graph, v: int) -> tuple:
    """(degree, edges inside N(v), sorted degrees and component count of the subgraph induced on N(v))."""
    a = g.adjacency
    nb = np.flatnonzero(a[v])
    sub = a[np.ix_(nb, nb)]
    return (len(nb), int(sub.sum()) // 2, tuple(sorted(sub.sum(axis=1).tolist())), _components(sub.astype(bool)))


def neighbourhood_certificate(g: Graph) -> tuple:
    return tuple(sorted(local_invariant(g, v) for v in range(g.n)))


def nonisomorphism_reason(g: Graph, h: Graph) -> str | None:
    """A cheap invariant separating g and h, or None when none of them does."""
    if g.n != h.n:
        return "orders differ"
    if g.m != h.m:
        return "edge counts differ"
    if sorted(g.degrees().tolist()) != sorted(h.degrees().tolist()):
        return "degree sequences differ"
    if neighbourhood_certificate(g) != neighbourhood_certificate(h):
        return "neighbourhood subgraphs differ"
    return None


def find_isomorphism(g: Graph, h: Graph) -> list | None:
    """perm with g.relabel(perm) == h, or None when the graphs are not isomorphic."""
    if nonisomorphism_reason(g, h) is not None:
        return None
    n = g.n
    a, b = g.adjacency, h.adjacency
    (cg, ch), _, _ = refine_colours(a, b)
    lg = [(int(cg[v]), local_invariant(g, v)) for v in range(n)]
    lh = [(int(ch[v]), local_invariant(h, v)) for v in range(n)]
    if sorted(lg) != sorted(lh):
        return None
    cands = {v: [w for w in range(n) if lh[w] == lg[v]] for v in range(n)}
    # most constrained first, then stay connected to already placed vertices
    order = []
    left = set(range(n))
    while left:
        placed = set(order)
        v = min(left, key=lambda x: (-int(a[x, list(placed)].sum()) if placed else 0, len(cands[x]), x))
        order.append(v)
        left.remove(v)
    perm = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        v = order[i]
        prev = order[:i]
        for w in cands[v]:
            if used[w]:
                continue
            if all(a[v, u] == b[w, perm[u]] for u in prev):
                perm[v], used[w] = w, True
                if extend(i + 1):
                    return True
                perm[v], used[w] = -1, False
        return False

    return list(perm) if extend(0) else None


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None
