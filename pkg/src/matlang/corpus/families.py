"""Named graph families and graph operations."""
from __future__ import annotations

import itertools

import numpy as np

from ..graph import Graph
from ..equivalence.invariants import complement


def empty(n: int) -> Graph:
    return Graph(n, [], f"E{n}")


def complete(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2), f"K{n}")


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def star(k: int) -> Graph:
    """K_{1,k}: centre 0 joined to k leaves."""
    return Graph(k + 1, [(0, i) for i in range(1, k + 1)], f"K1,{k}")


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)], f"K{a},{b}")


def rook(m: int, k: int | None = None) -> Graph:
    """Rook's graph K_m x K_k: cells of an m x k board, adjacent when in one row or column."""
    k = m if k is None else k
    cells = [(r, c) for r in range(m) for c in range(k)]
    edges = [(i, j) for i, j in itertools.combinations(range(len(cells)), 2)
             if cells[i][0] == cells[j][0] or cells[i][1] == cells[j][1]]
    return Graph(m * k, edges, f"rook({m},{k})")


def shrikhande() -> Graph:
    """Cayley graph of Z4 x Z4 with connection set {±(0,1), ±(1,0), ±(1,1)}."""
    cells = [(a, b) for a in range(4) for b in range(4)]
    conn = {(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)}
    edges = [(i, j) for i, j in itertools.combinations(range(16), 2)
             if ((cells[j][0] - cells[i][0]) % 4, (cells[j][1] - cells[i][1]) % 4) in conn]
    return Graph(16, edges, "Shrikhande")


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner, "Petersen")


def disjoint_union(g: Graph, h: Graph) -> Graph:
    name = f"{g.name}+{h.name}" if g.name and h.name else None
    return Graph(g.n + h.n, list(g.edges) + [(u + g.n, v + g.n) for u, v in h.edges], name)


def union_all(graphs) -> Graph:
    graphs = list(graphs)
    out = graphs[0]
    for g in graphs[1:]:
        out = disjoint_union(out, g)
    return out


def srg_parameters(g: Graph):
    """(n, k, lambda, mu) when g is strongly regular, else None."""
    a = g.adjacency
    if not g.is_regular() or g.n < 2:
        return None
    k = int(a[0].sum())
    a2 = a @ a
    off = ~a.astype(bool) & ~np.eye(g.n, dtype=bool)
    lam = set(a2[a.astype(bool)].tolist())
    mu = set(a2[off].tolist())
    if len(lam) > 1 or len(mu) > 1:
        return None
    return g.n, k, lam.pop() if lam else 0, mu.pop() if mu else 0


FAMILIES = {
    "empty": empty, "complete": complete, "path": path, "cycle": cycle, "star": star,
    "bipartite": complete_bipartite, "rook": rook, "shrikhande": shrikhande, "petersen": petersen,
}


def family_graph(spec: str) -> Graph:
    """Build a graph from a spec such as ``cycle:6``, ``rook:4``, ``cycle:4+empty:1`` or ``~cycle:5``.

    ``+`` is disjoint union and a leading ``~`` takes the complement.
    """
    parts = [p.strip() for p in spec.split("+")]
    graphs = []
    for p in parts:
        neg = p.startswith("~")
        p = p[1:] if neg else p
        name, _, args = p.partition(":")
        if name not in FAMILIES:
            raise ValueError(f"unknown graph family {name!r}")
        params = [int(x) for x in args.split(",") if x]
        g = FAMILIES[name](*params)
        graphs.append(complement(g) if neg else g)
    out = union_all(graphs)
    out.name = spec
    return out


__all__ = ["empty", "complete", "path", "cycle", "star", "complete_bipartite", "rook", "shrikhande", "petersen",
           "disjoint_union", "union_all", "complement", "srg_parameters", "family_graph"]
