"""Undirected simple graphs with an ordered vertex set.

Vertices are ``0..n-1`` internally; the JSON interchange format is 1-based.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterable

import numpy as np

from .linalg import ExactMatrix


class Graph:
    __slots__ = ("n", "edges", "name", "__dict__")

    def __init__(self, n: int, edges: Iterable = (), name: str | None = None):
        n = int(n)
        if n < 1:
            raise ValueError("graphs need at least one vertex")
        es = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            es.add((min(u, v), max(u, v)))
        self.n = n
        self.edges = tuple(sorted(es))
        self.name = name

    @classmethod
    def from_adjacency(cls, a, name=None) -> "Graph":
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric")
        if np.any(np.diag(a) != 0):
            raise ValueError("adjacency matrix has self-loops")
        if not np.all((a == 0) | (a == 1)):
            raise ValueError("adjacency matrix must be 0/1")
        iu = np.argwhere(np.triu(a, 1))
        return cls(a.shape[0], [tuple(e) for e in iu], name)

    @classmethod
    def from_networkx(cls, g, name=None) -> "Graph":
        nodes = list(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), [(index[u], index[v]) for u, v in g.edges()], name)

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    @classmethod
    def from_json(cls, data: dict, name=None) -> "Graph":
        n = int(data["n"])
        return cls(n, [(int(u) - 1, int(v) - 1) for u, v in data.get("edges", [])], name or data.get("name"))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [[u + 1, v + 1] for u, v in self.edges]}

    @cached_property
    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = a[v, u] = 1
        a.setflags(write=False)
        return a

    def exact_adjacency(self) -> ExactMatrix:
        cached = self.__dict__.get("_exact")
        if cached is None:
            cached = self.__dict__["_exact"] = ExactMatrix.from_int_array(self.adjacency)
        return cached

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def neighbors(self, v: int) -> list:
        return [int(w) for w in np.flatnonzero(self.adjacency[v])]

    def is_regular(self) -> bool:
        d = self.degrees()
        return bool(np.all(d == d[0]))

    def relabel(self, perm) -> "Graph":
        """Graph with vertex v renamed to perm[v]."""
        perm = list(perm)
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges], self.name)

    def permutation_matrix(self, perm) -> np.ndarray:
        """P with P[perm[v], v] = 1, so relabel(perm) has adjacency P A P^T."""
        p = np.zeros((self.n, self.n), dtype=np.int64)
        for v, w in enumerate(perm):
            p[w, v] = 1
        return p

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.m}>"
