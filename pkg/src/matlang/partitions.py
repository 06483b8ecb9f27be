"""Colour refinement (1WL) and pair-colour refinement (2WL).

Colour identities are canonical: at every round the new colour of a vertex
(or vertex pair) is the rank of its signature among all signatures seen in
that round, where signatures are built from the previous round's canonical
colours.  Two independent runs therefore name colours identically, and a joint
run over several graphs shares one colour dictionary.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import OrderMismatch, StabilityViolation
from .graph import Graph
from .linalg import ExactMatrix


def _adj(g) -> np.ndarray:
    return g.adjacency if isinstance(g, Graph) else np.asarray(g, dtype=np.int64)


@dataclass(frozen=True)
class Partition:
    """Ordered vertex partition; part i holds the vertices of colour i."""

    n: int
    colours: tuple  # colour index per vertex

    @classmethod
    def from_colours(cls, colours) -> "Partition":
        colours = [int(c) for c in colours]
        used = sorted(set(colours))
        remap = {c: i for i, c in enumerate(used)}
        return cls(len(colours), tuple(remap[c] for c in colours))

    @classmethod
    def from_parts(cls, n: int, parts) -> "Partition":
        col = [-1] * n
        for i, part in enumerate(parts):
            for v in part:
                if col[v] != -1:
                    raise ValueError(f"vertex {v} in two parts")
                col[v] = i
        if -1 in col:
            raise ValueError("parts do not cover all vertices")
        return cls(n, tuple(col))

    @property
    def size(self) -> int:
        return max(self.colours) + 1

    @property
    def parts(self) -> list:
        out = [[] for _ in range(self.size)]
        for v, c in enumerate(self.colours):
            out[c].append(v)
        return out

    def part_sizes(self) -> list:
        return [len(p) for p in self.parts]

    def indicator_matrix(self) -> np.ndarray:
        """n x l 0/1 matrix whose columns are the part indicators."""
        b = np.zeros((self.n, self.size), dtype=np.int64)
        b[np.arange(self.n), list(self.colours)] = 1
        return b

    def indicator(self, i: int) -> ExactMatrix:
        return ExactMatrix.from_int_array(self.indicator_matrix()[:, i:i + 1])

    def refines(self, other: "Partition") -> bool:
        """Every part of self lies inside a part of other."""
        seen = {}
        for a, b in zip(self.colours, other.colours):
            if seen.setdefault(a, b) != b:
                return False
        return True


@dataclass
class EquitableCertificate:
    partition: Partition
    quotient: np.ndarray  # quotient[i, j] = deg(v, V_j) for v in V_i
    rounds: int = 0
    colour_ids: tuple = ()  # canonical colour of each part (joint naming)

    def verify(self, g) -> bool:
        """Exact check diag(1_Vi) A 1_Vj = C_ij 1_Vi for all i, j."""
        a = _adj(g)
        b = self.partition.indicator_matrix()
        m = a @ b
        expected = self.quotient[list(self.partition.colours)]
        return bool(np.array_equal(m, expected))


def quotient_matrix(g, p: Partition) -> np.ndarray | None:
    """Quotient matrix of p, or None when p is not equitable."""
    m = _adj(g) @ p.indicator_matrix()
    reps = [part[0] for part in p.parts]
    q = m[reps]
    if not np.array_equal(m, q[list(p.colours)]):
        return None
    return q


def is_equitable(g, p: Partition) -> bool:
    return quotient_matrix(g, p) is not None


# --------------------------------------------------------------------------
# 1WL / GDCR


def gdcr_step(adjs, colours, k):
    """One refinement round on several graphs at once.

    ``colours`` are per-graph arrays of canonical ids in ``range(k)``.  The new
    colour of v is the rank of row v of M = A * B, where B holds the current
    part indicators.  Returns (new colours, new k, M per graph, sorted rows).
    """
    ms = []
    for a, c in zip(adjs, colours):
        b = np.zeros((a.shape[0], k), dtype=np.int64)
        b[np.arange(a.shape[0]), c] = 1
        ms.append(a @ b)
    allrows = np.concatenate(ms, axis=0)
    rows, inverse = np.unique(allrows, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    out, start = [], 0
    for m in ms:
        out.append(inverse[start:start + m.shape[0]].astype(np.int64))
        start += m.shape[0]
    return out, rows.shape[0], ms, rows


def refine_colours(*graphs, max_rounds=None):
    """Joint colour refinement; returns (per-graph colour arrays, k, rounds)."""
    adjs = [_adj(g) for g in graphs]
    colours = [np.zeros(a.shape[0], dtype=np.int64) for a in adjs]
    k = 1
    limit = max_rounds if max_rounds is not None else max(a.shape[0] for a in adjs) + 1
    rounds = 0
    while rounds < limit:
        new, k2, _, _ = gdcr_step(adjs, colours, k)
        rounds += 1
        if k2 == k:
            # the partition did not split; keep ids from the last split round
            break
        colours, k = new, k2
    return colours, k, rounds


def _certificate(a, colours, k, rounds) -> EquitableCertificate:
    used = sorted(set(int(c) for c in colours))
    p = Partition.from_colours(colours)
    q = quotient_matrix(a, p)
    if q is None:  # pragma: no cover - refinement fixed point is equitable
        raise AssertionError("refinement fixed point is not equitable")
    return EquitableCertificate(p, q, rounds, tuple(used))


def coarsest_equitable_partition(g) -> EquitableCertificate:
    a = _adj(g)
    (colours,), k, rounds = refine_colours(a)
    return _certificate(a, colours, k, rounds)


@dataclass
class CommonEquitablePartition:
    g: EquitableCertificate
    h: EquitableCertificate

    @property
    def sizes(self):
        return self.g.partition.part_sizes()


def common_equitable_partition(g, h) -> CommonEquitablePartition | None:
    """Matched coarsest equitable partitions, or None when none exists."""
    a, b = _adj(g), _adj(h)
    if a.shape[0] != b.shape[0]:
        raise OrderMismatch(a.shape[0], b.shape[0])
    (cg, ch), k, rounds = refine_colours(a, b)
    if sorted(set(cg.tolist())) != sorted(set(ch.tolist())):
        return None
    if not np.array_equal(np.bincount(cg, minlength=k), np.bincount(ch, minlength=k)):
        return None
    cert_g = _certificate(a, cg, k, rounds)
    cert_h = _certificate(b, ch, k, rounds)
    # both partitions are indexed by the shared colour order, so parts pair up by index
    if cert_g.colour_ids != cert_h.colour_ids:
        return None
    if cert_g.partition.part_sizes() != cert_h.partition.part_sizes():
        return None
    if not np.array_equal(cert_g.quotient, cert_h.quotient):
        return None
    return CommonEquitablePartition(cert_g, cert_h)


# --------------------------------------------------------------------------
# 2WL / 2-Stab


def initial_pair_colours(g) -> np.ndarray:
    a = _adj(g)
    c = a.copy()
    np.fill_diagonal(c, 2)
    return c


def structure_rows(chi: np.ndarray, k: int) -> np.ndarray:
    """Row (v1, v2): sorted codes chi(v1, w) * k + chi(w, v2) over all w.

    Equal rows mean equal structure lists L(v1, v2).
    """
    n = chi.shape[0]
    codes = chi[:, :, None] * k + chi[None, :, :]  # [v1, w, v2]
    codes = np.transpose(codes, (0, 2, 1)).reshape(n * n, n)
    codes.sort(axis=1)
    return codes


def stab_step(chis, k):
    """One joint 2-Stab round; the new colour is the rank of (old colour, structure list)."""
    sigs = []
    for chi in chis:
        rows = structure_rows(chi, k)
        sigs.append(np.concatenate([chi.reshape(-1, 1), rows], axis=1))
    allsig = np.concatenate(sigs, axis=0)
    uniq, inverse = np.unique(allsig, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    out, start = [], 0
    for chi in chis:
        size = chi.size
        out.append(inverse[start:start + size].reshape(chi.shape).astype(np.int64))
        start += size
    return out, uniq.shape[0]


def refine_pair_colours(*graphs, max_rounds=None):
    chis = [initial_pair_colours(g) for g in graphs]
    sizes = {c.shape[0] for c in chis}
    if len(sizes) > 1:
        n, m = sorted(sizes)[:2]
        raise OrderMismatch(n, m)
    base = 3  # initial colours: 0 non-edge, 1 edge, 2 loop
    count = len(np.unique(np.concatenate([c.reshape(-1) for c in chis])))
    n = chis[0].shape[0]
    limit = max_rounds if max_rounds is not None else n * n + 1
    history = [chis]
    rounds = 0
    while rounds < limit:
        new, k2 = stab_step(chis, base)
        rounds += 1
        stable = k2 == count
        chis, base, count = new, k2, k2
        if stable:
            break
        history.append(chis)
    k = count
    return chis, k, rounds, history


@dataclass
class EdgePartition:
    colours: np.ndarray  # n x n canonical pair colours
    adjacency: np.ndarray
    ancestry: dict = field(default_factory=dict)  # colour -> initial colour (0, 1, 2)
    rounds: int = 0

    @property
    def n(self) -> int:
        return self.colours.shape[0]

    @property
    def classes(self) -> list:
        return sorted(set(int(c) for c in self.colours.flat))

    def indicator(self, c: int) -> np.ndarray:
        return (self.colours == c).astype(np.int64)

    def indicators(self) -> dict:
        return {c: self.indicator(c) for c in self.classes}

    def histogram(self) -> dict:
        vals, counts = np.unique(self.colours, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def diagonal_partition(self) -> Partition:
        return Partition.from_colours(np.diag(self.colours))


def _ancestry(colours, a):
    init = initial_pair_colours(a)
    out = {}
    for c, i in zip(colours.flat, init.flat):
        out.setdefault(int(c), int(i))
    return out


def stable_edge_partition(g) -> EdgePartition:
    a = _adj(g)
    (chi,), k, rounds, _ = refine_pair_colours(a)
    return EdgePartition(chi, a, _ancestry(chi, a), rounds)


def initial_edge_partition(g) -> EdgePartition:
    a = _adj(g)
    chi = initial_pair_colours(a)
    return EdgePartition(chi, a, _ancestry(chi, a), 0)


@dataclass
class WL2Report:
    equivalent: bool
    histogram_g: dict
    histogram_h: dict
    rounds: int
    partition_g: EdgePartition
    partition_h: EdgePartition

    def __bool__(self):
        return self.equivalent


def wl2_report(g, h) -> WL2Report:
    a, b = _adj(g), _adj(h)
    if a.shape[0] != b.shape[0]:
        raise OrderMismatch(a.shape[0], b.shape[0])
    (cg, ch), k, rounds, _ = refine_pair_colours(a, b)
    pg = EdgePartition(cg, a, _ancestry(cg, a), rounds)
    ph = EdgePartition(ch, b, _ancestry(ch, b), rounds)
    hg, hh = pg.histogram(), ph.histogram()
    return WL2Report(hg == hh, hg, hh, rounds, pg, ph)


def wl2_equivalent(g, h) -> bool:
    return wl2_report(g, h).equivalent


# --------------------------------------------------------------------------
# coherent algebra checks


@dataclass
class CoherenceReport:
    classes: list
    transpose: dict  # c -> class of the transposed pattern
    identity_classes: list
    adjacency_classes: list
    structure_constants: dict  # (c, d, e) -> p, nonzero only

    @property
    def ok(self) -> bool:
        return True


def coherent_basis_check(p: EdgePartition, constants: bool = True) -> CoherenceReport:
    """Verify that the class indicators form the basis of a coherent algebra.

    Raises StabilityViolation naming a (c, d, e) triple whose structure
    constant p^{c,d} is not constant on class e.
    """
    chi = np.asarray(p.colours)
    a = np.asarray(p.adjacency)
    n = chi.shape[0]
    classes = sorted(set(int(c) for c in chi.flat))
    # indicators partition J by construction of a colour array; check the sum anyway
    stack = np.stack([(chi == c) for c in classes]).astype(np.int64)
    if not np.array_equal(stack.sum(axis=0), np.ones((n, n), dtype=np.int64)):
        raise StabilityViolation(None, None, None, "classes do not partition J")
    # transpose closure
    tmap = {}
    for c in classes:
        mask = chi == c
        dual = set(int(x) for x in chi.T[mask])
        if len(dual) != 1:
            raise StabilityViolation(c, None, None, "transpose of class is not a class")
        d = dual.pop()
        if (chi == d).sum() != mask.sum():
            raise StabilityViolation(c, d, None, "transpose of class is not a class")
        tmap[c] = d
    # I and A are unions of classes
    diag = np.eye(n, dtype=bool)
    id_classes, adj_classes = [], []
    for c in classes:
        mask = chi == c
        on_diag = mask & diag
        if on_diag.any() and not np.array_equal(on_diag, mask):
            raise StabilityViolation(c, None, None, "class mixes diagonal and off-diagonal pairs")
        if on_diag.any():
            id_classes.append(c)
        vals = set(int(x) for x in a[mask])
        if len(vals) != 1:
            raise StabilityViolation(c, None, None, "class mixes edges and non-edges")
        if vals == {1}:
            adj_classes.append(c)
    # structure constants: the sorted code multiset must be constant on each class
    k = max(classes) + 1
    rows = structure_rows(chi, k)
    flat = chi.reshape(-1)
    consts = {}
    for e in classes:
        idx = np.flatnonzero(flat == e)
        block = rows[idx]
        bad = np.flatnonzero(np.any(block != block[0], axis=1))
        if bad.size:
            r0, r1 = block[0], block[bad[0]]
            c0 = np.unique(r0, return_counts=True)
            c1 = np.unique(r1, return_counts=True)
            d0 = dict(zip(c0[0].tolist(), c0[1].tolist()))
            d1 = dict(zip(c1[0].tolist(), c1[1].tolist()))
            code = min(x for x in set(d0) | set(d1) if d0.get(x, 0) != d1.get(x, 0))
            c, d = divmod(int(code), k)
            raise StabilityViolation(c, d, e, f"values {d0.get(code, 0)} and {d1.get(code, 0)}")
        if constants:
            vals, counts = np.unique(block[0], return_counts=True)
            for code, cnt in zip(vals.tolist(), counts.tolist()):
                c, d = divmod(int(code), k)
                consts[(c, d, e)] = int(cnt)
    return CoherenceReport(classes, tmap, id_classes, adj_classes, consts)


def structure_constant_matrix(p: EdgePartition, c: int, d: int) -> np.ndarray:
    """E_c E_d as an integer matrix (entry (v1, v2) = p^{c,d}_{v1,v2})."""
    return p.indicator(c) @ p.indicator(d)
