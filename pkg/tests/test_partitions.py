import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from matlang.corpus import cycle, disjoint_union, empty, petersen, rook, shrikhande, star, path
from matlang.equivalence import cospectral
from matlang.errors import OrderMismatch, StabilityViolation
from matlang.graph import Graph
from matlang.partitions import (Partition, coarsest_equitable_partition, coherent_basis_check,
                                common_equitable_partition, initial_edge_partition, is_equitable, quotient_matrix,
                                refine_pair_colours, stable_edge_partition, structure_constant_matrix, wl2_equivalent,
                                wl2_report)

seeds = st.integers(0, 10**6)


def _graph(seed, lo=1, hi=7):
    rng = np.random.default_rng(seed)
    return Graph.from_adjacency(oracles.random_graph(rng, int(rng.integers(lo, hi + 1)))), rng


def _parts(cert):
    return sorted(sorted(p) for p in cert.partition.parts)


# 1WL


def test_equitable_examples():
    cert = coarsest_equitable_partition(star(4))
    assert _parts(cert) == [[0], [1, 2, 3, 4]]
    i = cert.partition.colours[0]
    q = cert.quotient
    assert q[i, 1 - i] == 4 and q[1 - i, i] == 1 and q[i, i] == 0 and q[1 - i, 1 - i] == 0
    cert = coarsest_equitable_partition(disjoint_union(cycle(4), empty(1)))
    assert _parts(cert) == [[0, 1, 2, 3], [4]]
    assert sorted(np.diag(cert.quotient).tolist()) == [0, 2]
    assert coarsest_equitable_partition(petersen()).partition.size == 1
    assert coarsest_equitable_partition(empty(3)).partition.size == 1


def test_common_partition_examples():
    c = common_equitable_partition(cycle(6), disjoint_union(cycle(3), cycle(3)))
    assert c is not None and c.sizes == [6] and c.g.quotient.tolist() == [[2]]
    assert common_equitable_partition(disjoint_union(cycle(4), empty(1)), star(4)) is None
    with pytest.raises(OrderMismatch):
        common_equitable_partition(cycle(3), cycle(4))


def test_partition_helpers():
    p = Partition.from_parts(4, [[0, 2], [1, 3]])
    assert p.part_sizes() == [2, 2] and p.refines(Partition.from_colours([0, 0, 0, 0]))
    assert is_equitable(cycle(4), p)
    assert quotient_matrix(path(4), p) is None
    with pytest.raises(ValueError):
        Partition.from_parts(3, [[0, 1]])


@settings(max_examples=120, deadline=None)
@given(seeds)
def test_gdcr_is_equitable_and_coarsest(seed):
    g, _ = _graph(seed)
    cert = coarsest_equitable_partition(g)
    assert cert.verify(g)
    assert cert.rounds <= g.n + 1
    coarsest = cert.partition
    everything = oracles.equitable_partitions(g.adjacency)
    assert any(len(set(lab)) == coarsest.size for lab, _, _ in everything)
    for lab, _, _ in everything:
        assert Partition.from_colours(lab).refines(coarsest)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_relabelled_copies_share_partitions(seed):
    g, rng = _graph(seed, 2, 9)
    h = g.relabel(rng.permutation(g.n).tolist())
    c = common_equitable_partition(g, h)
    assert c is not None
    assert wl2_equivalent(g, h)


# 2WL


def _aut_pair_orbits(g):
    a = g.adjacency
    n = g.n
    auts = [p for p in itertools.permutations(range(n)) if np.array_equal(a[np.ix_(p, p)], a)]
    orbit = {}
    for v, w in itertools.product(range(n), repeat=2):
        if (v, w) in orbit:
            continue
        for p in auts:
            orbit[(p[v], p[w])] = (v, w)
    return orbit, len(set(orbit.values()))


def test_stable_partition_examples():
    assert len(stable_edge_partition(Graph(3, [(0, 1), (1, 2), (0, 2)])).classes) == 2
    orbit, count = _aut_pair_orbits(cycle(5))
    assert count == 3 and len(stable_edge_partition(cycle(5)).classes) == 3
    p3 = stable_edge_partition(path(3))
    loops = {int(p3.colours[v, v]) for v in range(3)}
    assert p3.colours[0, 0] == p3.colours[2, 2] != p3.colours[1, 1] and len(loops) == 2
    assert p3.colours[0, 1] != p3.colours[1, 0]  # edge directions split
    pet = stable_edge_partition(petersen())
    assert len(pet.classes) == 3 and coherent_basis_check(pet).ok


def test_non_stable_partition_is_rejected():
    with pytest.raises(StabilityViolation):
        coherent_basis_check(initial_edge_partition(path(3)))


def test_wl2_examples():
    assert not wl2_equivalent(cycle(6), disjoint_union(cycle(3), cycle(3)))
    assert wl2_equivalent(rook(4), shrikhande())
    rep = wl2_report(rook(4), shrikhande())
    assert rep.histogram_g == rep.histogram_h


def test_structure_constants_on_c5():
    p = stable_edge_partition(cycle(5))
    rep = coherent_basis_check(p)
    loop, = rep.identity_classes
    edge, = rep.adjacency_classes
    # E_edge^2 on loops counts closed 2-walks: the degree
    m = structure_constant_matrix(p, edge, edge)
    assert all(m[v, v] == 2 for v in range(5))
    assert rep.structure_constants[(edge, edge, loop)] == 2


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_orbits_refine_stable_classes(seed):
    g, _ = _graph(seed, 1, 6)
    orbit, _ = _aut_pair_orbits(g)
    chi = stable_edge_partition(g).colours
    for (v, w), rep in orbit.items():
        assert chi[v, w] == chi[rep]


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_stab_is_monotone_and_bounded(seed):
    g, _ = _graph(seed, 1, 9)
    chis, k, rounds, history = refine_pair_colours(g)
    assert rounds <= g.n * g.n + 1
    for older, newer in zip(history, history[1:] + [chis]):
        mapping = {}
        for x, y in zip(newer[0].flat, older[0].flat):
            assert mapping.setdefault(int(x), int(y)) == int(y)


@settings(max_examples=60, deadline=None)
@given(seeds, seeds)
def test_wl2_implies_cep_and_cospectral(s1, s2):
    g, rng = _graph(s1, 2, 7)
    u = oracles.random_graph(np.random.default_rng(s2), g.n) if s2 % 2 else oracles.relabel(g.adjacency, rng)
    h = Graph.from_adjacency(u)
    if wl2_equivalent(g, h):
        assert common_equitable_partition(g, h) is not None
        assert cospectral(g, h)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_diagonal_classes_give_coarsest_partition(seed):
    g, _ = _graph(seed, 1, 9)
    diag = stable_edge_partition(g).diagonal_partition()
    coarsest = coarsest_equitable_partition(g).partition
    assert diag.refines(coarsest)
    assert is_equitable(g, diag)
