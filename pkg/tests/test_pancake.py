from __future__ import annotations

import math
import random

import pytest

from crossnum.errors import InvalidInputError
from crossnum.graph import enumerate_cycles, girth, induced_subgraph, is_isomorphic, suppress_degree_two
from crossnum.pancake import (
    PancakeDecomposition,
    decompose,
    g12_edges,
    g12_reference,
    g12_squares,
    observation_audit,
    pancake_graph,
)
from crossnum.planarity import is_planar


@pytest.mark.parametrize("n", range(2, 7))
def test_pancake_sizes(n):
    g = pancake_graph(n)
    assert g.n == math.factorial(n)
    assert g.m == math.factorial(n) * (n - 1) // 2
    assert g.is_regular(n - 1) and g.is_connected()


def test_pancake_labels_are_prefix_reversals():
    g = pancake_graph(4)
    for u, v in g.edges:
        a, b = g.labels[u], g.labels[v]
        assert any(a[:k][::-1] + a[k:] == b for k in range(2, 5))


def test_pancake_range():
    for n in (1, 9):
        with pytest.raises(InvalidInputError):
            pancake_graph(n)


def test_p4_basic_invariants():
    g = pancake_graph(4)
    assert girth(g) == 6
    assert not is_planar(g)
    assert len(enumerate_cycles(g, 6)) == 4


def test_decomposition_presets():
    d = decompose(pancake_graph(4))
    presets = d.presets()
    assert len(presets) == 4 + 6 + 4 + 4
    for i in range(1, 5):
        assert len(presets[f"E{i}"]) == 6
        assert len(presets[f"Ep{i}"]) == 12
        assert len(presets[f"Ec{i}"]) == 24
        assert presets[f"Ep{i}"] | presets[f"Ec{i}"] == frozenset(d.graph.edges)
    for i in range(1, 5):
        for j in range(i + 1, 5):
            assert len(presets[f"E{i}{j}"]) == 2
    # cycle edges and linking edges partition the edge set
    classes = [presets[f"E{i}"] for i in range(1, 5)] + [
        presets[f"E{i}{j}"] for i in range(1, 5) for j in range(i + 1, 5)
    ]
    assert sum(map(len, classes)) == 36
    assert frozenset().union(*classes) == frozenset(d.graph.edges)


def test_decomposition_is_relabel_invariant():
    g = pancake_graph(4)
    perm = list(range(24))
    random.Random(3).shuffle(perm)
    h = g.relabel(perm)
    d = decompose(h)
    assert observation_audit(d)
    mapped = {frozenset(perm[v] for v in c.vertices) for c in decompose(g).cycles}
    assert {frozenset(c.vertices) for c in d.cycles} == mapped


def test_decompose_rejects_other_graphs():
    with pytest.raises(InvalidInputError):
        decompose(g12_reference())
    g = pancake_graph(4)
    u, v = g.edges[0]
    with pytest.raises(InvalidInputError):
        decompose(g.without_edges([(u, v)]))


def test_observation_on_tampered_classes():
    d = decompose(pancake_graph(4))
    assert observation_audit(d)
    keys = sorted(d.between)
    # swap one edge between two linking classes
    a, b = keys[0], keys[-1]
    ea, eb = sorted(d.between[a])[0], sorted(d.between[b])[0]
    between = dict(d.between)
    between[a] = (d.between[a] - {ea}) | {eb}
    between[b] = (d.between[b] - {eb}) | {ea}
    assert not observation_audit(PancakeDecomposition(d.graph, d.cycles, between))
    # rotate the cycle order of one hexagon so the arcs no longer match
    cycles = list(d.cycles)
    c = cycles[0]
    bad = type(c)(tuple(c.vertices[i] for i in (0, 2, 1, 3, 4, 5)))
    assert not observation_audit(PancakeDecomposition(d.graph, (bad,) + tuple(cycles[1:]), d.between))


def test_removing_a_hexagon_gives_g12():
    d = decompose(pancake_graph(4))
    g12 = g12_reference()
    for vs in d.vertex_classes:
        reduced = suppress_degree_two(induced_subgraph(d.graph, vs))
        assert is_isomorphic(reduced, g12) is not None


def test_g12_properties():
    g = g12_reference()
    assert (g.n, g.m) == (12, 18)
    assert g.is_regular(3) and g.is_connected()
    assert girth(g) == 4
    assert len(g12_squares()) == 3
    assert {frozenset(c.edges()) for c in enumerate_cycles(g, 4)} == {
        frozenset(c.edges()) for c in g12_squares()
    }
    assert not is_planar(g)


def test_g12_mutant_is_not_isomorphic():
    links = ((2, 8), (4, 5), (1, 9), (3, 11), (6, 10), (7, 12))
    from crossnum.graph import Graph

    mutant = Graph(12, g12_edges(links))
    assert mutant.is_regular(3)
    assert is_isomorphic(mutant, g12_reference()) is None
