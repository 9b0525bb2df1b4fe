"""Pancake graphs, the four-hexagon decomposition of P4, and the G12 gadget."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import InvalidInputError
from .graph import Cycle, Edge, Graph, edge_key, enumerate_cycles, is_isomorphic

MAX_PANCAKE_N = 8


def pancake_graph(n: int) -> Graph:
    """Cayley graph of S_n generated by the prefix reversals of length 2..n.

    Vertices are the permutations of ``1..n`` in lexicographic order, each
    labelled by its string (``"1234"``).
    """
    if not 2 <= n <= MAX_PANCAKE_N:
        raise InvalidInputError(f"pancake graph needs 2 <= n <= {MAX_PANCAKE_N}, got {n}")
    perms = list(itertools.permutations(range(1, n + 1)))
    index = {p: i for i, p in enumerate(perms)}
    edges = set()
    for p in perms:
        for k in range(2, n + 1):
            q = p[:k][::-1] + p[k:]
            edges.add(edge_key(index[p], index[q]))
    labels = {i: "".join(map(str, p)) for i, p in enumerate(perms)}
    return Graph(len(perms), edges, labels)


# The three 4-cycles and six linking edges, 1-based; for example
# v1 v9 v10 v6 v7 v2 is one of its hexagons.
G12_SQUARES = ((1, 2, 3, 4), (5, 6, 7, 8), (9, 10, 11, 12))
G12_LINKS = ((2, 7), (4, 5), (1, 9), (3, 11), (6, 10), (8, 12))


def g12_edges(links=G12_LINKS) -> list[Edge]:
    edges = []
    for sq in G12_SQUARES:
        edges.extend(edge_key(sq[i] - 1, sq[(i + 1) % 4] - 1) for i in range(4))
    edges.extend(edge_key(u - 1, v - 1) for u, v in links)
    return edges


def g12_reference() -> Graph:
    """The 12-vertex cubic gadget: three squares joined by six edges."""
    return Graph(12, g12_edges(), {v: f"v{v + 1}" for v in range(12)})


def g12_squares() -> list[Cycle]:
    return [Cycle.of([v - 1 for v in sq]) for sq in G12_SQUARES]


@dataclass(frozen=True)
class PancakeDecomposition:
    """The four vertex-disjoint hexagons of P4 and the edge classes they induce.

    Indices are 0-based: ``cycles[i]`` is the hexagon called C_{i+1} in the
    preset names (``E1``, ``E12``, ``Ep1`` ...).
    """

    graph: Graph
    cycles: tuple[Cycle, ...]
    between: dict[tuple[int, int], frozenset[Edge]]  # keys (i, j) with i < j

    @cached_property
    def vertex_classes(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(c.vertices) for c in self.cycles)

    @cached_property
    def cycle_edges(self) -> tuple[frozenset[Edge], ...]:
        return tuple(frozenset(c.edges()) for c in self.cycles)

    def edges_between(self, i: int, j: int) -> frozenset[Edge]:
        if i == j:
            raise InvalidInputError("E_{i,j} needs i != j")
        return self.between[(min(i, j), max(i, j))]

    def star(self, i: int) -> frozenset[Edge]:
        """E'_i: the hexagon's own edges plus every edge leaving it."""
        out = set(self.cycle_edges[i])
        for j in range(len(self.cycles)):
            if j != i:
                out |= self.edges_between(i, j)
        return frozenset(out)

    def star_complement(self, i: int) -> frozenset[Edge]:
        return frozenset(self.graph.edges) - self.star(i)

    def presets(self) -> dict[str, frozenset[Edge]]:
        """Named edge classes: E1..E4, E12..E34, Ep1..Ep4 and Ec1..Ec4."""
        k = len(self.cycles)
        out = {}
        for i in range(k):
            out[f"E{i + 1}"] = self.cycle_edges[i]
        for i, j in itertools.combinations(range(k), 2):
            out[f"E{i + 1}{j + 1}"] = self.edges_between(i, j)
        for i in range(k):
            out[f"Ep{i + 1}"] = self.star(i)
            out[f"Ec{i + 1}"] = self.star_complement(i)
        return out


def decompose(p4: Graph) -> PancakeDecomposition:
    """Find the four hexagons of P4 and derive all edge classes.

    The hexagon census is checked, not assumed: anything other than exactly
    four pairwise disjoint 6-cycles is an error.
    """
    if p4.n != 24 or p4.m != 36 or is_isomorphic(p4, pancake_graph(4)) is None:
        raise InvalidInputError("input is not isomorphic to the pancake graph P4")
    cycles = tuple(enumerate_cycles(p4, 6))
    if len(cycles) != 4:
        raise InvalidInputError(f"expected 4 six-cycles, found {len(cycles)}")
    owner = {}
    for i, c in enumerate(cycles):
        for v in c.vertices:
            if v in owner:
                raise InvalidInputError("six-cycles are not vertex-disjoint")
            owner[v] = i
    between: dict[tuple[int, int], set[Edge]] = {
        pair: set() for pair in itertools.combinations(range(4), 2)
    }
    for u, v in p4.edges:
        a, b = owner[u], owner[v]
        if a != b:
            between[(min(a, b), max(a, b))].add((u, v))
    return PancakeDecomposition(
        p4, cycles, {k: frozenset(s) for k, s in between.items()}
    )


def observation_audit(decomp: PancakeDecomposition) -> bool:
    """Check the attachment pattern of the edges between two hexagons.

    For every ordered pair (i, j) the two edges of E_{i,j} attach to C_i at
    antipodal vertices; on each 3-edge arc between them the two inner
    vertices must lead to the two hexagons other than C_i and C_j. The
    check reads attachments from the decomposition's own classes, so a
    tampered decomposition fails.
    """
    k = len(decomp.cycles)
    # which hexagon each vertex's outgoing edge reaches, per the classes
    owner = {v: i for i, vs in enumerate(decomp.vertex_classes) for v in vs}
    reach: dict[int, list[int]] = {}
    for (a, b), edges in decomp.between.items():
        for u, v in edges:
            if {owner.get(u), owner.get(v)} != {a, b}:
                return False  # class edge does not join its two hexagons
            reach.setdefault(u, []).append(owner[v])
            reach.setdefault(v, []).append(owner[u])
    for i, j in itertools.permutations(range(k), 2):
        cyc = decomp.cycles[i].vertices
        attach = sorted(
            x for e in decomp.edges_between(i, j) for x in e if x in decomp.vertex_classes[i]
        )
        if len(attach) != 2:
            return False
        pa, pb = cyc.index(attach[0]), cyc.index(attach[1])
        L = len(cyc)
        if (pb - pa) % L != 3 or L != 6:
            return False
        others = set(range(k)) - {i, j}
        for step in (1, -1):
            inner = [cyc[(pa + step * t) % L] for t in (1, 2)]
            targets = []
            for x in inner:
                if len(reach.get(x, [])) != 1:
                    return False
                targets.append(reach[x][0])
            if set(targets) != others or len(set(targets)) != 2:
                return False
    return True
