"""Independent brute-force oracles used only by the tests.

Nothing here imports the package's planarity code.
"""

from __future__ import annotations

import itertools
import random

from crossnum.graph import Graph


def _paths_exist(adj, pairs, spares) -> bool:
    """Internally disjoint paths for every pair, interiors drawn from ``spares``."""
    pending = [p for p in pairs if p[1] not in adj[p[0]]]
    if len(pending) > len(spares):
        return False

    def route(idx: int, free: frozenset) -> bool:
        if idx == len(pending):
            return True
        a, b = pending[idx]
        for length in range(1, len(free) + 1):
            for seq in itertools.permutations(free, length):
                walk = (a,) + seq + (b,)
                if all(walk[t + 1] in adj[walk[t]] for t in range(len(walk) - 1)):
                    if route(idx + 1, free - set(seq)):
                        return True
        return False

    return route(0, frozenset(spares))


def has_kuratowski_subdivision(g: Graph) -> bool:
    """Search every branch set of K5 and K3,3 for a subdivision.

    Exponential; meant for graphs with at most 8 or so vertices.
    """
    adj = [set(g.neighbors(v)) for v in range(g.n)]
    verts = range(g.n)
    for branch in itertools.combinations(verts, 5):
        if any(len(adj[v]) < 4 for v in branch):
            continue
        spares = [v for v in verts if v not in branch]
        if _paths_exist(adj, list(itertools.combinations(branch, 2)), spares):
            return True
    for six in itertools.combinations(verts, 6):
        if any(len(adj[v]) < 3 for v in six):
            continue
        spares = [v for v in verts if v not in six]
        for left in itertools.combinations(six[1:], 2):
            side_a = (six[0],) + left
            side_b = tuple(v for v in six if v not in side_a)
            pairs = [(a, b) for a in side_a for b in side_b]
            if _paths_exist(adj, pairs, spares):
                return True
    return False


def brute_planar(g: Graph) -> bool:
    return not has_kuratowski_subdivision(g)


def brute_skewness(g: Graph, planar, limit: int) -> int | None:
    """Fewest deletions making ``g`` planar, trying every edge subset."""
    edges = list(g.edges)
    for k in range(limit + 1):
        for drop in itertools.combinations(edges, k):
            if planar(g.without_edges(drop)):
                return k
    return None


def random_graph(rng: random.Random, n: int, m: int) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    return Graph(n, rng.sample(pairs, min(m, len(pairs))))


def random_graphs(seed: int, count: int, max_n: int = 8, max_m: int | None = None) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        top = n * (n - 1) // 2
        if max_m is not None:
            top = min(top, max_m)
        out.append(random_graph(rng, n, rng.randint(0, top)))
    return out
