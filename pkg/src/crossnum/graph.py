"""Simple undirected graphs on dense integer vertices.

Vertices are ``0..n-1``. Edges are stored as sorted ``(u, v)`` tuples with
``u < v`` and the edge tuple itself is kept sorted, so iteration order and
serialization are canonical. Labels are metadata only; no algorithm looks
at them.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InvalidInputError, NonSimpleResultError, PreconditionError

Edge = tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph."""

    __slots__ = ("_n", "_edges", "_labels", "_adj", "_edge_set")

    def __init__(
        self,
        vertex_count: int,
        edges: Iterable[Sequence[int]] = (),
        labels: Mapping[int, str] | None = None,
    ):
        if vertex_count < 0:
            raise InvalidInputError(f"negative vertex count {vertex_count}")
        n = int(vertex_count)
        edge_set: set[Edge] = set()
        for pair in edges:
            u, v = int(pair[0]), int(pair[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidInputError(f"loop at vertex {u}")
            e = edge_key(u, v)
            if e in edge_set:
                raise InvalidInputError(f"duplicate edge {e}")
            edge_set.add(e)
        self._n = n
        self._edges: tuple[Edge, ...] = tuple(sorted(edge_set))
        self._edge_set = frozenset(edge_set)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self._edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        if labels:
            for v in labels:
                if not 0 <= v < n:
                    raise InvalidInputError(f"label for vertex {v} out of range")
            self._labels = {int(v): str(s) for v, s in sorted(labels.items())}
        else:
            self._labels = {}

    @property
    def vertex_count(self) -> int:
        return self._n

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def labels(self) -> dict[int, str]:
        return dict(self._labels)

    def label(self, v: int) -> str | None:
        return self._labels.get(v)

    def vertices(self) -> range:
        return range(self._n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edge_set

    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self._edges)}

    def is_regular(self, d: int | None = None) -> bool:
        degs = set(self.degrees())
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return d is None or degs == {d}

    def checksum(self) -> str:
        """Short hex digest of ``n`` and the canonical edge list."""
        h = hashlib.sha256(f"{self._n}".encode())
        for u, v in self._edges:
            h.update(f";{u},{v}".encode())
        return h.hexdigest()[:16]

    def components(self) -> list[list[int]]:
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self._n <= 1 or len(self.components()) == 1

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self._n)):
            raise InvalidInputError("relabeling is not a permutation")
        labels = {perm[v]: s for v, s in self._labels.items()}
        return Graph(self._n, ((perm[u], perm[v]) for u, v in self._edges), labels)

    def without_edges(self, removed: Iterable[Edge]) -> Graph:
        drop = {edge_key(*e) for e in removed}
        return Graph(self._n, (e for e in self._edges if e not in drop), self._labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self._n == other._n
            and self._edges == other._edges
            and self._labels == other._labels
        )

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self._n}, m={len(self._edges)})"


@dataclass(frozen=True, order=True)
class Cycle:
    """A simple cycle in canonical form.

    The canonical form starts at the smallest vertex and walks toward the
    smaller of its two cycle neighbours.
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise InvalidInputError("a cycle needs at least 3 vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidInputError(f"cycle repeats a vertex: {self.vertices}")

    @classmethod
    def of(cls, seq: Sequence[int]) -> Cycle:
        seq = list(seq)
        if len(seq) < 3:
            raise InvalidInputError("a cycle needs at least 3 vertices")
        i = seq.index(min(seq))
        rot = seq[i:] + seq[:i]
        rev = [rot[0]] + rot[:0:-1]
        return cls(tuple(min(rot, rev)))

    def __len__(self) -> int:
        return len(self.vertices)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [edge_key(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def is_in(self, g: Graph) -> bool:
        return all(g.has_edge(u, v) for u, v in self.edges())


VertexMap = dict[int, int]


def induced_subgraph(g: Graph, removed: Iterable[int]) -> Graph:
    """Delete ``removed`` and relabel the survivors contiguously.

    Original labels travel with their vertices.
    """
    removed = set(removed)
    for v in removed:
        if not 0 <= v < g.n:
            raise InvalidInputError(f"vertex {v} out of range for n={g.n}")
    keep = [v for v in range(g.n) if v not in removed]
    new = {v: i for i, v in enumerate(keep)}
    edges = [(new[u], new[v]) for u, v in g.edges if u in new and v in new]
    labels = {new[v]: s for v, s in g.labels.items() if v in new}
    return Graph(len(keep), edges, labels)


def suppress_degree_two(g: Graph) -> Graph:
    """Replace every degree-2 vertex by an edge joining its neighbours.

    Suppressing a vertex never changes the degree of any other vertex, so
    the surviving vertex set is exactly the vertices of degree != 2 and the
    result does not depend on processing order.
    """
    degs = g.degrees()
    for comp in g.components():
        if all(degs[v] == 2 for v in comp):
            raise PreconditionError(
                f"component containing vertex {comp[0]} is a pure cycle"
            )
    adj = [set(a) for a in g.adjacency]
    for v in range(g.n):
        if degs[v] != 2:
            continue
        a, b = sorted(adj[v])
        if b in adj[a]:
            raise NonSimpleResultError(
                f"suppressing vertex {v} would join {a} and {b} twice"
            )
        adj[a].discard(v)
        adj[b].discard(v)
        adj[a].add(b)
        adj[b].add(a)
        adj[v] = set()
    keep = [v for v in range(g.n) if degs[v] != 2]
    new = {v: i for i, v in enumerate(keep)}
    edges = {edge_key(new[u], new[w]) for u in keep for w in adj[u]}
    labels = {new[v]: s for v, s in g.labels.items() if v in new}
    return Graph(len(keep), edges, labels)


def _invariants(g: Graph) -> list[tuple]:
    degs = g.degrees()
    return [(degs[v], tuple(sorted(degs[w] for w in g.neighbors(v)))) for v in range(g.n)]


def _matchings(g: Graph, h: Graph) -> Iterator[VertexMap]:
    """Yield every isomorphism ``g -> h`` found by backtracking.

    Candidates are restricted to vertices with the same degree and the same
    multiset of neighbour degrees.
    """
    if g.n != h.n or g.m != h.m:
        return
    inv_g = _invariants(g)
    inv_h = _invariants(h)
    if sorted(inv_g) != sorted(inv_h):
        return
    n = g.n
    if n == 0:
        yield {}
        return
    by_inv: dict[tuple, list[int]] = {}
    for w in range(n):
        by_inv.setdefault(inv_h[w], []).append(w)
    rarity = {k: len(v) for k, v in by_inv.items()}

    # match order: most constrained vertex next (most already-ordered neighbours)
    order: list[int] = []
    placed = [False] * n
    links = [0] * n
    for _ in range(n):
        best = min(
            (v for v in range(n) if not placed[v]),
            key=lambda v: (-links[v], rarity[inv_g[v]], v),
        )
        placed[best] = True
        order.append(best)
        for w in g.neighbors(best):
            links[w] += 1

    gmap = [-1] * n
    used = [False] * n
    hadj = [set(a) for a in h.adjacency]

    def extend(depth: int) -> Iterator[VertexMap]:
        if depth == n:
            yield {v: gmap[v] for v in range(n)}
            return
        v = order[depth]
        mapped = [gmap[u] for u in g.neighbors(v) if gmap[u] != -1]
        for w in by_inv[inv_g[v]]:
            if used[w]:
                continue
            nb = hadj[w]
            if any(x not in nb for x in mapped):
                continue
            if sum(1 for x in nb if used[x]) != len(mapped):
                continue
            gmap[v] = w
            used[w] = True
            yield from extend(depth + 1)
            gmap[v] = -1
            used[w] = False

    yield from extend(0)


def is_isomorphic(g: Graph, h: Graph) -> VertexMap | None:
    """A witness bijection ``{v_g: v_h}`` preserving adjacency, or ``None``."""
    return next(_matchings(g, h), None)


def automorphisms(g: Graph) -> list[VertexMap]:
    return list(_matchings(g, g))


def is_isomorphism(g: Graph, h: Graph, mapping: Mapping[int, int]) -> bool:
    """Check a claimed isomorphism directly against both edge sets."""
    if g.n != h.n or g.m != h.m:
        return False
    if sorted(mapping) != list(range(g.n)) or sorted(mapping.values()) != list(range(h.n)):
        return False
    return all(h.has_edge(mapping[u], mapping[v]) for u, v in g.edges)


def enumerate_cycles(g: Graph, length: int) -> list[Cycle]:
    """All cycles with exactly ``length`` vertices, canonical and sorted."""
    if length < 3:
        raise InvalidInputError("cycle length must be at least 3")
    adj = g.adjacency
    found: list[Cycle] = []
    path: list[int] = []
    on_path = [False] * g.n

    def dfs(start: int, v: int) -> None:
        if len(path) == length:
            # each cycle is seen in both directions; keep one
            if start in adj[v] and path[1] < path[-1]:
                found.append(Cycle(tuple(path)))
            return
        for w in adj[v]:
            if w > start and not on_path[w]:
                on_path[w] = True
                path.append(w)
                dfs(start, w)
                path.pop()
                on_path[w] = False

    for s in range(g.n):
        path.append(s)
        on_path[s] = True
        dfs(s, s)
        on_path[s] = False
        path.pop()
    return sorted(found)


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = float("inf")
    adj = g.adjacency
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return int(best) if best != float("inf") else best


def is_bipartite(g: Graph) -> bool:
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    labels = {}
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges)
        labels.update({v + offset: s for v, s in h.labels.items()})
        offset += h.n
    return Graph(offset, edges, labels)


# -- small named graphs -------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(n, ((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((u, a + v) for u in range(a) for v in range(b)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidInputError("cycle graph needs n >= 3")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)
