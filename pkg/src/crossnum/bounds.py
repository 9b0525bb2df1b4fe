"""Lower bounds on skewness (and hence crossing number).

* ``euler_skewness_bound``: face counting with Euler's formula, given how
  many short faces a planar subgraph can have and how long the rest must be.
* ``skewness_exact``: fewest edge deletions that leave a planar graph,
  found by iterative deepening that only ever deletes edges of the current
  Kuratowski subgraph.
* ``kuratowski_packing``: greedy count of edge-disjoint Kuratowski
  subgraphs.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .errors import InvalidInputError
from .graph import Edge, Graph, enumerate_cycles, girth, is_bipartite
from .planarity import minimal_nonplanar_subset, planar_edges


@dataclass(frozen=True)
class EulerCountInput:
    """Parameters of the face-counting argument.

    At most ``short_cycle_budget`` faces may have length ``s``; every other
    face has length at least ``g``. ``short_cycle_budget=None`` means no
    limit, i.e. every face is only known to have length >= ``s``.
    """

    n: int
    m_edges: int
    short_cycle_budget: int | None
    s: int
    g: int

    def __post_init__(self):
        if self.n < 3:
            raise InvalidInputError("face counting needs n >= 3")
        if not 3 <= self.s < self.g:
            raise InvalidInputError(f"need 3 <= s < g, got s={self.s}, g={self.g}")
        if self.short_cycle_budget is not None and self.short_cycle_budget < 0:
            raise InvalidInputError("short-cycle budget must be non-negative")


@dataclass(frozen=True)
class BoundReport:
    deletions_lower_bound: int
    face_count_at_bound: int
    derivation: tuple[str, ...]
    warning: str | None = None

    def text(self) -> str:
        return "\n".join(self.derivation)


G12_PRESET = EulerCountInput(n=12, m_edges=18, short_cycle_budget=3, s=4, g=6)


def _min_face_length_sum(inp: EulerCountInput, p: int) -> int:
    b = inp.short_cycle_budget
    if b is None:
        return inp.s * p
    return inp.s * min(b, p) + inp.g * max(0, p - b)


def _lin(coef: int, const: int, var: str = "m") -> str:
    """Render ``const - coef*var`` compactly (``8 - m``)."""
    if coef == 0:
        return str(const)
    term = var if coef == 1 else f"{coef}{var}"
    if const == 0:
        return f"-{term}"
    return f"{const} - {term}"


def euler_skewness_bound(
    inp: EulerCountInput | int,
    m_edges: int | None = None,
    *,
    budget: int | None = None,
    s: int | None = None,
    g: int | None = None,
) -> BoundReport:
    """Least deletion count compatible with Euler's formula and face lengths.

    Deleting ``k`` edges leaves ``M - k`` edges and, for a planar drawing, at
    least ``p = 2 - n + M - k`` faces whose lengths sum to ``2(M - k)``.
    Takes an ``EulerCountInput`` or the same numbers spelled out:
    ``euler_skewness_bound(12, 18, budget=3, s=4, g=6)``.
    """
    if not isinstance(inp, EulerCountInput):
        if m_edges is None or s is None or g is None:
            raise InvalidInputError("need n, m_edges, s and g")
        inp = EulerCountInput(inp, m_edges, budget, s, g)
    n, M, s, g, b = inp.n, inp.m_edges, inp.s, inp.g, inp.short_cycle_budget
    C = 2 - n + M
    if C <= 0:
        return BoundReport(
            0, C, (f"p = 2 - {n} + {M} = {C} <= 0 at m = 0; no face-count constraint",),
            warning="inconsistent input: no faces forced even with zero deletions",
        )
    k = 0
    while k <= M:
        p = C - k
        if p <= 0 or _min_face_length_sum(inp, p) <= 2 * (M - k):
            break
        k += 1
    p = C - k
    trace = [f"faces: p = 2 - {n} + ({M} - m) = {_lin(1, C)}"]
    if b == 0:
        trace.append(f"face lengths: {g}*({_lin(1, C)}) <= 2*({M} - m)")
        coef = g - 2
        rhs = g * C - 2 * M
    elif b is not None and p >= b:
        trace.append(
            f"face lengths: {s}*{b} + {g}*({_lin(1, C)} - {b}) <= 2*({M} - m)"
        )
        coef = g - 2
        rhs = s * b + g * (C - b) - 2 * M
    else:
        trace.append(f"face lengths: {s}*({_lin(1, C)}) <= 2*({M} - m)")
        coef = s - 2
        rhs = s * C - 2 * M
    symbolic = max(0, math.ceil(rhs / coef))
    if coef != 1:
        trace.append(f"=> {coef}m >= {rhs}")
    trace.append(f"=> m >= {symbolic}")
    noun = "deletion" if k == 1 else "deletions"
    trace.append(f"bound: at least {k} {noun} (p = {p} at the bound)")
    warning = None
    if symbolic != k:  # pragma: no cover - regimes agree for valid inputs
        warning = f"symbolic bound {symbolic} differs from scanned bound {k}"
    return BoundReport(k, p, tuple(trace), warning)


def euler_input_for(g: Graph) -> EulerCountInput | None:
    """Face-counting parameters read off a graph: girth faces are budgeted.

    Faces of girth length ``s`` must be ``s``-cycles; each such cycle bounds
    at most one face unless it is a whole component. Every other face is at
    least ``s + 1`` long (``s + 2`` for bipartite graphs). Returns ``None``
    for forests and graphs with fewer than 3 vertices.
    """
    if g.n < 3:
        return None
    gi = girth(g)
    if gi == math.inf:
        return None
    s = int(gi)
    cycles = enumerate_cycles(g, s)
    degs = g.degrees()
    whole = sum(1 for c in cycles if all(degs[v] == 2 for v in c.vertices))
    nxt = s + 2 if is_bipartite(g) else s + 1
    return EulerCountInput(g.n, g.m, len(cycles) + whole, s, nxt)


def euler_bound(g: Graph) -> int:
    inp = euler_input_for(g)
    if inp is None:
        return 0
    return euler_skewness_bound(inp).deletions_lower_bound


class SubgraphEulerBound:
    """Fast Euler bound for subgraphs ``g - D``, reusing ``g``'s girth cycles.

    Deleting edges never lowers the girth and only removes short cycles, so
    the parameters of ``g`` with the surviving short cycles recounted give
    a valid bound for every spanning subgraph.
    """

    def __init__(self, g: Graph):
        self.graph = g
        self.inp = euler_input_for(g)
        if self.inp is not None:
            self.short = [frozenset(c.edges()) for c in enumerate_cycles(g, self.inp.s)]
        else:
            self.short = []

    def __call__(self, removed: set[Edge] | frozenset[Edge]) -> int:
        if self.inp is None:
            return 0
        g = self.graph
        deg = [0] * g.n
        m = 0
        for u, v in g.edges:
            if (u, v) not in removed:
                deg[u] += 1
                deg[v] += 1
                m += 1
        n = sum(1 for d in deg if d > 0)
        if n < 3:
            return 0
        budget = 0
        for c in self.short:
            if c.isdisjoint(removed):
                budget += 1
                verts = {x for e in c for x in e}
                if all(deg[v] == 2 for v in verts):
                    budget += 1
        inp = EulerCountInput(n, m, budget, self.inp.s, self.inp.g)
        C = 2 - n + m
        k = 0
        while C - k > 0 and _min_face_length_sum(inp, C - k) > 2 * (m - k):
            k += 1
        return k


# -- Kuratowski packing ------------------------------------------------------


def kuratowski_packing_witnesses(g: Graph) -> list[list[Edge]]:
    """Greedily extract edge-disjoint minimal nonplanar subgraphs."""
    remaining = list(g.edges)
    found = []
    while not planar_edges(g.n, remaining):
        sub = minimal_nonplanar_subset(g.n, remaining)
        found.append(sub)
        used = set(sub)
        remaining = [e for e in remaining if e not in used]
    return found


def kuratowski_packing(g: Graph) -> int:
    return len(kuratowski_packing_witnesses(g))


# -- exact skewness ----------------------------------------------------------


@dataclass
class SkewnessResult:
    """``status`` is ``"exact"``, ``"above"`` (> max_k) or ``"timeout"``.

    ``value`` is the skewness when exact. ``lower`` is always a proven lower
    bound and ``deleted`` a deletion set achieving ``value``.
    """

    status: str
    value: int | None
    lower: int
    deleted: tuple[Edge, ...] = ()
    nodes: int = 0
    stats: dict = field(default_factory=dict)


class _Timeout(Exception):
    pass


def skewness_exact(
    g: Graph,
    max_k: int,
    budget: float | None = None,
    *,
    use_euler: bool = True,
) -> SkewnessResult:
    """Fewest edge deletions making ``g`` planar, searched up to ``max_k``.

    Iterative deepening on the deletion count. At each node a minimal
    nonplanar subgraph of the current graph is computed and every deletion
    set must hit it, so only its edges are branched on; edges of earlier
    siblings are kept in later branches so no set is explored twice.
    """
    if max_k < 0:
        raise InvalidInputError("max_k must be non-negative")
    deadline = None if budget is None else time.monotonic() + budget
    edges = list(g.edges)
    if planar_edges(g.n, edges):
        return SkewnessResult("exact", 0, 0, ())
    euler = SubgraphEulerBound(g) if use_euler else None
    lower = max(1, euler(frozenset()) if euler else 1)
    nodes = 0

    def search(deleted: list[Edge], kept: frozenset[Edge], left: int) -> list[Edge] | None:
        nonlocal nodes
        nodes += 1
        if deadline is not None and nodes % 64 == 0 and time.monotonic() > deadline:
            raise _Timeout
        dset = set(deleted)
        rest = [e for e in edges if e not in dset]
        if planar_edges(g.n, rest):
            return list(deleted)
        if left == 0:
            return None
        if euler is not None and euler(dset) > left:
            return None
        witness = minimal_nonplanar_subset(g.n, rest)
        choices = [e for e in witness if e not in kept]
        tried = set(kept)
        for e in choices:
            found = search(deleted + [e], frozenset(tried), left - 1)
            if found is not None:
                return found
            tried.add(e)
        return None

    k = lower
    try:
        while k <= max_k:
            found = search([], frozenset(), k)
            if found is not None:
                return SkewnessResult("exact", k, k, tuple(sorted(found)), nodes)
            k += 1
    except _Timeout:
        return SkewnessResult("timeout", None, k, (), nodes)
    return SkewnessResult("above", None, max_k + 1, (), nodes)
