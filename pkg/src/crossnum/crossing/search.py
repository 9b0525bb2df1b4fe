"""Exact crossing-number decisions by planarization branch and bound.

Search state: a set of crossings between original edges together with the
position of every crossing along each edge. If the planarization of the
state is planar the state is a drawing. Otherwise take a minimal nonplanar
subgraph K of the planarization: any drawing extending the state must
cross two edges of K with each other, so the children are exactly the ways
of adding one crossing between two K-segments. A child also inherits, as
forbidden, the choices of its earlier siblings; the forbidden region is a
pair of segment ranges, which stays meaningful as later crossings split
those segments. Search space is restricted to good drawings: independent
edges only, each pair at most once.

Crossing segments s and t of a planarization P yields a graph that
contains subdivisions of both P - s and P - t. So with a single crossing
left, both segments must be ones whose removal alone makes P planar.

The naive enumerator below walks every crossing set and every per-edge
order directly; it is the oracle the pruned search is tested against and
the engine behind ``enumerate_realizable``.
"""

from __future__ import annotations

import itertools
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Sequence

from ..bounds import SubgraphEulerBound, euler_bound, kuratowski_packing
from ..errors import InvalidInputError, SearchTooLargeError
from ..graph import Edge, Graph, automorphisms, edge_key
from ..planarity import Embedding, minimal_nonplanar_subset, planar_edges, planar_embedding
from .certificate import (
    END,
    START,
    CrossingPair,
    DrawingCertificate,
    HostId,
    chain_edges,
    planarization,
    verify_certificate,
)

SAT, UNSAT, TIMEOUT = "SAT", "UNSAT", "TIMEOUT"


def packing_count(n: int, edges: Sequence[Edge], cap: int, first: Sequence[Edge] | None = None) -> int:
    """Edge-disjoint minimal nonplanar subgraphs found greedily, at most ``cap``.

    Every drawing of the graph crosses inside each of them, so the count is
    a lower bound on the crossings still needed.
    """
    rest = list(edges)
    found = 0
    while found < cap and not planar_edges(n, rest):
        part = set(first if found == 0 and first is not None else minimal_nonplanar_subset(n, rest))
        rest = [e for e in rest if e not in part]
        found += 1
    return found


def planarizing_edges(n: int, edges: Sequence[Edge], among: Sequence[Edge]) -> list[Edge]:
    """Edges of ``among`` whose removal alone leaves a planar graph.

    The final crossing of a drawing must be between two such edges: crossing
    segments s and t yields a graph containing subdivisions of both P - s
    and P - t.
    """
    index = {e: q for q, e in enumerate(edges)}
    out = []
    for e in among:
        q = index[e]
        if planar_edges(n, list(edges[:q]) + list(edges[q + 1:])):
            out.append(e)
    return out


@dataclass(frozen=True)
class Constraints:
    """Restrictions on which edge classes may or must cross.

    ``forbid`` lists class pairs that may not cross each other. Each entry
    of ``require`` is a group of class pairs; every group must be matched
    by at least one crossing. A pair ``(A, A)`` means two edges of ``A``.
    """

    classes: Mapping[str, frozenset[Edge]]
    forbid: tuple[tuple[str, str], ...] = ()
    require: tuple[tuple[tuple[str, str], ...], ...] = ()

    def __post_init__(self):
        for a, b in self.forbid + tuple(p for grp in self.require for p in grp):
            for name in (a, b):
                if name not in self.classes:
                    raise InvalidInputError(f"unknown edge class {name!r}")

    def _match(self, e: Edge, f: Edge, a: str, b: str) -> bool:
        A, B = self.classes[a], self.classes[b]
        return (e in A and f in B) or (e in B and f in A)

    def forbids(self, e: Edge, f: Edge) -> bool:
        return any(self._match(e, f, a, b) for a, b in self.forbid)

    def group_met(self, group, pairs: Sequence[tuple[Edge, Edge]]) -> bool:
        return any(self._match(e, f, a, b) for e, f in pairs for a, b in group)

    def satisfied(self, pairs: Sequence[tuple[Edge, Edge]]) -> bool:
        if any(self.forbids(e, f) for e, f in pairs):
            return False
        return all(self.group_met(grp, pairs) for grp in self.require)


@dataclass(frozen=True)
class SearchOptions:
    """Switches for the exact search. Pruning never changes answers."""

    euler: bool = True  # Euler bound on g minus already-crossed edges
    packing: bool = True  # edge-disjoint Kuratowski subgraphs of the planarization
    last_crossing: bool = True  # with one crossing left, cross only segments whose removal planarizes
    symmetry: bool = False  # branch over automorphism orbits of pairs at the root
    heuristic: bool = True  # try the upper-bound heuristic before searching
    heuristic_tries: int = 24
    seed: int = 0


@dataclass
class DecideResult:
    status: str
    k: int
    certificate: DrawingCertificate | None
    lower: int
    upper: int | None
    nodes: int = 0
    stats: dict = field(default_factory=dict)
    # verified drawing with ``upper`` crossings, kept when the answer is not SAT
    upper_witness: DrawingCertificate | None = None

    @property
    def bracket(self) -> tuple[int, int | None]:
        return (self.lower, self.upper)


class _Timeout(Exception):
    pass


class _Search:
    def __init__(
        self,
        g: Graph,
        constraints: Constraints | None,
        options: SearchOptions,
        deadline: float | None,
        classifier: Callable[[list[tuple[Edge, Edge]]], str] | None,
    ):
        self.g = g
        self.n = g.n
        self.edges = list(g.edges)
        m = len(self.edges)
        self.constraints = constraints
        self.options = options
        self.deadline = deadline
        self.classifier = classifier
        allowed = [[False] * m for _ in range(m)]
        for i, j in itertools.combinations(range(m), 2):
            e, f = self.edges[i], self.edges[j]
            if set(e) & set(f):
                continue
            if constraints is not None and constraints.forbids(e, f):
                continue
            allowed[i][j] = allowed[j][i] = True
        self.allowed = allowed
        self.require: list[set[tuple[int, int]]] = []
        if constraints is not None:
            for grp in constraints.require:
                ok = set()
                for i, j in itertools.combinations(range(m), 2):
                    if allowed[i][j] and any(
                        constraints._match(self.edges[i], self.edges[j], a, b) for a, b in grp
                    ):
                        ok.add((i, j))
                self.require.append(ok)
        self.euler = SubgraphEulerBound(g) if options.euler else None
        self.nodes = 0
        self.pruned: Counter = Counter()
        self.by_class: Counter = Counter()
        self.root_orbits = None
        if options.symmetry and constraints is None:
            self.root_orbits = self._pair_orbits()

    def _pair_orbits(self) -> list[list[tuple[int, int]]]:
        index = {e: i for i, e in enumerate(self.edges)}
        auts = automorphisms(self.g)
        seen = set()
        orbits = []
        m = len(self.edges)
        for i, j in itertools.combinations(range(m), 2):
            if not self.allowed[i][j] or (i, j) in seen:
                continue
            orbit = set()
            for a in auts:
                e, f = self.edges[i], self.edges[j]
                x = index[edge_key(a[e[0]], a[e[1]])]
                y = index[edge_key(a[f[0]], a[f[1]])]
                orbit.add((min(x, y), max(x, y)))
            seen |= orbit
            orbits.append(sorted(orbit))
        return orbits

    # -- state ---------------------------------------------------------------

    def run(self, k: int):
        self.crossings: list[tuple[int, int]] = []
        self.crossed: set[tuple[int, int]] = set()
        self.orders: list[list[int]] = [[] for _ in self.edges]
        self.forbid: dict[tuple[int, int], list[tuple[int, int, int, int]]] = {}
        if self.root_orbits is not None and k > 0:
            return self._root_by_orbits(k)
        return self._dfs(k)

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise _Timeout

    def _note_prune(self, reason: str):
        self.pruned[reason] += 1
        if self.classifier is not None:
            pairs = [(self.edges[i], self.edges[j]) for i, j in self.crossings]
            self.by_class[self.classifier(pairs)] += 1

    def _markers(self, i: int, a: int) -> tuple[int, int]:
        order = self.orders[i]
        left = order[a - 1] if a > 0 else START
        right = order[a] if a < len(order) else END
        return left, right

    def _pos(self, i: int, marker: int) -> int:
        if marker == START:
            return -1
        if marker == END:
            return len(self.orders[i])
        return self.orders[i].index(marker)

    def _excluded(self, i: int, a: int, j: int, b: int) -> bool:
        for la, ra, lb, rb in self.forbid.get((i, j), ()):
            if self._pos(i, la) < a <= self._pos(i, ra) and self._pos(j, lb) < b <= self._pos(j, rb):
                return True
        return False

    def _apply(self, i: int, a: int, j: int, b: int) -> None:
        c = len(self.crossings)
        self.crossings.append((i, j))
        self.crossed.add((i, j))
        self.orders[i].insert(a, c)
        self.orders[j].insert(b, c)

    def _undo(self, i: int, a: int, j: int, b: int) -> None:
        self.crossings.pop()
        self.crossed.discard((i, j))
        del self.orders[i][a]
        del self.orders[j][b]

    def _unmet(self) -> set[tuple[int, int]] | None:
        for ok in self.require:
            if not any(p in ok for p in self.crossings):
                return ok
        return None

    def _try_children(self, cands, left: int):
        pushed = []
        try:
            for i, a, j, b in cands:
                if self._excluded(i, a, j, b):
                    continue
                la, ra = self._markers(i, a)
                lb, rb = self._markers(j, b)
                self._apply(i, a, j, b)
                found = self._dfs(left - 1)
                self._undo(i, a, j, b)
                if found is not None:
                    return found
                self.forbid.setdefault((i, j), []).append((la, ra, lb, rb))
                pushed.append((i, j))
        finally:
            for key in pushed:
                self.forbid[key].pop()
        return None

    def _dfs(self, left: int):
        self._tick()
        n = self.n
        pe, seg = chain_edges(n, self.edges, self.orders)
        N = n + len(self.crossings)
        if planar_edges(N, pe):
            unmet = self._unmet()
            if unmet is None:
                return list(self.crossings), [list(o) for o in self.orders]
            if left == 0:
                self._note_prune("budget")
                return None
            cands = []
            for k1, (i, a) in enumerate(seg):
                for k2, (j, b) in enumerate(seg):
                    if i < j and (i, j) in unmet and (i, j) not in self.crossed:
                        cands.append((i, a, j, b))
            return self._try_children(sorted(cands), left)
        if left == 0:
            self._note_prune("budget")
            return None
        if self.euler is not None:
            crossed_edges = {self.edges[x] for p in self.crossings for x in p}
            if self.euler(crossed_edges) > left:
                self._note_prune("euler")
                return None
        witness = minimal_nonplanar_subset(N, pe)
        if self.options.packing and left >= 1:
            if packing_count(N, pe, left + 1, witness) > left:
                self._note_prune("packing")
                return None
        index = {e: q for q, e in enumerate(pe)}
        if left == 1 and self.options.last_crossing:
            keep = planarizing_edges(N, pe, witness)
            if len(keep) < 2:
                self._note_prune("last-crossing")
                return None
            witness = keep
        segs = sorted({seg[index[e]] for e in witness})
        cands = []
        allowed, crossed = self.allowed, self.crossed
        for (i, a), (j, b) in itertools.combinations(segs, 2):
            if i == j:
                continue
            if i > j:
                i, a, j, b = j, b, i, a
            if allowed[i][j] and (i, j) not in crossed:
                cands.append((i, a, j, b))
        if not cands:
            self._note_prune("no-candidate")
            return None
        return self._try_children(sorted(cands), left)

    def _root_by_orbits(self, k: int):
        self._tick()
        pe, _ = chain_edges(self.n, self.edges, self.orders)
        if planar_edges(self.n, pe):
            return [], [[] for _ in self.edges]
        pushed = []
        try:
            for orbit in self.root_orbits:
                i, j = orbit[0]
                self._apply(i, 0, j, 0)
                found = self._dfs(k - 1)
                self._undo(i, 0, j, 0)
                if found is not None:
                    return found
                for p in orbit:
                    self.forbid.setdefault(p, []).append((START, END, START, END))
                    pushed.append(p)
        finally:
            for p in pushed:
                self.forbid[p].pop()
        return None

    def certificate(self, found) -> DrawingCertificate:
        crossings, orders = found
        pairs = tuple(CrossingPair.of(self.edges[i], self.edges[j]) for i, j in crossings)
        order_map = {self.edges[i]: tuple(o) for i, o in enumerate(orders) if len(o) >= 2}
        return DrawingCertificate(HostId.of(self.g), pairs, order_map).canonical()


def _share(budget: float | None, fraction: float) -> float | None:
    """Deadline for a preliminary phase allowed ``fraction`` of the budget."""
    return None if budget is None else time.monotonic() + fraction * budget


def _lower_bound(g: Graph, options: SearchOptions) -> int:
    if planar_edges(g.n, g.edges):
        return 0
    lo = 1
    if options.euler:
        lo = max(lo, euler_bound(g))
    if options.packing:
        lo = max(lo, kuratowski_packing(g))
    return lo


def cr_decide(
    g: Graph,
    k: int,
    budget: float | None = None,
    constraints: Constraints | None = None,
    *,
    options: SearchOptions | None = None,
    classifier: Callable[[list[tuple[Edge, Edge]]], str] | None = None,
) -> DecideResult:
    """Decide whether ``g`` has a good drawing with at most ``k`` crossings.

    SAT carries a re-verified certificate. UNSAT means every good-drawing
    configuration of size <= k was excluded. TIMEOUT (``budget`` seconds of
    wall clock) carries the proven bracket ``[lower, upper]``.
    """
    if k < 0:
        raise InvalidInputError("k must be non-negative")
    options = options or SearchOptions()
    deadline = None if budget is None else time.monotonic() + budget
    lower = _lower_bound(g, options)
    upper = None
    h = None
    if constraints is None and lower == 0:
        cert = DrawingCertificate(HostId.of(g), (), {})
        return DecideResult(SAT, k, cert, 0, 0)
    if lower > k:
        return DecideResult(UNSAT, k, None, lower, None, stats={"refuted_by": "lower bound"})
    if options.heuristic and constraints is None:
        from .heuristic import upper_bound_heuristic

        h = upper_bound_heuristic(
            g, tries=options.heuristic_tries, seed=options.seed, target=k,
            deadline=_share(budget, 0.25),
        )
        upper = h.count
        if h.count <= k:
            verify_certificate(g, h)
            return DecideResult(SAT, k, h, lower, upper, stats={"found_by": "heuristic"})
    search = _Search(g, constraints, options, deadline, classifier)
    try:
        found = search.run(k)
        if found is not None:
            cert = search.certificate(found)
            rep = verify_certificate(g, cert)
            assert rep.count <= k
            if constraints is not None:
                assert constraints.satisfied([(p.e1, p.e2) for p in cert.crossings])
            return DecideResult(SAT, k, cert, lower, cert.count, search.nodes, _stats(search))
        lower = k + 1
    except _Timeout:
        return DecideResult(TIMEOUT, k, None, lower, upper, search.nodes, _stats(search), h)
    return DecideResult(UNSAT, k, None, lower, upper, search.nodes, _stats(search), h)


def _stats(search: _Search) -> dict:
    out = {"pruned": dict(search.pruned)}
    if search.classifier is not None:
        out["pruned_by_class"] = dict(sorted(search.by_class.items()))
    return out


@dataclass
class ExactResult:
    status: str  # "exact", "above" (cr > k_max) or "timeout"
    value: int | None
    certificate: DrawingCertificate | None
    lower: int
    upper: int | None
    nodes: int = 0


def cr_exact(
    g: Graph,
    k_max: int,
    budget: float | None = None,
    *,
    options: SearchOptions | None = None,
) -> ExactResult:
    """Crossing number with a witness, or the proven bracket on timeout."""
    if k_max < 0:
        raise InvalidInputError("k_max must be non-negative")
    options = options or SearchOptions()
    deadline = None if budget is None else time.monotonic() + budget
    lower = _lower_bound(g, options)
    if lower == 0:
        return ExactResult("exact", 0, DrawingCertificate(HostId.of(g), (), {}), 0, 0)
    best = None
    if options.heuristic:
        from .heuristic import upper_bound_heuristic

        best = upper_bound_heuristic(
            g, tries=options.heuristic_tries, seed=options.seed, target=lower,
            deadline=_share(budget, 0.25),
        )
        verify_certificate(g, best)
    upper = best.count if best is not None else None
    search = _Search(g, None, options, deadline, None)
    try:
        j = lower
        while j <= k_max and (upper is None or j < upper):
            found = search.run(j)
            if found is not None:
                best = search.certificate(found)
                verify_certificate(g, best)
                return ExactResult("exact", best.count, best, best.count, best.count, search.nodes)
            lower = j + 1
            j += 1
    except _Timeout:
        return ExactResult("timeout", None, best, lower, upper, search.nodes)
    if upper is not None and lower >= upper:
        return ExactResult("exact", upper, best, upper, upper, search.nodes)
    return ExactResult("above", None, best, lower, upper, search.nodes)


# -- naive enumeration ---------------------------------------------------------


def independent_pairs(g: Graph, constraints: Constraints | None = None) -> list[tuple[Edge, Edge]]:
    """Edge pairs that may cross in a good drawing, in lexicographic order."""
    out = []
    for e, f in itertools.combinations(g.edges, 2):
        if set(e) & set(f):
            continue
        if constraints is not None and constraints.forbids(e, f):
            continue
        out.append((e, f))
    return out


def raw_configuration_count(g: Graph, k: int, constraints: Constraints | None = None) -> int:
    p = len(independent_pairs(g, constraints))
    return sum(math.comb(p, j) for j in range(k + 1))


def iter_configurations(
    g: Graph, k: int, constraints: Constraints | None = None
) -> Iterator[tuple[list[tuple[Edge, Edge]], dict[Edge, tuple[int, ...]]]]:
    """Every crossing set of size <= k with every order on multiply crossed edges.

    Orders are listed for every crossed edge, including singly crossed ones.
    """
    pairs = independent_pairs(g, constraints)
    for size in range(k + 1):
        for combo in itertools.combinations(pairs, size):
            if constraints is not None and not all(
                constraints.group_met(grp, combo) for grp in constraints.require
            ):
                continue
            on: dict[Edge, list[int]] = {}
            for c, (e, f) in enumerate(combo):
                on.setdefault(e, []).append(c)
                on.setdefault(f, []).append(c)
            multi = [e for e, ids in on.items() if len(ids) >= 2]
            choices = [list(itertools.permutations(on[e])) for e in multi]
            for pick in itertools.product(*choices):
                orders = {e: tuple(ids) for e, ids in on.items()}
                orders.update(zip(multi, pick))
                yield list(combo), orders


def _config_planar(g: Graph, combo, orders) -> bool:
    edges = g.edges
    pe, _ = chain_edges(g.n, edges, [orders.get(e, ()) for e in edges])
    return planar_edges(g.n + len(combo), pe)


def _to_certificate(g: Graph, combo, orders) -> DrawingCertificate:
    pairs = tuple(CrossingPair.of(e, f) for e, f in combo)
    multi = {e: ids for e, ids in orders.items() if len(ids) >= 2}
    return DrawingCertificate(HostId.of(g), pairs, multi)


def cr_decide_naive(g: Graph, k: int, constraints: Constraints | None = None) -> DrawingCertificate | None:
    """Unpruned enumeration: the first realizable configuration, or ``None``."""
    for combo, orders in iter_configurations(g, k, constraints):
        if _config_planar(g, combo, orders):
            return _to_certificate(g, combo, orders)
    return None


DEFAULT_CEILING = 200_000


def enumerate_realizable(
    g: Graph,
    k: int,
    constraints: Constraints | None = None,
    *,
    ceiling: int = DEFAULT_CEILING,
) -> list[tuple[DrawingCertificate, Embedding]]:
    """All realizable good-drawing configurations with at most ``k`` crossings.

    Each comes with one planar embedding of its planarization. No symmetry
    reduction is applied. Refuses when the number of crossing sets to try
    exceeds ``ceiling``.
    """
    raw = raw_configuration_count(g, k, constraints)
    if raw > ceiling:
        raise SearchTooLargeError(f"{raw} crossing sets exceed the ceiling of {ceiling}")
    out = []
    for combo, orders in iter_configurations(g, k, constraints):
        if _config_planar(g, combo, orders):
            cert = _to_certificate(g, combo, orders)
            emb = planar_embedding(planarization(g, cert).graph)
            out.append((cert, emb))
    return out
