"""Drawing certificates, planarization, verification and crossing accounting.

A certificate records which pairs of edges cross and, for every edge
crossed at least twice, the order of its crossings walking away from its
lower-numbered endpoint. Replacing every crossing by a degree-4 vertex
gives the planarization; the certificate describes a drawing exactly when
the planarization is planar.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from ..errors import CertificateError, FormatError, InvalidInputError
from ..graph import Edge, Graph, edge_key
from ..planarity import planar_edges

START, END = -1, -2  # segment boundary markers for an edge's endpoints


@dataclass(frozen=True, order=True)
class CrossingPair:
    e1: Edge
    e2: Edge

    @classmethod
    def of(cls, a: Sequence[int], b: Sequence[int]) -> CrossingPair:
        a, b = edge_key(*a), edge_key(*b)
        return cls(*sorted((a, b)))

    def is_adjacent(self) -> bool:
        return bool(set(self.e1) & set(self.e2))

    def involves(self, e: Edge) -> bool:
        return e == self.e1 or e == self.e2

    def other(self, e: Edge) -> Edge:
        return self.e2 if e == self.e1 else self.e1


@dataclass(frozen=True)
class HostId:
    n: int
    m: int
    checksum: str

    @classmethod
    def of(cls, g: Graph) -> HostId:
        return cls(g.n, g.m, g.checksum())


@dataclass(frozen=True)
class DrawingCertificate:
    """Crossings indexed by position; ``orders`` only for multiply crossed edges."""

    host: HostId
    crossings: tuple[CrossingPair, ...]
    orders: Mapping[Edge, tuple[int, ...]] = field(default_factory=dict)

    @property
    def count(self) -> int:
        return len(self.crossings)

    def crossings_on(self, e: Edge) -> list[int]:
        return [i for i, p in enumerate(self.crossings) if p.involves(e)]

    def edge_orders(self) -> dict[Edge, tuple[int, ...]]:
        """Crossing order along every crossed edge, including single ones."""
        out: dict[Edge, tuple[int, ...]] = {}
        for i, p in enumerate(self.crossings):
            for e in (p.e1, p.e2):
                out.setdefault(e, ())
                out[e] += (i,)
        for e, ids in out.items():
            if len(ids) >= 2 and e in self.orders:
                out[e] = tuple(self.orders[e])
        return out

    def canonical(self) -> DrawingCertificate:
        """Same drawing with crossing ids renumbered in sorted pair order."""
        perm = sorted(range(self.count), key=lambda i: self.crossings[i])
        new_id = {old: new for new, old in enumerate(perm)}
        crossings = tuple(self.crossings[i] for i in perm)
        orders = {
            e: tuple(new_id[i] for i in ids)
            for e, ids in sorted(self.orders.items())
        }
        return DrawingCertificate(self.host, crossings, orders)

    @classmethod
    def build(
        cls,
        g: Graph,
        crossings: Iterable[tuple[Sequence[int], Sequence[int]]],
        orders: Mapping[Edge, Sequence[int]] | None = None,
    ) -> DrawingCertificate:
        pairs = tuple(CrossingPair.of(a, b) for a, b in crossings)
        orders = {edge_key(*e): tuple(ids) for e, ids in (orders or {}).items()}
        return cls(HostId.of(g), pairs, orders)


def structural_violations(g: Graph | None, cert: DrawingCertificate) -> list[tuple[str, str]]:
    """Every good-drawing rule the certificate breaks, planarity aside."""
    out: list[tuple[str, str]] = []
    if g is not None and cert.host != HostId.of(g):
        out.append(("host-mismatch", f"certificate is for {cert.host}, graph is {HostId.of(g)}"))
    seen: set[CrossingPair] = set()
    per_edge: dict[Edge, list[int]] = {}
    for i, p in enumerate(cert.crossings):
        for e in (p.e1, p.e2):
            if g is not None and not g.has_edge(*e):
                out.append(("unknown-edge", f"crossing {i}: {e} is not an edge"))
            per_edge.setdefault(e, []).append(i)
        if p.e1 == p.e2:
            out.append(("self-crossing", f"crossing {i}: edge {p.e1} crosses itself"))
        elif p.is_adjacent():
            out.append(("adjacent", f"crossing {i}: {p.e1} and {p.e2} share an endpoint"))
        if p in seen:
            out.append(("duplicate-pair", f"crossing {i}: {p.e1} and {p.e2} cross twice"))
        seen.add(p)
    for e, ids in sorted(per_edge.items()):
        if len(ids) >= 2 and e not in cert.orders:
            out.append(("order-missing", f"edge {e} is crossed {len(ids)} times but has no order"))
    for e, ids in sorted(cert.orders.items()):
        expected = sorted(per_edge.get(e, []))
        if sorted(ids) != expected:
            out.append(("order-invalid", f"order for {e} lists {list(ids)}, crossings are {expected}"))
    return out


# -- planarization -----------------------------------------------------------


@dataclass(frozen=True)
class Planarization:
    """Planarized graph plus the original edge each segment comes from.

    Crossing ``i`` becomes vertex ``n + i``. ``chains[e]`` lists the
    vertices along original edge ``e`` from its lower endpoint;
    ``segment_of[(a, b)]`` maps a planarized edge to ``(e, index)``.
    """

    graph: Graph
    original_n: int
    chains: dict[Edge, tuple[int, ...]]
    segment_of: dict[Edge, tuple[Edge, int]]


def chain_edges(
    n: int, edges: Sequence[Edge], orders: Sequence[Sequence[int]]
) -> tuple[list[Edge], list[tuple[int, int]]]:
    """Planarized edge list and ``(edge index, segment index)`` per entry.

    ``orders[i]`` is the crossing order along ``edges[i]``; crossing ``c`` is
    vertex ``n + c``.
    """
    out: list[Edge] = []
    seg: list[tuple[int, int]] = []
    for i, (u, v) in enumerate(edges):
        order = orders[i]
        if not order:
            out.append((u, v))
            seg.append((i, 0))
            continue
        prev = u
        for j, c in enumerate(order):
            x = n + c
            out.append((prev, x) if prev < x else (x, prev))
            seg.append((i, j))
            prev = x
        out.append((v, prev) if v < prev else (prev, v))
        seg.append((i, len(order)))
    return out, seg


def planarization(g: Graph, cert: DrawingCertificate) -> Planarization:
    violations = structural_violations(g, cert)
    if violations:
        raise CertificateError(violations)
    full = cert.edge_orders()
    edges = list(g.edges)
    orders = [full.get(e, ()) for e in edges]
    pe, seg = chain_edges(g.n, edges, orders)
    labels = dict(g.labels)
    pg = Graph(g.n + cert.count, pe, labels)
    chains = {}
    for i, e in enumerate(edges):
        chains[e] = (e[0],) + tuple(g.n + c for c in orders[i]) + (e[1],)
    segment_of = {pe[k]: (edges[i], j) for k, (i, j) in enumerate(seg)}
    return Planarization(pg, g.n, chains, segment_of)


def planarize(g: Graph, cert: DrawingCertificate) -> Graph:
    """Graph with each crossing replaced by a degree-4 vertex.

    Has ``n + k`` vertices and ``m + 2k`` edges for ``k`` crossings.
    """
    return planarization(g, cert).graph


# -- verification ------------------------------------------------------------


@dataclass(frozen=True)
class CrossingReport:
    count: int
    per_edge: dict[Edge, int]
    clean_edges: frozenset[Edge]

    def summary(self) -> str:
        crossed = sorted((e, c) for e, c in self.per_edge.items() if c)
        parts = ", ".join(f"{e[0]}-{e[1]}:{c}" for e, c in crossed)
        return f"crossings {self.count}; clean edges {len(self.clean_edges)}; crossed [{parts}]"


def crossing_report(g: Graph, cert: DrawingCertificate) -> CrossingReport:
    per_edge = {e: 0 for e in g.edges}
    for p in cert.crossings:
        per_edge[p.e1] = per_edge.get(p.e1, 0) + 1
        per_edge[p.e2] = per_edge.get(p.e2, 0) + 1
    clean = frozenset(e for e, c in per_edge.items() if c == 0)
    return CrossingReport(cert.count, per_edge, clean)


def verify_certificate(g: Graph, cert: DrawingCertificate) -> CrossingReport:
    """Check every good-drawing rule and realizability; raise on any failure.

    The raised ``CertificateError`` lists all violations found, each with a
    stable code. Planarity is only tested once the structure is sound.
    """
    violations = structural_violations(g, cert)
    if violations:
        raise CertificateError(violations)
    pl = planarization(g, cert)
    if not planar_edges(pl.graph.n, pl.graph.edges):
        raise CertificateError([("nonplanar", "planarization is not planar")])
    return crossing_report(g, cert)


def is_valid_certificate(g: Graph, cert: DrawingCertificate) -> bool:
    try:
        verify_certificate(g, cert)
    except CertificateError:
        return False
    return True


# -- accounting --------------------------------------------------------------


class EdgeClassPartition:
    """Named, pairwise disjoint edge classes (need not cover every edge)."""

    def __init__(self, classes: Mapping[str, Iterable[Sequence[int]]]):
        self.classes: dict[str, frozenset[Edge]] = {
            name: frozenset(edge_key(*e) for e in es) for name, es in classes.items()
        }
        for (a, ea), (b, eb) in itertools.combinations(self.classes.items(), 2):
            common = ea & eb
            if common:
                raise InvalidInputError(
                    f"classes {a} and {b} overlap in {len(common)} edge(s), e.g. {min(common)}"
                )

    def names(self) -> list[str]:
        return list(self.classes)

    def class_of(self, e: Edge) -> str | None:
        for name, es in self.classes.items():
            if e in es:
                return name
        return None


@dataclass(frozen=True)
class AccountTable:
    within: dict[str, int]
    between: dict[tuple[str, str], int]
    unclassified: int

    def nu(self, *names: str) -> int:
        """Crossings among edges of the union of the named classes."""
        total = sum(self.within[a] for a in names)
        for a, b in itertools.combinations(names, 2):
            total += self.between.get((a, b), self.between.get((b, a), 0))
        return total

    def lines(self) -> list[str]:
        out = [f"nu({a}) = {v}" for a, v in self.within.items()]
        out += [f"nu({a},{b}) = {v}" for (a, b), v in self.between.items()]
        if self.unclassified:
            out.append(f"crossings touching unclassified edges = {self.unclassified}")
        return out


def account(
    cert: DrawingCertificate, parts: EdgeClassPartition | Mapping[str, Iterable[Edge]]
) -> AccountTable:
    """Within-class and cross-class crossing counts.

    The union identity nu(A u B) = nu(A) + nu(B) + nu(A, B) is checked
    against a direct recount for every pair of classes.
    """
    if not isinstance(parts, EdgeClassPartition):
        parts = EdgeClassPartition(parts)
    names = parts.names()
    within = {a: 0 for a in names}
    between = {(a, b): 0 for a, b in itertools.combinations(names, 2)}
    order = {a: i for i, a in enumerate(names)}
    unclassified = 0
    for p in cert.crossings:
        a, b = parts.class_of(p.e1), parts.class_of(p.e2)
        if a is None or b is None:
            unclassified += 1
        elif a == b:
            within[a] += 1
        else:
            key = (a, b) if order[a] < order[b] else (b, a)
            between[key] += 1
    table = AccountTable(within, between, unclassified)
    for a, b in itertools.combinations(names, 2):
        union = parts.classes[a] | parts.classes[b]
        direct = sum(1 for p in cert.crossings if p.e1 in union and p.e2 in union)
        assert direct == table.nu(a, b), "union identity violated"
    return table


# -- .crt text format ----------------------------------------------------------


def format_certificate(cert: DrawingCertificate) -> str:
    lines = [f"h {cert.host.n} {cert.host.m} {cert.host.checksum}", f"cr {cert.count}"]
    for i, p in enumerate(cert.crossings):
        lines.append(f"x {i} {p.e1[0]} {p.e1[1]} {p.e2[0]} {p.e2[1]}")
    for e, ids in sorted(cert.orders.items()):
        lines.append(f"o {e[0]} {e[1]} " + " ".join(map(str, ids)))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> DrawingCertificate:
    host = None
    declared = None
    crossings: dict[int, CrossingPair] = {}
    pairs_seen: dict[CrossingPair, int] = {}
    orders: dict[Edge, tuple[int, ...]] = {}
    order_lines: list[tuple[int, Edge, list[int]]] = []

    def ints(tokens, lineno):
        try:
            return [int(t) for t in tokens]
        except ValueError:
            raise FormatError("expected integers", lineno) from None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c "):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "h":
            if host is not None or len(parts) != 4:
                raise FormatError("host line must be 'h <n> <m> <checksum>' and unique", lineno)
            n, m = ints(parts[1:3], lineno)
            host = HostId(n, m, parts[3])
        elif tag == "cr":
            if declared is not None or len(parts) != 2:
                raise FormatError("count line must be 'cr <k>' and unique", lineno)
            (declared,) = ints(parts[1:], lineno)
        elif tag == "x":
            if len(parts) != 6:
                raise FormatError("crossing must be 'x <id> <u1> <v1> <u2> <v2>'", lineno)
            cid, u1, v1, u2, v2 = ints(parts[1:], lineno)
            if cid in crossings:
                raise FormatError(f"crossing id {cid} repeated", lineno)
            if u1 == v1 or u2 == v2:
                raise FormatError("crossing names a loop", lineno)
            p = CrossingPair.of((u1, v1), (u2, v2))
            if p.e1 == p.e2:
                raise FormatError(f"edge {p.e1} crosses itself", lineno)
            if p.is_adjacent():
                raise FormatError(f"adjacent edges {p.e1} and {p.e2} cannot cross", lineno)
            if p in pairs_seen:
                raise FormatError(
                    f"pair {p.e1} x {p.e2} already listed as crossing {pairs_seen[p]}", lineno
                )
            pairs_seen[p] = cid
            crossings[cid] = p
        elif tag == "o":
            if len(parts) < 4:
                raise FormatError("order must be 'o <u> <v> <id...>'", lineno)
            vals = ints(parts[1:], lineno)
            e = edge_key(vals[0], vals[1])
            if e in orders or any(e == x[1] for x in order_lines):
                raise FormatError(f"second order line for edge {e}", lineno)
            order_lines.append((lineno, e, vals[2:]))
        else:
            raise FormatError(f"unknown line type {tag!r}", lineno)
    if host is None:
        raise FormatError("missing host line")
    if declared is None:
        raise FormatError("missing 'cr <k>' line")
    if sorted(crossings) != list(range(len(crossings))):
        raise FormatError("crossing ids must be 0..k-1")
    if declared != len(crossings):
        raise FormatError(f"'cr {declared}' but {len(crossings)} crossings listed")
    for lineno, e, ids in order_lines:
        for cid in ids:
            if cid not in crossings:
                raise FormatError(f"unknown crossing id {cid}", lineno)
            if not crossings[cid].involves(e):
                raise FormatError(f"crossing {cid} does not involve edge {e}", lineno)
        orders[e] = tuple(ids)
    cert = DrawingCertificate(host, tuple(crossings[i] for i in range(len(crossings))), orders)
    problems = structural_violations(None, cert)
    if problems:
        raise FormatError("; ".join(f"{c}: {d}" for c, d in problems))
    return cert


def read_certificate(path: str | Path) -> DrawingCertificate:
    return parse_certificate(Path(path).read_text())


def write_certificate(cert: DrawingCertificate, path: str | Path) -> None:
    Path(path).write_text(format_certificate(cert))
