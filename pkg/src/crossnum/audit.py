"""Machine-checkable audits establishing cr(P4) = 6, run as one report.

Each audit returns pass, fail or timeout with a one-line detail. Reports
contain no timings, so a fixed seed gives byte-identical output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .bounds import G12_PRESET, euler_skewness_bound, skewness_exact
from .crossing.certificate import planarization, verify_certificate
from .crossing.heuristic import upper_bound_heuristic
from .crossing.search import SAT, TIMEOUT, Constraints, SearchOptions, cr_decide, enumerate_realizable
from .errors import CrossnumError
from .graph import Cycle, Edge, Graph, enumerate_cycles, induced_subgraph, is_isomorphic, is_isomorphism, suppress_degree_two
from .pancake import PancakeDecomposition, decompose, g12_reference, observation_audit, pancake_graph
from .planarity import Embedding, cycle_separates, is_planar, kuratowski_witness, validate_witness

PASS, FAIL = "pass", "fail"
LEVELS = ("fast", "full")


@dataclass(frozen=True)
class AuditResult:
    id: str
    anchor: str
    status: str
    detail: str

    def line(self) -> str:
        return f"audit {self.id} {self.status} {self.detail}"


@dataclass
class AuditReport:
    level: str
    seed: int
    results: list[AuditResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status == PASS for r in self.results)

    @property
    def status(self) -> str:
        if self.ok:
            return PASS
        if any(r.status == FAIL for r in self.results):
            return FAIL
        return TIMEOUT.lower()

    def failing(self) -> list[AuditResult]:
        return [r for r in self.results if r.status != PASS]

    def machine(self) -> str:
        return "".join(r.line() + "\n" for r in self.results)

    def text(self) -> str:
        out = [f"P4 crossing-number audits (level {self.level}, seed {self.seed})"]
        for r in self.results:
            out.append(f"  ({r.id}) {r.anchor}: {r.status.upper()}")
            out.append(f"      {r.detail}")
        verdict = "all audits passed" if self.ok else "FAILED: " + ", ".join(
            f"({r.id}) {r.anchor}" for r in self.failing()
        )
        out.append(verdict)
        return "\n".join(out) + "\n"

    def render(self) -> str:
        return self.machine() + "\n" + self.text()


class _Fail(Exception):
    pass


def _check(cond: bool, message: str) -> None:
    if not cond:
        raise _Fail(message)


# -- individual audits ---------------------------------------------------------


def audit_pancake_construction() -> str:
    p2, p3, p4 = pancake_graph(2), pancake_graph(3), pancake_graph(4)
    _check((p2.n, p2.m) == (2, 1), f"P2 has {p2.n} vertices and {p2.m} edges")
    _check((p3.n, p3.m) == (6, 6) and p3.is_regular(2) and p3.is_connected(), "P3 is not a 6-cycle")
    _check((p4.n, p4.m) == (24, 36), f"P4 has {p4.n} vertices and {p4.m} edges")
    _check(p4.is_regular(3) and p4.is_connected(), "P4 is not connected and 3-regular")
    for u, v in p4.edges:
        a, b = p4.labels[u], p4.labels[v]
        _check(
            any(a[:k][::-1] + a[k:] == b for k in range(2, 5)),
            f"edge {a}-{b} is not a prefix reversal",
        )
    return "P2 1 edge, P3 6-cycle, P4 24 vertices 36 edges 3-regular, all edges prefix reversals"


def audit_hexagon_census(p4: Graph) -> tuple[str, PancakeDecomposition]:
    cycles = enumerate_cycles(p4, 6)
    _check(len(cycles) == 4, f"found {len(cycles)} six-cycles, expected 4")
    covered = [v for c in cycles for v in c.vertices]
    _check(len(set(covered)) == 24 == len(covered), "six-cycles are not vertex-disjoint")
    decomp = decompose(p4)
    sizes = sorted(len(s) for s in decomp.between.values())
    _check(sizes == [2] * 6, f"inter-cycle class sizes {sizes}")
    return "4 six-cycles, pairwise vertex-disjoint, covering all 24 vertices; 6 classes of 2 linking edges", decomp


def audit_homeomorphism(decomp: PancakeDecomposition, g12: Graph) -> str:
    for i, vs in enumerate(decomp.vertex_classes):
        reduced = suppress_degree_two(induced_subgraph(decomp.graph, vs))
        _check((reduced.n, reduced.m) == (12, 18), f"C{i + 1}: reduced graph has {reduced.n}/{reduced.m}")
        mapping = is_isomorphic(reduced, g12)
        _check(mapping is not None, f"C{i + 1}: reduced complement is not isomorphic to G12")
        _check(is_isomorphism(reduced, g12, mapping), f"C{i + 1}: isomorphism check failed")
    return "for each of the 4 six-cycles, P4 minus it suppresses to a graph isomorphic to G12"


def audit_observation(decomp: PancakeDecomposition) -> str:
    _check(observation_audit(decomp), "attachment pattern violated")
    return "for all 12 ordered cycle pairs the arc vertices attach to the two other cycles"


def _squares(g12: Graph) -> list[Cycle]:
    squares = enumerate_cycles(g12, 4)
    _check(len(squares) == 3, f"G12 has {len(squares)} four-cycles, expected 3")
    _check(len({v for c in squares for v in c.vertices}) == 12, "four-cycles are not disjoint")
    return squares


def audit_face_count_bound(g12: Graph) -> str:
    rep = euler_skewness_bound(G12_PRESET)
    _check(rep.deletions_lower_bound == 2, f"face-count bound gave {rep.deletions_lower_bound}")
    text = rep.text()
    _check("8 - m" in text and "4m >= 6" in text, "trace lacks p = 8 - m or 4m >= 6")
    _check(len(enumerate_cycles(g12, 5)) == 0 and len(_squares(g12)) == 3, "G12 short-cycle census differs")
    _check(not is_planar(g12), "G12 is planar")
    w = kuratowski_witness(g12)
    _check(validate_witness(g12, w), "invalid Kuratowski witness for G12")
    sk = skewness_exact(g12, max_k=4)
    _check(sk.status == "exact" and sk.value >= 2, f"skewness search gave {sk.status} {sk.value}")
    return f"bound 2 from p = 8 - m and 4m >= 6; G12 nonplanar ({w.kind}); skewness {sk.value}"


def _square_constraints(squares: list[Cycle]) -> Constraints:
    classes = {f"S{i + 1}": frozenset(c.edges()) for i, c in enumerate(squares)}
    pairs = tuple(itertools.combinations(sorted(classes), 2))
    return Constraints(classes, require=(pairs,))


def audit_square_crossing(g12: Graph) -> str:
    squares = _squares(g12)
    found = enumerate_realizable(g12, 2, _square_constraints(squares))
    _check(not found, f"{len(found)} drawings with <= 2 crossings cross two four-cycles")
    return "no drawing with <= 2 crossings has two four-cycles crossing each other"


def _cycle_through(pl, cycle: Cycle) -> Cycle | None:
    """The closed walk of an original cycle in the planarization.

    ``None`` when the cycle crosses itself, so the walk is not simple.
    """
    walk: list[int] = []
    vs = cycle.vertices
    for t in range(len(vs)):
        u, v = vs[t], vs[(t + 1) % len(vs)]
        chain = pl.chains[(min(u, v), max(u, v))]
        if chain[0] != u:
            chain = chain[::-1]
        walk.extend(chain[:-1])
    if len(set(walk)) != len(walk):
        return None
    return Cycle.of(walk)


def _crossings_alternate(pl, emb: Embedding) -> bool:
    """At every dummy vertex the two crossing edges interleave."""
    n = pl.original_n
    nbr_edge: dict[tuple[int, int], Edge] = {}
    for e, chain in pl.chains.items():
        for a, b in zip(chain, chain[1:]):
            nbr_edge[(a, b)] = nbr_edge[(b, a)] = e
    for x in range(n, pl.graph.n):
        rot = emb.rotation[x]
        if len(rot) != 4:
            return False
        owners = [nbr_edge[(x, y)] for y in rot]
        if owners[0] != owners[2] or owners[1] != owners[3] or owners[0] == owners[1]:
            return False
    return True


def audit_square_separation(g12: Graph) -> str:
    squares = _squares(g12)
    sq_edges = [frozenset(c.edges()) for c in squares]
    owner = {e: i for i, es in enumerate(sq_edges) for e in es}
    found = enumerate_realizable(g12, 2)
    _check(bool(found), "no drawing with <= 2 crossings exists")
    for cert, emb in found:
        for p in cert.crossings:
            a, b = owner.get(p.e1), owner.get(p.e2)
            _check(a is None or b is None or a == b, f"four-cycles cross in {cert.crossings}")
        pl = planarization(g12, cert)
        _check(_crossings_alternate(pl, emb), "a dummy vertex is a touching, not a crossing")
        separated = False
        for i, c in enumerate(squares):
            j, k = (x for x in range(3) if x != i)
            walk = _cycle_through(pl, c)
            if walk is not None and cycle_separates(emb, walk, squares[j].vertices, squares[k].vertices):
                separated = True
                break
        _check(separated, f"no four-cycle separates the others in {cert.crossings}")
    return f"{len(found)} drawings with <= 2 crossings: none crosses two four-cycles, each has a separating four-cycle"


def audit_upper_bound(p4: Graph, seed: int, budget: float) -> str:
    cert = upper_bound_heuristic(p4, seed=seed, target=6)
    rep = verify_certificate(p4, cert)
    _check(rep.count <= 6, f"heuristic found {rep.count} crossings")
    res = cr_decide(p4, 6, budget, options=SearchOptions(seed=seed))
    if res.status == TIMEOUT:
        raise _Timeout(f"cr_decide(P4, 6) timed out with bracket [{res.lower}, {res.upper}]")
    _check(res.status == SAT, f"cr_decide(P4, 6) returned {res.status}")
    verify_certificate(p4, res.certificate)
    return f"verified drawing of P4 with {rep.count} crossings; cr_decide(P4, 6) SAT"


def hexagon_pair_classifier(decomp: PancakeDecomposition) -> Callable[[list[tuple[Edge, Edge]]], str]:
    """Label a crossing set by how many pairs of six-cycles cross each other."""
    owner = {e: i for i, es in enumerate(decomp.cycle_edges) for e in es}

    def classify(pairs):
        hit = set()
        for e, f in pairs:
            a, b = owner.get(e), owner.get(f)
            if a is not None and b is not None and a != b:
                hit.add((min(a, b), max(a, b)))
        return f"{min(len(hit), 2)}{'+' if len(hit) >= 2 else ''}-pairs"

    return classify


def audit_refute_five(p4: Graph, decomp: PancakeDecomposition, budget: float, seed: int) -> str:
    res = cr_decide(
        p4, 5, budget,
        options=SearchOptions(seed=seed, symmetry=True),
        classifier=hexagon_pair_classifier(decomp),
    )
    tallies = res.stats.get("pruned_by_class", {})
    tally = " ".join(f"{k}={v}" for k, v in sorted(tallies.items())) or "none"
    _check(res.status != SAT, "cr_decide(P4, 5) returned SAT")
    if res.status == TIMEOUT:
        raise _Timeout(
            f"cr_decide(P4, 5) timed out; proven bracket [{res.lower}, {res.upper}]; nodes {res.nodes}; pruned by class: {tally}"
        )
    return f"cr_decide(P4, 5) UNSAT after {res.nodes} nodes; pruned by class: {tally}"


class _Timeout(Exception):
    pass


# -- orchestration -------------------------------------------------------------


def paper_verify(
    level: str = "fast",
    budget: float | None = 300.0,
    seed: int = 0,
    *,
    g12: Graph | None = None,
) -> AuditReport:
    """Run audits (a)-(h), plus (i) at level ``full``, in order.

    ``g12`` replaces the reference gadget (used to check that a corrupted
    gadget is caught). Any exception inside an audit is a failure of that
    audit; later audits still run when their inputs are available.
    """
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    if level == "full" and budget is None:
        raise ValueError("level full needs an explicit budget")
    g12 = g12 if g12 is not None else g12_reference()
    p4 = pancake_graph(4)
    report = AuditReport(level, seed)
    state: dict = {}

    def run(aid: str, anchor: str, fn: Callable[[], str]) -> None:
        try:
            out = fn()
            if isinstance(out, tuple):
                out, state[aid] = out
            report.results.append(AuditResult(aid, anchor, PASS, out))
        except _Timeout as exc:
            report.results.append(AuditResult(aid, anchor, TIMEOUT.lower(), str(exc)))
        except (_Fail, CrossnumError, ValueError, AssertionError) as exc:
            report.results.append(AuditResult(aid, anchor, FAIL, str(exc) or type(exc).__name__))

    def decomp() -> PancakeDecomposition:
        if "b" not in state:
            raise _Fail("hexagon decomposition unavailable")
        return state["b"]

    run("a", "pancake graph construction", audit_pancake_construction)
    run("b", "four disjoint six-cycles in P4", lambda: audit_hexagon_census(p4))
    run("c", "P4 minus a six-cycle is homeomorphic to G12", lambda: audit_homeomorphism(decomp(), g12))
    run("d", "arc vertices reach the two other six-cycles", lambda: audit_observation(decomp()))
    run("e", "G12 face-count bound: skewness >= 2", lambda: audit_face_count_bound(g12))
    run("f", "G12: crossing four-cycles force >= 3 crossings", lambda: audit_square_crossing(g12))
    run("g", "G12: 2-crossing drawings have a separating four-cycle", lambda: audit_square_separation(g12))
    run("h", "P4 has a drawing with 6 crossings", lambda: audit_upper_bound(p4, seed, budget))
    if level == "full":
        run("i", "P4 has no drawing with 5 crossings", lambda: audit_refute_five(p4, decomp(), budget, seed))
    return report
