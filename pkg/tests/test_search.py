from __future__ import annotations

import itertools
import random
from collections import Counter

import networkx as nx
import pytest

from crossnum.crossing.certificate import planarize, verify_certificate
from crossnum.crossing.search import (
    SAT,
    TIMEOUT,
    UNSAT,
    Constraints,
    SearchOptions,
    cr_decide,
    cr_decide_naive,
    cr_exact,
    enumerate_realizable,
    independent_pairs,
    iter_configurations,
    packing_count,
    planarizing_edges,
    raw_configuration_count,
)
from crossnum.bounds import SubgraphEulerBound, euler_bound, kuratowski_packing
from crossnum.crossing.certificate import chain_edges
from crossnum.planarity import planar_edges
from crossnum.errors import InvalidInputError, SearchTooLargeError
from crossnum.graph import Graph, complete_bipartite, complete_graph, cycle_graph, disjoint_union, petersen_graph
from crossnum.pancake import g12_reference, pancake_graph
from crossnum.planarity import is_planar
from oracles import random_graph, random_graphs

OFF = dict(heuristic=False, euler=False, packing=False, last_crossing=False)
CONFIGS = {
    "unpruned": SearchOptions(**OFF),
    "euler": SearchOptions(**{**OFF, "euler": True}),
    "packing": SearchOptions(**{**OFF, "packing": True}),
    "last-crossing": SearchOptions(**{**OFF, "last_crossing": True}),
    "symmetry": SearchOptions(**{**OFF, "symmetry": True}),
    "all": SearchOptions(heuristic=False, symmetry=True),
    "default": SearchOptions(),
}


def small_nonplanar(seed: int, count: int, max_m: int = 14) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(5, 8)
        g = random_graph(rng, n, rng.randint(9, max_m))
        if not is_planar(g):
            out.append(g)
    return out


NAMED = {
    "K5": complete_graph(5),
    "K33": complete_bipartite(3, 3),
    "K34": complete_bipartite(3, 4),
    "K6": complete_graph(6),
    "petersen": petersen_graph(),
    "G12": g12_reference(),
    "K5+K33": disjoint_union(complete_graph(5), complete_bipartite(3, 3)),
}


class TestAgainstNaive:
    @pytest.mark.parametrize("name", list(CONFIGS))
    def test_random_small_graphs(self, name):
        opts = CONFIGS[name]
        for g in small_nonplanar(41, 60) + random_graphs(42, 40, max_m=14):
            for k in (0, 1, 2):
                naive = cr_decide_naive(g, k) is not None
                res = cr_decide(g, k, options=opts)
                assert (res.status == SAT) == naive, (name, g.edges, k)
                if res.status == SAT:
                    assert verify_certificate(g, res.certificate).count <= k

    @pytest.mark.parametrize("name", list(CONFIGS))
    @pytest.mark.parametrize("graph", ["K5", "K33", "K34", "K6", "petersen", "G12"])
    def test_named_graphs(self, name, graph):
        g = NAMED[graph]
        for k in (1, 2):
            naive = cr_decide_naive(g, k) is not None
            assert (cr_decide(g, k, options=CONFIGS[name]).status == SAT) == naive

    def test_k6_at_three(self):
        g = complete_graph(6)
        assert cr_decide_naive(g, 3) is not None
        for opts in CONFIGS.values():
            assert cr_decide(g, 3, options=opts).status == SAT

    def test_denser_graphs_at_two(self):
        # 15-18 edges on 6-7 vertices: k = 2 is often refutable, so UNSAT answers get checked too
        rng = random.Random(43)
        seen = Counter()
        for _ in range(25):
            g = random_graph(rng, rng.randint(6, 7), rng.randint(15, 18))
            naive = cr_decide_naive(g, 2) is not None
            seen[naive] += 1
            for opts in (CONFIGS["unpruned"], CONFIGS["all"]):
                assert (cr_decide(g, 2, options=opts).status == SAT) == naive
        assert seen[False] > 0 and seen[True] > 0

    def test_each_rule_fires(self):
        fired = Counter()
        pairs = [NAMED["K5+K33"], disjoint_union(complete_graph(5), complete_graph(5))]
        for g in small_nonplanar(44, 40, max_m=14) + [NAMED["K6"], NAMED["petersen"], NAMED["K34"]] + pairs:
            for rule in ("euler", "packing", "last-crossing"):
                opts = CONFIGS[rule]
                for k in (1, 2, 3):
                    res = cr_decide(g, k, options=opts)
                    fired[rule] += sum(v for key, v in res.stats.get("pruned", {}).items() if key != "budget")
                    fired[rule] += res.stats.get("refuted_by") == "lower bound"
        assert all(fired[r] > 0 for r in ("euler", "packing", "last-crossing")), fired


def _sub_states(g: Graph, cert):
    """Every partial state on the way to ``cert``: a subset of its crossings
    with the orders it induces, as (ids, crossed edges, planarization, seg)."""
    edges = list(g.edges)
    full = cert.edge_orders()
    for r in range(cert.count + 1):
        for ids in itertools.combinations(range(cert.count), r):
            compact = {c: q for q, c in enumerate(ids)}
            orders = [[compact[c] for c in full.get(e, ()) if c in compact] for e in edges]
            pe, seg = chain_edges(g.n, edges, orders)
            crossed = {e for c in ids for e in (cert.crossings[c].e1, cert.crossings[c].e2)}
            yield ids, crossed, pe, seg


def _drawings(seed: int):
    """Optimal drawings of some small graphs (one crossing more for the tiny ones)."""
    graphs = [g for g in small_nonplanar(seed, 12, max_m=14)]
    graphs += [NAMED["K5"], NAMED["K33"], NAMED["K34"], NAMED["K5+K33"]]
    for g in graphs:
        k = next(k for k in range(4) if cr_decide_naive(g, k) is not None)
        for cert, _ in enumerate_realizable(g, k + (len(g.edges) <= 10)):
            yield g, cert


class TestPruningRules:
    """Each rule, applied to any partial state of a real drawing, must not cut it.

    Inside the search the Euler and packing rules rarely fire on graphs this
    small, so agreement with the unpruned search alone would say little about
    them; here the rule predicates are checked directly on every partial state
    of every drawing the plain enumerator finds.
    """

    def test_rules_never_cut_a_drawing(self):
        checked = Counter()
        for g, cert in _drawings(49):
            euler = SubgraphEulerBound(g)
            edges = list(g.edges)
            full = cert.edge_orders()
            for ids, crossed, pe, seg in _sub_states(g, cert):
                left = cert.count - len(ids)
                N = g.n + len(ids)
                bound = euler(crossed)
                assert bound <= left
                checked["euler>0"] += bound > 0
                pack = packing_count(N, pe, left + 1)
                assert pack <= left, (g.edges, cert, ids)
                checked["packing>0"] += pack > 0
                if left == 1 and not planar_edges(N, pe):
                    (last,) = set(range(cert.count)) - set(ids)
                    p = cert.crossings[last]
                    ok = set(planarizing_edges(N, pe, pe))
                    for e in (p.e1, p.e2):
                        i = edges.index(e)
                        a = sum(1 for c in full[e][: full[e].index(last)] if c in ids)
                        (segment,) = [pe[q] for q in range(len(pe)) if seg[q] == (i, a)]
                        assert segment in ok
                    checked["last"] += 1
        assert checked["euler>0"] and checked["packing>0"] and checked["last"], checked

    def test_packing_on_disjoint_pair(self):
        g = NAMED["K5+K33"]
        assert packing_count(g.n, list(g.edges), 5) == 2
        assert packing_count(g.n, list(g.edges), 1) == 1


class TestConstraints:
    def test_against_naive(self):
        rng = random.Random(45)
        for g in small_nonplanar(46, 30) + [NAMED["K6"], NAMED["G12"]]:
            edges = list(g.edges)
            rng.shuffle(edges)
            cut = len(edges) // 2
            classes = {"A": frozenset(edges[:cut]), "B": frozenset(edges[cut:])}
            for cons in (
                Constraints(classes, forbid=(("A", "B"),)),
                Constraints(classes, require=((("A", "B"),),)),
                Constraints(classes, forbid=(("A", "A"),), require=((("B", "B"), ("A", "B")),)),
            ):
                for k in (1, 2):
                    naive = cr_decide_naive(g, k, cons)
                    res = cr_decide(g, k, constraints=cons, options=SearchOptions(heuristic=False))
                    assert (res.status == SAT) == (naive is not None)
                    if naive is not None:
                        pairs = [(p.e1, p.e2) for p in naive.crossings]
                        assert cons.satisfied(pairs)
                    if res.status == SAT:
                        pairs = [(p.e1, p.e2) for p in res.certificate.crossings]
                        assert cons.satisfied(pairs)

    def test_require_on_planar_graph(self):
        g = cycle_graph(4)
        cons = Constraints({"A": frozenset([(0, 1)]), "B": frozenset([(2, 3)])}, require=((("A", "B"),),))
        res = cr_decide(g, 1, constraints=cons)
        assert res.status == SAT and res.certificate.count == 1

    def test_unknown_class(self):
        with pytest.raises(InvalidInputError):
            Constraints({"A": frozenset()}, forbid=(("A", "Z"),))


class TestDecide:
    @pytest.mark.parametrize("g, k, status", [
        (complete_graph(5), 0, UNSAT),
        (complete_graph(5), 1, SAT),
        (g12_reference(), 1, UNSAT),
        (g12_reference(), 2, SAT),
        (cycle_graph(5), 0, SAT),
    ])
    def test_examples(self, g, k, status):
        res = cr_decide(g, k)
        assert res.status == status
        if status == SAT:
            assert verify_certificate(g, res.certificate).count <= k

    def test_negative_k(self):
        with pytest.raises(InvalidInputError):
            cr_decide(complete_graph(5), -1)

    def test_monotone(self):
        for g in small_nonplanar(47, 30):
            answers = [cr_decide(g, k, options=CONFIGS["all"]).status == SAT for k in range(4)]
            assert answers == sorted(answers)

    def test_timeout_bracket_is_sound(self):
        g = pancake_graph(4)
        res = cr_decide(g, 5, budget=3.0)
        assert res.status == TIMEOUT
        assert res.lower >= max(euler_bound(g), kuratowski_packing(g)) == 5
        # the upper end is whatever the heuristic reached in its share of the budget
        assert res.upper >= 6
        assert res.certificate is None
        assert verify_certificate(g, res.upper_witness).count == res.upper

    def test_classifier_tallies(self):
        g = complete_graph(6)
        res = cr_decide(g, 3, options=SearchOptions(heuristic=False, euler=False), classifier=lambda pairs: f"{len(pairs)}")
        assert res.status == SAT
        assert sum(res.stats["pruned_by_class"].values()) == sum(res.stats["pruned"].values())


class TestExact:
    @pytest.mark.parametrize("g, value", [
        (complete_graph(5), 1),
        (complete_bipartite(3, 3), 1),
        (complete_graph(6), 3),
        (petersen_graph(), 2),
        (g12_reference(), 2),
        (complete_bipartite(3, 4), 2),
        (cycle_graph(6), 0),
    ])
    def test_values(self, g, value):
        for opts in (SearchOptions(), SearchOptions(heuristic=False)):
            res = cr_exact(g, 5, options=opts)
            assert res.status == "exact" and res.value == value
            assert verify_certificate(g, res.certificate).count == value

    def test_above(self):
        res = cr_exact(complete_graph(6), 2, options=SearchOptions(heuristic=False))
        assert res.status == "above" and res.lower == 3

    def test_timeout(self):
        res = cr_exact(pancake_graph(4), 6, budget=2.0)
        assert res.status == "timeout"
        assert res.lower >= 5 and res.upper >= 6
        assert verify_certificate(pancake_graph(4), res.certificate).count == res.upper

    def test_heuristic_never_below_exact(self):
        from crossnum.crossing.heuristic import upper_bound_heuristic
        for g in list(NAMED.values()) + small_nonplanar(48, 20):
            exact = cr_exact(g, 5, options=SearchOptions(heuristic=False))
            assert exact.status == "exact"
            assert upper_bound_heuristic(g, tries=2, seed=1).count >= exact.value


class TestEnumeration:
    def test_cycle(self):
        found = enumerate_realizable(cycle_graph(6), 0)
        assert len(found) == 1 and found[0][0].count == 0

    def test_g12_at_one_is_empty(self):
        assert enumerate_realizable(g12_reference(), 1) == []

    def test_g12_at_two(self):
        g = g12_reference()
        found = enumerate_realizable(g, 2)
        assert found and all(c.count == 2 for c, _ in found)
        for cert, emb in found:
            verify_certificate(g, cert)
            assert emb.graph == planarize(g, cert)
            assert emb.euler_ok()
        # same set as filtering every configuration with an outside planarity test
        expected = 0
        for combo, orders in iter_configurations(g, 2):
            edges = list(g.edges)
            G = nx.Graph()
            G.add_nodes_from(range(g.n + len(combo)))
            ids = {e: list(orders.get(e, ())) for e in edges}
            for e in edges:
                chain = [e[0]] + [g.n + c for c in ids[e]] + [e[1]]
                G.add_edges_from(zip(chain, chain[1:]))
            expected += nx.check_planarity(G)[0]
        assert expected == len(found)

    def test_ceiling(self):
        g = pancake_graph(4)
        with pytest.raises(SearchTooLargeError):
            enumerate_realizable(g, 3)
        assert raw_configuration_count(g, 1) == 1 + len(independent_pairs(g))

    def test_pairs_are_independent(self):
        g = petersen_graph()
        pairs = independent_pairs(g)
        assert len(pairs) == 15 * 14 // 2 - 10 * 3
        assert all(not set(e) & set(f) for e, f in pairs)

    def test_orders_enumerated(self):
        # a path crossed twice by disjoint edges gives two orders
        g = Graph(6, [(0, 1), (2, 3), (4, 5)])
        configs = [c for c in iter_configurations(g, 2) if len(c[0]) == 2]
        by_set = Counter(tuple(c[0]) for c in configs)
        assert all(v == 2 for v in by_set.values())
        assert len(by_set) == len(list(itertools.combinations(independent_pairs(g), 2)))
