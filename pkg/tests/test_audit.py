from __future__ import annotations

import pytest

from crossnum.audit import AuditReport, AuditResult, hexagon_pair_classifier, paper_verify
from crossnum.graph import Graph
from crossnum.pancake import decompose, g12_edges, pancake_graph


@pytest.fixture(scope="module")
def fast_report():
    return paper_verify("fast", budget=120.0, seed=0)


def test_fast_level_passes(fast_report):
    assert [r.id for r in fast_report.results] == list("abcdefgh")
    assert fast_report.ok, fast_report.render()
    assert fast_report.status == "pass"


def test_machine_lines(fast_report):
    lines = fast_report.machine().splitlines()
    assert len(lines) == 8
    assert all(line.startswith(f"audit {c} pass ") for line, c in zip(lines, "abcdefgh"))
    assert fast_report.render().startswith(fast_report.machine() + "\n")
    assert fast_report.text().rstrip().endswith("all audits passed")


def test_corrupted_gadget_fails_homeomorphism():
    links = ((2, 8), (4, 5), (1, 9), (3, 11), (6, 10), (7, 12))
    report = paper_verify("fast", budget=120.0, g12=Graph(12, g12_edges(links)))
    by_id = {r.id: r for r in report.results}
    assert by_id["c"].status == "fail"
    assert by_id["a"].status == by_id["b"].status == by_id["d"].status == "pass"
    assert report.status == "fail"
    assert "(c)" in report.text()


def test_full_needs_budget():
    with pytest.raises(ValueError):
        paper_verify("full", budget=None)
    with pytest.raises(ValueError):
        paper_verify("medium")


def test_report_status():
    rep = AuditReport("fast", 0, [AuditResult("a", "x", "pass", "ok"), AuditResult("b", "y", "timeout", "t")])
    assert not rep.ok and rep.status == "timeout"
    rep.results.append(AuditResult("c", "z", "fail", "bad"))
    assert rep.status == "fail"
    assert [r.id for r in rep.failing()] == ["b", "c"]


def test_classifier():
    d = decompose(pancake_graph(4))
    classify = hexagon_pair_classifier(d)
    c = [sorted(es) for es in d.cycle_edges]
    link = sorted(d.edges_between(0, 1))[0]
    assert classify([]) == "0-pairs"
    assert classify([(c[0][0], link)]) == "0-pairs"
    assert classify([(c[0][0], c[1][0])]) == "1-pairs"
    assert classify([(c[0][0], c[1][0]), (c[1][1], c[0][2])]) == "1-pairs"
    assert classify([(c[0][0], c[1][0]), (c[2][0], c[3][0])]) == "2+-pairs"
