from __future__ import annotations

import io
import subprocess
import sys

import pytest

from crossnum.cli import parse_classes, run
from crossnum.crossing.certificate import (
    DrawingCertificate,
    HostId,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from crossnum.crossing.heuristic import upper_bound_heuristic
from crossnum.errors import InvalidInputError
from crossnum.graph import complete_graph, cycle_graph
from crossnum.grformat import format_graph, read_graph
from crossnum.pancake import pancake_graph


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def k5(tmp_path):
    path = tmp_path / "k5.gr"
    assert call("gen", "complete", 5, "-o", path)[0] == 0
    return path


def test_gen_round_trip(tmp_path):
    code, text, _ = call("gen", "pancake", 4)
    assert code == 0
    path = tmp_path / "p4.gr"
    path.write_text(text)
    assert read_graph(path) == pancake_graph(4)


@pytest.mark.parametrize("argv", [["gen", "pancake"], ["gen", "bipartite", 3], ["gen", "pancake", 12]])
def test_gen_bad_params(argv):
    code, _, err = call(*argv)
    assert code == 1 and err.startswith("error:")


def test_planar(k5, tmp_path):
    code, out, _ = call("planar", k5, "--witness")
    assert code == 0
    lines = out.splitlines()
    assert lines[:2] == ["nonplanar", "witness K5"]
    assert len([ln for ln in lines if ln.startswith("e ")]) == 10
    c6 = tmp_path / "c6.gr"
    call("gen", "cycle", 6, "-o", c6)
    assert call("planar", c6) == (0, "planar\n", "")


def test_skewness(k5):
    code, out, _ = call("skewness", k5)
    assert code == 0 and out.startswith("skewness 1\ndelete ")


def test_cr_and_verify(k5, tmp_path):
    cert = tmp_path / "k5.crt"
    code, out, _ = call("cr", k5, "--cert", cert)
    assert (code, out) == (0, "1\n")
    assert verify_certificate(complete_graph(5), read_certificate(cert)).count == 1
    code, out, _ = call("verify", k5, "--cert", cert)
    assert code == 0 and out.startswith("valid\n")


def test_cr_above_and_timeout(tmp_path):
    k7 = tmp_path / "k7.gr"
    call("gen", "complete", 7, "-o", k7)
    code, out, _ = call("cr", k7, "--max-k", 2, "--budget", 10)
    assert code == 2 and out.startswith("cr > 2; bracket [6, ")
    # a value above --max-k is still exact once a matching drawing is known
    k6 = tmp_path / "k6.gr"
    call("gen", "complete", 6, "-o", k6)
    assert call("cr", k6, "--max-k", 2)[:2] == (0, "3\n")
    p4 = tmp_path / "p4.gr"
    call("gen", "pancake", 4, "-o", p4)
    code, out, _ = call("cr", p4, "--budget", 2)
    assert code == 2 and out.startswith("timeout; bracket [5, ")


def test_verify_rejects_bad_certificate(k5, tmp_path):
    g = complete_graph(5)
    path = tmp_path / "bad.crt"
    # well formed, but K5 with no crossings is not planar
    write_certificate(DrawingCertificate(HostId.of(g), (), {}), path)
    code, _, err = call("verify", k5, "--cert", path)
    assert code == 1 and err.startswith("invalid certificate:")
    # adjacent edges never cross; rejected while reading, with the line number
    path.write_text(f"h 5 10 {HostId.of(g).checksum}\ncr 1\nx 0 0 1 0 2\n")
    code, _, err = call("verify", k5, "--cert", path)
    assert code == 1 and "line 3" in err


def test_account(tmp_path):
    p4 = tmp_path / "p4.gr"
    cert = tmp_path / "p4.crt"
    call("gen", "pancake", 4, "-o", p4)
    write_certificate(upper_bound_heuristic(pancake_graph(4), target=6), cert)
    code, out, _ = call("account", p4, "--cert", cert, "--classes", "E1,E2,E3,E4,E12,E13,E14,E23,E24,E34")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "total = 6"
    assert not any(ln.startswith("unclassified") and not ln.endswith(" 0") for ln in lines)


def test_parse_classes():
    g = complete_graph(4)
    part = parse_classes("A=0-1/2-3,B=0-2", g)
    assert {k: sorted(v) for k, v in part.classes.items()} == {"A": [(0, 1), (2, 3)], "B": [(0, 2)]}
    for bad in ("A=0-9", "A=x", "A=0-1,A=0-2", "", "E1"):
        with pytest.raises(InvalidInputError):
            parse_classes(bad, g)


def test_format_error_has_line(tmp_path):
    path = tmp_path / "bad.gr"
    path.write_text("p 3 2\ne 0 1\ne 0 7\n")
    code, _, err = call("planar", path)
    assert code == 1
    assert "line 3" in err and str(path) in err


def test_usage_errors_exit_one(k5):
    assert call("cr", k5, "--frobnicate")[0] == 1
    assert call("frobnicate")[0] == 1
    assert call("cr", k5, "--budget", -1)[0] == 1
    assert call("planar", "/nonexistent.gr")[0] == 1


def test_paper_verify_full_needs_budget():
    code, _, err = call("paper-verify", "--level", "full")
    assert code == 1 and "budget" in err


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "crossnum.cli", "gen", "cycle", "3"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == format_graph(cycle_graph(3), comment="cycle 3")
