"""Command-line front end: ``crossnum <subcommand> ...``.

Exit codes: 0 decided or passed, 1 invalid input, 2 timeout or undecided,
3 audit failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .audit import paper_verify
from .bounds import skewness_exact
from .crossing.certificate import (
    EdgeClassPartition,
    account,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from .crossing.search import SearchOptions, cr_exact
from .errors import CertificateError, CrossnumError, FormatError, InvalidInputError
from .graph import Edge, Graph, complete_bipartite, complete_graph, cycle_graph, edge_key, petersen_graph
from .grformat import format_graph, read_graph
from .pancake import decompose, g12_reference, pancake_graph
from .planarity import is_planar, kuratowski_witness

EXIT_OK, EXIT_INPUT, EXIT_UNDECIDED, EXIT_AUDIT = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Report usage errors as invalid input (exit 1) instead of exit 2."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _positive(text: str) -> float:
    value = float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="crossnum", description="Exact crossing numbers of small graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="write a generated graph in .gr format")
    gen.add_argument("family", choices=["pancake", "complete", "bipartite", "cycle", "g12", "petersen"])
    gen.add_argument("params", nargs="*", type=int)
    gen.add_argument("-o", "--out", type=Path, help="output file (default stdout)")

    pl = sub.add_parser("planar", help="test planarity")
    pl.add_argument("file", type=Path)
    pl.add_argument("--witness", action="store_true", help="print a Kuratowski subdivision")

    sk = sub.add_parser("skewness", help="fewest edge deletions to planarity")
    sk.add_argument("file", type=Path)
    sk.add_argument("--max-k", type=_non_negative, default=8)
    sk.add_argument("--budget", type=_positive, default=60.0)

    cr = sub.add_parser("cr", help="exact crossing number")
    cr.add_argument("file", type=Path)
    cr.add_argument("--max-k", type=_non_negative, default=8)
    cr.add_argument("--budget", type=_positive, default=60.0)
    cr.add_argument("--cert", type=Path, help="write the witness drawing here")
    cr.add_argument("--seed", type=int, default=0)

    ve = sub.add_parser("verify", help="check a drawing certificate")
    ve.add_argument("file", type=Path)
    ve.add_argument("--cert", type=Path, required=True)

    ac = sub.add_parser("account", help="crossings within and between edge classes")
    ac.add_argument("file", type=Path)
    ac.add_argument("--cert", type=Path, required=True)
    ac.add_argument(
        "--classes",
        required=True,
        help="comma-separated NAME=u-v/u-v/... lists or P4 presets E1..E4, E12..E34, Ep1..Ep4, Ec1..Ec4",
    )

    pv = sub.add_parser("paper-verify", help="run the P4 crossing-number audits")
    pv.add_argument("--level", choices=["fast", "full"], default="fast")
    pv.add_argument("--budget", type=_positive, default=None, help="seconds (fast default 300)")
    pv.add_argument("--seed", type=int, default=0)
    return p


def _generate(family: str, params: list[int]) -> Graph:
    arity = {"pancake": 1, "complete": 1, "bipartite": 2, "cycle": 1, "g12": 0, "petersen": 0}[family]
    if len(params) != arity:
        raise InvalidInputError(f"gen {family} takes {arity} integer parameter(s), got {len(params)}")
    if family == "pancake":
        return pancake_graph(params[0])
    if family == "complete":
        return complete_graph(params[0])
    if family == "bipartite":
        return complete_bipartite(*params)
    if family == "cycle":
        return cycle_graph(params[0])
    if family == "g12":
        return g12_reference()
    return petersen_graph()


def _read_graph(path: Path) -> Graph:
    try:
        return read_graph(path)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def _parse_edge(token: str) -> Edge:
    try:
        u, v = (int(x) for x in token.split("-"))
    except ValueError:
        raise InvalidInputError(f"bad edge {token!r}, expected u-v") from None
    return edge_key(u, v)


def parse_classes(text: str, g: Graph) -> EdgeClassPartition:
    """Resolve a ``--classes`` value against graph ``g``."""
    presets = None
    classes: dict[str, list[Edge]] = {}
    for item in (s.strip() for s in text.split(",")):
        if not item:
            raise InvalidInputError("empty class in --classes")
        if "=" in item:
            name, body = item.split("=", 1)
            edges = [_parse_edge(t) for t in body.split("/") if t]
            for e in edges:
                if not g.has_edge(*e):
                    raise InvalidInputError(f"class {name}: {e[0]}-{e[1]} is not an edge")
        else:
            if presets is None:
                presets = decompose(g).presets()
            if item not in presets:
                raise InvalidInputError(f"unknown preset {item!r}")
            name, edges = item, sorted(presets[item])
        if name in classes:
            raise InvalidInputError(f"class {name} given twice")
        classes[name] = edges
    return EdgeClassPartition(classes)


def _cmd_gen(args, out) -> int:
    g = _generate(args.family, args.params)
    text = format_graph(g, comment=f"{args.family} {' '.join(map(str, args.params))}".strip())
    if args.out:
        args.out.write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_planar(args, out) -> int:
    g = _read_graph(args.file)
    if is_planar(g):
        out.write("planar\n")
        return EXIT_OK
    out.write("nonplanar\n")
    if args.witness:
        w = kuratowski_witness(g)
        out.write(f"witness {w.kind}\n")
        out.write("branch " + " ".join(map(str, sorted(w.branch_vertices))) + "\n")
        for u, v in w.edges:
            out.write(f"e {u} {v}\n")
    return EXIT_OK


def _cmd_skewness(args, out) -> int:
    g = _read_graph(args.file)
    res = skewness_exact(g, args.max_k, args.budget)
    if res.status == "exact":
        out.write(f"skewness {res.value}\n")
        if res.deleted:
            out.write("delete " + " ".join(f"{u}-{v}" for u, v in res.deleted) + "\n")
        return EXIT_OK
    if res.status == "above":
        out.write(f"skewness > {args.max_k}\n")
    else:
        out.write(f"timeout: skewness >= {res.lower}\n")
    return EXIT_UNDECIDED


def _cmd_cr(args, out) -> int:
    g = _read_graph(args.file)
    res = cr_exact(g, args.max_k, args.budget, options=SearchOptions(seed=args.seed))
    if args.cert and res.certificate is not None:
        write_certificate(res.certificate, args.cert)
    if res.status == "exact":
        out.write(f"{res.value}\n")
        return EXIT_OK
    upper = "?" if res.upper is None else res.upper
    if res.status == "above":
        out.write(f"cr > {args.max_k}; bracket [{res.lower}, {upper}]\n")
    else:
        out.write(f"timeout; bracket [{res.lower}, {upper}]\n")
    return EXIT_UNDECIDED


def _cmd_verify(args, out) -> int:
    g = _read_graph(args.file)
    cert = read_certificate(args.cert)
    rep = verify_certificate(g, cert)
    out.write("valid\n" + rep.summary() + "\n")
    return EXIT_OK


def _cmd_account(args, out) -> int:
    g = _read_graph(args.file)
    cert = read_certificate(args.cert)
    verify_certificate(g, cert)
    table = account(cert, parse_classes(args.classes, g))
    out.write(f"total = {cert.count}\n")
    for line in table.lines():
        out.write(line + "\n")
    return EXIT_OK


def _cmd_paper_verify(args, out) -> int:
    budget = args.budget
    if budget is None:
        if args.level == "full":
            raise InvalidInputError("--level full needs an explicit --budget")
        budget = 300.0
    report = paper_verify(args.level, budget, args.seed)
    out.write(report.render())
    if report.ok:
        return EXIT_OK
    return EXIT_AUDIT if report.status == "fail" else EXIT_UNDECIDED


COMMANDS = {
    "gen": _cmd_gen,
    "planar": _cmd_planar,
    "skewness": _cmd_skewness,
    "cr": _cmd_cr,
    "verify": _cmd_verify,
    "account": _cmd_account,
    "paper-verify": _cmd_paper_verify,
}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except _UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except CertificateError as exc:
        err.write("invalid certificate:\n")
        for code, detail in exc.violations:
            err.write(f"  {code}: {detail}\n")
        return EXIT_INPUT
    except (CrossnumError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
