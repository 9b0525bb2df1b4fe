"""Reader and writer for the line-oriented ``.gr`` graph format.

::

    c optional comment
    p <n> <m>
    e <u> <v>        (m lines, 0 <= u < v < n, sorted)
    l <v> <label>    (optional)

Writers emit exactly this layout; readers reject anything else.
"""

from __future__ import annotations

from pathlib import Path

from .errors import FormatError
from .graph import Graph


def format_graph(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {row}" for row in comment.splitlines())
    lines.append(f"p {g.n} {g.m}")
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    lines.extend(f"l {v} {s}" for v, s in sorted(g.labels.items()))
    return "\n".join(lines) + "\n"


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"expected an integer, got {tok!r}", lineno) from None


def parse_graph(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    labels: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "c":
            continue
        if tag == "p":
            if n is not None:
                raise FormatError("second header line", lineno)
            if len(parts) != 3:
                raise FormatError("header must be 'p <n> <m>'", lineno)
            n, m = _int(parts[1], lineno), _int(parts[2], lineno)
            if n < 0 or m < 0:
                raise FormatError("negative size in header", lineno)
        elif tag == "e":
            if n is None:
                raise FormatError("edge before header", lineno)
            if len(parts) != 3:
                raise FormatError("edge must be 'e <u> <v>'", lineno)
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            if not 0 <= u < v < n:
                raise FormatError(f"edge ({u}, {v}) violates 0 <= u < v < n", lineno)
            if (u, v) in seen:
                raise FormatError(f"duplicate edge ({u}, {v})", lineno)
            if edges and (u, v) < edges[-1]:
                raise FormatError(f"edge ({u}, {v}) out of sorted order", lineno)
            seen.add((u, v))
            edges.append((u, v))
        elif tag == "l":
            if n is None:
                raise FormatError("label before header", lineno)
            bits = line.split(None, 2)
            if len(bits) != 3:
                raise FormatError("label must be 'l <v> <label>'", lineno)
            v = _int(bits[1], lineno)
            if not 0 <= v < n:
                raise FormatError(f"label vertex {v} out of range", lineno)
            if v in labels:
                raise FormatError(f"second label for vertex {v}", lineno)
            labels[v] = bits[2]
        else:
            raise FormatError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise FormatError("missing 'p <n> <m>' header")
    if len(edges) != m:
        raise FormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges, labels)


def read_graph(path: str | Path) -> Graph:
    return parse_graph(Path(path).read_text())


def write_graph(g: Graph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_graph(g, comment))
