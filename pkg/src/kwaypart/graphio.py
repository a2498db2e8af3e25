"""Readers and writers for the METIS-style graph format and the partition,
separator, and clustering files. Output is deterministic byte-for-byte.
"""
from __future__ import annotations

import io

import numpy as np

from .errors import LengthError, ParseError, RangeError, StructuralError
from .graph import Graph, build_graph, validate_arrays

__all__ = [
    "parse_graph",
    "parse_graph_raw",
    "check_graph_text",
    "write_graph",
    "write_partition",
    "read_partition",
    "write_separator",
    "write_clustering",
]

_INT_LIMIT = 2 ** 63 - 1


def _to_int(token, lineno):
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"malformed token {token!r}", lineno) from None
    if abs(value) > _INT_LIMIT:
        raise ParseError(f"integer {token} exceeds the platform limit", lineno)
    return value


def _data_lines(stream):
    """Yield (lineno, tokens) for non-comment lines; comments may be anywhere."""
    for lineno, line in enumerate(stream, start=1):
        if line.lstrip().startswith("%"):
            continue
        yield lineno, line.split()


def _open_text(source):
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def parse_graph_raw(source):
    """Parse without structural validation.

    Returns (declared_n, declared_m, xadj, adjncy, node_weights, edge_weights)
    where the weight arrays are None for unweighted inputs. Raises ParseError
    for malformed tokens only; structural problems are left to validation.
    """
    lines = _data_lines(_open_text(source))
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty graph file") from None
    if len(header) not in (2, 3):
        raise ParseError("header must be 'n m' or 'n m f'", lineno)
    declared_n = _to_int(header[0], lineno)
    declared_m = _to_int(header[1], lineno)
    fmt = _to_int(header[2], lineno) if len(header) == 3 else 0
    if fmt not in (0, 1, 10, 11):
        raise ParseError(f"unknown format code {fmt}", lineno)
    has_vw = fmt >= 10
    has_ew = fmt % 10 == 1
    if declared_n < 0 or declared_m < 0:
        raise ParseError("negative counts in header", lineno)

    xadj = [0]
    adjncy = []
    node_w = [] if has_vw else None
    edge_w = [] if has_ew else None
    rows = 0
    for lineno, tokens in lines:
        if rows >= declared_n and not tokens:
            continue
        if rows >= declared_n:
            raise ParseError("more vertex lines than declared", lineno)
        pos = 0
        if has_vw:
            if not tokens:
                raise ParseError("missing vertex weight", lineno)
            node_w.append(_to_int(tokens[0], lineno))
            pos = 1
        rest = tokens[pos:]
        if has_ew:
            if len(rest) % 2 != 0:
                raise ParseError("odd neighbor/weight token count", lineno)
            for i in range(0, len(rest), 2):
                v = _to_int(rest[i], lineno)
                if not 1 <= v <= declared_n:
                    raise ParseError(f"vertex id {v} out of range", lineno)
                adjncy.append(v - 1)
                edge_w.append(_to_int(rest[i + 1], lineno))
        else:
            for tok in rest:
                v = _to_int(tok, lineno)
                if not 1 <= v <= declared_n:
                    raise ParseError(f"vertex id {v} out of range", lineno)
                adjncy.append(v - 1)
        xadj.append(len(adjncy))
        rows += 1
    if rows < declared_n:
        raise ParseError(f"expected {declared_n} vertex lines, found {rows}")
    return declared_n, declared_m, xadj, adjncy, node_w, edge_w


def parse_graph(source):
    """Parse and fully validate a graph file; 1-indexed vertices become 0-indexed."""
    n, m, xadj, adjncy, node_w, edge_w = parse_graph_raw(source)
    g = build_graph(n, xadj, adjncy, node_w, edge_w)
    if g.m != m:
        raise StructuralError(
            f"edge count mismatch: declared {m} edges, found {g.m}")
    return g


def check_graph_text(source):
    """Every violation in a graph file, as a list of messages (graphchecker)."""
    try:
        n, m, xadj, adjncy, node_w, edge_w = parse_graph_raw(source)
    except ParseError as exc:
        return [str(exc)]
    verdict = validate_arrays(xadj, adjncy, node_w, edge_w,
                              declared_n=n, declared_m=m)
    return verdict.violations


def write_graph(g: Graph, path_or_stream):
    """Render a graph in the input format (inverse of parse_graph)."""
    has_vw = bool(np.any(g.node_weight != 1))
    has_ew = bool(np.any(g.edge_weight != 1))
    fmt = (10 if has_vw else 0) + (1 if has_ew else 0)
    out = [f"{g.n} {g.m} {fmt}" if fmt else f"{g.n} {g.m}"]
    for v in range(g.n):
        parts = []
        if has_vw:
            parts.append(str(int(g.node_weight[v])))
        for j in range(g.xadj[v], g.xadj[v + 1]):
            parts.append(str(int(g.adjncy[j]) + 1))
            if has_ew:
                parts.append(str(int(g.edge_weight[j])))
        out.append(" ".join(parts))
    text = "\n".join(out) + "\n"
    _write_text(path_or_stream, text)


def _write_text(path_or_stream, text):
    if hasattr(path_or_stream, "write"):
        path_or_stream.write(text)
    else:
        with open(path_or_stream, "w") as fh:
            fh.write(text)


def write_partition(p, path=None):
    """One block id per line, line i = block of vertex i."""
    if path is None:
        path = f"tmppartition{p.k}"
    _write_text(path, "".join(f"{int(b)}\n" for b in p.assignment))
    return path


def read_partition(path, n, k):
    """Read a partition file into a validated assignment array."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh.read().splitlines()]
    while lines and not lines[-1]:
        lines.pop()
    if len(lines) != n:
        raise LengthError(f"expected {n} lines, found {len(lines)}")
    values = np.empty(n, dtype=np.int64)
    for i, tok in enumerate(lines):
        v = _to_int(tok, i + 1)
        if not 0 <= v < k:
            raise RangeError(f"block id {v} out of range [0, {k - 1}] "
                             f"on line {i + 1}")
        values[i] = v
    return values


def write_separator(blocks, separator, k, path="tmpseparator"):
    """Partition format with separator nodes written as block id k."""
    sep = set(int(v) for v in separator)
    lines = []
    for v, b in enumerate(blocks.assignment):
        lines.append(f"{k if v in sep else int(b)}\n")
    _write_text(path, "".join(lines))
    return path


def write_clustering(cluster_of, path="tmpclustering"):
    _write_text(path, "".join(f"{int(c)}\n" for c in cluster_of))
    return path
