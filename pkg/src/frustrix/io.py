"""Text formats: graph6 (via networkx) plus a hex signature per line.

A signed line reads ``<graph6> <hex>``. Edges are taken in sorted ``(u, v)``
order and bit ``i`` of the hex value marks edge ``i`` negative. Only simple
graphs fit this format.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import networkx as nx

from .errors import GraphFormatError
from .sgcore import SignatureBits, SignedGraph


def to_networkx(g: SignedGraph) -> nx.Graph:
    if not g.is_simple():
        raise GraphFormatError("graph6 cannot hold parallel edges")
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.underlying_pairs())
    return h


def from_networkx(h: nx.Graph) -> SignedGraph:
    nodes = sorted(h.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    return SignedGraph.from_pairs(len(nodes), [(index[u], index[v]) for u, v in h.edges()])


def to_graph6(g: SignedGraph) -> str:
    return nx.to_graph6_bytes(to_networkx(g), header=False).decode().strip()


def from_graph6(text: str) -> SignedGraph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    try:
        h = nx.from_graph6_bytes(text.encode())
    except Exception as exc:
        raise GraphFormatError(f"bad graph6 {text!r}: {exc}") from exc
    return from_networkx(h)


def format_signed_line(g: SignedGraph) -> str:
    return f"{to_graph6(g)} {g.signature.to_hex()}"


def parse_signed_line(line: str) -> SignedGraph:
    parts = line.split()
    if len(parts) == 1:
        return from_graph6(parts[0])
    if len(parts) != 2:
        raise GraphFormatError(f"expected '<graph6> <hex>', got {line!r}")
    g = from_graph6(parts[0])
    return g.with_signature(SignatureBits.from_hex(parts[1], g.m))


def read_signed_lines(lines: Iterable[str]) -> Iterator:
    """Yield ``(line_number, graph_or_error)``; blank and ``#`` lines skipped."""
    for no, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            yield no, parse_signed_line(text)
        except GraphFormatError as exc:
            yield no, exc


def read_graph6_file(path) -> list:
    with open(path) as fh:
        return [from_graph6(line) for line in fh if line.strip() and not line.startswith("#")]
