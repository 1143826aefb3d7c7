"""
Graph file formats: graph6 (via networkx's codec) and plain edge lists.

Edge-list format:
    n m
    u v      (m lines, 0-based ids)
Blank lines and '#' comments are ignored. Self-loops are rejected.
"""

import networkx as nx

from utils.errors import GraphInputError
from utils.graph import Graph

GRAPH6_HEADER = ">>graph6<<"


def write_graph6(g: Graph) -> str:
    """graph6 without the >>graph6<< header."""
    data = nx.to_graph6_bytes(g.to_networkx(), nodes=list(g.vertices()), header=False)
    return data.decode("ascii").strip()


def parse_graph6(text: str, name: str = "") -> Graph:
    """One graph6 string, header optional."""
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise GraphInputError("empty graph6 string")
    bad = [c for c in s if not 63 <= ord(c) <= 126]
    if bad:
        raise GraphInputError(f"graph6 string contains characters outside 63..126: {bad[:5]!r}")
    if s[0] == "~" and len(s) < 4:
        raise GraphInputError("graph6 header announces a long order but is truncated")
    try:
        G = nx.from_graph6_bytes(s.encode("ascii"))
    except (nx.NetworkXError, ValueError, IndexError) as exc:
        raise GraphInputError(f"malformed graph6 {s!r}: {exc}") from exc
    return Graph(G.number_of_nodes(), G.edges(), name=name)


def parse_graph6_lines(text: str) -> list[Graph]:
    """Every non-blank line of a graph6 stream."""
    return [parse_graph6(line) for line in text.splitlines() if line.strip()]


def _content_lines(text: str) -> list[tuple[int, str]]:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    return lines


def _ints(lineno: int, line: str, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise GraphInputError(f"line {lineno}: expected {count} integers, got {line!r}")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise GraphInputError(f"line {lineno}: {exc}") from exc


def parse_edge_list(text: str, name: str = "") -> Graph:
    """Edge-list text: an 'n m' header line, then m lines 'u v'."""
    lines = _content_lines(text)
    if not lines:
        raise GraphInputError("edge list is empty")
    lineno, header = lines[0]
    n, m = _ints(lineno, header, 2)
    if n < 0 or m < 0:
        raise GraphInputError(f"line {lineno}: negative counts in header {header!r}")
    body = lines[1:]
    if len(body) != m:
        raise GraphInputError(f"header announces {m} edges, found {len(body)}")
    edges = []
    for lineno, line in body:
        u, v = _ints(lineno, line, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"line {lineno}: edge {(u, v)} outside 0..{n - 1}")
        if u == v:
            raise GraphInputError(f"line {lineno}: self-loop {(u, v)}")
        edges.append((u, v))
    return Graph(n, edges, name=name)


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.size}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def looks_like_edge_list(text: str) -> bool:
    lines = _content_lines(text)
    if not lines:
        return False
    parts = lines[0][1].split()
    return len(parts) == 2 and all(p.lstrip("-").isdigit() for p in parts)
