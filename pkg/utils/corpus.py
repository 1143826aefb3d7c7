"""
Graph corpus and the unified graph resolver.

The corpus of connected graphs up to a given order comes from the networkx
graph atlas, which lists every graph on at most 7 vertices exactly once up to
isomorphism. Larger corpora must be supplied as a graph6 file.

Graph arguments accept three spellings:
    @path                      graph6 lines (first graph) or an edge list
    family:params              e.g. "friendship:3", "complete_bipartite:3,2",
                               "join(star:3,star:3)", "cartesian(complete:2,complete:4)"
    anything else              a graph6 string
':' and '(' never occur in graph6, so the three cannot be confused.
"""

import logging
from functools import lru_cache
from itertools import combinations_with_replacement
from pathlib import Path

import networkx as nx
import numpy as np

import config
from utils import graph as gc
from utils.errors import GraphInputError
from utils.graph import Graph
from utils.graph_io import looks_like_edge_list, parse_edge_list, parse_graph6, parse_graph6_lines

logger = logging.getLogger("symbreak.corpus")

FAMILIES = {
    "path": (gc.path, 1),
    "cycle": (gc.cycle, 1),
    "complete": (gc.complete, 1),
    "empty": (gc.empty, 1),
    "complete_bipartite": (gc.complete_bipartite, 2),
    "complete_multipartite": (None, None),
    "star": (gc.star, 1),
    "friendship": (gc.friendship, 1),
    "matching": (gc.matching, 1),
    "hypercube": (gc.hypercube, 1),
}
BINARY = {"join", "cartesian"}


# ----------------------------------------------------------------------
# Family specs
# ----------------------------------------------------------------------

def _split_top_level(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GraphInputError(f"unbalanced parentheses in {text!r}")
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth:
        raise GraphInputError(f"unbalanced parentheses in {text!r}")
    parts.append(text[start:])
    return [p.strip() for p in parts]


def _int_params(name: str, raw: str) -> list[int]:
    try:
        return [int(p) for p in raw.split(",") if p.strip()]
    except ValueError as exc:
        raise GraphInputError(f"bad parameters for {name}: {raw!r}") from exc


def build_family(name: str, params: list) -> Graph:
    """Family by name. ``join`` and ``cartesian`` take two family specs."""
    name = name.strip().lower()
    if name in BINARY:
        if len(params) != 2:
            raise GraphInputError(f"{name} takes two graphs, got {len(params)}")
        g1, g2 = (resolve_graph(p) if isinstance(p, str) else p for p in params)
        if name == "join":
            return gc.join(g1, g2).graph
        return gc.cartesian_product(g1, g2)
    if name not in FAMILIES:
        known = ", ".join(sorted(FAMILIES.keys() | BINARY))
        raise GraphInputError(f"unknown family {name!r}; known: {known}")
    params = [int(p) for p in params]
    if name == "complete_multipartite":
        return gc.complete_multipartite(params)
    fn, arity = FAMILIES[name]
    if len(params) != arity:
        raise GraphInputError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


def parse_family_spec(spec: str) -> Graph:
    """'cycle:5', 'complete_bipartite:3,2' or nested 'join(a,b)' / 'cartesian(a,b)'."""
    spec = spec.strip()
    if "(" in spec:
        head, _, rest = spec.partition("(")
        if not rest.endswith(")"):
            raise GraphInputError(f"malformed family spec {spec!r}")
        return build_family(head, _split_top_level(rest[:-1]))
    name, _, raw = spec.partition(":")
    return build_family(name, _int_params(name, raw))


def read_graph_file(path: str | Path) -> Graph:
    """First graph of a graph6 file or the graph of an edge-list file."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise GraphInputError(f"cannot read {path}: {exc}") from exc
    if looks_like_edge_list(text):
        return parse_edge_list(text, name=path.stem)
    graphs = parse_graph6_lines(text)
    if not graphs:
        raise GraphInputError(f"{path} holds no graphs")
    return graphs[0].renamed(path.stem)


def resolve_graph(text: str) -> Graph:
    """A CLI graph argument: @file, family spec or graph6.

    A lone "@" is the graph6 string of K1, not an empty path.
    """
    text = text.strip()
    if not text:
        raise GraphInputError("empty graph argument")
    if text.startswith("@") and len(text) > 1:
        return read_graph_file(text[1:])
    if ":" in text or "(" in text:
        return parse_family_spec(text)
    return parse_graph6(text, name=text)


# ----------------------------------------------------------------------
# Corpus
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _atlas_connected() -> tuple[Graph, ...]:
    graphs = []
    for G in nx.graph_atlas_g():
        if G.number_of_nodes() == 0 or not nx.is_connected(G):
            continue
        graphs.append(Graph.from_networkx(G, name=G.name or ""))
    return tuple(graphs)


def connected_graphs(max_order: int, min_order: int = 1, corpus_file: str | Path | None = None) -> list[Graph]:
    """Connected graphs with min_order <= n <= max_order, one per isomorphism class, in atlas order."""
    if corpus_file is not None:
        try:
            text = Path(corpus_file).read_text()
        except OSError as exc:
            raise GraphInputError(f"cannot read corpus file {corpus_file}: {exc}") from exc
        graphs = [g for g in parse_graph6_lines(text) if min_order <= g.n <= max_order and g.is_connected()]
        logger.info("Loaded %d connected graphs from %s", len(graphs), corpus_file)
        return graphs
    if max_order > config.CORPUS_ATLAS_MAX_ORDER:
        raise GraphInputError(
            f"order {max_order} exceeds the built-in corpus ({config.CORPUS_ATLAS_MAX_ORDER}); pass a graph6 corpus file"
        )
    return [g for g in _atlas_connected() if min_order <= g.n <= max_order]


def corpus_pairs(graphs: list[Graph]) -> list[tuple[Graph, Graph]]:
    """Unordered pairs with repetition."""
    return list(combinations_with_replacement(graphs, 2))


def random_pairs(order: int, count: int, seed: int | None = None) -> list[tuple[Graph, Graph]]:
    """``count`` pairs of connected graphs of exactly ``order`` vertices, drawn with a fixed seed."""
    pool = connected_graphs(order, min_order=order)
    rng = np.random.default_rng(config.CORPUS_RANDOM_SEED if seed is None else seed)
    picks = rng.integers(0, len(pool), size=(count, 2))
    return [(pool[i], pool[j]) for i, j in sorted(map(tuple, picks.tolist()))]
