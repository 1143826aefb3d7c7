import os
import sys
from itertools import combinations, permutations, product

import numpy as np
import pytest
from hypothesis import strategies as st

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), os.pardir)))

import config  # noqa: E402
from utils.graph import Graph  # noqa: E402

_CAPS = ("AUT_VERTEX_CAP", "AUT_MAX_ELEMENTS", "LABEL_POINT_CAP", "EXACT_TIME_BUDGET_S", "THREADS")


@pytest.fixture(autouse=True)
def restore_caps():
    """The CLI writes cap overrides into ``config``; undo them after each test."""
    saved = {name: getattr(config, name) for name in _CAPS}
    yield
    for name, value in saved.items():
        setattr(config, name, value)


# ---------------------------------------------------------------------------
# Strategies
# ---------------------------------------------------------------------------

@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 7, connected: bool = False) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    if connected and n > 1:
        # random spanning tree first, then extra edges
        parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
        tree = [(p, v) for v, p in zip(range(1, n), parents)]
        extra = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
        return Graph(n, tree + extra)
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Naive oracles: no pruning, no refinement
# ---------------------------------------------------------------------------

def naive_automorphisms(g: Graph) -> list[tuple[int, ...]]:
    edges = set(g.edges)
    result = []
    for p in permutations(range(g.n)):
        if all(((min(p[u], p[v]), max(p[u], p[v])) in edges) for u, v in g.edges):
            result.append(p)
    return result


def _edge_action(g: Graph, perms) -> np.ndarray:
    index = {e: i for i, e in enumerate(g.edges)}
    return np.array([[index[(min(p[u], p[v]), max(p[u], p[v]))] for u, v in g.edges] for p in perms])


def naive_distinguishing_number(g: Graph) -> int:
    perms = np.array(naive_automorphisms(g))
    for d in range(1, g.n + 1):
        for labels in product(range(d), repeat=g.n):
            lab = np.array(labels)
            if np.all(lab[perms] == lab, axis=1).sum() == 1:
                return d
    raise AssertionError("unreachable")


def naive_distinguishing_index(g: Graph) -> int | None:
    """None when no edge labeling distinguishes."""
    perms = naive_automorphisms(g)
    if len(perms) == 1:
        return 1
    action = _edge_action(g, perms)
    if g.size == 0 or np.any(np.all(action[1:] == np.arange(g.size), axis=1)):
        return None
    for d in range(2, g.size + 1):
        for labels in product(range(d), repeat=g.size):
            lab = np.array(labels)
            if np.all(lab[action] == lab, axis=1).sum() == 1:
                return d
    raise AssertionError("unreachable")
