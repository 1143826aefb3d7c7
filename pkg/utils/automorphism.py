"""
Automorphism groups of small graphs, enumerated explicitly.

The search maps vertices one at a time, cheapest cell of the equitable
(degree-refined) partition first. All partial maps of one depth are held in a
single numpy array and extended together, so a level costs a handful of
vectorised comparisons per candidate image instead of a Python recursion per
branch. Elements come out in lexicographic order; the identity is row 0.
"""

import logging
import time
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator

import numpy as np

import config
from utils.errors import GraphInputError, TimeBudgetExceeded, UnsupportedSizeError
from utils.graph import Edge, Graph, VertexSet

logger = logging.getLogger("symbreak.automorphism")

ROW_CHUNK = 1 << 16


@dataclass(frozen=True)
class Permutation:
    """Bijection on 0..n-1, stored as its image tuple."""

    image: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.image) != list(range(len(self.image))):
            raise GraphInputError(f"{self.image} is not a permutation of 0..{len(self.image) - 1}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other."""
        return Permutation(tuple(self.image[other.image[v]] for v in range(other.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for v, w in enumerate(self.image):
            inv[w] = v
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(v == w for v, w in enumerate(self.image))

    def moved(self) -> VertexSet:
        return frozenset(v for v, w in enumerate(self.image) if v != w)


@dataclass(frozen=True, eq=False)
class AutGroup:
    """Aut(host) as an explicit (order, n) array of images."""

    host: Graph
    perms: np.ndarray

    @property
    def order(self) -> int:
        return int(self.perms.shape[0])

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return bool(np.any(np.all(self.perms == np.asarray(p.image), axis=1)))

    def is_trivial(self) -> bool:
        return self.order == 1

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(Permutation(tuple(int(x) for x in row)) for row in self.perms)

    @cached_property
    def inverse_rows(self) -> np.ndarray:
        """Row index of each element's inverse; relies on ``perms`` being lexsorted."""
        out = np.empty(self.order, dtype=np.int64)
        if self.host.n <= 16:
            codes = _row_codes(self.perms)
            for rows in _chunks(self.order):
                inv = np.argsort(self.perms[rows], axis=1)
                out[rows] = np.searchsorted(codes, _row_codes(inv))
            return out
        lookup = {row.tobytes(): i for i, row in enumerate(self.perms)}
        for rows in _chunks(self.order):
            inv = np.argsort(self.perms[rows], axis=1).astype(self.perms.dtype)
            out[rows] = [lookup[row.tobytes()] for row in inv]
        return out

    @cached_property
    def edge_perms(self) -> np.ndarray:
        """Row r maps edge index i to the index of perms[r](edges[i])."""
        m = self.host.size
        dtype = np.int8 if m <= 128 else np.int16 if m <= 1 << 15 else np.int32
        nbytes = self.order * m * np.dtype(dtype).itemsize
        if nbytes > config.EDGE_ACTION_MAX_BYTES:
            raise UnsupportedSizeError("edge action table bytes", nbytes, config.EDGE_ACTION_MAX_BYTES)
        out = np.empty((self.order, m), dtype=dtype)
        if m:
            n = self.host.n
            index = np.full((n, n), -1, dtype=dtype)
            for i, (u, v) in enumerate(self.host.edges):
                index[u, v] = index[v, u] = i
            eu = np.array([u for u, _ in self.host.edges])
            ev = np.array([v for _, v in self.host.edges])
            for rows in _chunks(self.order):
                block = self.perms[rows]
                out[rows] = index[block[:, eu], block[:, ev]]
        out.setflags(write=False)
        return out


def _chunks(total: int) -> Iterator[slice]:
    for start in range(0, total, ROW_CHUNK):
        yield slice(start, min(start + ROW_CHUNK, total))


def _row_codes(perms: np.ndarray) -> np.ndarray:
    """Pack rows of at most 16 entries below 16 into uint64, preserving lex order."""
    n = perms.shape[1]
    shifts = np.arange(n - 1, -1, -1, dtype=np.uint64) * np.uint64(4)
    out = np.zeros(len(perms), dtype=np.uint64)
    for rows in _chunks(len(perms)):
        out[rows] = np.bitwise_or.reduce(perms[rows].astype(np.uint64) << shifts, axis=1)
    return out


def count_preserving(action: np.ndarray, labels: np.ndarray, limit: int | None = None) -> int:
    """Rows of ``action`` under which ``labels`` is invariant.

    Stops early once the count exceeds ``limit``.
    """
    total = 0
    for rows in _chunks(len(action)):
        total += int(np.count_nonzero(np.all(labels[action[rows]] == labels, axis=1)))
        if limit is not None and total > limit:
            break
    return total


# ----------------------------------------------------------------------
# Refinement
# ----------------------------------------------------------------------

def equitable_partition(g: Graph) -> tuple[int, ...]:
    """Colour refinement from degrees to a stable, isomorphism-invariant colouring."""
    colors = list(g.degrees())
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in g.neighbors(v)))) for v in g.vertices()]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        refined = [ranking[s] for s in sigs]
        if len(ranking) == len(set(colors)):
            return tuple(refined)
        colors = refined


def _enumerate(g: Graph, max_elements: int, time_budget: float | None) -> np.ndarray:
    deadline = None if time_budget is None else time.monotonic() + time_budget
    n = g.n
    if n == 0:
        return np.zeros((1, 0), dtype=np.int16)
    A = g.adjacency_matrix()
    colors = np.array(equitable_partition(g))
    cells = {int(c): np.flatnonzero(colors == c) for c in np.unique(colors)}
    order = sorted(range(n), key=lambda v: (len(cells[colors[v]]), colors[v], v))

    maps = np.zeros((1, 0), dtype=np.int16)
    for depth, v in enumerate(order):
        pattern = A[v, order[:depth]]
        chunks = []
        for c in cells[int(colors[v])]:
            ok = np.all(maps != c, axis=1)
            if depth:
                ok &= np.all(A[c][maps] == pattern, axis=1)
            if ok.any():
                sel = maps[ok]
                chunks.append(np.column_stack([sel, np.full(len(sel), c, dtype=np.int16)]))
        maps = np.concatenate(chunks)
        if len(maps) > max_elements:
            raise UnsupportedSizeError("automorphism search frontier", len(maps), max_elements)
        if deadline is not None and time.monotonic() > deadline:
            raise TimeBudgetExceeded("automorphism enumeration", time_budget)

    perms = np.empty_like(maps)
    perms[:, order] = maps
    return perms[np.lexsort(perms.T[::-1])]


@lru_cache(maxsize=64)
def _cached_group(g: Graph, max_elements: int) -> AutGroup:
    perms = _enumerate(g, max_elements, None)
    perms.setflags(write=False)
    logger.debug("Aut(%r): order %d", g, len(perms))
    return AutGroup(g, perms)


def automorphisms(
    g: Graph,
    cap: int | None = None,
    max_elements: int | None = None,
    time_budget: float | None = None,
) -> AutGroup:
    """Aut(g), enumerated once per graph unless a time budget asks for a fresh search."""
    cap = config.AUT_VERTEX_CAP if cap is None else cap
    max_elements = config.AUT_MAX_ELEMENTS if max_elements is None else max_elements
    if g.n > cap:
        raise UnsupportedSizeError("automorphism enumeration on order", g.n, cap)
    if time_budget is None:
        return _cached_group(g, max_elements)
    perms = _enumerate(g, max_elements, time_budget)
    perms.setflags(write=False)
    return AutGroup(g, perms)


# ----------------------------------------------------------------------
# Actions
# ----------------------------------------------------------------------

def is_automorphism(g: Graph, p: Permutation) -> bool:
    """True iff p maps every edge of g to an edge."""
    if p.n != g.n:
        raise GraphInputError(f"permutation on {p.n} points applied to a graph of order {g.n}")
    return all(g.has_edge(p(u), p(v)) for u, v in g.edges)


def orbits(g: Graph, group: AutGroup | None = None) -> list[tuple[int, ...]]:
    """Vertex orbits, ordered by smallest member."""
    group = automorphisms(g) if group is None else group
    seen: set[int] = set()
    result = []
    for v in g.vertices():
        if v in seen:
            continue
        orbit = tuple(int(w) for w in np.unique(group.perms[:, v]))
        seen.update(orbit)
        result.append(orbit)
    return result


def edge_action(g: Graph, p: Permutation, e: tuple[int, int]) -> Edge:
    """Image of edge e under p, normalised to (min, max)."""
    u, v = g.normalize_edge(*e)
    return g.normalize_edge(p(u), p(v))


def preserves_vertex_labeling(p: Permutation, labeling) -> bool:
    """True iff every vertex keeps its label under p."""
    labels = labeling.labels
    if len(labels) != p.n:
        raise GraphInputError(f"labeling covers {len(labels)} of {p.n} vertices")
    return all(labels[p(x)] == labels[x] for x in range(p.n))


def preserves_edge_labeling(p: Permutation, edge_labeling) -> bool:
    """True iff every edge keeps its label under the edge action of p."""
    host = edge_labeling.host
    if len(edge_labeling.labels) != host.size:
        raise GraphInputError(f"edge labeling covers {len(edge_labeling.labels)} of {host.size} edges")
    index = host.edge_index()
    return all(
        edge_labeling.labels[index[edge_action(host, p, e)]] == edge_labeling.labels[i]
        for i, e in enumerate(host.edges)
    )
