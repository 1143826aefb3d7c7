"""
Graph core: immutable simple graphs, joins and the standard families.

Vertices are always 0..n-1. networkx does the generic work (generators,
isomorphism, components); this wrapper pins vertex ids down so that every
certificate the toolkit emits is reproducible.

Joins put the left graph first: left ids are 0..n-1, right ids n..n+m-1.
"""

import enum
from dataclasses import dataclass
from itertools import product
from typing import Iterable

import networkx as nx
import numpy as np

from config import HAMILTONIAN_PATH_CAP
from utils.errors import GraphInputError, UnsupportedSizeError

VertexSet = frozenset  # frozenset[int] of vertex ids of one host graph
Edge = tuple[int, int]


class Graph:
    """Undirected simple graph on vertices 0..n-1. Immutable.

    ``origin`` is set on induced subgraphs: origin[i] is the host vertex that
    became vertex i.
    """

    __slots__ = ("_n", "_edges", "_adj", "_origin", "_name", "_matrix", "_edge_index")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        name: str = "",
        origin: tuple[int, ...] | None = None,
    ) -> None:
        if n < 0:
            raise GraphInputError(f"vertex count must be non-negative, got {n}")
        normalized = set()
        for pair in edges:
            u, v = int(pair[0]), int(pair[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge {(u, v)} has an id outside 0..{n - 1}")
            if u == v:
                raise GraphInputError(f"edge {(u, v)} is a self-loop")
            normalized.add((u, v) if u < v else (v, u))
        adj = [set() for _ in range(n)]
        for u, v in normalized:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_n", n)
        object.__setattr__(self, "_edges", tuple(sorted(normalized)))
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))
        object.__setattr__(self, "_origin", origin)
        object.__setattr__(self, "_name", name)
        object.__setattr__(self, "_matrix", None)
        object.__setattr__(self, "_edge_index", None)

    def __setattr__(self, key, value):
        raise AttributeError("Graph is immutable")

    # ------------------------------------------------------------------
    # Basic accessors
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self._n

    @property
    def edges(self) -> tuple[Edge, ...]:
        """Edges as (u, v) with u < v, sorted."""
        return self._edges

    @property
    def size(self) -> int:
        return len(self._edges)

    @property
    def name(self) -> str:
        return self._name

    @property
    def origin(self) -> tuple[int, ...] | None:
        return self._origin

    def __len__(self) -> int:
        return self._n

    def vertices(self) -> range:
        return range(self._n)

    def check_vertex(self, v: int) -> int:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < self._n):
            raise GraphInputError(f"{v!r} is not a vertex of a graph of order {self._n}")
        return int(v)

    def neighbors(self, v: int) -> frozenset:
        return self._adj[self.check_vertex(v)]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self._adj)

    def adjacency_matrix(self) -> np.ndarray:
        if self._matrix is None:
            m = np.zeros((self._n, self._n), dtype=bool)
            for u, v in self._edges:
                m[u, v] = m[v, u] = True
            m.setflags(write=False)
            object.__setattr__(self, "_matrix", m)
        return self._matrix

    def edge_index(self) -> dict[Edge, int]:
        """Position of each edge in ``edges``."""
        if self._edge_index is None:
            object.__setattr__(self, "_edge_index", {e: i for i, e in enumerate(self._edges)})
        return self._edge_index

    def normalize_edge(self, u: int, v: int) -> Edge:
        e = (u, v) if u < v else (v, u)
        if e not in self.edge_index():
            raise GraphInputError(f"{(u, v)} is not an edge")
        return e

    def is_connected(self) -> bool:
        if self._n == 0:
            return False
        return nx.is_connected(self.to_networkx())

    # ------------------------------------------------------------------
    # networkx bridge
    # ------------------------------------------------------------------

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self._n))
        G.add_edges_from(self._edges)
        return G

    @classmethod
    def from_networkx(cls, G: nx.Graph, name: str = "") -> "Graph":
        """Vertices are renumbered in sorted node order."""
        if G.is_directed() or G.is_multigraph():
            raise GraphInputError("only simple undirected graphs are supported")
        H = nx.convert_node_labels_to_integers(G, ordering="sorted")
        return cls(H.number_of_nodes(), H.edges(), name=name)

    def renamed(self, name: str) -> "Graph":
        return Graph(self._n, self._edges, name=name, origin=self._origin)

    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:
        tag = f" {self._name!r}" if self._name else ""
        return f"<Graph{tag} n={self._n} m={len(self._edges)}>"


class Side(str, enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class JoinGraph:
    """G1 + G2 with side provenance. Left vertices come first."""

    graph: Graph
    left: Graph
    right: Graph

    @property
    def left_order(self) -> int:
        return self.left.n

    @property
    def right_order(self) -> int:
        return self.right.n

    def side_of(self, v: int) -> Side:
        self.graph.check_vertex(v)
        return Side.LEFT if v < self.left.n else Side.RIGHT

    def side_vertices(self, side: Side) -> range:
        if side is Side.LEFT:
            return range(self.left.n)
        return range(self.left.n, self.graph.n)


# ----------------------------------------------------------------------
# Construction
# ----------------------------------------------------------------------

def build(n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Graph:
    """Graph on 0..n-1 with the deduplicated symmetric closure of ``edges``."""
    return Graph(n, edges, name=name)


def join(g1: Graph, g2: Graph) -> JoinGraph:
    """G1 + G2: left vertices 0..n1-1, right vertices shifted by n1, plus every cross edge."""
    if g1.n == 0 or g2.n == 0:
        raise GraphInputError("both sides of a join must be nonempty")
    n = g1.n
    edges = list(g1.edges)
    edges.extend((u + n, v + n) for u, v in g2.edges)
    edges.extend((u, n + w) for u, w in product(range(n), range(g2.n)))
    name = f"{g1.name or 'G1'}+{g2.name or 'G2'}"
    return JoinGraph(Graph(n + g2.n, edges, name=name), g1, g2)


def iterated_join(g: Graph, k: int) -> Graph:
    """g + g + ... + g (k copies)."""
    if k < 1:
        raise GraphInputError(f"need at least one copy, got {k}")
    result = g
    for _ in range(k - 1):
        result = join(result, g).graph
    return result.renamed(f"{k}x({g.name or 'G'})" if k > 1 else g.name)


def non_neighborhood(g: Graph, v: int) -> VertexSet:
    """V \\ N(v). Always contains v."""
    v = g.check_vertex(v)
    return frozenset(w for w in g.vertices() if w not in g.neighbors(v))


def check_vertex_set(g: Graph, s: Iterable[int]) -> VertexSet:
    members = frozenset(int(v) for v in s)
    for v in members:
        g.check_vertex(v)
    return members


def induced(g: Graph, s: Iterable[int]) -> Graph:
    """G[s], renumbered 0..|s|-1 in increasing host-id order; ``origin`` maps back."""
    members = check_vertex_set(g, s)
    if not members:
        raise GraphInputError("induced subgraph of an empty vertex set")
    order = sorted(members)
    index = {v: i for i, v in enumerate(order)}
    edges = [(index[u], index[v]) for u, v in g.edges if u in members and v in members]
    return Graph(len(order), edges, origin=tuple(order))


def min_degree(g: Graph) -> int:
    """Smallest vertex degree; 0 for K1."""
    if g.n == 0:
        raise GraphInputError("minimum degree of the empty graph")
    return min(g.degrees())


# ----------------------------------------------------------------------
# Isomorphism
# ----------------------------------------------------------------------

def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Isomorphism test behind cheap invariant filters."""
    if g.n != h.n or g.size != h.size:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    G, H = g.to_networkx(), h.to_networkx()
    if not nx.faster_could_be_isomorphic(G, H):
        return False
    return nx.is_isomorphic(G, H)


def canonical_key(g: Graph) -> tuple:
    """Isomorphism-invariant sort key. Equal keys do not imply isomorphism."""
    wl = nx.weisfeiler_lehman_graph_hash(g.to_networkx(), iterations=3)
    return (g.n, g.size, tuple(sorted(g.degrees())), wl)


# ----------------------------------------------------------------------
# Hamiltonian paths
# ----------------------------------------------------------------------

def has_hamiltonian_path(g: Graph, cap: int | None = None) -> bool:
    """Subset DP over (visited set, endpoint) states, endpoints packed as a bitset."""
    cap = HAMILTONIAN_PATH_CAP if cap is None else cap
    n = g.n
    if n > cap:
        raise UnsupportedSizeError("Hamiltonian path search on order", n, cap)
    if n <= 1:
        return n == 1
    if not g.is_connected():
        return False
    nbr = [sum(1 << w for w in g.neighbors(v)) for v in range(n)]
    full = (1 << n) - 1
    ends = [0] * (1 << n)
    for v in range(n):
        ends[1 << v] = 1 << v
    for mask in range(1, full):
        e = ends[mask]
        while e:
            low = e & -e
            e ^= low
            free = nbr[low.bit_length() - 1] & ~mask
            while free:
                w = free & -free
                free ^= w
                ends[mask | w] |= w
    return ends[full] != 0


# ----------------------------------------------------------------------
# Standard families
# ----------------------------------------------------------------------

def _require(cond: bool, message: str) -> None:
    if not cond:
        raise GraphInputError(message)


def path(n: int) -> Graph:
    _require(n >= 1, f"path needs n >= 1, got {n}")
    return Graph.from_networkx(nx.path_graph(n), name=f"P{n}")


def cycle(n: int) -> Graph:
    _require(n >= 3, f"cycle needs n >= 3, got {n}")
    return Graph.from_networkx(nx.cycle_graph(n), name=f"C{n}")


def complete(n: int) -> Graph:
    _require(n >= 1, f"complete graph needs n >= 1, got {n}")
    return Graph.from_networkx(nx.complete_graph(n), name=f"K{n}")


def empty(n: int) -> Graph:
    _require(n >= 1, f"empty graph needs n >= 1, got {n}")
    return Graph(n, (), name=f"{n}K1")


def complete_bipartite(p: int, q: int) -> Graph:
    _require(p >= 1 and q >= 1, f"complete bipartite graph needs p, q >= 1, got {p}, {q}")
    return Graph.from_networkx(nx.complete_bipartite_graph(p, q), name=f"K{p},{q}")


def complete_multipartite(parts: Iterable[int]) -> Graph:
    parts = [int(p) for p in parts]
    _require(bool(parts) and all(p >= 1 for p in parts), f"bad part sizes {parts}")
    G = nx.complete_multipartite_graph(*parts)
    return Graph.from_networkx(G, name="K" + ",".join(map(str, parts)))


def star(n: int) -> Graph:
    """K_{1,n}, center 0."""
    _require(n >= 1, f"star needs n >= 1 leaves, got {n}")
    return Graph.from_networkx(nx.star_graph(n), name=f"K1,{n}")


def matching(n: int) -> Graph:
    """nK2 with edges (2i, 2i+1)."""
    _require(n >= 1, f"matching needs n >= 1, got {n}")
    return Graph(2 * n, [(2 * i, 2 * i + 1) for i in range(n)], name=f"{n}K2")


def friendship(n: int) -> Graph:
    """F_n = K1 + nK2: n triangles sharing vertex 0."""
    _require(n >= 1, f"friendship graph needs n >= 1, got {n}")
    return join(complete(1), matching(n)).graph.renamed(f"F{n}")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Vertex (a, b) gets id a * |h| + b."""
    P = nx.cartesian_product(g.to_networkx(), h.to_networkx())
    return Graph.from_networkx(P, name=f"{g.name or 'G'}[]{h.name or 'H'}")


def hypercube(k: int) -> Graph:
    """Q_d as iterated Cartesian products of K2."""
    _require(k >= 1, f"hypercube needs k >= 1, got {k}")
    q = complete(2)
    for _ in range(k - 1):
        q = cartesian_product(q, complete(2))
    return q.renamed(f"Q{k}")

