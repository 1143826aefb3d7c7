"""
Join partition: non-neighborhood closure classes of G1 + G2 and everything
built on them.

Pipeline:
  1. side_partition   A_1..A_k over the left side, B_1..B_k' over the right:
                      components of "non-neighborhoods intersect"
  2. iso_classes      group the induced G[A_i] (resp. G[B_j]) by isomorphism
  3. gamma_partition  merge a left group with the right group of the same
                      isomorphism type; q merges, z for the vertex bound
  4. gamma_prime      induced subgraph of the join on each class support

On top of these sit the constructive labelings: one distinguishing vertex
labeling of G1 + G2 (plus the self-join special case), the per-class edge
labeling that realises lambda_1 and the bipartite-cover edge labeling that
realises lambda_2.
"""

import enum
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import networkx as nx

from config import (
    COVER_ENUMERATION_ALL_MAX_CLASSES,
    COVER_ENUMERATION_MAX_CLASSES,
    EXACT_BIPARTITE_MAX_EDGES,
)
from utils.closed_forms import IndexValue, imrich
from utils.distinguishing import (
    EdgeLabeling,
    Labeling,
    distinguishing_index,
    distinguishing_number,
    is_distinguishing,
    is_distinguishing_edges,
)
from utils.errors import GraphInputError, InapplicableError, InvariantViolation, UnsupportedSizeError
from utils.graph import (
    Graph,
    JoinGraph,
    Side,
    VertexSet,
    are_isomorphic,
    canonical_key,
    complete_bipartite,
    induced,
    join,
    non_neighborhood,
)

logger = logging.getLogger("symbreak.join_partition")


# ----------------------------------------------------------------------
# Types
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SidePartition:
    """Closure classes of each side, as vertex sets of the join graph."""

    A: tuple[VertexSet, ...]
    B: tuple[VertexSet, ...]

    @property
    def k(self) -> int:
        return len(self.A)

    @property
    def k_prime(self) -> int:
        return len(self.B)

    def classes(self) -> tuple[VertexSet, ...]:
        return self.A + self.B

    def class_of(self, v: int) -> VertexSet:
        for c in self.classes():
            if v in c:
                return c
        raise GraphInputError(f"vertex {v} is in no class")

    def to_dict(self) -> dict:
        return {"A": [sorted(c) for c in self.A], "B": [sorted(c) for c in self.B]}


@dataclass(frozen=True)
class IsoGroup:
    """Pairwise isomorphic classes of one side; members ordered by smallest id."""

    side: Side
    members: tuple[VertexSet, ...]
    representative: Graph

    @property
    def multiplicity(self) -> int:
        return len(self.members)

    @property
    def support(self) -> VertexSet:
        return frozenset().union(*self.members)


@dataclass(frozen=True)
class IsoClasses:
    A_groups: tuple[IsoGroup, ...]
    B_groups: tuple[IsoGroup, ...]

    @property
    def t(self) -> int:
        return len(self.A_groups)

    @property
    def t_prime(self) -> int:
        return len(self.B_groups)

    @property
    def n(self) -> tuple[int, ...]:
        return tuple(g.multiplicity for g in self.A_groups)

    @property
    def m(self) -> tuple[int, ...]:
        return tuple(g.multiplicity for g in self.B_groups)


class GammaTag(str, enum.Enum):
    MERGED = "merged"
    LEFT_ONLY = "left_only"
    RIGHT_ONLY = "right_only"


@dataclass(frozen=True)
class GammaClass:
    tag: GammaTag
    left: IsoGroup | None
    right: IsoGroup | None

    @property
    def members(self) -> tuple[VertexSet, ...]:
        out: tuple[VertexSet, ...] = ()
        for group in (self.left, self.right):
            if group is not None:
                out += group.members
        return out

    @property
    def support(self) -> VertexSet:
        return frozenset().union(*self.members)

    @property
    def left_multiplicity(self) -> int:
        return 0 if self.left is None else self.left.multiplicity

    @property
    def right_multiplicity(self) -> int:
        return 0 if self.right is None else self.right.multiplicity

    def to_dict(self) -> dict:
        return {"members": [sorted(m) for m in self.members], "tag": self.tag.value}


@dataclass(frozen=True)
class GammaStructure:
    """Merged classes come first, then left-only, then right-only."""

    partition: SidePartition
    iso: IsoClasses
    classes: tuple[GammaClass, ...]
    q: int
    z: int | None

    def __len__(self) -> int:
        return len(self.classes)

    def supports(self) -> list[VertexSet]:
        return [c.support for c in self.classes]

    def merged(self) -> tuple[GammaClass, ...]:
        return self.classes[: self.q]


@dataclass(frozen=True)
class BipartiteCover:
    """Pairs (i, j), i < j, of Gamma-class indices covering every class."""

    pairs: tuple[tuple[int, int], ...]
    sizes: tuple[tuple[int, int], ...]
    epsilon: IndexValue

    def to_dict(self) -> dict:
        return {
            "pairs": [list(p) for p in self.pairs],
            "bipartite": [list(s) for s in self.sizes],
            "epsilon": self.epsilon.to_json(),
        }


@dataclass(frozen=True)
class LambdaBounds:
    lambda1: int | None
    lambda2: IndexValue | None
    witness_cover: BipartiteCover | None
    undefined_classes: tuple[int, ...] = ()


# ----------------------------------------------------------------------
# Partition pipeline
# ----------------------------------------------------------------------

def _closure_classes(g: Graph, side: range) -> tuple[VertexSet, ...]:
    nbar = {v: non_neighborhood(g, v) for v in side}
    aux = nx.Graph()
    aux.add_nodes_from(side)
    aux.add_edges_from((u, w) for u, w in combinations(side, 2) if nbar[u] & nbar[w])
    return tuple(sorted((frozenset(c) for c in nx.connected_components(aux)), key=min))


def side_partition(jg: JoinGraph) -> SidePartition:
    """Closure classes of each side of the join."""
    g = jg.graph
    return SidePartition(
        A=_closure_classes(g, jg.side_vertices(Side.LEFT)),
        B=_closure_classes(g, jg.side_vertices(Side.RIGHT)),
    )


def _group(g: Graph, side: Side, classes: tuple[VertexSet, ...]) -> tuple[IsoGroup, ...]:
    buckets: list[tuple[Graph, list[VertexSet]]] = []
    for c in classes:
        h = induced(g, c)
        for rep, members in buckets:
            if are_isomorphic(rep, h):
                members.append(c)
                break
        else:
            buckets.append((h, [c]))
    groups = [IsoGroup(side, tuple(members), rep) for rep, members in buckets]
    return tuple(sorted(groups, key=lambda gr: (gr.representative.n, canonical_key(gr.representative), min(gr.members[0]))))


def iso_classes(jg: JoinGraph, sp: SidePartition) -> IsoClasses:
    """Groups the closure classes of each side by isomorphism type of the induced subgraph."""
    return IsoClasses(
        A_groups=_group(jg.graph, Side.LEFT, sp.A),
        B_groups=_group(jg.graph, Side.RIGHT, sp.B),
    )


def gamma_partition(ic: IsoClasses, sp: SidePartition | None = None) -> GammaStructure:
    """Merges isomorphic groups across sides; q counts merged classes and z is None when q = 0."""
    merged, left_only = [], []
    unmatched = list(ic.B_groups)
    for a in ic.A_groups:
        partner = next((b for b in unmatched if are_isomorphic(a.representative, b.representative)), None)
        if partner is None:
            left_only.append(GammaClass(GammaTag.LEFT_ONLY, a, None))
        else:
            unmatched.remove(partner)
            merged.append(GammaClass(GammaTag.MERGED, a, partner))
    right_only = [GammaClass(GammaTag.RIGHT_ONLY, None, b) for b in unmatched]
    q = len(merged)
    z = None
    if q:
        z = min(max(c.left_multiplicity for c in merged), max(c.right_multiplicity for c in merged))
    if sp is None:
        sp = SidePartition(
            A=tuple(sorted((m for gr in ic.A_groups for m in gr.members), key=min)),
            B=tuple(sorted((m for gr in ic.B_groups for m in gr.members), key=min)),
        )
    return GammaStructure(sp, ic, tuple(merged + left_only + right_only), q, z)


def analyze(jg: JoinGraph) -> GammaStructure:
    """side_partition, iso_classes and gamma_partition in one call."""
    sp = side_partition(jg)
    return gamma_partition(iso_classes(jg, sp), sp)


def gamma_prime(jg: JoinGraph, gs: GammaStructure) -> list[Graph]:
    """Gamma'_i; each graph's ``origin`` maps back to join vertex ids."""
    return [induced(jg.graph, c.support).renamed(f"Gamma'_{i + 1}") for i, c in enumerate(gs.classes)]


def certificate(jg: JoinGraph, gs: GammaStructure, bounds: LambdaBounds | None = None) -> dict:
    """JSON-ready partition, Gamma classes, q, z and, when given, the lambda bounds."""
    out = {
        **gs.partition.to_dict(),
        "gamma": [c.to_dict() for c in gs.classes],
        "q": gs.q,
        "z": gs.z,
    }
    if bounds is not None:
        out["lambda1"] = bounds.lambda1
        out["lambda2"] = None if bounds.lambda2 is None else bounds.lambda2.to_json()
        out["witness"] = None if bounds.witness_cover is None else bounds.witness_cover.to_dict()
    return out


# ----------------------------------------------------------------------
# Vertex labelings
# ----------------------------------------------------------------------

def _bumped_join_labeling(jg: JoinGraph, gs: GammaStructure, bump_side: Side) -> Labeling:
    w1 = distinguishing_number(jg.left).witness
    w2 = distinguishing_number(jg.right).witness
    d = max(w1.label_count, w2.label_count)
    labels = list(w1.labels) + list(w2.labels)
    used = d
    for c in gs.merged():
        group = c.left if bump_side is Side.LEFT else c.right
        for j, member in enumerate(group.members, start=1):
            labels[min(member)] = d + j
            used = max(used, d + j)
    labeling = Labeling(jg.graph, tuple(labels), used)
    if not is_distinguishing(jg.graph, labeling):
        raise InvariantViolation(
            f"bumped labeling of {jg.graph.name} is not distinguishing",
            {"graph": jg.graph.name, "labels": list(labels), "bump_side": bump_side.value},
        )
    return labeling


def bump_side(gs: GammaStructure) -> Side:
    """Side whose largest merged multiplicity realises z; left on ties."""
    if gs.q == 0:
        return Side.LEFT
    left = max(c.left_multiplicity for c in gs.merged())
    return Side.LEFT if left == gs.z else Side.RIGHT


def construct_join_vertex_labeling(g1: Graph, g2: Graph) -> Labeling:
    """Distinguishing labeling of G1 + G2 with at most max(D1, D2) + z labels (z = 0 when q = 0)."""
    jg = join(g1, g2)
    gs = analyze(jg)
    return _bumped_join_labeling(jg, gs, bump_side(gs))


def construct_self_join_labeling(g: Graph) -> Labeling:
    """Distinguishing labeling of G + G with at most D(G) + max n_i labels."""
    jg = join(g, g)
    return _bumped_join_labeling(jg, analyze(jg), Side.LEFT)


# ----------------------------------------------------------------------
# Edge labelings from Gamma'_i
# ----------------------------------------------------------------------

def construct_gamma_edge_labeling(jg: JoinGraph, gs: GammaStructure) -> EdgeLabeling:
    """Labels each Gamma' class with its own distinguishing edge labeling and the cross edges 1."""
    host = jg.graph
    index = host.edge_index()
    labels = [1] * host.size
    for i, part in enumerate(gamma_prime(jg, gs)):
        result = distinguishing_index(part)
        if not result.defined:
            raise InapplicableError(f"D'(Gamma'_{i + 1}) is not defined ({part.n} vertices, {part.size} edges)")
        for (a, b), c in zip(part.edges, result.witness.labels):
            labels[index[host.normalize_edge(part.origin[a], part.origin[b])]] = c
    labeling = EdgeLabeling.of(host, labels)
    if not is_distinguishing_edges(host, labeling):
        raise InvariantViolation(
            f"Gamma' edge labeling of {host.name} is not distinguishing",
            {"graph": host.name, **labeling.to_dict()},
        )
    return labeling


# ----------------------------------------------------------------------
# Bipartite covers
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def bipartite_index(a: int, b: int) -> IndexValue:
    """D'(K_{a,b}): stars directly, exact search up to a size threshold, imrich for a != b."""
    a, b = sorted((a, b))
    if a < 1:
        raise GraphInputError(f"complete bipartite sizes must be >= 1, got {a}, {b}")
    if a == b == 1:
        return IndexValue.not_defined("K1,1")
    if a == 1:
        return IndexValue.exact(b, "star")
    if a * b <= EXACT_BIPARTITE_MAX_EDGES:
        return IndexValue.exact(distinguishing_index(complete_bipartite(a, b)).value, "exact")
    if a != b:
        return imrich(a, b).as_index()
    logger.warning("D'(K%d,%d) left unresolved: balanced and beyond the exact range", a, b)
    return IndexValue.interval(2, None, "unresolved")


def _bipartite_witness(a: int, b: int) -> EdgeLabeling:
    result = distinguishing_index(complete_bipartite(a, b))
    if not result.defined:
        raise InapplicableError(f"D'(K{a},{b}) is not defined")
    return result.witness


def _cover_from_weights(pairs, supports, weights) -> BipartiteCover:
    dims = tuple((len(supports[i]), len(supports[j])) for i, j in pairs)
    if any(not w.defined for w in weights):
        eps = IndexValue.not_defined("cover")
    else:
        lo = max(w.lo for w in weights)
        hi = None if any(w.hi is None for w in weights) else max(w.hi for w in weights)
        eps = IndexValue(lo, hi, "cover")
    return BipartiteCover(tuple(pairs), dims, eps)


def _is_cover(pairs, c: int) -> bool:
    return {i for p in pairs for i in p} == set(range(c))


def enumerate_covers(gs: GammaStructure, minimal: bool = True) -> list[BipartiteCover]:
    """Edge covers of the complete graph on class indices.

    Inclusion-minimal covers by default; every cover with ``minimal=False``.
    Covers with a NotDefined pair are kept, their epsilon marked NotDefined.
    """
    c = len(gs)
    if c < 2:
        raise InapplicableError("a bipartite cover needs at least two Gamma classes")
    cap = COVER_ENUMERATION_MAX_CLASSES if minimal else COVER_ENUMERATION_ALL_MAX_CLASSES
    if c > cap:
        raise UnsupportedSizeError("cover enumeration over classes", c, cap)
    supports = gs.supports()
    all_pairs = list(combinations(range(c), 2))
    lo_size = math.ceil(c / 2)
    hi_size = c - 1 if minimal and c > 2 else len(all_pairs)
    covers = []
    for size in range(lo_size, hi_size + 1):
        for pairs in combinations(all_pairs, size):
            if not _is_cover(pairs, c):
                continue
            if minimal and any(_is_cover(pairs[:i] + pairs[i + 1:], c) for i in range(len(pairs))):
                continue
            weights = [bipartite_index(len(supports[i]), len(supports[j])) for i, j in pairs]
            covers.append(_cover_from_weights(pairs, supports, weights))
    return covers


def best_cover(gs: GammaStructure) -> tuple[BipartiteCover, IndexValue] | None:
    """lambda_2 and a cover realising its lower end.

    The minimum over covers of the largest pair weight is max_i min_(j != i) w(i, j):
    pairing every class with its cheapest partner gives such a cover. Interval
    weights are minimised separately at each end. None when there is no cover
    with every pair defined.
    """
    c = len(gs)
    if c < 2:
        return None
    supports = gs.supports()
    inf = math.inf
    weight = {}
    for i, j in combinations(range(c), 2):
        w = bipartite_index(len(supports[i]), len(supports[j]))
        weight[i, j] = weight[j, i] = w

    def end(w: IndexValue, which: str) -> float:
        if not w.defined:
            return inf
        value = w.lo if which == "lo" else w.hi
        return inf if value is None else value

    pairs = set()
    lo = hi = 0
    for i in range(c):
        partners = [j for j in range(c) if j != i]
        j = min(partners, key=lambda j: (end(weight[i, j], "lo"), end(weight[i, j], "hi"), j))
        if end(weight[i, j], "lo") == inf:
            return None
        pairs.add((min(i, j), max(i, j)))
        lo = max(lo, min(end(weight[i, p], "lo") for p in partners))
        hi = max(hi, min(end(weight[i, p], "hi") for p in partners))
    pairs = tuple(sorted(pairs))
    cover = _cover_from_weights(pairs, supports, [weight[p] for p in pairs])
    return cover, IndexValue(int(lo), None if hi == inf else int(hi), "cover")


def cover_edge_labeling(jg: JoinGraph, gs: GammaStructure, cover: BipartiteCover) -> EdgeLabeling:
    """Each chosen complete bipartite edge set labeled by a D' witness of K_{a,b}; all other edges 1."""
    if not cover.pairs:
        raise InapplicableError("empty cover")
    host = jg.graph
    index = host.edge_index()
    supports = [sorted(s) for s in gs.supports()]
    labels = [1] * host.size
    for i, j in cover.pairs:
        left, right = supports[i], supports[j]
        witness = _bipartite_witness(len(left), len(right))
        # complete_bipartite(a, b) numbers the first part 0..a-1, the second a..a+b-1
        a = len(left)
        for (u, v), c in zip(witness.host.edges, witness.labels):
            x, y = left[u], right[v - a]
            labels[index[host.normalize_edge(x, y)]] = c
    labeling = EdgeLabeling.of(host, labels)
    if not is_distinguishing_edges(host, labeling):
        raise InvariantViolation(
            f"cover edge labeling of {host.name} is not distinguishing",
            {"graph": host.name, "cover": cover.to_dict(), **labeling.to_dict()},
        )
    return labeling


# ----------------------------------------------------------------------
# lambda_1, lambda_2
# ----------------------------------------------------------------------

def lambda_bounds(jg: JoinGraph, gs: GammaStructure | None = None) -> LambdaBounds:
    """lambda_1 from per-class indices and lambda_2 from the best cover, with its witness."""
    gs = analyze(jg) if gs is None else gs
    undefined = []
    values = []
    for i, part in enumerate(gamma_prime(jg, gs)):
        result = distinguishing_index(part)
        if result.defined:
            values.append(result.value)
        else:
            undefined.append(i)
    lambda1 = max(values) if not undefined else None
    best = best_cover(gs)
    cover, lambda2 = (None, None) if best is None else best
    logger.debug("%s: lambda1=%s lambda2=%s", jg.graph.name, lambda1, None if lambda2 is None else lambda2.to_json())
    return LambdaBounds(lambda1, lambda2, cover, tuple(undefined))
