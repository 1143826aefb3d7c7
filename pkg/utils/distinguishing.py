"""
Exact distinguishing numbers D(G) and distinguishing indices D'(G).

One search serves both: it labels "points" (vertices, or edges under the
induced edge action) in index order and keeps, for every non-identity group
element, whether it can still preserve the partial labeling. Two cuts keep it
exact:

- label names are interchangeable, so point i may only use labels
  1..(largest label so far)+1;
- a surviving element whose moved points are all labeled preserves every
  completion, so the branch is dead.

The first witness found is the lexicographically smallest restricted-growth
labeling; minimality of d comes from exhaustive failure at d-1.
"""

import logging
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

import config
from utils.automorphism import ROW_CHUNK, AutGroup, automorphisms, count_preserving
from utils.errors import GraphInputError, TimeBudgetExceeded, UnsupportedSizeError
from utils.graph import Graph

logger = logging.getLogger("symbreak.distinguishing")


@dataclass(frozen=True)
class Labeling:
    """Vertex labeling with labels 1..label_count."""

    host: Graph
    labels: tuple[int, ...]
    label_count: int

    def __post_init__(self) -> None:
        if len(self.labels) != self.host.n:
            raise GraphInputError(f"labeling covers {len(self.labels)} of {self.host.n} vertices")
        if self.label_count < 1 or any(not 1 <= c <= self.label_count for c in self.labels):
            raise GraphInputError(f"labels must lie in 1..{self.label_count}")

    @classmethod
    def of(cls, host: Graph, labels, label_count: int | None = None) -> "Labeling":
        labels = tuple(int(c) for c in labels)
        return cls(host, labels, label_count or max(labels, default=1))

    def label_of(self, v: int) -> int:
        return self.labels[v]

    def to_dict(self) -> dict:
        return {"labels": list(self.labels)}

    @classmethod
    def from_dict(cls, host: Graph, data: dict) -> "Labeling":
        return cls.of(host, data["labels"])


@dataclass(frozen=True)
class EdgeLabeling:
    """Edge labeling aligned with ``host.edges``."""

    host: Graph
    labels: tuple[int, ...]
    label_count: int

    def __post_init__(self) -> None:
        if len(self.labels) != self.host.size:
            raise GraphInputError(f"edge labeling covers {len(self.labels)} of {self.host.size} edges")
        if self.label_count < 1 or any(not 1 <= c <= self.label_count for c in self.labels):
            raise GraphInputError(f"labels must lie in 1..{self.label_count}")

    @classmethod
    def of(cls, host: Graph, labels, label_count: int | None = None) -> "EdgeLabeling":
        labels = tuple(int(c) for c in labels)
        return cls(host, labels, label_count or max(labels, default=1))

    @classmethod
    def from_mapping(cls, host: Graph, mapping: dict, label_count: int | None = None) -> "EdgeLabeling":
        index = host.edge_index()
        labels = [0] * host.size
        for (u, v), c in mapping.items():
            labels[index[host.normalize_edge(u, v)]] = c
        if 0 in labels:
            missing = host.edges[labels.index(0)]
            raise GraphInputError(f"edge {missing} has no label")
        return cls.of(host, labels, label_count)

    def label_of(self, u: int, v: int) -> int:
        return self.labels[self.host.edge_index()[self.host.normalize_edge(u, v)]]

    def to_dict(self) -> dict:
        return {"edge_labels": [[u, v, c] for (u, v), c in zip(self.host.edges, self.labels)]}

    @classmethod
    def from_dict(cls, host: Graph, data: dict) -> "EdgeLabeling":
        return cls.from_mapping(host, {(u, v): c for u, v, c in data["edge_labels"]})


@dataclass(frozen=True)
class DistinguishingResult:
    """``value`` is None when the index is not defined."""

    kind: str
    value: int | None
    witness: Labeling | EdgeLabeling | None
    group_order: int
    nodes: int = 0

    @property
    def defined(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "value": self.value, "defined": self.defined, "group_order": self.group_order}
        out["witness"] = self.witness.to_dict() if self.witness is not None else None
        return out


# ----------------------------------------------------------------------
# Search
# ----------------------------------------------------------------------

class _LabelSearch:
    """Restricted-growth labelings of points 0..p-1 that no non-identity row preserves.

    Row 0 of ``action`` must be the identity and every other row must move
    some point. ``inverse_rows[r]`` is the row of the inverse element.
    """

    def __init__(self, action: np.ndarray, inverse_rows: np.ndarray, what: str, time_budget: float | None) -> None:
        self.p = action.shape[1]
        self.perms = action[1:]
        self.inv_rows = inverse_rows[1:] - 1
        ident = np.arange(self.p)
        self._moved_counts = np.empty(len(self.perms), dtype=np.int32)
        for start in range(0, len(self.perms), ROW_CHUNK):
            block = self.perms[start:start + ROW_CHUNK]
            self._moved_counts[start:start + len(block)] = np.count_nonzero(block != ident, axis=1)
        self.what = what
        self.time_budget = time_budget
        self.nodes = 0
        self._deadline = None if time_budget is None else time.monotonic() + time_budget

    def find(self, d: int) -> tuple[int, ...] | None:
        if len(self.perms) == 0:
            return (1,) * self.p
        if d < 2:
            return None
        lab = np.zeros(self.p, dtype=np.int16)
        pending = self._moved_counts.copy()
        alive = np.arange(len(self.perms))
        return self._extend(0, 0, alive, lab, pending, d)

    def _tick(self) -> None:
        self.nodes += 1
        if self._deadline is not None and self.nodes % config.BUDGET_CHECK_EVERY == 0:
            if time.monotonic() > self._deadline:
                raise TimeBudgetExceeded(self.what, self.time_budget)

    def _extend(self, x, used, alive, lab, pending, d):
        if alive.size == 0:
            lab[x:] = 1
            return tuple(int(c) for c in lab)
        self._tick()
        img = self.perms[alive, x]
        pre = self.perms[self.inv_rows[alive], x]
        # pending is only read for rows alive at every ancestor
        moving = alive[img != x]
        pending[moving] -= 1
        for c in range(1, min(d, used + 1) + 1):
            lab[x] = c
            li, lp = lab[img], lab[pre]
            keep = ((li == 0) | (li == c)) & ((lp == 0) | (lp == c))
            survivors = alive[keep]
            if np.any(pending[survivors] == 0):
                continue
            found = self._extend(x + 1, max(used, c), survivors, lab, pending, d)
            if found is not None:
                return found
        lab[x] = 0
        pending[moving] += 1
        return None


def _check_points(what: str, p: int) -> None:
    if p > config.LABEL_POINT_CAP:
        raise UnsupportedSizeError(f"{what} labeling search on", p, config.LABEL_POINT_CAP)


def _budget(time_budget: float | None) -> float | None:
    """Explicit budget, else the configured one; zero or None means unlimited."""
    value = config.EXACT_TIME_BUDGET_S if time_budget is None else time_budget
    return value if value and value > 0 else None


def edge_action_fixes_all(group: AutGroup) -> bool:
    """True iff some non-identity automorphism maps every edge to itself."""
    if group.order == 1:
        return False
    ep = group.edge_perms
    return count_preserving(ep[1:], np.arange(ep.shape[1]), limit=0) > 0


def _sampled_two_labeling(action: np.ndarray) -> tuple[int, ...] | None:
    """A seeded random 2-labeling preserved by the identity row alone, if one turns up."""
    rng = np.random.default_rng(config.SAMPLED_WITNESS_SEED)
    for _ in range(config.SAMPLED_WITNESS_TRIES):
        bits = rng.integers(0, 2, size=action.shape[1])
        labels = np.where(bits == bits[0], 1, 2).astype(np.int8)
        if count_preserving(action, labels, limit=1) == 1:
            return tuple(int(c) for c in labels)
    return None


# ----------------------------------------------------------------------
# Verifiers
# ----------------------------------------------------------------------

def is_distinguishing(g: Graph, labeling: Labeling, group: AutGroup | None = None) -> bool:
    """True iff the identity is the only automorphism preserving every vertex label."""
    if labeling.host.n != g.n:
        raise GraphInputError("labeling belongs to a graph of a different order")
    group = automorphisms(g) if group is None else group
    labels = np.asarray(labeling.labels, dtype=np.int16)
    return count_preserving(group.perms, labels, limit=1) == 1


def is_distinguishing_edges(g: Graph, labeling: EdgeLabeling, group: AutGroup | None = None) -> bool:
    """Edge version of :func:`is_distinguishing`, under the induced edge action."""
    if g.size == 0:
        raise GraphInputError("edge labelings of an edgeless graph")
    if labeling.host.edges != g.edges:
        raise GraphInputError("edge labeling belongs to a different edge set")
    group = automorphisms(g) if group is None else group
    labels = np.asarray(labeling.labels, dtype=np.int16)
    return count_preserving(group.edge_perms, labels, limit=1) == 1


# ----------------------------------------------------------------------
# Decision versions
# ----------------------------------------------------------------------

def find_labeling(g: Graph, d: int, time_budget: float | None = None) -> Labeling | None:
    """Smallest restricted-growth distinguishing labeling with at most d labels."""
    if d < 1:
        raise GraphInputError(f"label count must be >= 1, got {d}")
    _check_points("vertex", g.n)
    group = automorphisms(g)
    search = _LabelSearch(group.perms, group.inverse_rows, "vertex labeling search", _budget(time_budget))
    found = search.find(d)
    return None if found is None else Labeling(g, found, d)


def find_edge_labeling(g: Graph, d: int, time_budget: float | None = None) -> EdgeLabeling | None:
    """Edge version of find_labeling; None also when D' is not defined."""
    if d < 1:
        raise GraphInputError(f"label count must be >= 1, got {d}")
    _check_points("edge", g.size)
    group = automorphisms(g)
    if edge_action_fixes_all(group):
        return None
    search = _LabelSearch(group.edge_perms, group.inverse_rows, "edge labeling search", _budget(time_budget))
    found = search.find(d)
    return None if found is None else EdgeLabeling(g, found, d)


# ----------------------------------------------------------------------
# Optimisation versions
# ----------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _number(g: Graph, time_budget: float | None) -> DistinguishingResult:
    _check_points("vertex", g.n)
    group = automorphisms(g)
    search = _LabelSearch(group.perms, group.inverse_rows, "vertex labeling search", time_budget)
    for d in range(1, max(g.n, 1) + 1):
        found = search.find(d)
        if found is not None:
            logger.debug("D(%r) = %d after %d nodes", g, d, search.nodes)
            return DistinguishingResult("number", d, Labeling(g, found, d), group.order, search.nodes)
    raise AssertionError("all-distinct labels always distinguish")


@lru_cache(maxsize=4096)
def _index(g: Graph, time_budget: float | None) -> DistinguishingResult:
    _check_points("edge", g.size)
    group = automorphisms(g)
    if group.is_trivial():
        return DistinguishingResult("index", 1, EdgeLabeling(g, (1,) * g.size, 1), 1)
    if edge_action_fixes_all(group):
        logger.debug("D'(%r) not defined", g)
        return DistinguishingResult("index", None, None, group.order)
    # a nontrivial group needs two labels, so any verified 2-labeling is optimal
    if group.order >= config.SAMPLED_WITNESS_MIN_ORDER:
        sampled = _sampled_two_labeling(group.edge_perms)
        if sampled is not None:
            logger.debug("D'(%r) = 2 from a sampled labeling", g)
            return DistinguishingResult("index", 2, EdgeLabeling(g, sampled, 2), group.order)
    search = _LabelSearch(group.edge_perms, group.inverse_rows, "edge labeling search", time_budget)
    for d in range(2, g.size + 1):
        found = search.find(d)
        if found is not None:
            logger.debug("D'(%r) = %d after %d nodes", g, d, search.nodes)
            return DistinguishingResult("index", d, EdgeLabeling(g, found, d), group.order, search.nodes)
    raise AssertionError("all-distinct edge labels always distinguish when D' is defined")


def distinguishing_number(g: Graph, time_budget: float | None = None) -> DistinguishingResult:
    """D(g) with a lexicographically smallest restricted-growth witness."""
    return _number(g, _budget(time_budget))


def distinguishing_index(g: Graph, time_budget: float | None = None) -> DistinguishingResult:
    """D'(g), or a result with ``value`` None when some non-identity automorphism fixes every edge.

    Groups of at least ``config.SAMPLED_WITNESS_MIN_ORDER`` elements first try
    seeded random 2-labelings; a hit is exact but not restricted-growth minimal.
    """
    return _index(g, _budget(time_budget))
