"""
Bounds: each theorem about D and D' of joins as a check that returns a
BoundEntry, and ``full_report`` which runs all of them for one pair.

An entry is ``applicable`` when the hypothesis holds and the inputs are within
the caps. ``holds`` compares the bound against the exact value whenever the
exact value was computed; ``holds is False`` on an applicable entry is a
violation.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor

import config
from models.schemas import BoundEntry, BoundReport, Descriptors
from utils.closed_forms import (
    IndexValue,
    ImrichResult,
    bipartite_number,
    ceil_log,
    friendship_index_formula,
    imrich,
)
from utils.distinguishing import distinguishing_index, distinguishing_number
from utils.errors import GraphInputError, InapplicableError, ResourceCapError
from utils.graph import (
    Graph,
    JoinGraph,
    are_isomorphic,
    cartesian_product,
    complete,
    complete_bipartite,
    friendship,
    has_hamiltonian_path,
    iterated_join,
    join,
    min_degree,
)
from utils.graph_io import write_graph6
from utils.join_partition import (
    analyze,
    bipartite_index,
    construct_join_vertex_labeling,
    construct_self_join_labeling,
    lambda_bounds,
)

logger = logging.getLogger("symbreak.bounds")

__all__ = [
    "ImrichResult",
    "IndexValue",
    "ceil_log",
    "imrich",
    "friendship_index_formula",
    "check_sandwich",
    "djoin_bound",
    "self_join_bound",
    "spanning_index_bound",
    "spanning_number_bound",
    "order_ratio_bound",
    "min_degree_bound",
    "traceable_bound",
    "iterated_self_join",
    "imrich_check",
    "friendship_check",
    "full_report",
]


def _number(g: Graph) -> tuple[int | None, str | None]:
    try:
        return distinguishing_number(g).value, None
    except ResourceCapError as exc:
        logger.warning("D(%s) skipped: %s", g.name or g, exc)
        return None, str(exc)


def _index(g: Graph) -> tuple[int | None, bool, str | None]:
    """(value, defined, reason)."""
    try:
        result = distinguishing_index(g)
        return result.value, result.defined, None
    except ResourceCapError as exc:
        logger.warning("D'(%s) skipped: %s", g.name or g, exc)
        return None, True, str(exc)


def upper_entry(theorem: str, bound: IndexValue | int, exact: int | None, **kw) -> BoundEntry:
    """BoundEntry for an upper bound, checked against the exact value when there is one."""
    if isinstance(bound, int):
        bound = IndexValue.exact(bound, theorem)
    holds = tight = None
    if exact is not None and bound.defined:
        holds = bound.hi is None or exact <= bound.hi
        tight = bound.is_exact and exact == bound.lo
    return BoundEntry(theorem=theorem, kind="upper", applicable=True, bound=bound.to_json(),
                      exact=exact, holds=holds, tight=tight, **kw)


def _inapplicable(theorem: str, reason: str, kind: str = "upper", **kw) -> BoundEntry:
    return BoundEntry(theorem=theorem, kind=kind, applicable=False, reason=reason, **kw)


# ----------------------------------------------------------------------
# Vertex bounds
# ----------------------------------------------------------------------

def check_sandwich(g1: Graph, g2: Graph, exact_join: int | None = None, compute_exact: bool = True) -> BoundEntry:
    """max(D1, D2) <= D(G1 + G2) <= D1 + D2 for connected G1, G2."""
    d1, r1 = _number(g1)
    d2, r2 = _number(g2)
    if d1 is None or d2 is None:
        return _inapplicable("thh5", r1 or r2, kind="sandwich")
    if exact_join is None and compute_exact:
        exact_join, reason = _number(join(g1, g2).graph)
        if exact_join is None:
            return _inapplicable("thh5", reason, kind="sandwich")
    lo, hi = max(d1, d2), d1 + d2
    connected = g1.is_connected() and g2.is_connected()
    return BoundEntry(
        theorem="thh5",
        kind="sandwich",
        applicable=True,
        bound=[lo, hi],
        exact=exact_join,
        holds=None if exact_join is None else lo <= exact_join <= hi,
        tight=None if exact_join is None else exact_join in (lo, hi),
        hypothesis_violated=not connected,
        reason=None if connected else "a side is disconnected",
        detail={"D1": d1, "D2": d2},
    )


def djoin_bound(jg: JoinGraph, gs=None, exact_join: int | None = None, compute_exact: bool = True) -> BoundEntry:
    """q = 0: D(G1 + G2) = max(D1, D2). q > 0: D(G1 + G2) <= max(D1, D2) + z."""
    if are_isomorphic(jg.left, jg.right):
        return _inapplicable("djoin", "sides are isomorphic; see selfjoin")
    d1, r1 = _number(jg.left)
    d2, r2 = _number(jg.right)
    if d1 is None or d2 is None:
        return _inapplicable("djoin", r1 or r2)
    gs = analyze(jg) if gs is None else gs
    if exact_join is None and compute_exact:
        exact_join, _ = _number(jg.graph)
    base = max(d1, d2)
    detail = {"D1": d1, "D2": d2, "q": gs.q, "z": gs.z}
    try:
        detail["constructed_labels"] = construct_join_vertex_labeling(jg.left, jg.right).label_count
    except ResourceCapError as exc:
        detail["constructed_labels"] = None
        logger.warning("join labeling of %s skipped: %s", jg.graph.name, exc)
    if gs.q == 0:
        holds = None if exact_join is None else exact_join == base
        return BoundEntry(theorem="djoin", kind="equality", applicable=True, bound=base, exact=exact_join,
                          holds=holds, tight=holds, detail=detail)
    return upper_entry("djoin", base + gs.z, exact_join, detail=detail)


def self_join_bound(g: Graph, exact_join: int | None = None, compute_exact: bool = True) -> BoundEntry:
    """D(G) <= D(G + G) <= D(G) + max n_i."""
    d, reason = _number(g)
    if d is None:
        return _inapplicable("selfjoin", reason, kind="sandwich")
    jg = join(g, g)
    gs = analyze(jg)
    hi = d + max(gs.iso.n)
    exact, reason = exact_join, None
    if exact is None and compute_exact:
        exact, reason = _number(jg.graph)
    detail = {"D": d, "max_n": max(gs.iso.n)}
    try:
        detail["constructed_labels"] = construct_self_join_labeling(g).label_count
    except ResourceCapError as exc:
        detail["constructed_labels"] = None
        logger.warning("self-join labeling of %s skipped: %s", g.name, exc)
    holds = None if exact is None else d <= exact <= hi
    return BoundEntry(theorem="selfjoin", kind="sandwich", applicable=True, bound=[d, hi], exact=exact,
                      holds=holds, tight=None if exact is None else exact == hi, reason=reason, detail=detail)


# ----------------------------------------------------------------------
# Index bounds
# ----------------------------------------------------------------------

def spanning_index_bound(n: int, m: int) -> IndexValue:
    """D'(K_{n,m}) + 1."""
    if n < 1 or m < 1:
        raise GraphInputError(f"orders must be >= 1, got {n}, {m}")
    value = bipartite_index(n, m)
    if not value.defined:
        raise InapplicableError(f"D'(K{n},{m}) is not defined")
    return value.plus(1)


def spanning_number_bound(n: int, m: int) -> int:
    """D(K_{n,m}) + 1."""
    return bipartite_number(n, m) + 1


def spanning_entries(n: int, m: int, exact_index: int | None) -> list[BoundEntry]:
    """Both readings of the spanning complete bipartite bound."""
    try:
        index_reading = upper_entry("spanning", spanning_index_bound(n, m), exact_index)
    except InapplicableError as exc:
        index_reading = _inapplicable("spanning", str(exc))
    number_reading = upper_entry("spanning_number", spanning_number_bound(n, m), exact_index)
    return [index_reading, number_reading]


def order_ratio_applies(n: int, m: int) -> bool:
    n, m = sorted((n, m))
    return 4 <= n <= m <= 2 * n


def order_ratio_bound(n: int, m: int, exact_index: int | None = None) -> BoundEntry:
    """4 <= n <= m <= 2n gives D'(G + H) <= 2."""
    if not order_ratio_applies(n, m):
        return _inapplicable("orderratio", f"orders ({n}, {m}) outside 4 <= n <= m <= 2n")
    return upper_entry("orderratio", 2, exact_index)


def min_degree_applies(g: Graph, h: Graph) -> bool:
    if min_degree(g) > min_degree(h):
        g, h = h, g
    n, m = g.n, h.n
    delta = min(min_degree(g) + m, min_degree(h) + n)
    return 2 * delta >= n + m - 1 and n + m >= 7


def min_degree_bound(g: Graph, h: Graph, exact_index: int | None = None) -> BoundEntry:
    """min(delta(G) + m, delta(H) + n) >= (n + m - 1)/2 and n + m >= 7 give D'(G + H) <= 2."""
    detail = {"delta_g": min_degree(g), "delta_h": min_degree(h)}
    if not min_degree_applies(g, h):
        return _inapplicable("mindegree", "minimum degree or order condition fails", detail=detail)
    return upper_entry("mindegree", 2, exact_index, detail=detail)


def traceable_bound(g: Graph, exact_index: int | None = None) -> BoundEntry:
    """Order >= 7 with a Hamiltonian path gives D'(G) <= 2."""
    if g.n < 7:
        return _inapplicable("traceable", f"order {g.n} < 7")
    try:
        traceable = has_hamiltonian_path(g)
    except ResourceCapError as exc:
        return _inapplicable("traceable", str(exc))
    if not traceable:
        return _inapplicable("traceable", "no Hamiltonian path")
    return upper_entry("traceable", 2, exact_index)


def iterated_self_join(g: Graph, k: int) -> BoundEntry:
    """D'(G + ... + G) = 2 for k >= 2 copies, except D'(K2 + K2) = 3."""
    if k < 2:
        raise GraphInputError(f"need at least two copies, got {k}")
    if g.n < 2 or not g.is_connected():
        raise GraphInputError("iterated self-join needs a connected graph of order >= 2")
    expected = 3 if (k == 2 and g.n == 2) else 2
    try:
        result = distinguishing_index(iterated_join(g, k))
    except ResourceCapError as exc:
        return _inapplicable("iterated", str(exc), kind="equality", bound=expected, detail={"k": k})
    return BoundEntry(theorem="iterated", kind="equality", applicable=True, bound=expected, exact=result.value,
                      holds=result.value == expected, tight=result.value == expected, detail={"k": k})


def lambda_entries(jg: JoinGraph, gs, exact_index: int | None) -> tuple[list[BoundEntry], object]:
    """thmd1 and thmd2 entries, plus the lambda bounds they came from."""
    try:
        lb = lambda_bounds(jg, gs)
    except ResourceCapError as exc:
        reason = str(exc)
        return [_inapplicable("thmd1", reason), _inapplicable("thmd2", reason)], None
    if lb.lambda1 is None:
        undefined = ", ".join(f"Gamma'_{i + 1}" for i in lb.undefined_classes)
        first = _inapplicable("thmd1", f"D' not defined for {undefined}")
    else:
        first = upper_entry("thmd1", lb.lambda1, exact_index)
    if lb.lambda2 is None:
        second = _inapplicable("thmd2", "no cover with every pair defined")
    else:
        second = upper_entry("thmd2", lb.lambda2, exact_index, detail={"cover": lb.witness_cover.to_dict()})
    return [first, second], lb


# ----------------------------------------------------------------------
# Closed-form cross-checks
# ----------------------------------------------------------------------

def imrich_check(k: int, n: int) -> BoundEntry:
    """imrich(k, n) against the exact D'(K_{k,n}); k = n is only flagged."""
    result = imrich(k, n)
    detail = result.to_dict()
    if k == n:
        return _inapplicable("imrich", "k = n: Aut(K_{k,k}) differs from Aut(K_k [] K_k)", kind="value",
                             bound=result.as_index().to_json(), detail=detail)
    exact, _, reason = _index(complete_bipartite(k, n))
    holds = None if exact is None else result.as_index().contains(exact)
    return BoundEntry(theorem="imrich", kind="value", applicable=True, bound=result.as_index().to_json(),
                      exact=exact, holds=holds, tight=None if exact is None else result.is_exact,
                      reason=reason, detail=detail)


def imrich_product_check(k: int, n: int) -> BoundEntry:
    """The same formula read on D(K_k [] K_n)."""
    result = imrich(k, n)
    exact, reason = _number(cartesian_product(complete(k), complete(n)))
    holds = None if exact is None else result.as_index().contains(exact)
    return BoundEntry(theorem="imrich_product", kind="value", applicable=True,
                      bound=result.as_index().to_json(), exact=exact, holds=holds, reason=reason,
                      detail=result.to_dict())


def friendship_check(n: int) -> BoundEntry:
    """friendship_index_formula(n) against the exact D'(F_n)."""
    value = friendship_index_formula(n)
    exact, _, reason = _index(friendship(n))
    holds = None if exact is None else exact == value
    return BoundEntry(theorem="friendship", kind="value", applicable=True, bound=value, exact=exact,
                      holds=holds, tight=holds, reason=reason or (None if exact is not None else "unverified"))


# ----------------------------------------------------------------------
# Report
# ----------------------------------------------------------------------

def full_report(g1: Graph, g2: Graph, exact: bool = True, threads: int | None = None) -> BoundReport:
    """Every applicable check for G1 + G2, with exact values where the caps allow."""
    t0 = time.time()
    jg = join(g1, g2)
    gs = analyze(jg)

    exact_number = exact_index = None
    if exact:
        with ThreadPoolExecutor(max_workers=threads or config.THREADS) as pool:
            side_numbers = [pool.submit(_number, g) for g in (g1, g2)]
            join_number = pool.submit(_number, jg.graph)
            join_index = pool.submit(_index, jg.graph)
            for f in side_numbers:
                f.result()
            exact_number = join_number.result()[0]
            exact_index = join_index.result()[0]

    entries: list[BoundEntry] = [check_sandwich(g1, g2, exact_number, compute_exact=False)]
    if are_isomorphic(g1, g2):
        entries.append(_inapplicable("djoin", "sides are isomorphic; see selfjoin"))
        entries.append(self_join_bound(g1, exact_number, compute_exact=False))
    else:
        entries.append(djoin_bound(jg, gs, exact_number, compute_exact=False))
    entries.extend(spanning_entries(g1.n, g2.n, exact_index))
    entries.append(order_ratio_bound(g1.n, g2.n, exact_index))
    entries.append(min_degree_bound(g1, g2, exact_index))
    entries.append(traceable_bound(jg.graph, exact_index))
    lam, lb = lambda_entries(jg, gs, exact_index)
    entries.extend(lam)

    descriptors = Descriptors(
        n=g1.n,
        m=g2.n,
        delta1=min_degree(g1),
        delta2=min_degree(g2),
        k=gs.partition.k,
        k_prime=gs.partition.k_prime,
        q=gs.q,
        z=gs.z,
        lambda1=None if lb is None else lb.lambda1,
        lambda2=None if lb is None or lb.lambda2 is None else lb.lambda2.to_json(),
        cover_pairs=None if lb is None or lb.witness_cover is None else [list(p) for p in lb.witness_cover.pairs],
    )
    violations = [e.theorem for e in entries if e.violated]
    if violations:
        logger.error("%s: violated %s", jg.graph.name, ", ".join(violations))
    logger.info("Report for %s done in %.1fs", jg.graph.name, time.time() - t0)
    return BoundReport(left=write_graph6(g1), right=write_graph6(g2), descriptors=descriptors,
                       entries=entries, violations=violations)
