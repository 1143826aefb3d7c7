"""
Sweep orchestrator: runs theorem checks and corpus rows over a worker pool.

Every check is a plain function returning (passed, skipped, detail). The
registry maps a theorem id to a builder that expands a parsed range into
check instances. Results are collected in instance order, so output does not
depend on scheduling.
"""

import logging
import re
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

import config
from models.schemas import BoundEntry, CheckOutcome, RunManifest
from services.serializer import corpus_row, digest
from utils import bounds
from utils.automorphism import automorphisms
from utils.distinguishing import distinguishing_index
from utils.errors import GraphInputError, InapplicableError, InvariantViolation, ResourceCapError
from utils.graph import Graph, are_isomorphic, induced, join
from utils.join_partition import (
    analyze,
    construct_gamma_edge_labeling,
    cover_edge_labeling,
    lambda_bounds,
)
from utils.corpus import connected_graphs, corpus_pairs, random_pairs

logger = logging.getLogger("symbreak.runner")

DEFAULT_CORPUS_ORDER = 4

Result = tuple[bool, bool, dict]


@dataclass(frozen=True)
class Instance:
    theorem: str
    label: str
    check: Callable[[], Result]
    graphs: tuple[Graph, ...] = field(default=())


# ---------------------------------------------------------------------------
# Range parsing
# ---------------------------------------------------------------------------

_CORPUS_RE = re.compile(r"^corpus\s*(?:<=|≤)\s*(\d+)$")
_KEY_RE = re.compile(r"^([a-z_]+)\s*=\s*(\d+)(?:\s*\.\.\s*(\d+))?$")


def parse_range(text: str | None) -> dict:
    """'n=2..5,k=2' -> {'n': range(2, 6), 'k': range(2, 3)}; 'corpus<=6' -> {'corpus': 6}."""
    params: dict = {}
    if not text:
        return params
    for token in (t.strip() for t in text.split(",")):
        if not token:
            continue
        corpus = _CORPUS_RE.match(token)
        if corpus:
            params["corpus"] = int(corpus.group(1))
            continue
        m = _KEY_RE.match(token)
        if not m:
            raise GraphInputError(f"cannot parse range token {token!r}")
        lo = int(m.group(2))
        hi = int(m.group(3)) if m.group(3) else lo
        if hi < lo:
            raise GraphInputError(f"empty range {token!r}")
        params[m.group(1)] = range(lo, hi + 1)
    return params


# ---------------------------------------------------------------------------
# Checks
# ---------------------------------------------------------------------------

def _from_entry(entry: BoundEntry) -> Result:
    skipped = not entry.applicable or entry.holds is None
    return not entry.violated, skipped, entry.model_dump(exclude_none=True)


def _from_entries(entries: list[BoundEntry]) -> Result:
    passed = not any(e.violated for e in entries)
    skipped = all(not e.applicable or e.holds is None for e in entries)
    return passed, skipped, {e.theorem: e.model_dump(exclude_none=True) for e in entries}


def _exact_index(g: Graph) -> int | None:
    return distinguishing_index(g).value


def _check_class_permutation(g1: Graph, g2: Graph) -> Result:
    """Automorphisms of the join map closure classes onto closure classes."""
    jg = join(g1, g2)
    classes = analyze(jg).partition.classes()
    owner = np.empty(jg.graph.n, dtype=np.int32)
    for i, c in enumerate(classes):
        owner[list(c)] = i
    sizes = np.array([len(c) for c in classes])
    perms = automorphisms(jg.graph).perms
    for i, c in enumerate(classes):
        img = owner[perms[:, sorted(c)]]
        same = np.all(img == img[:, :1], axis=1) & (sizes[img[:, 0]] == len(c))
        if not same.all():
            row = int(np.flatnonzero(~same)[0])
            return False, False, {"class": sorted(c), "automorphism": perms[row].tolist()}
    return True, False, {"classes": len(classes), "group_order": len(perms)}


def _check_class_isomorphism(g1: Graph, g2: Graph) -> Result:
    """A class and its image under any automorphism induce isomorphic graphs."""
    jg = join(g1, g2)
    classes = analyze(jg).partition.classes()
    perms = automorphisms(jg.graph).perms
    for c in classes:
        members = sorted(c)
        images = {frozenset(int(v) for v in row) for row in perms[:, members]}
        base = induced(jg.graph, c)
        for image in images:
            if not are_isomorphic(base, induced(jg.graph, image)):
                return False, False, {"class": members, "image": sorted(image)}
    return True, False, {"classes": len(classes)}


def _check_restriction(g1: Graph, g2: Graph) -> Result:
    """Every automorphism fixes each Gamma support setwise, so it restricts to Gamma'_i."""
    jg = join(g1, g2)
    gs = analyze(jg)
    perms = automorphisms(jg.graph).perms
    for i, support in enumerate(gs.supports()):
        members = sorted(support)
        inside = np.isin(perms[:, members], members).all(axis=1)
        if not inside.all():
            row = int(np.flatnonzero(~inside)[0])
            return False, False, {"gamma": i, "support": members, "automorphism": perms[row].tolist()}
    return True, False, {"gamma_classes": len(gs)}


def _check_thmd1(g1: Graph, g2: Graph) -> Result:
    jg = join(g1, g2)
    gs = analyze(jg)
    lb = lambda_bounds(jg, gs)
    if lb.lambda1 is None:
        return True, True, {"reason": "a Gamma' index is not defined"}
    labeling = construct_gamma_edge_labeling(jg, gs)
    entry = bounds.upper_entry("thmd1", lb.lambda1, _exact_index(jg.graph))
    passed, skipped, detail = _from_entry(entry)
    detail["constructed_labels"] = labeling.label_count
    return passed and labeling.label_count <= lb.lambda1, skipped, detail


def _check_thmd2(g1: Graph, g2: Graph) -> Result:
    jg = join(g1, g2)
    gs = analyze(jg)
    lb = lambda_bounds(jg, gs)
    if lb.lambda2 is None:
        return True, True, {"reason": "no cover with every pair defined"}
    entry = bounds.upper_entry("thmd2", lb.lambda2, _exact_index(jg.graph))
    passed, skipped, detail = _from_entry(entry)
    try:
        labeling = cover_edge_labeling(jg, gs, lb.witness_cover)
        detail["constructed_labels"] = labeling.label_count
    except (ResourceCapError, InapplicableError) as exc:
        detail["construction"] = str(exc)
    return passed, skipped, detail


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

def _corpus(params: dict) -> list[Graph]:
    return connected_graphs(params.get("corpus", DEFAULT_CORPUS_ORDER), corpus_file=params.get("file"))


def _pairs(params: dict) -> list[tuple[Graph, Graph]]:
    pairs = corpus_pairs(_corpus(params))
    if "sample" in params:
        order = params["sample_order"][0] if "sample_order" in params else params.get("corpus", 5) + 1
        pairs += random_pairs(order, params["sample"][-1])
    return pairs


def _pair_label(g1: Graph, g2: Graph) -> str:
    return f"{g1.name or g1.n}+{g2.name or g2.n}"


def _pair_instances(theorem: str, check: Callable[[Graph, Graph], Result], params: dict,
                    keep: Callable[[Graph, Graph], bool] = lambda a, b: True) -> list[Instance]:
    return [
        Instance(theorem, _pair_label(g1, g2), lambda g1=g1, g2=g2: check(g1, g2), (g1, g2))
        for g1, g2 in _pairs(params) if keep(g1, g2)
    ]


def _build_thh5(params):
    return _pair_instances("thh5", lambda a, b: _from_entry(bounds.check_sandwich(a, b)), params)


def _build_djoin(params):
    return _pair_instances("djoin", lambda a, b: _from_entry(bounds.djoin_bound(join(a, b))), params,
                           keep=lambda a, b: not are_isomorphic(a, b))


def _build_selfjoin(params):
    return [Instance("selfjoin", g.name or str(g.n), lambda g=g: _from_entry(bounds.self_join_bound(g)), (g,))
            for g in _corpus(params)]


def _build_spanning(params):
    return _pair_instances(
        "spanning",
        lambda a, b: _from_entries(bounds.spanning_entries(a.n, b.n, _exact_index(join(a, b).graph))),
        params,
        keep=lambda a, b: (a.n, b.n) != (1, 1),
    )


def _build_orderratio(params):
    return _pair_instances(
        "orderratio",
        lambda a, b: _from_entry(bounds.order_ratio_bound(a.n, b.n, _exact_index(join(a, b).graph))),
        params,
        keep=lambda a, b: bounds.order_ratio_applies(a.n, b.n),
    )


def _build_mindegree(params):
    return _pair_instances(
        "mindegree",
        lambda a, b: _from_entry(bounds.min_degree_bound(a, b, _exact_index(join(a, b).graph))),
        params,
        keep=bounds.min_degree_applies,
    )


def _build_traceable(params):
    def check(a, b):
        g = join(a, b).graph
        return _from_entry(bounds.traceable_bound(g, _exact_index(g)))

    return _pair_instances("traceable", check, params, keep=lambda a, b: a.n + b.n >= 7)


def _build_iterated(params):
    orders = params.get("n", range(2, 5))
    copies = params.get("k", range(2, 3))
    graphs = [g for g in connected_graphs(max(orders), min_order=max(2, min(orders))) if g.n in orders]
    return [
        Instance("iterated", f"{g.name or g.n}x{k}", lambda g=g, k=k: _from_entry(bounds.iterated_self_join(g, k)), (g,))
        for g in graphs for k in copies
    ]


def _build_imrich(params):
    ks = params.get("k", range(2, 4))
    ns = params.get("n", range(2, 6))
    return [
        Instance("imrich", f"k={k},n={n}", lambda k=k, n=n: _from_entry(bounds.imrich_check(k, n)))
        for k in ks for n in ns if n >= 2 and k <= n
    ]


def _build_friendship(params):
    return [
        Instance("friendship", f"F{n}", lambda n=n: _from_entry(bounds.friendship_check(n)))
        for n in params.get("n", range(2, 4))
    ]


REGISTRY: dict[str, Callable[[dict], list[Instance]]] = {
    "thh5": _build_thh5,
    "djoin": _build_djoin,
    "selfjoin": _build_selfjoin,
    "spanning": _build_spanning,
    "orderratio": _build_orderratio,
    "mindegree": _build_mindegree,
    "iterated": _build_iterated,
    "thmd1": lambda p: _pair_instances("thmd1", _check_thmd1, p),
    "thmd2": lambda p: _pair_instances("thmd2", _check_thmd2, p),
    "imrich": _build_imrich,
    "friendship": _build_friendship,
    "lemma22": lambda p: _pair_instances("lemma22", _check_class_permutation, p),
    "cor23": lambda p: _pair_instances("cor23", _check_class_isomorphism, p),
    "rem": lambda p: _pair_instances("rem", _check_restriction, p),
    "traceable": _build_traceable,
}


def build_instances(theorem: str, params: dict) -> list[Instance]:
    """Expands one theorem id over a parsed range."""
    if theorem not in REGISTRY:
        raise GraphInputError(f"unknown theorem id {theorem!r}; known: {', '.join(sorted(REGISTRY))}")
    return REGISTRY[theorem](params)


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

def run_instance(instance: Instance, timings: bool = False) -> CheckOutcome:
    """Runs one check; cap errors are skipped, anything else unexpected fails with its traceback."""
    t0 = time.time()
    try:
        passed, skipped, detail = instance.check()
    except ResourceCapError as exc:
        logger.warning("Check '%s' on %s skipped: %s", instance.theorem, instance.label, exc)
        passed, skipped, detail = True, True, {"reason": str(exc)}
    except InvariantViolation as exc:
        logger.error("Check '%s' on %s violated: %s", instance.theorem, instance.label, exc)
        passed, skipped, detail = False, False, {"error": str(exc), "certificate": exc.certificate}
    except Exception as exc:
        tb = traceback.format_exc()
        logger.error("Check '%s' on %s failed: %s\n%s", instance.theorem, instance.label, exc, tb)
        passed, skipped, detail = False, False, {"error": f"{type(exc).__name__}: {exc}"}
    elapsed = round(time.time() - t0, 3)
    logger.info("Check '%s' on %s %s in %.1fs", instance.theorem, instance.label,
                "skipped" if skipped else ("passed" if passed else "FAILED"), elapsed)
    return CheckOutcome(
        theorem=instance.theorem,
        instance=instance.label,
        passed=passed,
        skipped=skipped,
        detail=detail,
        elapsed_s=elapsed if timings else None,
    )


def caps() -> dict:
    return {
        "aut_vertex_cap": config.AUT_VERTEX_CAP,
        "aut_max_elements": config.AUT_MAX_ELEMENTS,
        "edge_action_max_bytes": config.EDGE_ACTION_MAX_BYTES,
        "label_point_cap": config.LABEL_POINT_CAP,
        "time_budget_s": config.EXACT_TIME_BUDGET_S,
        "hamiltonian_path_cap": config.HAMILTONIAN_PATH_CAP,
        "exact_bipartite_max_edges": config.EXACT_BIPARTITE_MAX_EDGES,
        "sampled_witness_min_order": config.SAMPLED_WITNESS_MIN_ORDER,
    }


def verify(theorem: str, range_text: str | None = None, threads: int | None = None,
           timings: bool = False, corpus_file: str | None = None) -> RunManifest:
    """Sweeps one theorem over a range and returns the run manifest."""
    params = parse_range(range_text)
    if corpus_file:
        params["file"] = corpus_file
    instances = build_instances(theorem, params)
    logger.info("Verifying '%s' on %d instances", theorem, len(instances))
    with ThreadPoolExecutor(max_workers=threads or config.THREADS) as pool:
        outcomes = list(pool.map(lambda inst: run_instance(inst, timings), instances))
    digests = sorted({digest(g) for inst in instances for g in inst.graphs})
    failed = next((o for o in outcomes if not o.passed), None)
    command = f"verify --theorem {theorem}" + (f" --range {range_text}" if range_text else "")
    return RunManifest(
        tool_version=config.TOOL_VERSION,
        command=command,
        caps=caps(),
        input_digests=digests,
        entries=outcomes,
        passed=failed is None,
        failure=None if failed is None else failed.model_dump(),
    )


def corpus_rows(max_order: int, threads: int | None = None, corpus_file: str | None = None,
                exact: bool = True) -> Iterator[list[str]]:
    """One CSV row per unordered pair, streamed in corpus order."""
    pairs = corpus_pairs(connected_graphs(max_order, corpus_file=corpus_file))
    logger.info("Corpus up to order %d: %d pairs", max_order, len(pairs))

    def row(pair):
        return corpus_row(bounds.full_report(*pair, exact=exact, threads=1))

    with ThreadPoolExecutor(max_workers=threads or config.THREADS) as pool:
        yield from pool.map(row, pairs)
