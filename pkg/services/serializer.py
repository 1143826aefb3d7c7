"""
Serialization helpers: numpy/set sanitising, JSON emission for the pydantic
models, the corpus CSV layout and witness re-reading.
"""

import csv
import hashlib
import io
import json
from typing import Iterable

import numpy as np
from pydantic import BaseModel

from models.schemas import BoundReport, GammaCertificate, Witness
from utils.distinguishing import EdgeLabeling, Labeling, is_distinguishing, is_distinguishing_edges
from utils.errors import GraphInputError
from utils.graph import Graph
from utils.graph_io import write_graph6

CORPUS_HEADER = [
    "left", "right", "n", "m",
    "D1", "D2", "D_join", "Dprime_join",
    "q", "z", "lambda1", "lambda2",
    "sandwich_ok", "djoin_bound", "djoin_tight",
    "spanning_bound", "violations",
]


def sanitize(obj):
    """Recursively convert numpy scalars/arrays and sets into JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): sanitize(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted(sanitize(v) for v in obj)
    if isinstance(obj, (list, tuple)):
        return [sanitize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return sanitize(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def to_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2)


def dumps(obj) -> str:
    """Sanitised, indented JSON."""
    return json.dumps(sanitize(obj), indent=2, sort_keys=True)


def digest(g: Graph) -> str:
    """First 16 hex digits of the sha256 of the graph6 string."""
    return hashlib.sha256(write_graph6(g).encode("ascii")).hexdigest()[:16]


def gamma_certificate(data: dict) -> GammaCertificate:
    return GammaCertificate.model_validate(sanitize(data))


# ----------------------------------------------------------------------
# Witnesses
# ----------------------------------------------------------------------

def witness_model(labeling: Labeling | EdgeLabeling | None) -> Witness | None:
    if labeling is None:
        return None
    return Witness.model_validate(labeling.to_dict())


def read_witness(host: Graph, data: dict | str) -> Labeling | EdgeLabeling:
    """Parse a witness JSON object back into a labeling of ``host``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphInputError(f"witness is not JSON: {exc}") from exc
    if data.get("labels") is not None:
        return Labeling.from_dict(host, data)
    if data.get("edge_labels") is not None:
        return EdgeLabeling.from_dict(host, data)
    raise GraphInputError("witness has neither 'labels' nor 'edge_labels'")


def reverify(host: Graph, data: dict | str) -> bool:
    """Re-reads a witness and checks it against the full automorphism group."""
    labeling = read_witness(host, data)
    if isinstance(labeling, Labeling):
        return is_distinguishing(host, labeling)
    return is_distinguishing_edges(host, labeling)


# ----------------------------------------------------------------------
# Corpus CSV
# ----------------------------------------------------------------------

def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, list):
        return "[" + ";".join("" if v is None else str(v) for v in value) + "]"
    return str(value)


def corpus_row(report: BoundReport) -> list[str]:
    """One CSV row of a bound report, in CORPUS_HEADER order."""
    by_id = {e.theorem: e for e in report.entries}
    d = report.descriptors
    sandwich = by_id.get("thh5")
    sides = sandwich.detail if sandwich is not None else {}
    index_entry = by_id.get("spanning_number")
    djoin = by_id.get("djoin")
    spanning = by_id.get("spanning")
    return [_cell(v) for v in (
        report.left, report.right, d.n, d.m,
        sides.get("D1"), sides.get("D2"),
        None if sandwich is None else sandwich.exact,
        None if index_entry is None else index_entry.exact,
        d.q, d.z, d.lambda1, d.lambda2,
        None if sandwich is None or not sandwich.applicable else sandwich.holds,
        None if djoin is None or not djoin.applicable else djoin.bound,
        None if djoin is None or not djoin.applicable else djoin.tight,
        None if spanning is None or not spanning.applicable else spanning.bound,
        " ".join(report.violations),
    )]


def write_csv(rows: Iterable[list[str]], stream: io.TextIOBase, header: list[str] = CORPUS_HEADER) -> None:
    """Header plus rows."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
        stream.flush()
