"""JSON interchange documents shared by the CLI, the service, and the playground.

Three formats: posets (posetlab-v1), graphs (posetlab-graph-v1), and QBF
instances (posetlab-qbf-v1).  Point order in a poset file is the index order;
duplicate points or edges are rejected.
"""

from __future__ import annotations

import hashlib
import json
from typing import Optional, Union

from .errors import InvalidDocument
from .poset import BLACK, HD, REPRESENTATIONS, WHITE, Poset, from_edges
from .reductions import Digraph, QbfInstance, SimpleGraph

POSET_FORMAT = "posetlab-v1"
GRAPH_FORMAT = "posetlab-graph-v1"
QBF_FORMAT = "posetlab-qbf-v1"


def _expect(doc, key, types, what):
    if not isinstance(doc, dict) or key not in doc:
        raise InvalidDocument(f"{what} needs a {key!r} field")
    value = doc[key]
    if not isinstance(value, types):
        raise InvalidDocument(f"{what} field {key!r} has the wrong type")
    return value


def poset_to_doc(poset: Poset) -> dict:
    """Emit a poset as a Hasse-diagram document (cover edges only)."""
    points = []
    for i, label in enumerate(poset.labels):
        entry: dict = {"id": label}
        if poset.colors is not None:
            entry["color"] = poset.colors[i]
        points.append(entry)
    return {
        "format": POSET_FORMAT,
        "repr": HD,
        "points": points,
        "edges": [[lo, hi] for lo, hi in poset.covers()],
    }


def poset_from_doc(doc: dict) -> Poset:
    if _expect(doc, "format", str, "poset document") != POSET_FORMAT:
        raise InvalidDocument(f"expected format {POSET_FORMAT!r}")
    repr_ = _expect(doc, "repr", str, "poset document")
    if repr_ not in REPRESENTATIONS:
        raise InvalidDocument(f"repr must be one of {REPRESENTATIONS}")
    raw_points = _expect(doc, "points", list, "poset document")
    points = []
    seen = set()
    for entry in raw_points:
        label = _expect(entry, "id", str, "poset point")
        if label in seen:
            raise InvalidDocument(f"duplicate point id {label!r}")
        seen.add(label)
        color = entry.get("color")
        if color is not None and color not in (BLACK, WHITE):
            raise InvalidDocument(f"bad color {color!r} on point {label!r}")
        points.append((label, color))
    raw_edges = _expect(doc, "edges", list, "poset document")
    edges = []
    seen_edges = set()
    for pair in raw_edges:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InvalidDocument("edges must be [lo, hi] pairs")
        edge = (pair[0], pair[1])
        if edge in seen_edges:
            raise InvalidDocument(f"duplicate edge {edge!r}")
        seen_edges.add(edge)
        edges.append(edge)
    return from_edges(points, edges, repr_)


def digraph_to_doc(
    d: Digraph, s: Optional[int] = None, t: Optional[int] = None
) -> dict:
    doc = {
        "format": GRAPH_FORMAT,
        "directed": True,
        "n": d.n,
        "edges": [[u, v] for u, v in d.edges],
    }
    if s is not None:
        doc["s"] = s
    if t is not None:
        doc["t"] = t
    return doc


def simple_graph_to_doc(g: SimpleGraph) -> dict:
    return {
        "format": GRAPH_FORMAT,
        "directed": False,
        "n": g.n,
        "edges": [[u, v] for u, v in g.edges],
    }


def graph_from_doc(doc: dict) -> Union[SimpleGraph, Digraph]:
    if _expect(doc, "format", str, "graph document") != GRAPH_FORMAT:
        raise InvalidDocument(f"expected format {GRAPH_FORMAT!r}")
    directed = _expect(doc, "directed", bool, "graph document")
    n = _expect(doc, "n", int, "graph document")
    raw_edges = _expect(doc, "edges", list, "graph document")
    edges = []
    for pair in raw_edges:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise InvalidDocument("edges must be [u, v] pairs of vertex indices")
        u, v = pair
        if not (isinstance(u, int) and isinstance(v, int)):
            raise InvalidDocument("vertices must be integers")
        edges.append((u, v))
    cls = Digraph if directed else SimpleGraph
    return cls(n, tuple(edges))


def qbf_to_doc(inst: QbfInstance) -> dict:
    return {
        "format": QBF_FORMAT,
        "num_vars": inst.num_vars,
        "clauses": [list(c) for c in inst.clauses],
    }


def qbf_from_doc(doc: dict) -> QbfInstance:
    if _expect(doc, "format", str, "qbf document") != QBF_FORMAT:
        raise InvalidDocument(f"expected format {QBF_FORMAT!r}")
    num_vars = _expect(doc, "num_vars", int, "qbf document")
    raw = _expect(doc, "clauses", list, "qbf document")
    clauses = []
    for clause in raw:
        if not isinstance(clause, list) or not all(
            isinstance(lit, int) for lit in clause
        ):
            raise InvalidDocument("clauses must be lists of signed integers")
        clauses.append(tuple(clause))
    return QbfInstance(num_vars, tuple(clauses))


def poset_digest(poset: Poset) -> str:
    """Stable content digest of a poset, echoed by every solve response."""
    doc = poset_to_doc(poset)
    payload = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()[:32]
