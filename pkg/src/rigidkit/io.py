"""JSON and DOT serialization for graphs, frameworks, moves and reports.

Wire formats:
  graph      {"n": int, "edges": [[i, j], ...]}            (pairs ascending)
  norm       {"type": "lq", "q": 3.0}
             {"type": "polytope", "facets": [[..], ..]}
             {"type": "linf"} / {"type": "l1"}             (planar aliases)
  framework  {"graph": .., "placement": [[x, y], ..], "norm": ..}
  sequence   {"start": graph, "moves": [{"type": "h1", ..}, ..]}

JSON output is canonical (sorted keys, fixed indentation), so identical
inputs yield byte-identical files.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import RigidkitError
from .frameworks import Framework, RigidityReport
from .graph import Graph, validate_graph
from .moves import H1Move, H2Move, Move, MoveSequence, V4CMove, VK4Move, VSplitMove
from .norms import L1_FACETS_2D, LINF_FACETS_2D, LqNorm, NormSpec, PolytopeNorm
from .polytope import FrameworkColouring, TreeCriteria


class FormatError(RigidkitError):
    """Malformed input document."""


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _as_list(x) -> list:
    if isinstance(x, np.ndarray):
        return x.tolist()
    return list(x)


# -- graphs ------------------------------------------------------------

def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(doc: dict) -> Graph:
    try:
        return validate_graph(doc["n"], doc["edges"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed graph document: {exc!r}") from exc


# -- norms -------------------------------------------------------------

def norm_to_json(norm: NormSpec) -> dict:
    if isinstance(norm, LqNorm):
        return {"type": "lq", "q": norm.q}
    return {"type": "polytope", "facets": norm.facets.tolist()}


def norm_from_json(doc: dict) -> NormSpec:
    try:
        kind = doc["type"]
        if kind == "lq":
            return LqNorm(float(doc["q"]))
        if kind == "polytope":
            return PolytopeNorm(np.array(doc["facets"], dtype=float))
        if kind == "linf":
            return PolytopeNorm(np.array(LINF_FACETS_2D))
        if kind == "l1":
            return PolytopeNorm(np.array(L1_FACETS_2D))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed norm document: {exc!r}") from exc
    raise FormatError(f"unknown norm type {kind!r}")


# -- frameworks ---------------------------------------------------------

def framework_to_json(f: Framework) -> dict:
    return {
        "graph": graph_to_json(f.graph),
        "placement": f.placement.tolist(),
        "norm": norm_to_json(f.norm),
    }


def framework_from_json(doc: dict) -> Framework:
    try:
        graph = graph_from_json(doc["graph"])
        placement = np.array(doc["placement"], dtype=float)
        norm = norm_from_json(doc["norm"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed framework document: {exc!r}") from exc
    return Framework(graph, placement, norm)


# -- moves --------------------------------------------------------------

def move_to_json(move: Move) -> dict:
    if isinstance(move, H1Move):
        return {"type": "h1", "v1": move.v1, "v2": move.v2}
    if isinstance(move, H2Move):
        return {"type": "h2", "v1": move.v1, "v2": move.v2, "v3": move.v3}
    if isinstance(move, V4CMove):
        return {"type": "v4c", "v1": move.v1, "v2": move.v2, "v3": move.v3,
                "reassigned": [list(e) for e in move.reassigned]}
    if isinstance(move, VSplitMove):
        return {"type": "vsplit", "v1": move.v1, "v2": move.v2,
                "reassigned": [list(e) for e in move.reassigned]}
    if isinstance(move, VK4Move):
        return {"type": "vk4", "v1": move.v1,
                "assignment": [list(a) for a in move.assignment]}
    raise FormatError(f"unknown move {move!r}")


def move_from_json(doc: dict) -> Move:
    try:
        kind = doc["type"]
        if kind == "h1":
            return H1Move(int(doc["v1"]), int(doc["v2"]))
        if kind == "h2":
            return H2Move(int(doc["v1"]), int(doc["v2"]), int(doc["v3"]))
        if kind == "v4c":
            return V4CMove(int(doc["v1"]), int(doc["v2"]), int(doc["v3"]),
                           tuple((int(a), int(b)) for a, b in doc.get("reassigned", [])))
        if kind == "vsplit":
            return VSplitMove(int(doc["v1"]), int(doc["v2"]),
                              tuple((int(a), int(b)) for a, b in doc.get("reassigned", [])))
        if kind == "vk4":
            return VK4Move(int(doc["v1"]),
                           tuple((int(u), int(j)) for u, j in doc.get("assignment", [])))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed move document: {exc!r}") from exc
    raise FormatError(f"unknown move type {kind!r}")


def sequence_to_json(seq: MoveSequence) -> dict:
    return {"start": graph_to_json(seq.start), "moves": [move_to_json(m) for m in seq.moves]}


def sequence_from_json(doc: dict) -> MoveSequence:
    try:
        start = graph_from_json(doc["start"])
        moves = tuple(move_from_json(m) for m in doc["moves"])
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed sequence document: {exc!r}") from exc
    return MoveSequence(start, moves)


# -- reports ------------------------------------------------------------

def report_to_json(report: RigidityReport) -> dict:
    return {
        "matrix_rows": report.matrix_rows,
        "matrix_cols": report.matrix_cols,
        "rank": report.rank,
        "nullity": report.nullity,
        "flex_basis": _as_list(report.flex_basis),
        "trivial_dim": report.trivial_dim,
        "is_rigid": report.is_rigid,
        "is_minimal": report.is_minimal,
        "singular_values": _as_list(report.singular_values),
        "tolerance_used": report.tolerance_used,
    }


def colouring_to_json(col: FrameworkColouring) -> dict:
    return {
        "well_positioned": col.well_positioned,
        "colours": [[list(e), k] for e, k in sorted(col.colours.items())],
        "offending_edges": [list(e) for e in col.offending_edges],
    }


def criteria_to_json(crit: TreeCriteria) -> dict:
    return {
        "colour_spans": {str(k): v for k, v in crit.colour_spans.items()},
        "used_colours": list(crit.used_colours),
        "sufficient_holds": crit.sufficient_holds,
        "spanning_tree_pair": crit.spanning_tree_pair,
        "trees": None if crit.trees is None else [[list(e) for e in t] for t in crit.trees],
    }


# -- document sniffing ---------------------------------------------------

def load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected a JSON object")
    return doc


def document_kind(doc: dict) -> str:
    if "placement" in doc:
        return "framework"
    if "moves" in doc:
        return "sequence"
    if "edges" in doc and "n" in doc:
        return "graph"
    raise FormatError("document is not a graph, framework or move sequence")


# -- DOT export ----------------------------------------------------------

DOT_COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def edge_colour_name(k: int | None) -> str:
    if k is None:
        return "#7f7f7f"
    return DOT_COLOURS[(k - 1) % len(DOT_COLOURS)]


def graph_to_dot(g: Graph, colours: dict | None = None, placement=None) -> str:
    lines = ["graph framework {", "  node [shape=circle fontsize=10];"]
    for v in range(g.n):
        attrs = ""
        if placement is not None:
            x, y = placement[v]
            attrs = f' [pos="{x},{y}!"]'
        lines.append(f"  {v}{attrs};")
    for e in g.edges:
        attrs = ""
        if colours is not None:
            k = colours.get(e)
            attrs = f' [color="{edge_colour_name(k)}" label="{k if k is not None else "?"}"]'
        lines.append(f"  {e[0]} -- {e[1]}{attrs};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def framework_to_dot(f: Framework, colouring: FrameworkColouring | None = None) -> str:
    colours = None
    if colouring is not None:
        colours = dict(colouring.colours)
    return graph_to_dot(f.graph, colours=colours, placement=f.placement)
