"""Text formats: the line-oriented graph format, JSON reports and DOT export.

Graph format (UTF-8, one record per line, ``#`` starts a comment)::

    v <id> <height>            height is an integer or p/q
    e <tail> <head> <S|T>      S = sphere fiber, T = torus fiber

Edges are oriented by height; an edge listed high-to-low is flipped.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .blueprint import (
    CriticalPoint,
    MorseBlueprint,
    SummandAssignment,
    Validation,
    reconstruct_reeb,
)
from .classify import AdmissibleFamily, ManifoldClass, canonical_name
from .errors import ParseError, StructuralError
from .local_models import HandleMove, MoveKind
from .reeb_core import EdgeLabel, InvariantTriple, LabeledDigraph
from .rewrite import IntervalsOK, Normalized, Violation
from .simulate import Component, SurfaceInventory, Trace

_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_graph(text: str) -> LabeledDigraph:
    heights: Dict[str, Fraction] = {}
    vertex_line: Dict[str, int] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        tag = fields[0]
        if tag == "v":
            if len(fields) != 3:
                raise ParseError("expected 'v <id> <height>'", lineno)
            vid, h = fields[1], fields[2]
            if vid in heights:
                raise ParseError(f"duplicate vertex id {vid!r} (first on line {vertex_line[vid]})", lineno)
            if not _RATIONAL.fullmatch(h):
                raise ParseError(f"height {h!r} is not an integer or p/q rational", lineno)
            try:
                heights[vid] = Fraction(h)
            except ZeroDivisionError:
                raise ParseError(f"height {h!r} has zero denominator", lineno) from None
            vertex_line[vid] = lineno
        elif tag == "e":
            if len(fields) != 4:
                raise ParseError("expected 'e <tail> <head> <S|T>'", lineno)
            try:
                label = EdgeLabel.from_short(fields[3])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            edges.append((lineno, fields[1], fields[2], label))
        else:
            raise ParseError(f"unknown record type {tag!r}", lineno)
    oriented = []
    for lineno, u, v, label in edges:
        for end in (u, v):
            if end not in heights:
                raise ParseError(f"edge endpoint {end!r} is not a declared vertex", lineno)
        if u == v:
            raise ParseError(f"self-loop at {u!r}", lineno)
        if heights[u] == heights[v]:
            raise ParseError(f"edge {u}-{v} joins vertices of equal height {heights[u]}", lineno)
        if heights[v] < heights[u]:
            u, v = v, u
        oriented.append((u, v, label))
    if not heights:
        raise ParseError("no vertices")
    try:
        g = LabeledDigraph(heights, oriented)
    except StructuralError as exc:  # pragma: no cover - checked above
        raise ParseError(str(exc)) from exc
    if not g.is_connected():
        comps = g.components()
        raise ParseError(
            f"graph is disconnected: {len(comps)} components, e.g. {sorted(comps[1])[:3]} apart from {comps[0][0]!r}"
        )
    return g


def format_graph(g: LabeledDigraph) -> str:
    lines = [f"v {v} {h}" for v, h in g.heights.items()]
    lines += [f"e {e.tail} {e.head} {e.label.short}" for e in g.edges]
    return "\n".join(lines) + "\n"


def read_graph(path) -> LabeledDigraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# -- JSON -----------------------------------------------------------------


def _move_json(m: HandleMove) -> Dict[str, Any]:
    return {"kind": m.kind.value, "targets": list(m.targets)}


def _components_json(inv: SurfaceInventory) -> List[List[int]]:
    return [[c.genus, c.serial] for c in inv.components]


def graph_to_json(g: LabeledDigraph) -> Dict[str, Any]:
    return {
        "vertices": [{"id": v, "height": str(h)} for v, h in g.heights.items()],
        "edges": [
            {"index": i, "tail": e.tail, "head": e.head, "label": e.label.short}
            for i, e in enumerate(g.edges)
        ],
    }


def graph_from_json(d: Dict[str, Any]) -> LabeledDigraph:
    heights = {v["id"]: Fraction(v["height"]) for v in d["vertices"]}
    edges = [(e["tail"], e["head"], EdgeLabel.from_short(e["label"])) for e in d["edges"]]
    return LabeledDigraph(heights, edges)


def blueprint_to_json(bp: MorseBlueprint) -> Dict[str, Any]:
    return {
        "graph": graph_to_json(bp.source),
        "critical_points": [
            {"value": str(cp.value), "index": cp.index, "move": _move_json(cp.move), "owner": cp.owner}
            for cp in bp.critical_points
        ],
        "surplus": {v: bp.surplus[v] for v in bp.source.vertices},
        "summands": [{"edge": e, "summand": str(bp.summands[e])} for e in sorted(bp.summands)],
        "inventories": [_components_json(inv) for inv in bp.inventories],
        "edge_components": [
            {"edge": e, "serial": bp.edge_components[e]} for e in sorted(bp.edge_components)
        ],
    }


def blueprint_from_json(d: Dict[str, Any]) -> MorseBlueprint:
    cps = tuple(
        CriticalPoint(
            Fraction(c["value"]),
            c["index"],
            HandleMove(MoveKind(c["move"]["kind"]), tuple(c["move"]["targets"])),
            c["owner"],
        )
        for c in d["critical_points"]
    )
    return MorseBlueprint(
        source=graph_from_json(d["graph"]),
        critical_points=cps,
        surplus=dict(d["surplus"]),
        summands={s["edge"]: SummandAssignment.parse(s["summand"]) for s in d["summands"]},
        inventories=tuple(
            SurfaceInventory(tuple(Component(g, s) for g, s in comps)) for comps in d["inventories"]
        ),
        edge_components={x["edge"]: x["serial"] for x in d["edge_components"]},
    )


def trace_to_json(t: Trace) -> Dict[str, Any]:
    return {
        "start": list(t.start.genera),
        "steps": [
            {
                "before": list(s.before.genera),
                "move": _move_json(s.move),
                "after": list(s.after.genera),
                "spheres": s.after.spheres(),
                "tori": s.after.tori(),
            }
            for s in t.steps
        ],
        "final": list(t.final.genera),
    }


def manifold_to_json(m: ManifoldClass) -> Dict[str, Any]:
    return {"r": m.r, "lenses": [list(pq) for pq in m.lenses], "name": canonical_name(m)}


def to_jsonable(value: Any) -> Any:
    """Convert any report value produced by this package into plain JSON data."""
    if isinstance(value, LabeledDigraph):
        return graph_to_json(value)
    if isinstance(value, MorseBlueprint):
        return blueprint_to_json(value)
    if isinstance(value, Trace):
        return trace_to_json(value)
    if isinstance(value, ManifoldClass):
        return manifold_to_json(value)
    if isinstance(value, Validation):
        return {
            "accepted": value.accepted,
            "reasons": [{"code": r.code, "vertex": r.subject} for r in value.reasons],
        }
    if isinstance(value, InvariantTriple):
        return {"a": value.a, "b": value.b, "c": value.c}
    if isinstance(value, AdmissibleFamily):
        return {
            "a": value.a,
            "b": value.b,
            "c": value.c,
            "min_r": value.min_r,
            "max_lenses": value.max_lenses,
            "description": value.describe(),
        }
    if isinstance(value, Normalized):
        return {
            "graph": graph_to_json(value.graph),
            "summands": [str(s) for s in value.summands],
            "forced_surplus": list(value.forced),
        }
    if isinstance(value, IntervalsOK):
        return {"intervals_ok": True, "count": value.count}
    if isinstance(value, Violation):
        return {"intervals_ok": False, "violation": value.detail, "vertex": value.vertex}
    if isinstance(value, SummandAssignment):
        return str(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    return value


def emit_report(value: Any) -> str:
    return json.dumps(to_jsonable(value), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# -- DOT ------------------------------------------------------------------

_EDGE_STYLE = {
    EdgeLabel.SPHERE: 'color=blue, style=solid',
    EdgeLabel.TORUS: 'color=red, style=dashed',
}
_FIBER = {EdgeLabel.SPHERE: "S^2", EdgeLabel.TORUS: "T^2"}


def _q(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: LabeledDigraph, bp: Optional[MorseBlueprint] = None, name: str = "reeb") -> str:
    """DOT digraph with vertices ranked by height, drawn bottom to top.

    With a blueprint, the graph exported is the one reconstructed from it;
    vertices list their handle moves and edges name their fiber.
    """
    moves: Dict[str, List[str]] = {}
    if bp is not None:
        g = reconstruct_reeb(bp)
        for cp in bp.critical_points:
            moves.setdefault(cp.owner, []).append(str(cp.move.kind.value))
    out = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=circle];"]
    levels: Dict[Fraction, List[str]] = {}
    for v in g.height_order():
        levels.setdefault(g.heights[v], []).append(v)
    for h, vs in levels.items():
        out.append("  { rank=same; " + " ".join(_q(v) + ";" for v in vs) + " }")
    for v in g.vertices:
        label = f"{v}\\nh={g.heights[v]}"
        if v in moves:
            label += "\\n" + ",".join(moves[v])
        out.append(f"  {_q(v)} [label=\"{label}\"];")
    for i, e in enumerate(g.edges):
        attrs = [_EDGE_STYLE[e.label]]
        label = f"e{i}:{e.label.short}"
        if bp is not None:
            label = f"{_FIBER[e.label]}"
        attrs.append(f'label="{label}"')
        out.append(f"  {_q(e.tail)} -> {_q(e.head)} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"
