"""Graph-level surgery on torus edges and structure of the torus-edge union.

Surgering a torus edge cuts out the neighbourhood of its torus fibers and
glues in a sphere cylinder.  On the digraph this only flips the edge label;
the removed piece is recorded as a connected summand.  Endpoints that become
degree-2 sphere-sphere vertices then need one surplus handle pair each; the
classification helpers below account for those forced pairs.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

from .blueprint import TRIVIAL, SummandAssignment, SummandKind, minimal_surplus, synthesize, validate
from .classify import ManifoldClass, classify_blueprint
from .errors import PreconditionError
from .local_models import SPHERE_CYLINDER
from .reeb_core import EdgeLabel, LabeledDigraph, VertexId, vertex_profile


def torus_edge_surgery(
    g: LabeledDigraph, e: int, s: SummandAssignment = TRIVIAL
) -> Tuple[LabeledDigraph, SummandAssignment]:
    if not 0 <= e < len(g.edges) or g.edges[e].label is not EdgeLabel.TORUS:
        raise PreconditionError(f"edge {e} is not a torus edge")
    verdict = validate(g)
    if not verdict:
        raise PreconditionError("graph rejected: " + ", ".join(map(str, verdict.reasons)))
    return g.relabel(e, EdgeLabel.SPHERE), s


@dataclass(frozen=True)
class Normalized:
    graph: LabeledDigraph
    summands: Tuple[SummandAssignment, ...]
    forced: Tuple[VertexId, ...]
    """Vertices that became sphere-sphere degree-2 only because of surgery."""


def normalize(
    g: LabeledDigraph,
    s: Optional[Mapping[int, SummandAssignment]] = None,
    order: Optional[Sequence[int]] = None,
) -> Normalized:
    """Surger every torus edge, by default in increasing edge index.

    ``order`` permutes the surgery sequence; the result does not depend on it.
    """
    s = dict(s or {})
    torus = list(g.torus_edges())
    order = list(torus if order is None else order)
    if sorted(order) != torus:
        raise PreconditionError("order must list every torus edge exactly once")
    before = {v for v in g.vertices if vertex_profile(g, v) == SPHERE_CYLINDER}
    extracted = []
    h = g
    for e in order:
        h, piece = torus_edge_surgery(h, e, s.get(e, TRIVIAL))
        extracted.append(piece)
    forced = tuple(
        v for v in h.vertices if vertex_profile(h, v) == SPHERE_CYLINDER and v not in before
    )
    return Normalized(h, tuple(sorted(extracted, key=str)), forced)


def combine(m: ManifoldClass, summands: Sequence[SummandAssignment], forced: int = 0) -> ManifoldClass:
    """Connect-sum extracted summands back onto ``m``, dropping ``forced`` surplus pairs."""
    r = m.r - forced
    lenses = list(m.lenses)
    for piece in summands:
        if piece.kind is SummandKind.SPHERE_BUNDLE:
            r += 1
        elif piece.kind is SummandKind.LENS:
            lenses.append((piece.p, piece.q))
    return ManifoldClass(r, tuple(lenses))


def normalized_classification(n: Normalized, k: Mapping[VertexId, int]) -> ManifoldClass:
    """Classify the original manifold through its all-sphere normal form.

    ``k`` is the surplus used on the original graph (missing vertices get
    their minimum); each forced vertex gets
    one extra pair so the normalized graph synthesizes, and that pair is
    subtracted again when the summands are glued back.
    """
    k2 = minimal_surplus(n.graph)
    for v in k2:
        if v in n.forced:
            k2[v] = k.get(v, 0) + 1
        elif v in k:
            k2[v] = k[v]
    bp = synthesize(n.graph, k2, {})
    return combine(classify_blueprint(bp), n.summands, forced=len(n.forced))


# -- torus-edge union ---------------------------------------------------


@dataclass(frozen=True)
class IntervalsOK:
    count: int


@dataclass(frozen=True)
class Violation:
    detail: str
    vertex: Optional[VertexId] = None


TorusUnion = Union[IntervalsOK, Violation]


def torus_union_structure(g: LabeledDigraph) -> TorusUnion:
    """Check that the union of torus edges is a disjoint union of simple paths."""
    torus = g.torus_edges()
    deg: Dict[VertexId, int] = defaultdict(int)
    parent: Dict[VertexId, VertexId] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in torus:
        e = g.edges[i]
        for v in (e.tail, e.head):
            deg[v] += 1
            parent.setdefault(v, v)
    for v in sorted(deg):
        if deg[v] > 2:
            return Violation("BranchInTorusUnion", v)
    for i in torus:
        e = g.edges[i]
        a, b = find(e.tail), find(e.head)
        if a == b:
            return Violation("CycleInTorusUnion", e.tail)
        parent[a] = b
    return IntervalsOK(len({find(v) for v in parent}))
