"""Labeled Reeb digraphs and their classification invariants.

A :class:`LabeledDigraph` is a finite multigraph whose vertices carry exact
rational heights and whose edges carry a fiber label, either a 2-sphere or a
torus.  Edges are always stored oriented from the lower to the higher
endpoint.
"""

from __future__ import annotations

import enum
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple

from .errors import StructuralError

VertexId = str


class EdgeLabel(enum.IntEnum):
    """Fiber type over the interior of an edge (value of the labeling map)."""

    SPHERE = 0
    TORUS = 1

    @property
    def short(self) -> str:
        return "S" if self is EdgeLabel.SPHERE else "T"

    @classmethod
    def from_short(cls, text: str) -> "EdgeLabel":
        try:
            return {"S": cls.SPHERE, "T": cls.TORUS}[text]
        except KeyError:
            raise ValueError(f"unknown edge label {text!r} (expected S or T)") from None


class Extremality(enum.Enum):
    LOCAL_MIN = "LocalMin"
    LOCAL_MAX = "LocalMax"
    NOT_EXTREMAL = "NotExtremal"


class Edge(NamedTuple):
    tail: VertexId
    head: VertexId
    label: EdgeLabel


class VertexProfile(NamedTuple):
    """Incoming/outgoing edge counts at a vertex, split by label."""

    i_S: int
    i_T: int
    o_S: int
    o_T: int

    @property
    def degree(self) -> int:
        return self.i_S + self.i_T + self.o_S + self.o_T

    @property
    def incoming(self) -> int:
        return self.i_S + self.i_T

    @property
    def outgoing(self) -> int:
        return self.o_S + self.o_T

    @property
    def extremality(self) -> Extremality:
        if self.incoming == 0:
            return Extremality.LOCAL_MIN
        if self.outgoing == 0:
            return Extremality.LOCAL_MAX
        return Extremality.NOT_EXTREMAL


class InvariantTriple(NamedTuple):
    """``a`` first Betti number, ``b`` sphere-sphere degree-2 vertices, ``c`` torus edges."""

    a: int
    b: int
    c: int


def _as_height(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("heights must be exact (int, Fraction or 'p/q' string), not float")
    return Fraction(value)


@dataclass(frozen=True, eq=False)
class LabeledDigraph:
    """Candidate Reeb digraph.

    Parameters
    ----------
    heights : mapping
        Vertex id to height. Insertion order fixes the vertex order.
    edges : iterable of (tail, head, label)
        Each edge must satisfy ``heights[tail] < heights[head]``. Parallel
        edges are allowed; edge identity is the position in this sequence.

    Connectivity is *not* enforced here (see :func:`check_connected`), so
    that structural errors can be reported by the operations that need it.
    """

    heights: Mapping[VertexId, Fraction]
    edges: Tuple[Edge, ...]
    _adj: Dict[VertexId, Tuple[List[int], List[int]]] = field(
        init=False, repr=False, compare=False
    )

    def __init__(self, heights: Mapping[VertexId, object], edges: Iterable[Iterable]):
        hs = {str(v): _as_height(h) for v, h in heights.items()}
        es = []
        for raw in edges:
            tail, head, label = raw
            es.append(Edge(str(tail), str(head), EdgeLabel(label)))
        adj: Dict[VertexId, Tuple[List[int], List[int]]] = {v: ([], []) for v in hs}
        for idx, e in enumerate(es):
            for end in (e.tail, e.head):
                if end not in hs:
                    raise StructuralError(f"edge {idx} refers to unknown vertex {end!r}")
            if e.tail == e.head:
                raise StructuralError(f"edge {idx} is a self-loop at {e.tail!r}")
            if not hs[e.tail] < hs[e.head]:
                raise StructuralError(
                    f"edge {idx} ({e.tail!r}->{e.head!r}) does not strictly increase height"
                )
            adj[e.tail][1].append(idx)
            adj[e.head][0].append(idx)
        object.__setattr__(self, "heights", hs)
        object.__setattr__(self, "edges", tuple(es))
        object.__setattr__(self, "_adj", adj)

    @classmethod
    def oriented(cls, heights: Mapping[VertexId, object], edges: Iterable[Iterable]) -> "LabeledDigraph":
        """Build a graph from undirected edges, orienting each one by height."""
        hs = {str(v): _as_height(h) for v, h in heights.items()}
        out = []
        for u, v, label in edges:
            u, v = str(u), str(v)
            if u in hs and v in hs and hs[v] < hs[u]:
                u, v = v, u
            out.append((u, v, label))
        return cls(hs, out)

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> Tuple[VertexId, ...]:
        return tuple(self.heights)

    def __len__(self) -> int:
        return len(self.heights)

    def __contains__(self, v) -> bool:
        return v in self.heights

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledDigraph):
            return NotImplemented
        return dict(self.heights) == dict(other.heights) and self.edges == other.edges

    def __repr__(self) -> str:
        es = ", ".join(f"{e.tail}->{e.head}:{e.label.short}" for e in self.edges)
        return f"LabeledDigraph(|V|={len(self)}, edges=[{es}])"

    def _check_vertex(self, v: VertexId) -> None:
        if v not in self.heights:
            raise KeyError(f"unknown vertex {v!r}")

    def in_edges(self, v: VertexId) -> Tuple[int, ...]:
        self._check_vertex(v)
        return tuple(self._adj[v][0])

    def out_edges(self, v: VertexId) -> Tuple[int, ...]:
        self._check_vertex(v)
        return tuple(self._adj[v][1])

    def incident(self, v: VertexId) -> Tuple[int, ...]:
        return self.in_edges(v) + self.out_edges(v)

    def degree(self, v: VertexId) -> int:
        self._check_vertex(v)
        ins, outs = self._adj[v]
        return len(ins) + len(outs)

    def torus_edges(self) -> Tuple[int, ...]:
        return tuple(i for i, e in enumerate(self.edges) if e.label is EdgeLabel.TORUS)

    def relabel(self, index: int, label: EdgeLabel) -> "LabeledDigraph":
        """Copy of the graph with one edge label replaced."""
        es = list(self.edges)
        e = es[index]
        es[index] = Edge(e.tail, e.head, EdgeLabel(label))
        return LabeledDigraph(self.heights, es)

    def height_order(self) -> List[VertexId]:
        """Vertices sorted by height, ties broken by vertex id."""
        return sorted(self.heights, key=lambda v: (self.heights[v], v))

    def components(self) -> List[List[VertexId]]:
        """Connected components of the underlying undirected graph."""
        seen = set()
        comps = []
        for start in self.heights:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                v = stack.pop()
                for idx in self._adj[v][0] + self._adj[v][1]:
                    e = self.edges[idx]
                    w = e.head if e.tail == v else e.tail
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.heights) > 0 and len(self.components()) == 1


def check_connected(g: LabeledDigraph) -> None:
    if not g.is_connected():
        if len(g) == 0:
            raise StructuralError("graph has no vertices")
        raise StructuralError(f"graph is disconnected ({len(g.components())} components)")


def betti_number(g: LabeledDigraph) -> int:
    """First Betti number ``|E| - |V| + 1`` of a connected graph."""
    check_connected(g)
    return len(g.edges) - len(g) + 1


def vertex_profile(g: LabeledDigraph, v: VertexId) -> VertexProfile:
    ins = Counter(g.edges[i].label for i in g.in_edges(v))
    outs = Counter(g.edges[i].label for i in g.out_edges(v))
    return VertexProfile(
        ins[EdgeLabel.SPHERE], ins[EdgeLabel.TORUS], outs[EdgeLabel.SPHERE], outs[EdgeLabel.TORUS]
    )


def is_extremal(g: LabeledDigraph, v: VertexId) -> Extremality:
    """Classify ``v`` by edge orientation. An isolated vertex counts as a local minimum."""
    return vertex_profile(g, v).extremality


def sphere_sphere_degree2(g: LabeledDigraph) -> List[VertexId]:
    """Degree-2 vertices both of whose edges are sphere-labeled (extremal ones included)."""
    out = []
    for v in g.vertices:
        p = vertex_profile(g, v)
        if p.degree == 2 and p.i_T == 0 and p.o_T == 0:
            out.append(v)
    return out


def invariant_triple(g: LabeledDigraph) -> InvariantTriple:
    a = betti_number(g)
    b = len(sphere_sphere_degree2(g))
    c = len(g.torus_edges())
    return InvariantTriple(a, b, c)


# -- isomorphism --------------------------------------------------------


def _multiplicities(g: LabeledDigraph) -> Counter:
    return Counter((e.tail, e.head, e.label) for e in g.edges)


def find_isomorphism(g: LabeledDigraph, h: LabeledDigraph) -> Optional[Dict[VertexId, VertexId]]:
    """Return a label- and orientation-preserving vertex bijection ``g -> h``, or ``None``.

    Heights are ignored beyond the orientation they induce. Plain
    backtracking over vertices with matching profiles; meant for small graphs.
    """
    if len(g) != len(h) or len(g.edges) != len(h.edges):
        return None
    prof_g = {v: vertex_profile(g, v) for v in g.vertices}
    prof_h = {v: vertex_profile(h, v) for v in h.vertices}
    if sorted(prof_g.values()) != sorted(prof_h.values()):
        return None
    mult_g = _multiplicities(g)
    mult_h = _multiplicities(h)
    if sorted(Counter(e.label for e in g.edges).items()) != sorted(
        Counter(e.label for e in h.edges).items()
    ):
        return None

    neighbours_g: Dict[VertexId, set] = defaultdict(set)
    for e in g.edges:
        neighbours_g[e.tail].add(e.head)
        neighbours_g[e.head].add(e.tail)

    # visit vertices so each new one is adjacent to an already placed one where possible
    by_class = Counter(prof_h.values())
    order: List[VertexId] = []
    placed = set()
    remaining = sorted(g.vertices, key=lambda v: (by_class[prof_g[v]], v))
    while remaining:
        frontier = [v for v in remaining if neighbours_g[v] & placed]
        nxt = frontier[0] if frontier else remaining[0]
        order.append(nxt)
        placed.add(nxt)
        remaining.remove(nxt)

    candidates = {v: [w for w in h.vertices if prof_h[w] == prof_g[v]] for v in g.vertices}
    labels = tuple(EdgeLabel)
    mapping: Dict[VertexId, VertexId] = {}
    used = set()

    def consistent(v: VertexId, w: VertexId) -> bool:
        for u, x in mapping.items():
            for lab in labels:
                if mult_g[(v, u, lab)] != mult_h[(w, x, lab)]:
                    return False
                if mult_g[(u, v, lab)] != mult_h[(x, w, lab)]:
                    return False
        return True

    def extend(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for w in candidates[v]:
            if w in used or not consistent(v, w):
                continue
            mapping[v] = w
            used.add(w)
            if extend(pos + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


def is_isomorphic(g: LabeledDigraph, h: LabeledDigraph) -> bool:
    return find_isomorphism(g, h) is not None

