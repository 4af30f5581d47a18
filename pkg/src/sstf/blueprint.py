"""Validation, synthesis and reconstruction of Morse-function blueprints.

A blueprint is the combinatorial shadow of a simple sphere-torus Morse
function: a totally ordered list of critical points, each one a handle move
owned by a vertex of the source digraph, together with the surplus handle
pairs chosen per vertex and the connected summand assigned to each torus edge.
"""

from __future__ import annotations

import enum
import math
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, NamedTuple, Optional, Tuple

from .errors import BlueprintError, MoveError, PreconditionError, SynthesisError
from .local_models import (
    SPHERE_CYLINDER,
    HandleMove,
    expand_vertex,
    vertex_realizable,
)
from .reeb_core import (
    EdgeLabel,
    Extremality,
    LabeledDigraph,
    VertexId,
    vertex_profile,
)
from .simulate import SurfaceInventory, Trace, apply_move, euler_delta, euler_sum, run_schedule


# -- connected summands attached to torus edges -----------------------------


class SummandKind(enum.Enum):
    TRIVIAL_S3 = "S3"
    SPHERE_BUNDLE = "SB"
    LENS = "L"


@dataclass(frozen=True)
class SummandAssignment:
    """What the neighbourhood of a torus edge contributes to the connected sum.

    ``TRIVIAL_S3`` contributes nothing, ``SPHERE_BUNDLE`` one copy of
    S^1 x S^2, and ``LENS`` the lens space L(p, q), normalized so that
    ``1 <= q < p``.
    """

    kind: SummandKind
    p: int = 0
    q: int = 0

    def __post_init__(self):
        if self.kind is SummandKind.LENS:
            p, q = int(self.p), int(self.q)
            if p < 2:
                raise ValueError(f"lens space needs p >= 2, got L({p},{q})")
            q %= p
            if math.gcd(p, q) != 1:
                raise ValueError(f"L({self.p},{self.q}): p and q must be coprime")
            object.__setattr__(self, "p", p)
            object.__setattr__(self, "q", q)
        elif self.p or self.q:
            raise ValueError(f"{self.kind.value} takes no parameters")

    @classmethod
    def lens(cls, p: int, q: int) -> "SummandAssignment":
        return cls(SummandKind.LENS, p, q)

    @classmethod
    def parse(cls, text: str) -> "SummandAssignment":
        text = text.strip()
        if text == "S3":
            return TRIVIAL
        if text == "SB":
            return SPHERE_BUNDLE
        m = re.fullmatch(r"L\(\s*(\d+)\s*,\s*(-?\d+)\s*\)", text)
        if not m:
            raise ValueError(f"bad summand {text!r} (expected S3, SB or L(p,q))")
        return cls.lens(int(m.group(1)), int(m.group(2)))

    def __str__(self) -> str:
        if self.kind is SummandKind.LENS:
            return f"L({self.p},{self.q})"
        return self.kind.value


TRIVIAL = SummandAssignment(SummandKind.TRIVIAL_S3)
SPHERE_BUNDLE = SummandAssignment(SummandKind.SPHERE_BUNDLE)


# -- validation --------------------------------------------------------------


class Reason(NamedTuple):
    code: str
    subject: Optional[str] = None

    def __str__(self) -> str:
        return self.code if self.subject is None else f"{self.code}@{self.subject}"


class Validation(NamedTuple):
    accepted: bool
    reasons: Tuple[Reason, ...] = ()

    def __bool__(self) -> bool:
        return self.accepted

    def codes(self) -> List[str]:
        return [r.code for r in self.reasons]


def validate(g: LabeledDigraph) -> Validation:
    """Check the hypotheses under which a sphere-torus Morse function with Reeb digraph ``g`` exists.

    All violations are collected.
    """
    reasons: List[Reason] = []
    if len(g) == 0:
        return Validation(False, (Reason("Empty"),))
    if not g.is_connected():
        reasons.append(Reason("Disconnected"))
    if len(g) == 2 and len(g.edges) == 1:
        reasons.append(Reason("ReebTheoremCase"))
    for v in g.vertices:
        verdict = vertex_realizable(vertex_profile(g, v))
        reasons.extend(Reason(code, v) for code in verdict.reasons)
    return Validation(not reasons, tuple(reasons))


def minimal_surplus(g: LabeledDigraph) -> Dict[VertexId, int]:
    """Smallest admissible surplus: one handle pair at each sphere-sphere degree-2 vertex."""
    return {v: int(vertex_profile(g, v) == SPHERE_CYLINDER) for v in g.vertices}


# -- blueprints -------------------------------------------------------------


class CriticalPoint(NamedTuple):
    value: Fraction
    index: int
    move: HandleMove
    owner: VertexId


@dataclass(frozen=True)
class MorseBlueprint:
    """A simple sphere-torus Morse function, up to the data the Reeb digraph sees.

    ``critical_points`` is sorted by value; move targets index into the
    global level-surface inventory just below each critical value.
    ``inventories[j]`` is the level surface above the j-th critical point
    (``inventories[0]`` is below the first and is empty).
    ``edge_components`` maps each source edge to the serial of the
    level-surface component travelling along it.
    """

    source: LabeledDigraph
    critical_points: Tuple[CriticalPoint, ...]
    surplus: Mapping[VertexId, int]
    summands: Mapping[int, SummandAssignment]
    inventories: Tuple[SurfaceInventory, ...] = ()
    edge_components: Mapping[int, int] = field(default_factory=dict)

    @property
    def moves(self) -> List[HandleMove]:
        return [cp.move for cp in self.critical_points]

    @property
    def indices(self) -> List[int]:
        return [cp.index for cp in self.critical_points]

    def index_counts(self) -> Tuple[int, int, int, int]:
        counts = [0, 0, 0, 0]
        for cp in self.critical_points:
            counts[cp.index] += 1
        return tuple(counts)

    def trace(self) -> Trace:
        return run_schedule(SurfaceInventory(), self.moves)

    def blocks(self) -> List[Tuple[VertexId, List[CriticalPoint]]]:
        """Maximal runs of consecutive critical points with the same owner."""
        out: List[Tuple[VertexId, List[CriticalPoint]]] = []
        for cp in self.critical_points:
            if out and out[-1][0] == cp.owner:
                out[-1][1].append(cp)
            else:
                out.append((cp.owner, [cp]))
        return out


def _critical_values(g: LabeledDigraph, counts: Mapping[VertexId, int]) -> Dict[VertexId, List[Fraction]]:
    # Every height level h gets the window (h - gap/2, h + gap/2); vertices at
    # that level share a uniform grid inside it, in vertex-id order.
    levels = sorted(set(g.heights.values()))
    gaps = [b - a for a, b in zip(levels, levels[1:])]
    width = min(gaps) / 2 if gaps else Fraction(1)
    by_level: Dict[Fraction, List[VertexId]] = defaultdict(list)
    for v in g.height_order():
        by_level[g.heights[v]].append(v)
    values: Dict[VertexId, List[Fraction]] = {}
    for h, vs in by_level.items():
        total = sum(counts[v] for v in vs)
        lo = h - width / 2
        step = width / (total + 1)
        pos = 1
        for v in vs:
            values[v] = [lo + step * (pos + i) for i in range(counts[v])]
            pos += counts[v]
    return values


def synthesize(
    g: LabeledDigraph,
    k: Optional[Mapping[VertexId, int]] = None,
    s: Optional[Mapping[int, SummandAssignment]] = None,
) -> MorseBlueprint:
    """Build a blueprint realizing ``g``.

    Parameters
    ----------
    g : LabeledDigraph
        Must pass :func:`validate`.
    k : mapping, optional
        Surplus handle pairs per vertex. Missing vertices get the minimum
        from :func:`minimal_surplus` (1 at sphere-sphere degree-2 vertices,
        0 elsewhere); an explicit 0 at such a vertex is rejected.
    s : mapping, optional
        Summand per torus edge index; missing torus edges get ``TRIVIAL``.

    Raises
    ------
    PreconditionError
        Invalid graph, surplus or summand choice.
    SynthesisError
        The internal simulation disagreed with the local models (a bug).
    """
    verdict = validate(g)
    if not verdict:
        raise PreconditionError("graph rejected: " + ", ".join(map(str, verdict.reasons)))
    k = dict(k or {})
    for v in k:
        if v not in g:
            raise PreconditionError(f"surplus given for unknown vertex {v!r}")
    surplus = {v: int(k.get(v, n)) for v, n in minimal_surplus(g).items()}
    torus = set(g.torus_edges())
    summands: Dict[int, SummandAssignment] = {}
    for e, a in (s or {}).items():
        if e not in torus:
            raise PreconditionError(f"summand given for edge {e}, which is not a torus edge")
        if not isinstance(a, SummandAssignment):
            raise PreconditionError(f"summand for edge {e} must be a SummandAssignment")
        summands[e] = a
    for e in sorted(torus):
        summands.setdefault(e, TRIVIAL)

    order = g.height_order()
    schedules = {v: expand_vertex(vertex_profile(g, v), surplus[v], v) for v in order}
    values = _critical_values(g, {v: len(schedules[v]) for v in order})

    inv = SurfaceInventory()
    inventories = [inv]
    edge_serial: Dict[int, int] = {}
    critical: List[CriticalPoint] = []
    for v in order:
        profile = schedules[v].profile
        start = inv.next_serial
        local = inv.subset(edge_serial[e] for e in g.in_edges(v))
        for m, value in zip(schedules[v].moves, values[v]):
            serials = [local.components[t].serial for t in m.targets]
            gm = HandleMove(m.kind, tuple(inv.index_of(x) for x in serials))
            try:
                local = apply_move(local, m)
                inv = apply_move(inv, gm)
            except MoveError as exc:
                raise SynthesisError(f"vertex {v!r}: {exc}") from exc
            if local.next_serial != inv.next_serial:
                raise SynthesisError("local and global serial counters diverged")
            critical.append(CriticalPoint(value, m.index, gm, v))
            inventories.append(inv)
        if any(x < start for x in local.serials):
            raise SynthesisError(f"vertex {v!r} left an incoming component untouched")
        if local.counts() != (profile.o_S, profile.o_T):
            raise SynthesisError(
                f"vertex {v!r}: schedule ends at {local.counts()}, expected {(profile.o_S, profile.o_T)}"
            )
        spheres = [c.serial for c in local.components if c.genus == 0]
        tori = [c.serial for c in local.components if c.genus == 1]
        for e in g.out_edges(v):
            pool = tori if g.edges[e].label is EdgeLabel.TORUS else spheres
            edge_serial[e] = pool.pop(0)
    if len(inv):
        raise SynthesisError(f"level surface above the last critical point is {inv}, not empty")
    return MorseBlueprint(
        source=g,
        critical_points=tuple(critical),
        surplus=surplus,
        summands=summands,
        inventories=tuple(inventories),
        edge_components=edge_serial,
    )


def check_blueprint(bp: MorseBlueprint) -> List[str]:
    """Return every violated blueprint invariant (empty list when consistent)."""
    problems: List[str] = []
    cps = bp.critical_points
    if not cps:
        return ["blueprint has no critical points"]
    if any(a.value >= b.value for a, b in zip(cps, cps[1:])):
        problems.append("critical values are not strictly increasing")
    if any(cp.index != cp.move.index for cp in cps):
        problems.append("recorded index disagrees with move kind")
    if euler_sum(bp.moves) != 0:
        problems.append(f"alternating index count is {euler_sum(bp.moves)}, not 0")
    try:
        trace = bp.trace()
    except MoveError as exc:
        return problems + [f"moves do not simulate: {exc}"]
    if len(trace.final):
        problems.append("level surface above the top critical point is not empty")
    for step in trace.steps:
        got = step.after.euler_characteristic() - step.before.euler_characteristic()
        if got != euler_delta(step.move.kind):
            problems.append(f"{step.move}: Euler characteristic changed by {got}")
    if bp.inventories and list(bp.inventories) != trace.inventories():
        problems.append("stored interval inventories disagree with the simulated trace")
    g = bp.source
    ext = [vertex_profile(g, v).extremality for v in g.vertices]
    n0, _, _, n3 = bp.index_counts()
    if n0 != ext.count(Extremality.LOCAL_MIN):
        problems.append(f"{n0} index-0 points but {ext.count(Extremality.LOCAL_MIN)} minima")
    if n3 != ext.count(Extremality.LOCAL_MAX):
        problems.append(f"{n3} index-3 points but {ext.count(Extremality.LOCAL_MAX)} maxima")
    # each edge's component must be present, with the right genus, between its end blocks
    inventories = trace.inventories()
    last_of = {}
    first_of = {}
    for pos, cp in enumerate(cps):
        first_of.setdefault(cp.owner, pos)
        last_of[cp.owner] = pos
    for e, serial in bp.edge_components.items():
        edge = g.edges[e]
        want = 1 if edge.label is EdgeLabel.TORUS else 0
        for level in range(last_of[edge.tail] + 1, first_of[edge.head] + 1):
            inv = inventories[level]
            try:
                genus = inv.components[inv.index_of(serial)].genus
            except KeyError:
                problems.append(f"edge {e}: component {serial} missing at level {level}")
                break
            if genus != want:
                problems.append(f"edge {e}: component has genus {genus}, label says {want}")
                break
    return problems


def reconstruct_reeb(bp: MorseBlueprint, fine: bool = False) -> LabeledDigraph:
    """Quotient digraph of the blueprint, rebuilt from its move sequence alone.

    With ``fine=False`` each run of critical points sharing an owner becomes
    one vertex (the coarse graph that was synthesized). With ``fine=True``
    every critical point is its own vertex, giving the Reeb digraph of the
    simple function itself.
    """
    cps = bp.critical_points
    if not cps:
        raise BlueprintError("empty blueprint: a closed manifold has critical points")
    if any(a.value >= b.value for a, b in zip(cps, cps[1:])):
        raise BlueprintError("critical values must strictly increase")
    try:
        trace = bp.trace()
    except MoveError as exc:
        raise BlueprintError(f"moves do not simulate: {exc}") from exc
    if len(trace.final):
        raise BlueprintError("level surface above the top critical point is not empty")

    node_of: List[str] = []
    heights: Dict[str, List[Fraction]] = {}
    seen_owners = set()
    for pos, cp in enumerate(cps):
        if fine:
            node = f"{cp.owner}:{pos}"
        else:
            node = cp.owner
            if node in seen_owners and node_of[-1] != node:
                raise BlueprintError(f"critical points of {node!r} are not contiguous")
            seen_owners.add(node)
        node_of.append(node)
        heights.setdefault(node, []).append(cp.value)

    creator: Dict[int, str] = {}
    genus: Dict[int, int] = {}
    edges = []
    for pos, step in enumerate(trace.steps):
        node = node_of[pos]
        for t in step.move.targets:
            comp = step.before.components[t]
            if creator[comp.serial] != node:
                edges.append((comp.serial, creator[comp.serial], node))
        before = set(step.before.serials)
        for comp in step.after.components:
            if comp.serial not in before:
                creator[comp.serial] = node
                genus[comp.serial] = comp.genus
    edges.sort()
    out = []
    for serial, tail, head in edges:
        if genus[serial] > 1:
            raise BlueprintError(f"component {serial} has genus {genus[serial]}")
        out.append((tail, head, EdgeLabel(genus[serial])))
    mean = {n: sum(vs) / len(vs) for n, vs in heights.items()}
    return LabeledDigraph(mean, out)
