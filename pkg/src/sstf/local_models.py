"""Per-vertex local models: realizability, handle schedules, level-set inventories.

Every vertex of a candidate Reeb digraph is expanded into a short ordered
sequence of handle attachments.  For a non-extremal vertex the schedule
runs in four phases, starting from the incoming level surface:

1. a 2-handle on each incoming torus turns it into a sphere,
2. 1-handles merge all spheres into one,
3. 2-handles split that sphere into as many spheres as outgoing edges,
4. a 1-handle on one sphere per outgoing torus edge raises its genus.

Surplus (1-handle, 2-handle) pairs raise the first Betti number of the
local Reeb graph without changing the boundary surfaces.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple, Tuple

from .errors import PreconditionError
from .reeb_core import EdgeLabel, Extremality, VertexId, VertexProfile


class MoveKind(enum.Enum):
    BIRTH = "Birth"
    MERGE = "Merge"
    GENUS_UP = "GenusUp"
    SPLIT = "Split"
    GENUS_DOWN = "GenusDown"
    DEATH = "Death"

    @property
    def index(self) -> int:
        """Morse index of the critical point realizing this move."""
        return _MORSE_INDEX[self]

    @property
    def arity(self) -> int:
        """Number of surface components the move acts on."""
        return _ARITY[self]


_MORSE_INDEX = {
    MoveKind.BIRTH: 0,
    MoveKind.MERGE: 1,
    MoveKind.GENUS_UP: 1,
    MoveKind.SPLIT: 2,
    MoveKind.GENUS_DOWN: 2,
    MoveKind.DEATH: 3,
}
_ARITY = {
    MoveKind.BIRTH: 0,
    MoveKind.MERGE: 2,
    MoveKind.GENUS_UP: 1,
    MoveKind.SPLIT: 1,
    MoveKind.GENUS_DOWN: 1,
    MoveKind.DEATH: 1,
}


@dataclass(frozen=True)
class HandleMove:
    """One handle attachment acting on components of the current level surface.

    ``targets`` index into the canonically ordered inventory the move is
    applied to.
    """

    kind: MoveKind
    targets: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if len(self.targets) != self.kind.arity:
            raise ValueError(
                f"{self.kind.value} takes {self.kind.arity} target(s), got {len(self.targets)}"
            )
        if self.kind is MoveKind.MERGE and self.targets[0] == self.targets[1]:
            raise ValueError("Merge needs two distinct targets")

    @property
    def index(self) -> int:
        return self.kind.index

    def __str__(self) -> str:
        if not self.targets:
            return self.kind.value
        return f"{self.kind.value}({','.join(map(str, self.targets))})"


class Verdict(NamedTuple):
    """Outcome of a realizability check. Truthy iff accepted."""

    accepted: bool
    reasons: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.accepted


ACCEPT = Verdict(True)

# rejection codes
EXTREMAL_TORUS = "ExtremalTorus"
EXTREMAL_HIGH_DEGREE = "ExtremalHighDegree"
NO_INCOMING = "NoIncoming"
NO_OUTGOING = "NoOutgoing"

SPHERE_CYLINDER = VertexProfile(1, 0, 1, 0)


def vertex_realizable(
    p: VertexProfile, deg1_allowed_label: EdgeLabel = EdgeLabel.SPHERE
) -> Verdict:
    """Check a vertex profile against the local models of a simple sphere-torus Morse function.

    An extremum must have exactly one edge, carrying ``deg1_allowed_label``
    (the level surface next to a nondegenerate extremum is a sphere). Any
    other vertex needs at least one edge on each side. All violations are
    reported, not only the first.
    """
    if p.degree == 0:
        return Verdict(False, (NO_INCOMING, NO_OUTGOING))
    if p.extremality is Extremality.NOT_EXTREMAL:
        return ACCEPT
    reasons = []
    if p.degree > 1:
        reasons.append(EXTREMAL_HIGH_DEGREE)
    bad_label = EdgeLabel.TORUS if deg1_allowed_label is EdgeLabel.SPHERE else EdgeLabel.SPHERE
    if (p.i_T + p.o_T if bad_label is EdgeLabel.TORUS else p.i_S + p.o_S) > 0:
        reasons.append(EXTREMAL_TORUS)
    return Verdict(not reasons, tuple(reasons))


def _check_schedulable(p: VertexProfile, k: int) -> None:
    if k < 0:
        raise PreconditionError(f"surplus must be non-negative, got {k}")
    verdict = vertex_realizable(p)
    if not verdict:
        raise PreconditionError(f"profile {tuple(p)} is not realizable: {', '.join(verdict.reasons)}")
    if p.extremality is not Extremality.NOT_EXTREMAL and k != 0:
        raise PreconditionError("extremal vertices admit no surplus handle pairs")
    if p == SPHERE_CYLINDER and k < 1:
        raise PreconditionError(
            "a degree-2 sphere-sphere vertex needs at least one surplus handle pair (k >= 1)"
        )


def base_count(p: VertexProfile) -> int:
    """Singular points of the four-phase schedule without surplus pairs."""
    return 2 * p.i_T + p.i_S + 2 * p.o_T + p.o_S - 2


def singular_count(p: VertexProfile, k: int = 0) -> int:
    _check_schedulable(p, k)
    if p.extremality is not Extremality.NOT_EXTREMAL:
        return 1
    if p == SPHERE_CYLINDER:
        return 2 * k
    return base_count(p) + 2 * k


@dataclass(frozen=True)
class VertexSchedule:
    owner: VertexId
    profile: VertexProfile
    moves: Tuple[HandleMove, ...]
    k: int = 0

    def __len__(self) -> int:
        return len(self.moves)


def expand_vertex(p: VertexProfile, k: int = 0, owner: VertexId = "") -> VertexSchedule:
    """Ordered handle moves turning the incoming level surface into the outgoing one.

    Targets refer to the local inventory (incoming components only) in
    canonical order, tori first, and always pick the lowest eligible index.
    """
    _check_schedulable(p, k)
    split = HandleMove(MoveKind.SPLIT, (0,))
    merge = HandleMove(MoveKind.MERGE, (0, 1))
    ext = p.extremality
    if ext is Extremality.LOCAL_MIN:
        moves = [HandleMove(MoveKind.BIRTH)]
    elif ext is Extremality.LOCAL_MAX:
        moves = [HandleMove(MoveKind.DEATH, (0,))]
    elif p == SPHERE_CYLINDER:
        moves = [split] * k + [merge] * k
    else:
        moves = [HandleMove(MoveKind.GENUS_DOWN, (0,))] * p.i_T
        moves += [merge] * (p.i_T + p.i_S - 1)
        moves += [split, merge] * k
        moves += [split] * (p.o_T + p.o_S - 1)
        # each new torus sorts ahead of the remaining spheres
        moves += [HandleMove(MoveKind.GENUS_UP, (j,)) for j in range(p.o_T)]
    return VertexSchedule(owner, p, tuple(moves), k)


def inventory_formula(p: VertexProfile, j: int) -> Tuple[int, int]:
    """Closed-form (spheres, tori) on the j-th regular interval of a surplus-free schedule.

    Interval 0 lies below the first singular value and interval
    ``base_count(p)`` above the last one.
    """
    if p.extremality is not Extremality.NOT_EXTREMAL:
        raise PreconditionError("inventory_formula applies to non-extremal profiles only")
    i_S, i_T, o_S, o_T = p
    n = base_count(p)
    if not 0 <= j <= n:
        raise IndexError(f"interval index {j} outside 0..{n}")
    if j <= i_T:
        return i_S + j, i_T - j
    if j <= 2 * i_T + i_S - 1:
        return i_S + 2 * i_T - j, 0
    if j <= 2 * i_T + i_S + o_S + o_T - 2:
        return j - 2 * i_T - i_S + 2, 0
    tori = j - 2 * i_T - i_S - o_S - o_T + 2
    return o_S + o_T - tori, tori
