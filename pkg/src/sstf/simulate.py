"""Handle-calculus simulator on level-surface inventories.

An inventory is the multiset of genera of the components of a regular
level surface.  Components also carry a serial number so that a sequence
of moves can be traced (which component was born where, which move
consumed it).  Equality of inventories ignores serials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, NamedTuple, Sequence, Tuple

from .errors import MoveError
from .local_models import HandleMove, MoveKind


class Component(NamedTuple):
    genus: int
    serial: int


def _sort_key(c: Component):
    return (-c.genus, c.serial)


@dataclass(frozen=True, eq=False)
class SurfaceInventory:
    """Closed orientable level surface, one entry per connected component.

    ``components`` is kept in canonical order: genus descending, then
    creation order. Move targets index into this order. With
    ``allow_higher_genus=False`` (sphere-torus mode) any component of genus
    2 or more is refused.
    """

    components: Tuple[Component, ...] = ()
    next_serial: int = 0
    allow_higher_genus: bool = False

    def __post_init__(self):
        comps = tuple(sorted((Component(int(g), int(s)) for g, s in self.components), key=_sort_key))
        for c in comps:
            if c.genus < 0:
                raise ValueError(f"negative genus {c.genus}")
            if c.genus > 1 and not self.allow_higher_genus:
                raise MoveError(f"genus {c.genus} component outside sphere-torus mode")
        if len({c.serial for c in comps}) != len(comps):
            raise ValueError("duplicate component serials")
        nxt = max([self.next_serial] + [c.serial + 1 for c in comps])
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "next_serial", nxt)

    @classmethod
    def of(cls, spheres: int = 0, tori: int = 0, **kw) -> "SurfaceInventory":
        return cls.from_genera([1] * tori + [0] * spheres, **kw)

    @classmethod
    def from_genera(cls, genera: Iterable[int], **kw) -> "SurfaceInventory":
        return cls(tuple(Component(g, i) for i, g in enumerate(genera)), **kw)

    @property
    def genera(self) -> Tuple[int, ...]:
        return tuple(c.genus for c in self.components)

    @property
    def serials(self) -> Tuple[int, ...]:
        return tuple(c.serial for c in self.components)

    def spheres(self) -> int:
        return sum(1 for c in self.components if c.genus == 0)

    def tori(self) -> int:
        return sum(1 for c in self.components if c.genus == 1)

    def counts(self) -> Tuple[int, int]:
        """(spheres, tori)."""
        return self.spheres(), self.tori()

    def euler_characteristic(self) -> int:
        return sum(2 - 2 * c.genus for c in self.components)

    def index_of(self, serial: int) -> int:
        for i, c in enumerate(self.components):
            if c.serial == serial:
                return i
        raise KeyError(f"no component with serial {serial}")

    def subset(self, serials: Iterable[int]) -> "SurfaceInventory":
        """Sub-inventory with the given components, sharing this inventory's serial counter."""
        wanted = set(serials)
        comps = tuple(c for c in self.components if c.serial in wanted)
        if len(comps) != len(wanted):
            raise KeyError("unknown component serial")
        return SurfaceInventory(comps, self.next_serial, self.allow_higher_genus)

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SurfaceInventory):
            return NotImplemented
        return self.genera == other.genera

    def __hash__(self) -> int:
        return hash(self.genera)

    def __repr__(self) -> str:
        return f"SurfaceInventory({list(self.genera)})"


def apply_move(inv: SurfaceInventory, m: HandleMove) -> SurfaceInventory:
    """Attach the handle described by ``m``; every produced component gets a fresh serial."""
    comps = list(inv.components)
    for t in m.targets:
        if not 0 <= t < len(comps):
            raise MoveError(f"{m}: target {t} missing (inventory has {len(comps)} components)")
    serial = inv.next_serial
    kind = m.kind
    if kind is MoveKind.BIRTH:
        produced = [0]
        consumed: List[int] = []
    elif kind is MoveKind.DEATH:
        g = comps[m.targets[0]].genus
        if g != 0:
            raise MoveError(f"{m}: a 3-handle caps off spheres only, target has genus {g}")
        produced, consumed = [], [m.targets[0]]
    elif kind is MoveKind.MERGE:
        if len(comps) < 2:
            raise MoveError(f"{m}: needs two components")
        i, j = m.targets
        produced, consumed = [comps[i].genus + comps[j].genus], [i, j]
    elif kind is MoveKind.GENUS_UP:
        t = m.targets[0]
        produced, consumed = [comps[t].genus + 1], [t]
    elif kind is MoveKind.SPLIT:
        t = m.targets[0]
        produced, consumed = [comps[t].genus, 0], [t]
    elif kind is MoveKind.GENUS_DOWN:
        t = m.targets[0]
        g = comps[t].genus
        if g < 1:
            raise MoveError(f"{m}: target is a sphere, no essential curve to cut along")
        produced, consumed = [g - 1], [t]
    else:  # pragma: no cover
        raise MoveError(f"unknown move kind {kind}")
    for g in produced:
        if g > 1 and not inv.allow_higher_genus:
            raise MoveError(f"{m}: would create a genus-{g} component")
    kept = [c for idx, c in enumerate(comps) if idx not in consumed]
    fresh = [Component(g, serial + n) for n, g in enumerate(produced)]
    return SurfaceInventory(
        tuple(kept + fresh), serial + len(produced), inv.allow_higher_genus
    )


class Step(NamedTuple):
    before: SurfaceInventory
    move: HandleMove
    after: SurfaceInventory


@dataclass(frozen=True)
class Trace:
    start: SurfaceInventory
    steps: Tuple[Step, ...]

    @property
    def final(self) -> SurfaceInventory:
        return self.steps[-1].after if self.steps else self.start

    def inventories(self) -> List[SurfaceInventory]:
        """All regular-level inventories, ``len(steps) + 1`` of them."""
        return [self.start] + [s.after for s in self.steps]

    def __len__(self) -> int:
        return len(self.steps)


def run_schedule(start: SurfaceInventory, moves: Sequence[HandleMove]) -> Trace:
    steps = []
    inv = start
    for n, m in enumerate(moves):
        try:
            nxt = apply_move(inv, m)
        except MoveError as exc:
            raise MoveError(str(exc), step=n) from exc
        steps.append(Step(inv, m, nxt))
        inv = nxt
    return Trace(start, tuple(steps))


def euler_sum(moves: Iterable[HandleMove]) -> int:
    """Alternating count of critical points by index; zero for a closed 3-manifold."""
    return sum((-1) ** m.index for m in moves)


def euler_delta(kind: MoveKind) -> int:
    """Change in Euler characteristic of the level surface caused by one move."""
    return 2 if kind.index % 2 == 0 else -2
