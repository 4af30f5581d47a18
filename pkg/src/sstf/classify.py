"""Connected-sum classification of realized manifolds and admissible families."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from .blueprint import (
    TRIVIAL,
    MorseBlueprint,
    SummandAssignment,
    SummandKind,
    minimal_surplus,
    validate,
)
from .errors import PreconditionError
from .reeb_core import Extremality, LabeledDigraph, VertexId, invariant_triple, vertex_profile


@dataclass(frozen=True)
class ManifoldClass:
    """``#_r (S^1 x S^2)`` connected with the listed lens spaces; ``(0, ())`` is S^3."""

    r: int
    lenses: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be non-negative")
        normalized = []
        for p, q in self.lenses:
            a = SummandAssignment.lens(p, q)
            normalized.append((a.p, a.q))
        object.__setattr__(self, "lenses", tuple(sorted(normalized)))

    @property
    def is_sphere(self) -> bool:
        return self.r == 0 and not self.lenses


@dataclass(frozen=True)
class AdmissibleFamily:
    """All manifolds ``#_r (S^1 x S^2) # (c' lens spaces)`` with ``r >= a + b`` and ``c' <= c``."""

    a: int
    b: int
    c: int

    @property
    def min_r(self) -> int:
        return self.a + self.b

    @property
    def max_lenses(self) -> int:
        return self.c

    def admits(self, m: ManifoldClass) -> bool:
        return m.r >= self.min_r and len(m.lenses) <= self.max_lenses

    def describe(self) -> str:
        lens = "no lens summands" if self.c == 0 else f"at most {self.c} lens summand(s)"
        return f"r >= {self.min_r}, {lens}"


def classify_blueprint(bp: MorseBlueprint) -> ManifoldClass:
    """Diffeomorphism type of the manifold carrying the blueprint's function."""
    a, b, c = invariant_triple(bp.source)
    r = a + sum(bp.surplus.values())
    lenses = []
    for e in sorted(bp.summands):
        s = bp.summands[e]
        if s.kind is SummandKind.SPHERE_BUNDLE:
            r += 1
        elif s.kind is SummandKind.LENS:
            lenses.append((s.p, s.q))
    m = ManifoldClass(r, tuple(lenses))
    # unreachable when synthesize enforced k >= 1 at sphere-sphere degree-2 vertices
    assert m.r >= a + b, f"r={m.r} below a+b={a + b}"
    assert len(m.lenses) <= c, f"{len(m.lenses)} lens summands exceed c={c}"
    return m


def admissible_family(g: LabeledDigraph) -> AdmissibleFamily:
    verdict = validate(g)
    if not verdict:
        raise PreconditionError("graph rejected: " + ", ".join(map(str, verdict.reasons)))
    return AdmissibleFamily(*invariant_triple(g))


def realizing_choice(
    g: LabeledDigraph, target: ManifoldClass
) -> Tuple[Dict[VertexId, int], Dict[int, SummandAssignment]]:
    """Surplus and summand choices whose blueprint classifies as ``target``.

    The lenses of ``target`` go onto the first torus edges; every extra
    S^1 x S^2 beyond ``a + b`` is a surplus pair on the lowest non-extremal
    vertex.
    """
    fam = admissible_family(g)
    if not fam.admits(target):
        raise PreconditionError(f"{canonical_name(target)} is outside the family ({fam.describe()})")
    k = minimal_surplus(g)
    inner = [v for v in g.height_order() if vertex_profile(g, v).extremality is Extremality.NOT_EXTREMAL]
    # validated graphs other than the excluded single edge always have one
    k[inner[0]] += target.r - fam.min_r
    s = {e: TRIVIAL for e in g.torus_edges()}
    for e, (p, q) in zip(g.torus_edges(), target.lenses):
        s[e] = SummandAssignment.lens(p, q)
    return k, s


def canonical_name(m: ManifoldClass) -> str:
    parts = []
    if m.r == 1:
        parts.append("(S^1 x S^2)" if m.lenses else "S^1 x S^2")
    elif m.r > 1:
        parts.append(f"#_{m.r} (S^1 x S^2)")
    parts.extend(f"L({p},{q})" for p, q in m.lenses)
    return " # ".join(parts) if parts else "S^3"
