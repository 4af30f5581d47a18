"""Surface analogues: which closed surfaces carry a Morse or Morse-Bott function with a given Reeb graph.

Edge labels are ignored here; for surfaces the regular level components are
circles.
"""

from __future__ import annotations

from typing import NamedTuple, Optional, Tuple

from .errors import PreconditionError
from .reeb_core import Extremality, LabeledDigraph, betti_number, check_connected, vertex_profile


class SurfaceBounds(NamedTuple):
    orientable_min: int
    """Every orientable genus from this value up is realizable."""
    nonorientable: int


class MorseBottSurfaces(NamedTuple):
    all_extremal: bool
    surfaces: Optional[Tuple[str, ...]]
    """Realizable surfaces when every vertex is an extremum, else ``None``."""
    orientable_min: Optional[int]
    nonorientable: Optional[int]


ALL_EXTREMAL_SURFACES = ("S^2", "T^2", "RP^2", "Klein bottle")


def _reject(reasons):
    raise PreconditionError("graph rejected: " + ", ".join(reasons))


def surface_genus_bounds(g: LabeledDigraph) -> SurfaceBounds:
    """Genera of closed surfaces admitting a Morse function with Reeb digraph ``g``.

    Orientable genus ``a + b`` or more, non-orientable genus exactly
    ``2a + b``, where ``a`` is the cycle rank and ``b`` counts degree-2
    vertices.
    """
    check_connected(g)
    reasons = []
    if len(g) == 2 and len(g.edges) == 1:
        reasons.append("ReebTheoremCase")
    for v in g.vertices:
        p = vertex_profile(g, v)
        if p.extremality is not Extremality.NOT_EXTREMAL and p.degree != 1:
            reasons.append(f"ExtremalHighDegree@{v}")
    if reasons:
        _reject(reasons)
    a = betti_number(g)
    b = sum(1 for v in g.vertices if g.degree(v) == 2)
    return SurfaceBounds(a + b, 2 * a + b)


def morse_bott_surface_classify(g: LabeledDigraph) -> MorseBottSurfaces:
    check_connected(g)
    profiles = {v: vertex_profile(g, v) for v in g.vertices}
    bad = [
        f"ExtremalHighDegree@{v}"
        for v, p in profiles.items()
        if p.extremality is not Extremality.NOT_EXTREMAL and p.degree > 2
    ]
    if bad:
        _reject(bad)
    inner = [v for v, p in profiles.items() if p.extremality is Extremality.NOT_EXTREMAL]
    if not inner:
        return MorseBottSurfaces(True, ALL_EXTREMAL_SURFACES, None, None)
    a = betti_number(g)
    b = sum(1 for v in inner if profiles[v].degree == 2)
    return MorseBottSurfaces(False, None, a + b, max(2 * a + b, 1))
