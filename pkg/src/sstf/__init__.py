"""Reeb digraphs of simple sphere-torus Morse functions on closed 3-manifolds.

Decide whether a labeled digraph is realizable, build an explicit blueprint
of a realizing Morse function and classify the resulting manifold as a
connected sum of copies of S^1 x S^2 and lens spaces.
"""

__version__ = "0.1.0"

from .blueprint import (
    MorseBlueprint,
    SummandAssignment,
    check_blueprint,
    minimal_surplus,
    reconstruct_reeb,
    synthesize,
    validate,
)
from .classify import ManifoldClass, admissible_family, canonical_name, classify_blueprint
from .local_models import HandleMove, MoveKind, expand_vertex, inventory_formula, singular_count
from .reeb_core import (
    EdgeLabel,
    LabeledDigraph,
    VertexProfile,
    betti_number,
    invariant_triple,
    is_isomorphic,
    vertex_profile,
)
from .simulate import SurfaceInventory, apply_move, run_schedule

__all__ = [
    "EdgeLabel",
    "HandleMove",
    "LabeledDigraph",
    "ManifoldClass",
    "MorseBlueprint",
    "MoveKind",
    "SummandAssignment",
    "SurfaceInventory",
    "VertexProfile",
    "admissible_family",
    "apply_move",
    "betti_number",
    "canonical_name",
    "check_blueprint",
    "classify_blueprint",
    "expand_vertex",
    "invariant_triple",
    "inventory_formula",
    "is_isomorphic",
    "minimal_surplus",
    "reconstruct_reeb",
    "run_schedule",
    "singular_count",
    "synthesize",
    "validate",
    "vertex_profile",
]
