"""Exhaustive enumeration of small validated digraphs and the property harness over them."""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from typing import Dict, Iterator, List, Sequence, Tuple

from .blueprint import (
    SPHERE_BUNDLE,
    TRIVIAL,
    SummandAssignment,
    check_blueprint,
    minimal_surplus,
    reconstruct_reeb,
    synthesize,
    validate,
)
from .classify import admissible_family, classify_blueprint
from .io import format_graph
from .reeb_core import (
    EdgeLabel,
    Extremality,
    LabeledDigraph,
    VertexId,
    is_isomorphic,
    vertex_profile,
)
from .rewrite import IntervalsOK, torus_union_structure


def _structure_ok(n: int, pairs: Sequence[Tuple[int, int]]) -> bool:
    indeg = [0] * n
    outdeg = [0] * n
    for i, j in pairs:
        outdeg[i] += 1
        indeg[j] += 1
    for v in range(n):
        d = indeg[v] + outdeg[v]
        if d == 0:
            return False
        if (indeg[v] == 0 or outdeg[v] == 0) and d != 1:
            return False
    return True


def _connected(n: int, pairs) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in pairs:
        parent[find(i)] = find(j)
    return len({find(v) for v in range(n)}) == 1


def _bucket_key(g: LabeledDigraph):
    return tuple(sorted(vertex_profile(g, v) for v in g.vertices))


def _dedupe(graphs) -> List[LabeledDigraph]:
    buckets: Dict[tuple, List[LabeledDigraph]] = defaultdict(list)
    out = []
    for g in graphs:
        bucket = buckets[_bucket_key(g)]
        if any(is_isomorphic(g, h) for h in bucket):
            continue
        bucket.append(g)
        out.append(g)
    return out


def enumerate_structures(max_edges: int) -> List[LabeledDigraph]:
    """All-sphere digraphs with at most ``max_edges`` edges whose shape passes validation, up to isomorphism."""
    found = []
    for n in range(3, max_edges + 2):
        names = [f"v{i}" for i in range(n)]
        heights = {name: i for i, name in enumerate(names)}
        pairs = list(itertools.combinations(range(n), 2))
        for m in range(n - 1, max_edges + 1):
            for chosen in itertools.combinations_with_replacement(pairs, m):
                if not _structure_ok(n, chosen) or not _connected(n, chosen):
                    continue
                g = LabeledDigraph(
                    heights, [(names[i], names[j], EdgeLabel.SPHERE) for i, j in chosen]
                )
                found.append(g)
    return _dedupe(found)


def enumerate_validated(max_edges: int) -> List[LabeledDigraph]:
    """Every validated labeled digraph with at most ``max_edges`` edges, one per isomorphism class."""
    out = []
    for shape in enumerate_structures(max_edges):
        free = [
            i
            for i, e in enumerate(shape.edges)
            if shape.degree(e.tail) > 1 and shape.degree(e.head) > 1
        ]
        variants = []
        for labels in itertools.product((EdgeLabel.SPHERE, EdgeLabel.TORUS), repeat=len(free)):
            g = shape
            for i, lab in zip(free, labels):
                if lab is EdgeLabel.TORUS:
                    g = g.relabel(i, lab)
            variants.append(g)
        for g in _dedupe(variants):
            if validate(g):
                out.append(g)
    return out


def inner_vertices(g: LabeledDigraph) -> List[VertexId]:
    return [v for v in g.vertices if vertex_profile(g, v).extremality is Extremality.NOT_EXTREMAL]


def surplus_choices(g: LabeledDigraph, extra: int) -> Iterator[Dict[VertexId, int]]:
    """Minimal surplus plus every way of adding at most ``extra`` pairs at non-extremal vertices."""
    base = minimal_surplus(g)
    inner = inner_vertices(g)
    for total in range(extra + 1):
        for where in itertools.combinations_with_replacement(inner, total):
            k = dict(base)
            for v in where:
                k[v] += 1
            yield k


def lens_options(max_p: int) -> List[SummandAssignment]:
    return [
        SummandAssignment.lens(p, q)
        for p in range(2, max_p + 1)
        for q in range(1, p)
        if math.gcd(p, q) == 1
    ]


def summand_choices(
    g: LabeledDigraph, options: Sequence[SummandAssignment]
) -> Iterator[Dict[int, SummandAssignment]]:
    torus = g.torus_edges()
    for pick in itertools.product(options, repeat=len(torus)):
        yield dict(zip(torus, pick))


def run_harness(max_edges: int, extra: int = 2) -> Dict[str, object]:
    """Synthesize, simulate, reconstruct and classify every small case; count failures."""
    graphs = enumerate_validated(max_edges)
    summary = {
        "max_edges": max_edges,
        "extra_surplus": extra,
        "graphs": len(graphs),
        "blueprints": 0,
        "failures": [],
    }
    failures: List[str] = summary["failures"]
    options = [TRIVIAL, SPHERE_BUNDLE, SummandAssignment.lens(2, 1)]
    for g in graphs:
        fam = admissible_family(g)
        name = format_graph(g).replace("\n", "; ").strip("; ")
        if not isinstance(torus_union_structure(reconstruct_reeb(synthesize(g, minimal_surplus(g)), fine=True)), IntervalsOK):
            failures.append(f"{name}: torus union of the fine Reeb graph is not a union of intervals")
        for k in surplus_choices(g, extra):
            for s in summand_choices(g, options):
                bp = synthesize(g, k, s)
                summary["blueprints"] += 1
                problems = check_blueprint(bp)
                if problems:
                    failures.append(f"{name}: {problems[0]}")
                if not is_isomorphic(reconstruct_reeb(bp), g):
                    failures.append(f"{name}: reconstruction is not isomorphic")
                if not fam.admits(classify_blueprint(bp)):
                    failures.append(f"{name}: classification outside admissible family")
    return summary
