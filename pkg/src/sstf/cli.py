"""Command-line interface.

Exit status: 0 on success or acceptance, 2 when the graph (or a requested
choice) is rejected, 1 on usage and input-format errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Dict, List, Optional

from . import __version__
from .blueprint import (
    SummandAssignment,
    minimal_surplus,
    synthesize,
    validate,
)
from .classify import admissible_family, classify_blueprint
from .enumeration import run_harness
from .errors import ParseError, PreconditionError
from .io import emit_report, read_graph, to_dot
from .reeb_core import LabeledDigraph, invariant_triple
from .rewrite import normalize, normalized_classification, torus_union_structure
from .surface_oracle import morse_bott_surface_classify, surface_genus_bounds

EXIT_OK, EXIT_USAGE, EXIT_REJECTED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class UsageError(Exception):
    pass


def _edge_index(g: LabeledDigraph, token: str) -> int:
    if token.isdigit():
        idx = int(token)
        if idx >= len(g.edges):
            raise UsageError(f"edge index {idx} out of range")
        return idx
    for sep in ("->", "-"):
        if sep in token:
            tail, head = token.split(sep, 1)
            hits = [
                i for i, e in enumerate(g.edges) if {e.tail, e.head} == {tail, head}
            ]
            if len(hits) == 1:
                return hits[0]
            if hits:
                raise UsageError(f"{token!r} matches parallel edges {hits}; use an edge index")
    raise UsageError(f"no edge {token!r}")


def _choices(g: LabeledDigraph, args) -> tuple:
    k = minimal_surplus(g)
    for item in args.k or []:
        vid, _, n = item.partition("=")
        if vid not in g or not n.lstrip("-").isdigit():
            raise UsageError(f"bad --k {item!r} (expected <vertex>=<n>)")
        k[vid] = int(n)
    s: Dict[int, SummandAssignment] = {}
    for item in args.summand or []:
        edge, _, spec = item.partition("=")
        try:
            s[_edge_index(g, edge)] = SummandAssignment.parse(spec)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return k, s


def _out(value) -> None:
    sys.stdout.write(emit_report(value))


def _rejected(g: LabeledDigraph) -> bool:
    verdict = validate(g)
    if not verdict:
        _out({"validation": verdict})
    return not verdict


def cmd_validate(args) -> int:
    g = read_graph(args.file)
    verdict = validate(g)
    _out(verdict)
    return EXIT_OK if verdict else EXIT_REJECTED


def cmd_invariants(args) -> int:
    g = read_graph(args.file)
    _out({"invariants": invariant_triple(g), "torus_union": torus_union_structure(g)})
    return EXIT_OK


def cmd_synthesize(args) -> int:
    g = read_graph(args.file)
    if _rejected(g):
        return EXIT_REJECTED
    k, s = _choices(g, args)
    _out(synthesize(g, k, s))
    return EXIT_OK


def cmd_simulate(args) -> int:
    g = read_graph(args.file)
    if _rejected(g):
        return EXIT_REJECTED
    k, s = _choices(g, args)
    bp = synthesize(g, k, s)
    trace = bp.trace()
    owners = [cp.owner for cp in bp.critical_points]
    values = [cp.value for cp in bp.critical_points]
    report = {"trace": trace, "owners": owners, "values": values}
    _out(report)
    return EXIT_OK


def cmd_classify(args) -> int:
    g = read_graph(args.file)
    if _rejected(g):
        return EXIT_REJECTED
    k, s = _choices(g, args)
    m = classify_blueprint(synthesize(g, k, s))
    _out({"manifold": m, "family": admissible_family(g)})
    return EXIT_OK


def cmd_family(args) -> int:
    g = read_graph(args.file)
    if _rejected(g):
        return EXIT_REJECTED
    _out(admissible_family(g))
    return EXIT_OK


def cmd_normalize(args) -> int:
    g = read_graph(args.file)
    if _rejected(g):
        return EXIT_REJECTED
    k, s = _choices(g, args)
    n = normalize(g, s)
    m = normalized_classification(n, k)
    _out({"normalized": n, "manifold": m})
    return EXIT_OK


def cmd_surface(args) -> int:
    g = read_graph(args.file)
    try:
        if args.morse_bott:
            r = morse_bott_surface_classify(g)
            _out(
                {
                    "all_extremal": r.all_extremal,
                    "surfaces": list(r.surfaces) if r.surfaces else None,
                    "orientable_min": r.orientable_min,
                    "nonorientable": r.nonorientable,
                }
            )
        else:
            b = surface_genus_bounds(g)
            _out({"orientable_min": b.orientable_min, "nonorientable": b.nonorientable})
    except PreconditionError as exc:
        _out({"accepted": False, "reason": str(exc)})
        return EXIT_REJECTED
    return EXIT_OK


def cmd_enumerate(args) -> int:
    summary = run_harness(args.max_edges, args.extra)
    _out(summary)
    return EXIT_OK if not summary["failures"] else EXIT_USAGE


def cmd_export_dot(args) -> int:
    g = read_graph(args.file)
    if args.blueprint:
        if not validate(g):
            sys.stderr.write("graph rejected; cannot export a blueprint\n")
            return EXIT_REJECTED
        k, s = _choices(g, args)
        sys.stdout.write(to_dot(g, synthesize(g, k, s)))
    else:
        sys.stdout.write(to_dot(g))
    return EXIT_OK


def _synthesis_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", action="append", metavar="ID=N", help="surplus handle pairs at a vertex")
    p.add_argument(
        "--summand",
        action="append",
        metavar="EDGE=S3|SB|L(p,q)",
        help="summand for a torus edge (edge index or tail->head)",
    )


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="accepted and ignored; everything is deterministic")
    parser = _Parser(prog="sstf", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_, with_file=True, synth=False):
        p = sub.add_parser(name, help=help_, parents=[common])
        if with_file:
            p.add_argument("file")
        if synth:
            _synthesis_flags(p)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check the realizability hypotheses")
    add("invariants", cmd_invariants, "print (a, b, c) and the torus-edge union structure")
    add("synthesize", cmd_synthesize, "build a Morse blueprint", synth=True)
    add("simulate", cmd_simulate, "synthesize and print the level-surface trace", synth=True)
    add("classify", cmd_classify, "classify the realized manifold", synth=True)
    add("family", cmd_family, "print the admissible manifold family")
    add("normalize", cmd_normalize, "surger all torus edges", synth=True)
    p = add("surface", cmd_surface, "surface Morse / Morse-Bott genus bounds")
    p.add_argument("--morse-bott", action="store_true")
    p = add("enumerate", cmd_enumerate, "exhaustive small-graph harness", with_file=False)
    p.add_argument("--max-edges", type=int, required=True)
    p.add_argument("--extra", type=int, default=2, help="extra surplus pairs beyond the minimum")
    p = add("export-dot", cmd_export_dot, "Graphviz export", synth=True)
    p.add_argument("--blueprint", action="store_true", help="export the graph reconstructed from a blueprint")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UsageError, OSError) as exc:
        sys.stderr.write(f"sstf: {exc}\n")
        return EXIT_USAGE
    except PreconditionError as exc:
        sys.stderr.write(f"sstf: rejected: {exc}\n")
        return EXIT_REJECTED


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
