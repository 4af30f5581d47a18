import re

import pytest

from sstf.enumeration import enumerate_validated
from sstf.reeb_core import EdgeLabel, LabeledDigraph

S, T = EdgeLabel.SPHERE, EdgeLabel.TORUS


def path(*labels):
    """Monotone path v0 -> v1 -> ... with the given edge labels."""
    heights = {f"v{i}": i for i in range(len(labels) + 1)}
    return LabeledDigraph(heights, [(f"v{i}", f"v{i + 1}", lab) for i, lab in enumerate(labels)])


def mixed_graph():
    """Graph whose vertex 'v' has profile (1, 1, 1, 1)."""
    heights = {"m0": 0, "m1": 1, "x": 1, "v": 2, "M0": 3, "y": 3, "M1": 4}
    edges = [
        ("m0", "x", S),
        ("x", "v", T),
        ("m1", "v", S),
        ("v", "M0", S),
        ("v", "y", T),
        ("y", "M1", S),
    ]
    return LabeledDigraph(heights, edges)


def theta_graph():
    """m -> p, three parallel p -> q, q -> M: a = 2, b = 0."""
    return LabeledDigraph(
        {"m": 0, "p": 1, "q": 2, "M": 3},
        [("m", "p", S), ("p", "q", S), ("p", "q", S), ("p", "q", S), ("q", "M", S)],
    )


def torus_two_cycle():
    return LabeledDigraph({"bottom": 0, "top": 1}, [("bottom", "top", T), ("bottom", "top", T)])


def graph(spec):
    """Shorthand ``"m:0 p:1 | m-p"``: vertices with heights, then sphere edges."""
    verts, edges = spec.split("|")
    heights = {}
    for tok in verts.split():
        v, h = tok.split(":")
        heights[v] = int(h)
    pairs = [tuple(tok.split("-")) for tok in edges.split()]
    return LabeledDigraph.oriented(heights, [(u, v, S) for u, v in pairs])


# (name, graph, (orientable_min, nonorientable)), expected pairs worked out by hand
SURFACE_CASES = [
    ("path2", path(S, S), (1, 1)),
    ("theta", theta_graph(), (2, 4)),
    ("path3", path(S, T, S), (2, 2)),
    ("Y", graph("m:0 v:1 A:2 B:2 | m-v v-A v-B"), (0, 0)),
    ("eye", graph("m:0 v:1 w:2 M:3 | m-v v-w v-w w-M"), (1, 2)),
    ("path4", path(S, S, S, S), (3, 3)),
    ("lambda", graph("m1:0 m2:0 v:1 u:2 M:3 | m1-v m2-v v-u u-M"), (1, 1)),
    ("tree", graph("m:0 v:1 A:2 w:2 B:3 C:3 | m-v v-A v-w w-B w-C"), (0, 0)),
    ("subdivided eye", graph("m:0 p:1 x:2 q:3 M:4 | m-p p-q p-x x-q q-M"), (2, 3)),
    ("house", graph("m:0 p:1 q:2 r:3 s:4 M:4 | m-p p-q p-r q-r q-s r-M"), (1, 2)),
    ("double eye", graph("m:0 p:1 q:2 r:3 M:4 | m-p p-q p-q q-r q-r r-M"), (2, 4)),
    ("eye with tail", graph("m:0 p:1 q:2 x:3 y:4 M:5 | m-p p-q p-q q-x x-y y-M"), (3, 4)),
]


_criteria = {}
_CRITERION = re.compile(r"::test_criterion_(\d+)_(\w+)$")


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None:
        return
    if report.when == "call" or report.failed:
        name = f"{m.group(1)} {m.group(2).replace('_', ' ')}"
        _criteria[int(m.group(1))] = (name, report.outcome, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        name, outcome, seconds = _criteria[n]
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  criterion {name}  ({seconds:.3f} s)")


@pytest.fixture(scope="session")
def small_graphs():
    """Every validated labeled digraph with at most 5 edges, up to isomorphism."""
    return enumerate_validated(5)
