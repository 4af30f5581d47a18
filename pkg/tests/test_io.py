import json
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from sstf.blueprint import SummandAssignment, check_blueprint, synthesize
from sstf.errors import ParseError
from sstf.io import (
    blueprint_from_json,
    emit_report,
    format_graph,
    graph_from_json,
    graph_to_json,
    parse_graph,
    read_graph,
    to_dot,
)
from sstf.reeb_core import EdgeLabel, LabeledDigraph
from sstf.rewrite import normalize

from conftest import S, T, mixed_graph, path

HERE = Path(__file__).parent
DATA = HERE.parent / "data"
GOLDEN = HERE / "golden"


class TestParse:
    def test_basic(self):
        g = parse_graph("v a 0\nv b 1/2  # half\n\ne a b T\n")
        assert g.heights == {"a": Fraction(0), "b": Fraction(1, 2)}
        assert [tuple(e) for e in g.edges] == [("a", "b", EdgeLabel.TORUS)]

    def test_flips_downward_edge(self):
        g = parse_graph("v a 0\nv b 1\ne b a S\n")
        assert g.edges[0].tail == "a"

    def test_negative_and_signed_heights(self):
        g = parse_graph("v a -3/2\nv b +2\ne a b S\n")
        assert g.heights["a"] == Fraction(-3, 2)

    @pytest.mark.parametrize(
        "text, line, fragment",
        [
            ("v a 0\nv a 1\n", 2, "duplicate"),
            ("v a zero\n", 1, "not an integer"),
            ("v a 0.5\n", 1, "not an integer"),
            ("v a 1/0\n", 1, "zero denominator"),
            ("v a 0\nv b 1\ne a b X\n", 3, "label"),
            ("x a 0\n", 1, "unknown record"),
            ("v a 0\ne a b S\n", 2, "not a declared vertex"),
            ("v a 0\ne a a S\n", 2, "self-loop"),
            ("v a 0\nv b 0\ne a b S\n", 3, "equal height"),
            ("v a 0 1\n", 1, "expected"),
            ("v a 0\nv b 1\ne a b\n", 3, "expected"),
        ],
    )
    def test_line_numbered_errors(self, text, line, fragment):
        with pytest.raises(ParseError) as info:
            parse_graph(text)
        assert info.value.line == line
        assert f"line {line}:" in str(info.value)
        assert fragment in str(info.value)

    def test_whole_file_errors(self):
        with pytest.raises(ParseError, match="no vertices"):
            parse_graph("# nothing\n")
        with pytest.raises(ParseError, match="disconnected"):
            parse_graph("v a 0\nv b 1\nv c 2\nv d 3\ne a b S\ne c d S\n")

    def test_data_files(self):
        for f in sorted(DATA.glob("*.reeb")):
            g = read_graph(f)
            assert g.is_connected()


@st.composite
def graphs(draw):
    """Connected graphs: a random spanning tree plus a few extra (possibly parallel) edges."""
    hs = draw(
        st.lists(
            st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=1, max_size=6, unique=True
        )
    )
    heights = {f"u{i}": h for i, h in enumerate(hs)}
    names = list(heights)
    pairs = [(names[draw(st.integers(0, i - 1))], names[i]) for i in range(1, len(names))]
    if len(names) > 1:
        pairs += draw(st.lists(st.tuples(*[st.sampled_from(names)] * 2).filter(lambda p: p[0] != p[1]), max_size=3))
    edges = [(u, v, draw(st.sampled_from([S, T]))) for u, v in pairs]
    return LabeledDigraph.oriented(heights, edges)


@settings(max_examples=80, deadline=None)
@given(graphs())
def test_parse_format_identity(g):
    assert g.is_connected()
    text = format_graph(g)
    h = parse_graph(text)
    assert h == g
    assert format_graph(h) == text
    assert graph_from_json(json.loads(json.dumps(graph_to_json(g)))) == g


def test_blueprint_json_round_trip(small_graphs):
    pool = [SummandAssignment.parse(x) for x in ("S3", "SB", "L(5,2)")]
    for g in small_graphs:
        s = {e: pool[i % 3] for i, e in enumerate(g.torus_edges())}
        bp = synthesize(g, None, s)
        back = blueprint_from_json(json.loads(emit_report(bp)))
        assert back.critical_points == bp.critical_points
        assert back.surplus == bp.surplus
        assert back.summands == bp.summands
        assert back.edge_components == bp.edge_components
        assert [i.components for i in back.inventories] == [i.components for i in bp.inventories]
        assert back.source == bp.source
        assert check_blueprint(back) == []


class TestGolden:
    """Reports frozen after a hand audit of values, serials and move order."""

    def load(self, name):
        return (GOLDEN / name).read_text(encoding="utf-8")

    def test_path_graph(self):
        assert emit_report(read_graph(DATA / "path_sts.reeb")) == self.load("path_sts_graph.json")

    def test_mixed_blueprint(self):
        bp = synthesize(read_graph(DATA / "mixed.reeb"), None, {})
        assert emit_report(bp) == self.load("mixed_blueprint.json")

    def test_mixed_normalized(self):
        g = read_graph(DATA / "mixed.reeb")
        n = normalize(g, {g.torus_edges()[0]: SummandAssignment.lens(3, 1)})
        assert emit_report(n) == self.load("mixed_normalized.json")


class TestDot:
    def test_plain(self):
        dot = to_dot(path(S, T, S))
        assert dot.startswith("digraph reeb {")
        assert "rankdir=BT;" in dot
        assert '"v1" -> "v2" [color=red, style=dashed, label="e1:T"];' in dot
        assert '"v0" -> "v1" [color=blue, style=solid, label="e0:S"];' in dot
        assert dot.rstrip().endswith("}")

    def test_same_rank_groups(self):
        dot = to_dot(mixed_graph())
        assert '{ rank=same; "m1"; "x"; }' in dot
        assert '{ rank=same; "M0"; "y"; }' in dot

    def test_with_blueprint(self):
        g = mixed_graph()
        dot = to_dot(g, synthesize(g))
        assert "GenusDown,Merge,Split,GenusUp" in dot
        assert 'label="T^2"' in dot and 'label="S^2"' in dot

    def test_quotes_ids(self):
        g = LabeledDigraph({'a"b': 0, "c": 1}, [('a"b', "c", S)])
        assert '"a\\"b" -> "c"' in to_dot(g)
