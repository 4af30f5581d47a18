import json
from pathlib import Path

import pytest

from sstf.cli import EXIT_OK, EXIT_REJECTED, EXIT_USAGE, main

DATA = Path(__file__).parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_validate_accepts(capsys):
    code, report = run_json(capsys, "validate", DATA / "path_sts.reeb")
    assert code == EXIT_OK and report == {"accepted": True, "reasons": []}


def test_validate_rejects(capsys):
    code, report = run_json(capsys, "validate", DATA / "torus_bundle.reeb")
    assert code == EXIT_REJECTED
    assert {r["code"] for r in report["reasons"]} >= {"ExtremalTorus"}
    code, report = run_json(capsys, "validate", DATA / "single_edge.reeb")
    assert code == EXIT_REJECTED and report["reasons"][0]["code"] == "ReebTheoremCase"


def test_invariants(capsys):
    code, report = run_json(capsys, "invariants", DATA / "mixed.reeb")
    assert code == EXIT_OK
    assert report["invariants"] == {"a": 0, "b": 0, "c": 2}
    assert report["torus_union"] == {"intervals_ok": True, "count": 1}


def test_synthesize_with_choices(capsys):
    code, report = run_json(
        capsys, "synthesize", DATA / "path_ss.reeb", "--k", "b=2", "--seed", 7
    )
    assert code == EXIT_OK
    kinds = [c["move"]["kind"] for c in report["critical_points"]]
    assert kinds == ["Birth", "Split", "Split", "Merge", "Merge", "Death"]


def test_simulate(capsys):
    code, report = run_json(capsys, "simulate", DATA / "path_sts.reeb")
    assert code == EXIT_OK
    assert report["trace"]["final"] == []
    assert [s["tori"] for s in report["trace"]["steps"]] == [0, 1, 0, 0]
    assert report["owners"] == ["a", "b", "c", "d"]


@pytest.mark.parametrize(
    "extra, name",
    [
        ([], "S^3"),
        (["--summand", "1=SB"], "S^1 x S^2"),
        (["--summand", "b->c=L(3,1)"], "L(3,1)"),
        (["--summand", "b-c=L(5,7)"], "L(5,2)"),
    ],
)
def test_classify(capsys, extra, name):
    code, report = run_json(capsys, "classify", DATA / "path_sts.reeb", *extra)
    assert code == EXIT_OK and report["manifold"]["name"] == name
    assert report["family"]["min_r"] == 0 and report["family"]["max_lenses"] == 1


def test_classify_theta(capsys):
    code, report = run_json(capsys, "classify", DATA / "theta.reeb")
    assert report["manifold"] == {"lenses": [], "name": "#_2 (S^1 x S^2)", "r": 2}


def test_family_and_normalize(capsys):
    code, report = run_json(capsys, "family", DATA / "theta.reeb")
    assert code == EXIT_OK and report["description"] == "r >= 2, no lens summands"
    code, report = run_json(capsys, "normalize", DATA / "path_sts.reeb", "--summand", "1=L(3,1)")
    assert code == EXIT_OK
    assert report["normalized"]["forced_surplus"] == ["b", "c"]
    assert report["manifold"]["name"] == "L(3,1)"


def test_surface(capsys):
    code, report = run_json(capsys, "surface", DATA / "theta.reeb")
    assert code == EXIT_OK and report == {"orientable_min": 2, "nonorientable": 4}
    code, report = run_json(capsys, "surface", DATA / "single_edge.reeb")
    assert code == EXIT_REJECTED and not report["accepted"]
    code, report = run_json(capsys, "surface", "--morse-bott", DATA / "torus_bundle.reeb")
    assert code == EXIT_OK
    assert report["surfaces"] == ["S^2", "T^2", "RP^2", "Klein bottle"]


def test_enumerate(capsys):
    code, report = run_json(capsys, "enumerate", "--max-edges", 4, "--extra", 1)
    assert code == EXIT_OK
    assert report["graphs"] == 23 and report["failures"] == []


def test_export_dot(capsys):
    code, out, _ = run(capsys, "export-dot", DATA / "mixed.reeb")
    assert code == EXIT_OK and out.startswith("digraph reeb {")
    code, out, _ = run(capsys, "export-dot", "--blueprint", DATA / "mixed.reeb")
    assert code == EXIT_OK and "GenusDown,Merge,Split,GenusUp" in out
    code, _, err = run(capsys, "export-dot", "--blueprint", DATA / "torus_bundle.reeb")
    assert code == EXIT_REJECTED and "rejected" in err


def test_synthesis_commands_reject_invalid_graph(capsys):
    for cmd in ("synthesize", "simulate", "classify", "family", "normalize"):
        code, report = run_json(capsys, cmd, DATA / "torus_bundle.reeb")
        assert code == EXIT_REJECTED and report["validation"]["accepted"] is False


def test_bad_choices(capsys):
    code, _, err = run(capsys, "synthesize", DATA / "path_ss.reeb", "--k", "b=0")
    assert code == EXIT_REJECTED and "k >= 1" in err
    code, _, err = run(capsys, "synthesize", DATA / "path_ss.reeb", "--k", "nowhere=1")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "classify", DATA / "path_sts.reeb", "--summand", "0=SB")
    assert code == EXIT_REJECTED and "not a torus edge" in err
    code, _, err = run(capsys, "classify", DATA / "path_sts.reeb", "--summand", "1=L(4,2)")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "classify", DATA / "path_sts.reeb", "--summand", "x->y=SB")
    assert code == EXIT_USAGE and "no edge" in err


def test_parallel_edges_need_index(capsys, tmp_path):
    f = tmp_path / "par.reeb"
    f.write_text("v m 0\nv p 1\nv q 2\nv M 3\ne m p S\ne p q T\ne p q S\ne q M S\n")
    code, _, err = run(capsys, "classify", f, "--summand", "p->q=SB")
    assert code == EXIT_USAGE and "parallel" in err
    code, report = run_json(capsys, "classify", f, "--summand", "1=SB")
    assert code == EXIT_OK and report["manifold"]["r"] == 2


def test_input_errors(capsys, tmp_path):
    f = tmp_path / "bad.reeb"
    f.write_text("v a 0\nv b 0\ne a b S\n")
    code, _, err = run(capsys, "validate", f)
    assert code == EXIT_USAGE and "line 3" in err
    code, _, err = run(capsys, "validate", tmp_path / "missing.reeb")
    assert code == EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == EXIT_USAGE
