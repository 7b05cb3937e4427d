import json
import subprocess
import sys

import pytest
from hypothesis import given

from twarrow import bisset as bs
from twarrow import cli
from twarrow import fincat as fc
from twarrow import formats as fm
from twarrow import sset as ss

from conftest import posets


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def dot_counts(text):
    lines = [l.strip() for l in text.splitlines()[1:-1]]
    return sum("->" not in l for l in lines), sum("->" in l for l in lines)


# round trips ---------------------------------------------------------------------------


def test_category_round_trip(cats):
    for C in cats.values():
        assert fm.category_from_doc(fm.loads(fm.dumps(fm.category_to_doc(C)))) == C, C.name


def test_constructed_category_round_trip(cats):
    # interleaved identities are reindexed into the canonical order
    for C in list(cats.values())[:6]:
        for X in (fc.tw_cat(C)[0], fc.product(fc.opposite(C), C), fc.under_category(C, 0)[0]):
            Y = fm.category_from_doc(fm.category_to_doc(X))
            assert Y == fm.canonical_category(X)
            assert fc.find_isomorphism(X, Y) is not None


@given(posets())
def test_poset_round_trip(P):
    assert fm.category_from_doc(fm.category_to_doc(P)) == P


def test_sset_round_trip(zoo):
    for S in zoo.values():
        assert fm.sset_from_doc(fm.loads(fm.dumps(fm.sset_to_doc(S)))) == S


def test_worked_example_category():
    doc = {"kind": "category", "name": "J", "objects": ["0", "1"],
           "morphisms": [{"name": "u", "src": "0", "tgt": "1"}, {"name": "v", "src": "1", "tgt": "0"}],
           "composition": [["v", "u", "1_0"], ["u", "v", "1_1"]], "inverses": [["u", "v"]]}
    J = fm.category_from_doc(doc)
    assert J == fc.walking_iso()


# tw ---------------------------------------------------------------------------------------


def test_tw_of_an_edge_is_a_cospan(capsys):
    code, out, _ = run(["tw", "fixture:[1]"], capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["objects"]) == 3 and len(doc["morphisms"]) == 2
    assert len({m["tgt"] for m in doc["morphisms"]}) == 1
    T = fm.category_from_doc(doc)
    assert fc.find_isomorphism(T, fc.poset(["a", "b", "c"], [("a", "c"), ("b", "c")])) is not None
    assert doc["projection"]["objects"]["(0, 1)"] == ["0", "1"]


def test_tw_left_of_an_edge_is_a_three_simplex(capsys, tmp_path):
    src = write(tmp_path, "d1.json", fm.sset_to_doc(ss.standard_simplex(1, 3)))
    code, out, _ = run(["tw", src, "--left"], capsys)
    S = fm.sset_from_doc(json.loads(out))
    assert code == 0 and ss.find_iso(S, ss.standard_simplex(3, 3)) is not None


def test_tw_precomposition_of_an_edge(capsys, tmp_path):
    src = write(tmp_path, "d1.json", fm.sset_to_doc(ss.standard_simplex(1, 5)))
    code, out, _ = run(["tw", src], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["sizes"] == [3, 5, 7]
    assert doc["projection"][0] == [[0, 0], [0, 1], [1, 1]]


def test_tw_of_empty_is_empty(capsys):
    for extra in ([], ["--left"]):
        code, out, _ = run(["tw", "fixture:empty", *extra], capsys)
        assert code == 0 and not any(json.loads(out)["sizes"])


# check ------------------------------------------------------------------------------------


def test_check_segal_passes(capsys):
    code, out, _ = run(["check", "segal", "fixture:[2]"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["ok"] and len(rep["checks"]) == 2


def test_check_complete_fails_on_discrete_walking_iso(capsys):
    code, out, _ = run(["check", "complete", "fixture:J", "--space", "discrete_nerve"], capsys)
    rep = json.loads(out)
    assert code == 1 and not rep["ok"]
    details = rep["checks"][0]["details"]
    assert details["hoequiv"] == 4 and details["objects"] == 2 and not details["essentially_surjective"]


def test_check_boundary_mono(capsys):
    code, out, _ = run(["check", "boundary-mono", "--n", "2", "--k", "5", "--format", "text"], capsys)
    assert code == 0 and out.splitlines()[-1].startswith("PASS overall")


@pytest.mark.parametrize("suite", ["hoequiv-pullback", "fw-equiv", "left-fib", "fiber-slice"])
def test_space_suites_pass(capsys, suite):
    code, out, _ = run(["check", suite, "fixture:J", "--n-max", "2"], capsys)
    assert code == 0 and json.loads(out)["ok"]


def test_space_document_input(capsys, tmp_path):
    src = write(tmp_path, "w.json", fm.space_doc(fc.chain(1), "classifying_diagram", 7))
    code, _, _ = run(["check", "segal", src, "--n-max", "3"], capsys)
    assert code == 0


def test_reports_are_deterministic(capsys):
    argv = ["check", "left-fib", "fixture:Z/2", "--n-max", "2"]
    a, b = run(argv, capsys)[1], run(argv, capsys)[1]
    assert a == b
    timed = json.loads(run(argv + ["--timing"], capsys)[1])
    assert "seconds" in timed and "seconds" not in json.loads(a)


# export -----------------------------------------------------------------------------------


def test_export_tw_edge_dot(capsys, tmp_path):
    _, out, _ = run(["tw", "fixture:[1]"], capsys)
    src = tmp_path / "tw.json"
    src.write_text(out)
    code, dot, _ = run(["export", str(src), "--format", "dot"], capsys)
    assert code == 0 and dot_counts(dot) == (3, 2)


def test_export_terminal_dot(capsys):
    code, dot, _ = run(["export", "fixture:terminal"], capsys)
    assert code == 0 and dot_counts(dot) == (1, 0)


def test_export_homotopy_category_of_walking_iso(capsys, tmp_path):
    src = write(tmp_path, "j.json", fm.space_doc(fc.walking_iso(), "classifying_diagram", 3))
    code, dot, _ = run(["export", src, "--format", "dot"], capsys)
    assert code == 0 and dot_counts(dot) == (2, 2)


def test_export_json_reports(capsys):
    code, out, _ = run(["export", "fixture:J", "--format", "json-report"], capsys)
    assert code == 0 and json.loads(out)["summary"]["isomorphisms"] == 4
    code, out, _ = run(["export", "fixture:spine", "--format", "json-report"], capsys)
    assert json.loads(out)["summary"]["nondegenerate"][:2] == [3, 2]


def test_export_out_file(capsys, tmp_path):
    dest = tmp_path / "t.dot"
    assert cli.main(["export", "fixture:terminal", "--out", str(dest)]) == 0
    assert dest.read_text().startswith("digraph")


# errors -----------------------------------------------------------------------------------


def test_malformed_json_reports_position(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "category",\n "objects": [1,}')
    code, _, err = run(["export", str(p)], capsys)
    assert code == 2 and "line 2, column" in err


def test_semantic_error_reports_path(capsys, tmp_path):
    doc = fm.category_to_doc(fc.chain(1))
    doc["morphisms"][0]["tgt"] = "nowhere"
    code, _, err = run(["export", write(tmp_path, "c.json", doc)], capsys)
    assert code == 2 and "$.morphisms[0]" not in err and ".morphisms[0]" in err


def test_missing_composite_is_input_error(capsys, tmp_path):
    doc = {"kind": "category", "objects": ["a"], "morphisms": [{"name": "e", "src": "a", "tgt": "a"}]}
    code, _, err = run(["export", write(tmp_path, "c.json", doc)], capsys)
    assert code == 2 and "missing composite" in err


def test_bad_simplicial_identities_rejected(capsys, tmp_path):
    doc = fm.sset_to_doc(ss.standard_simplex(1, 2))
    doc["faces"][0][0] = doc["faces"][0][1]
    code, _, err = run(["tw", write(tmp_path, "s.json", doc)], capsys)
    assert code == 2 and "identities" in err


def test_unsupported_format_and_truncation(capsys):
    assert run(["export", "fixture:spine", "--format", "dot"], capsys)[0] == 2
    assert run(["check", "segal", "fixture:[1]", "--trunc", "5"], capsys)[0] == 2
    assert run(["check", "segal"], capsys)[0] == 2
    assert run(["export", "fixture:nope"], capsys)[0] == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as e:
        cli.main(["check", "no-such-suite"])
    assert e.value.code == 2


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "twarrow.cli", "export", "fixture:terminal"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("digraph")
