import pytest

from twarrow import delta as dl
from twarrow import fincat as fc
from twarrow import fixtures
from twarrow import gss
from twarrow import sset as ss


@pytest.fixture(scope="module")
def spaces():
    return fixtures.segal_spaces(7)


def test_level_objects_are_nerve_simplices(cats):
    for C in cats.values():
        W = gss.classifying_diagram(C, 4)
        assert W.sizes() == ss.nerve(C, 4).sizes


def test_simplicial_identities_hold(spaces):
    for W in spaces.values():
        assert not W.identity_failures(4), W.name


def test_discrete_nerve_levels_are_discrete(cats):
    W = gss.discrete_nerve(cats["J"], 3)
    assert all(len(G.component_reps()) == G.n_obj for G in W.levels)


def test_truncation_guard(cats):
    W = gss.classifying_diagram(cats["[1]"], 3)
    with pytest.raises(ss.TruncationError):
        W.functor(dl.identity(4))
    with pytest.raises(ss.TruncationError):
        W.truncate(5)


def test_segal_fixtures_pass(spaces):
    for W in spaces.values():
        rep = gss.segal_check(W, 3)
        assert rep.ok, (W.name, rep.as_dict())


def test_segal_modes_agree(spaces):
    for W in spaces.values():
        assert gss.segal_check(W, 3, mode="iterated").ok == gss.segal_check(W, 3).ok


def test_spine_is_not_segal():
    W = gss.discrete_embedding(fixtures.spine_sset(3))
    rep = gss.segal_check(W, 3)
    assert not rep.ok and rep.first_failure() == 2
    assert rep.levels[2].witness["missed_object"] is not None
    assert gss.segal_check(W, 3, mode="iterated").first_failure() == 2


def test_boundary_of_triangle_is_not_segal():
    W = gss.discrete_embedding(ss.boundary(2, 3)[0])
    assert not gss.segal_check(W, 2).ok


def test_strict_and_pseudo_segal_pullbacks_agree(spaces):
    for W in spaces.values():
        assert gss.strict_pseudo_agree(W).ok


def test_homotopy_category_recovers_the_category(cats):
    for C in cats.values():
        for W in (gss.classifying_diagram(C, 3), gss.discrete_nerve(C, 3)):
            ho = gss.ho_category(W).category
            assert fc.find_isomorphism(ho, C) is not None, W.name


def test_non_segal_space_has_no_homotopy_category():
    W = gss.discrete_embedding(fixtures.spine_sset(3))
    with pytest.raises(gss.NotSegalError):
        gss.ho_category(W)


def test_twisting_reindexes_levels(spaces):
    W = spaces["class:[2]"]
    T = gss.tw_space(W)
    assert T.trunc == 3
    assert T.sizes() == [W.sizes()[2 * n + 1] for n in range(4)]
    assert not T.identity_failures()


def test_op_involution(spaces):
    for W in list(spaces.values())[:8]:
        assert gss.spaces_equal(gss.op_space(gss.op_space(W)), W, 3)


def test_projection_is_natural(spaces):
    p = gss.twisted_projection_space(spaces["class:J"])
    assert not p.naturality_failures(3)


def test_comparison_functor_is_an_equivalence(spaces):
    for key in ("class:[2]", "class:J", "disc:idem", "class:Z/2", "disc:parallel"):
        res = gss.f_w_functor(spaces[key])
        assert res.report.ok, key
        assert gss.ho_tw_equivalent(res) is not None


def test_comparison_needs_truncation(cats):
    with pytest.raises(ss.TruncationError):
        gss.f_w_functor(gss.classifying_diagram(cats["[1]"], 5))


@pytest.mark.parametrize("name,complete", [("[2]", True), ("V", True), ("J", False), ("Z/2", False),
                                           ("idem", True), ("parallel", True)])
def test_completeness_of_discrete_nerves(cats, name, complete):
    # a discrete nerve is complete exactly when the category has no non-identity isomorphisms
    assert gss.completeness_check(gss.discrete_nerve(cats[name], 3)).ok == complete


def test_classifying_diagrams_are_complete(spaces):
    for key, W in spaces.items():
        if key.startswith("class:"):
            assert gss.completeness_check(W).ok, key


def test_incomplete_witness(cats):
    rep = gss.completeness_check(gss.discrete_nerve(cats["J"], 3))
    d = rep.as_dict()
    assert not rep.ok and d["objects"] == 2 and d["hoequiv"] == 4
    assert d["hoequiv_components"] == 4 and d["object_components"] == 2


def test_hoequiv_pullback(spaces):
    for key in ("class:J", "disc:J", "class:[2]", "disc:Z/2"):
        assert gss.tw_hoequiv_pullback_check(spaces[key]).ok, key


def test_left_fibration(spaces):
    for key in ("class:[1]", "disc:J", "class:Z/2"):
        rep = gss.left_fibration_check(gss.twisted_projection_space(spaces[key]), 3)
        assert rep.ok and rep.agree, key


def test_first_projection_is_not_a_left_fibration(spaces):
    rep = gss.left_fibration_check(gss.first_projection(spaces["class:[1]"]), 2)
    assert not rep.ok and rep.agree
    assert rep.levels[1].witness


def test_fibre_is_the_under_category(cats):
    C = cats["V"]
    W = gss.classifying_diagram(C, 7)
    p = gss.twisted_projection_space(W)
    for x in range(C.n_obj):
        F, to_w = gss.fiber_at(p, x, D=3)
        assert not to_w.naturality_failures(3)
        U, _ = fc.under_category(C, x)
        assert fc.find_equivalence(gss.ho_category(F).category, U) is not None
