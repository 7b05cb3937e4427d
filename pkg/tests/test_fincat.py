import numpy as np
import pytest
from hypothesis import given

from twarrow import fincat as fc
from twarrow import sset as ss

from conftest import posets


def test_fixture_zoo_obeys_laws(cats):
    assert len(cats) >= 10
    for C in cats.values():
        assert not C.law_failures(), C.name


def test_missing_composite_rejected():
    with pytest.raises(fc.CategoryError):
        fc.category(["a"], [("e", "a", "a")], {})


def test_non_associative_table_rejected():
    # e*e = 1 and e*e = e cannot both hold; a bad table is caught by the law check
    C = fc.idempotent_monoid()
    comp = C.comp.copy()
    comp[1, 1] = 0
    comp[0, 1] = 0
    with pytest.raises(fc.CategoryError):
        fc.FinCategory(C.n_obj, C.src, C.tgt, C.ident, comp)


def test_twisted_arrows_of_an_edge_form_a_cospan(cats):
    T, proj = fc.tw_cat(cats["[1]"])
    assert T.n_obj == 3 and T.n_mor == 5
    non_id = [m for m in range(T.n_mor) if T.ident[T.src[m]] != m]
    # both non-identity arrows end at the non-identity morphism of [1]
    tgt = {int(T.tgt[m]) for m in non_id}
    assert len(non_id) == 2 and len(tgt) == 1
    assert not proj.law_failures()


def test_twisted_arrow_counts_against_nerve(cats):
    # morphisms of Tw(C) are exactly the 3-simplices of N(C)
    for C in cats.values():
        T, proj = fc.tw_cat(C)
        assert T.n_obj == C.n_mor
        assert T.n_mor == ss.nerve(C, 3).sizes[3], C.name
        assert not T.law_failures() and not proj.law_failures()


def test_twisted_arrows_of_a_group_form_a_groupoid(cats):
    T, _ = fc.tw_cat(cats["Z/2"])
    assert T.is_groupoid() and T.n_obj == 2 and T.n_mor == 8


@given(posets())
def test_tw_of_opposite(P):
    # Tw(C^op) and Tw(C) are isomorphic
    A, _ = fc.tw_cat(fc.opposite(P))
    B, _ = fc.tw_cat(P)
    assert fc.find_isomorphism(A, B) is not None


@given(posets())
def test_opposite_involution(P):
    assert fc.opposite(fc.opposite(P)) == P


def test_opposite_involution_zoo(cats):
    for C in cats.values():
        assert fc.opposite(fc.opposite(C)) == C


def test_walking_iso_is_contractible(cats):
    J, pt = cats["J"], cats["terminal"]
    F = fc.FinFunctor(J, pt, np.zeros(2, dtype=np.int64), np.zeros(J.n_mor, dtype=np.int64))
    rep = fc.is_equivalence(F)
    assert rep.ok and rep.as_dict()["witness"] is None
    assert fc.find_isomorphism(J, pt) is None
    assert fc.find_equivalence(J, pt) is not None
    S, incl, retr = fc.skeleton(J)
    assert S.n_obj == 1


def test_non_equivalences_report_witnesses(cats):
    pt, Z2, d2 = cats["terminal"], cats["Z/2"], cats["disc2"]
    F = fc.FinFunctor(Z2, pt, [0], [0, 0])
    rep = fc.is_equivalence(F)
    assert rep.essentially_surjective and rep.full and not rep.faithful
    G = fc.FinFunctor(d2, pt, [0, 0], [0, 0])
    assert not fc.is_equivalence(G).full
    H = fc.FinFunctor(pt, d2, [0], [0])
    assert not fc.is_equivalence(H).essentially_surjective


def test_under_category_of_group_is_contractible(cats):
    U, forget = fc.under_category(cats["Z/2"], 0)
    assert U.n_obj == 2 and U.n_mor == 4
    assert fc.find_equivalence(U, cats["terminal"]) is not None
    assert not forget.law_failures()


def test_under_initial_object(cats):
    C = cats["[2]"]
    U, _ = fc.under_category(C, 0)
    assert fc.find_isomorphism(U, C) is not None


def test_quotient_of_parallel_pair(cats):
    P = cats["parallel"]
    f, g = [m for m in range(P.n_mor) if P.mor_labels[m] in ("f", "g")]
    Q, q = fc.quotient_by_congruence(P, [(f, g)])
    assert fc.find_isomorphism(Q, cats["[1]"]) is not None
    assert not q.law_failures()


def test_product_sizes(cats):
    A, B = cats["J"], cats["[2]"]
    P = fc.product(A, B)
    assert (P.n_obj, P.n_mor) == (A.n_obj * B.n_obj, A.n_mor * B.n_mor)
    assert not P.law_failures()


@given(posets())
def test_full_subcategory_of_poset(P):
    S, incl = fc.full_subcategory(P, list(range(0, P.n_obj, 2)))
    assert not S.law_failures() and not incl.law_failures()
