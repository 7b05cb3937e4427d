import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twarrow import fincat as fc
from twarrow import gss
from twarrow import groupoid as gp


def point():
    return gp.DiscreteGroupoid([0], name="pt")


def into(G, objs, D=None):
    """Functor from a discrete groupoid picking objects."""
    D = D or gp.DiscreteGroupoid(list(range(len(objs))))
    return gp.GroupoidFunctor(D, G, objs, lambda f: G.identity(int(objs[f.src])))


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_loop_space_of_a_group(n):
    # pt x^h_BG pt is the discrete set G
    BG = gp.TableGroupoid(fc.cyclic_group(n))
    P, pa, pb = gp.pseudo_pullback(into(BG, [0]), into(BG, [0]))
    assert P.n_obj == n
    assert len(P.component_reps()) == n
    assert all(len(P.automorphisms(p)) == 1 for p in range(P.n_obj))
    assert gp.strict_pullback(into(BG, [0]), into(BG, [0])).n_obj == 1


def test_homotopy_pullback_of_distinct_points_in_contractible_groupoid():
    J = gp.TableGroupoid(fc.walking_iso())
    P, _, _ = gp.pseudo_pullback(into(J, [0]), into(J, [1]))
    assert P.n_obj == 1
    assert gp.strict_pullback(into(J, [0]), into(J, [1])).n_obj == 0


def test_equivalence_criteria():
    pt = point()
    J = gp.TableGroupoid(fc.walking_iso())
    BG = gp.TableGroupoid(fc.cyclic_group(2))
    assert gp.groupoid_equivalence(gp.GroupoidFunctor(J, pt, [0, 0], lambda f: pt.identity(0))).ok
    r = gp.groupoid_equivalence(into(BG, [0]))
    assert r.essentially_surjective and r.faithful and not r.full
    assert r.witness["not_full_at"] == 0
    r = gp.groupoid_equivalence(gp.GroupoidFunctor(BG, pt, [0], lambda f: pt.identity(0)))
    assert r.full and not r.faithful
    two = gp.DiscreteGroupoid([0, 1])
    r = gp.groupoid_equivalence(gp.GroupoidFunctor(two, pt, [0, 0], lambda f: pt.identity(0)))
    assert not r.full and r.witness["merged_components"] == (0, 1)
    r = gp.groupoid_equivalence(gp.GroupoidFunctor(pt, two, [0], lambda f: two.identity(0)))
    assert not r.essentially_surjective and r.witness["missed_object"] == 1


@given(st.integers(1, 4), st.integers(1, 4))
def test_product_counts(m, n):
    A, B = gp.TableGroupoid(fc.cyclic_group(m)), gp.TableGroupoid(fc.walking_iso())
    A2 = gp.DiscreteGroupoid(list(range(n)))
    P = gp.ProductGroupoid(A, A2)
    assert P.n_obj == n and len(P.component_reps()) == n
    assert len(P.automorphisms(0)) == m
    Q = gp.ProductGroupoid(A, B)
    assert len(Q.component_reps()) == 1 and len(Q.hom(0, 1)) == m


@pytest.mark.parametrize("n", [2, 3])
def test_level_one_of_classifying_diagram_of_a_group(n):
    # Fun([1], BG)^iso is equivalent to BG: connected, automorphism group of order n
    W = gss.classifying_diagram(fc.cyclic_group(n), 2)
    G1 = W.levels[1]
    assert G1.n_obj == n
    assert len(G1.component_reps()) == 1
    assert all(len(G1.automorphisms(a)) == n for a in range(G1.n_obj))
    assert all(len(G1.hom(0, b)) == n for b in range(G1.n_obj))


def test_natiso_groupoid_of_walking_iso_is_connected():
    W = gss.classifying_diagram(fc.walking_iso(), 3)
    for k in range(4):
        G = W.levels[k]
        assert G.n_obj == 2 ** (k + 1)
        assert len(G.component_reps()) == 1
        assert all(len(G.hom(0, b)) == 1 for b in range(G.n_obj))


def test_groupoid_axioms_on_natiso_levels():
    W = gss.classifying_diagram(fc.cyclic_group(2), 2)
    G = W.levels[2]
    for a in range(G.n_obj):
        for f in G.generators(a):
            assert G.compose(G.inverse(f), f) == G.identity(a)
            assert G.compose(f, G.identity(a)) == f


def test_homotopy_pullback_square():
    # pt -> J <- pt with the corner pt is a homotopy pullback, with corner empty it is not
    J = gp.TableGroupoid(fc.walking_iso())
    pt = point()
    a = into(J, [0], pt)
    sq = gp.Square(top=gp.identity_functor(pt), left=gp.identity_functor(pt), right=a, bottom=a)
    assert gp.homotopy_pullback_check(sq).ok
    BG = gp.TableGroupoid(fc.cyclic_group(2))
    c = into(BG, [0], pt)
    sq = gp.Square(top=gp.identity_functor(pt), left=gp.identity_functor(pt), right=c, bottom=c)
    r = gp.homotopy_pullback_check(sq)
    assert not r.ok and r.sizes["pseudo_pullback"] == 2


def test_non_commuting_square_detected():
    J = gp.TableGroupoid(fc.walking_iso())
    pt = point()
    sq = gp.Square(top=gp.identity_functor(pt), left=gp.identity_functor(pt), right=into(J, [1], pt),
                   bottom=into(J, [0], pt))
    with pytest.raises(gp.NonCommutingSquare):
        gp.homotopy_pullback_check(sq)
