from math import comb

import numpy as np
import pytest

from twarrow import bisset as bs
from twarrow import fixtures
from twarrow import sset as ss


def strip_generator(label):
    return label[1]


@pytest.mark.parametrize("n,l", [(0, 0), (1, 0), (0, 2), (2, 1)])
def test_representable_counts(n, l):
    F = bs.representable(n, l, 3, 2)
    want = [[comb(n + k + 1, k + 1) * comb(l + j + 1, j + 1) for j in range(3)] for k in range(4)]
    assert F.sizes.tolist() == want
    assert not F.check_identities()


def test_negative_representable_is_empty():
    assert bs.representable(-1, 0, 3, 1).sizes.sum() == 0


def test_external_product_identities(zoo):
    S, T = zoo["N(J)"].truncate(3), zoo["spine"].truncate(2)
    P = bs.external_product(S, T)
    assert P.sizes.tolist() == [[s * t for t in T.sizes] for s in S.sizes]
    assert not P.check_identities()


def test_lifting_law_small(zoo):
    for S in list(zoo.values())[:5]:
        assert bs.tw_bisset(bs.p1_star(S, 1)) == bs.p1_star(ss.tw_sset(S), 1)


@pytest.mark.parametrize("n", range(1, 4))
def test_boundary_presentation_is_the_boundary(n):
    D = 4
    ev = bs.boundary_F(n).evaluate(D, 0)
    B = ev.bisset.rows[0]
    assert ss.find_iso(B, ss.boundary(n, D)[0]) is not None
    f = bs.boundary_F(n).canonical_map(D, 0)
    assert bs.is_levelwise_injective(f)[0]
    assert not f.naturality_failures()


@pytest.mark.parametrize("n,l", [(0, 0), (1, 1), (2, 0), (1, 2)])
def test_twisted_representable_is_representable(n, l):
    E = bs.tw_presentation(bs.representable_presentation(n, l)).evaluate(3, 2).bisset
    T = bs.representable(2 * n + 1, l, 3, 2)
    assert bs.bisset_iso_by_labels(E, T, strip_generator) is not None


def test_precomposition_twist_of_representable_differs():
    # level-wise precomposition does not send F(1) to F(3): 3 objects against 4
    T = bs.tw_bisset(bs.representable(1, 0, 7, 0), 3)
    F = bs.representable(3, 0, 3, 0)
    assert T.sizes[0, 0] == 3 and F.sizes[0, 0] == 4


def test_spine_counts():
    S = fixtures.spine_sset(4)
    assert S.sizes == [2 * (k + 2) - 1 for k in range(5)]
    assert [len(S.nondegenerate(k)) for k in range(5)] == [3, 2, 0, 0, 0]


@pytest.mark.parametrize("n", range(3))
def test_twisted_boundary_injective(n):
    f = bs.dtw_boundary(n).canonical_map(5, 0)
    ok, witness = bs.is_levelwise_injective(f)
    assert ok and witness is None


def test_twisted_boundary_sizes():
    # frozen from an exhaustive evaluation
    assert bs.dtw_boundary(2).evaluate(3, 0).bisset.sizes[:, 0].tolist() == [6, 21, 48, 90]


def test_injectivity_witness():
    # collapse an edge onto a vertex: the two endpoints collide
    I, pt = ss.standard_simplex(1, 2), ss.standard_simplex(0, 2)
    f = ss.SSetMorphism(I, pt, [np.zeros(s, dtype=np.int64) for s in I.sizes])
    ok, witness = bs.is_levelwise_injective(f)
    assert not ok and witness["level"] == (0, 0) and witness["cells"] == (0, 1)


@pytest.mark.parametrize("k", range(4))
def test_corner_attaching_pattern(k):
    pat = bs.attaching_pattern(k)
    want_left = list(range(k, -1, -1)) if k else []
    want_right = list(range(k + 1)) if k else []
    assert pat == {"left": want_left, "right": want_right}


@pytest.mark.parametrize("k", range(3))
def test_corner_injective(k):
    assert bs.is_levelwise_injective(bs.corner_object(k).canonical_map(5, 0))[0]


@pytest.mark.parametrize("n", range(3))
def test_boundary_adjunction(n, cats):
    W = bs.p1_star(ss.nerve(cats["[1]"], 5), 1)
    assert bs.adjunction_check(n, W)


def test_mapping_space_of_twisted_edge_boundary(cats):
    W = bs.p1_star(ss.nerve(cats["[1]"], 3), 2)
    M = bs.mapping_sset(bs.dtw_boundary(1), W)
    assert M.sizes == [9, 9, 9]


def test_mapping_space_needs_discrete_presentation():
    with pytest.raises(NotImplementedError):
        bs.mapping_sset(bs.representable_presentation(0, 1), bs.representable(0, 0, 1, 1))


def test_left_twist_of_nerves(cats):
    L = bs.tw_left_sset(ss.nerve(cats["[1]"], 3), 3)
    assert ss.find_iso(L, ss.standard_simplex(3, 3)) is not None
    L = bs.tw_left_sset(ss.nerve(cats["J"], 3), 2)
    assert not L.check_identities()
