from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twarrow import bisset as bs
from twarrow import delta as dl
from twarrow import fincat as fc
from twarrow import sset as ss

from conftest import posets


@pytest.mark.parametrize("n", range(5))
def test_standard_simplex_counts(n):
    S = ss.standard_simplex(n, 5)
    assert S.sizes == [comb(n + k + 1, k + 1) for k in range(6)]
    assert not S.check_identities()


def test_standard_simplex_matches_model():
    # the vectorised tables agree with the generic construction
    D = 4
    for n in range(4):
        model = ss.FinSimplicialSet.from_model(
            D, lambda k: [f.values for f in dl.monotone_maps(k, n)],
            lambda a, v: tuple(v[i] for i in a.values))
        assert ss.standard_simplex(n, D) == model


@pytest.mark.parametrize("n", range(1, 5))
def test_boundary_counts(n):
    B, incl = ss.boundary(n, 5)
    # drop the surjections [k] -> [n]
    assert B.sizes == [comb(n + k + 1, k + 1) - comb(k, n) for k in range(6)]
    assert incl.is_natural()


def test_every_fixture_satisfies_identities(zoo):
    assert len(zoo) >= 10
    for name, S in zoo.items():
        assert not S.check_identities(), name


def test_ez_decompose_round_trip(zoo):
    for S in zoo.values():
        for k in range(S.trunc + 1):
            for x in range(S.sizes[k]):
                j, y, s = S.ez_decompose(k, x)
                assert y in S.nondegenerate(j)
                assert s.is_surjective and s.dom == k and s.cod == j
                assert S.act(s)[y] == x


def test_nerve_counts(cats):
    assert ss.nerve(cats["J"], 4).sizes == [2 ** (k + 1) for k in range(5)]
    assert ss.nerve(cats["Z/2"], 4).sizes == [2 ** k for k in range(5)]
    assert ss.find_iso(ss.nerve(cats["[2]"], 4), ss.standard_simplex(2, 4)) is not None


def test_coproduct_and_product_sizes():
    A, B = ss.standard_simplex(1, 3), ss.standard_simplex(2, 3)
    C, incl = ss.coproduct([A, B])
    assert C.sizes == [a + b for a, b in zip(A.sizes, B.sizes)]
    assert all(f.is_natural() for f in incl)
    P = ss.product(A, B)
    assert P.sizes == [a * b for a, b in zip(A.sizes, B.sizes)]
    assert not P.check_identities()


def test_coequalizer_circle():
    # identify both ends of an edge: one vertex, the edge survives
    D = 4
    pt, I = ss.standard_simplex(0, D), ss.standard_simplex(1, D)
    ends = [ss.SSetMorphism(pt, I, [I.act(dl.terminal_map(k))[[v]] for k in range(D + 1)]) for v in (0, 1)]
    Q, q = ss.coequalizer(*ends)
    assert Q.sizes == [k + 1 for k in range(D + 1)]
    assert [len(Q.nondegenerate(k)) for k in range(D + 1)] == [1, 1, 0, 0, 0]
    assert q.is_natural() and not Q.check_identities()


def test_op_is_involution(zoo):
    for S in zoo.values():
        assert ss.op_sset(ss.op_sset(S)) == S


@pytest.mark.parametrize("n", range(3))
def test_twisted_simplex_counts(n):
    # the precomposition twist: level k is the maps [2k+1] -> [n]
    T = ss.tw_sset(ss.standard_simplex(n, 5), 2)
    assert T.sizes == [comb(n + 2 * k + 2, 2 * k + 2) for k in range(3)]
    assert not T.check_identities()


def test_twisted_simplex_is_not_a_simplex():
    # the precomposition twist of an edge has 3 vertices, the 3-simplex has 4
    T = ss.tw_sset(ss.standard_simplex(1, 5), 2)
    assert T.sizes[0] == 3 and ss.standard_simplex(3, 2).sizes[0] == 4


@pytest.mark.parametrize("n", range(4))
def test_left_twist_of_simplex(n):
    D = 3
    L = bs.tw_left_sset(ss.standard_simplex(n, D), D)
    assert ss.find_iso(L, ss.standard_simplex(2 * n + 1, D)) is not None


def test_tw_projection_natural(zoo):
    for S in zoo.values():
        p = ss.tw_projection(S, 2)
        assert p.is_natural()


@given(posets())
def test_nerve_identities_random_posets(P):
    N = ss.nerve(P, 4)
    assert not N.check_identities()
    # a poset nerve has at most one simplex per monotone chain of elements
    assert N.sizes[0] == P.n_obj and N.sizes[1] == P.n_mor


def test_find_iso_rejects_non_isomorphic():
    assert ss.find_iso(ss.boundary(2, 3)[0], ss.standard_simplex(2, 3)) is None
    S = ss.standard_simplex(2, 3)
    phi = ss.find_iso(S, S)
    assert phi is not None and ss.is_iso(phi)


def test_truncation_errors():
    with pytest.raises(ss.TruncationError):
        ss.tw_sset(ss.standard_simplex(1, 2), 1)
    assert np.array_equal(ss.standard_simplex(1, 4).truncate(2).sizes, [2, 3, 4])
