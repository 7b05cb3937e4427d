from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twarrow import delta as dl

from conftest import composable_pairs, simplex_maps


def brute_monotone(m, n):
    """Independent enumeration: all value tuples, filtered."""
    import itertools
    return [v for v in itertools.product(range(n + 1), repeat=m + 1) if all(a <= b for a, b in zip(v, v[1:]))]


@pytest.mark.parametrize("m,n", [(0, 0), (1, 2), (2, 2), (3, 1), (2, 4)])
def test_monotone_maps_match_brute_force(m, n):
    got = [f.values for f in dl.monotone_maps(m, n)]
    assert got == brute_monotone(m, n)
    assert len(got) == comb(m + n + 1, m + 1)


def test_face_and_degeneracy_values():
    assert dl.face(2, 1).values == (0, 2)
    assert dl.face(1, 0).values == (1,)
    assert dl.degeneracy(1, 0).values == (0, 0, 1)
    assert dl.degeneracy(2, 2).values == (0, 1, 2, 2)


def test_bad_maps_rejected():
    with pytest.raises(dl.DimensionError):
        dl.make(1, 1, (1, 0))
    with pytest.raises(dl.DimensionError):
        dl.make(1, 1, (0, 2))
    with pytest.raises(dl.DimensionError):
        dl.compose(dl.identity(1), dl.identity(2))


@given(composable_pairs(), simplex_maps())
def test_composition_associative(fg, h):
    f, g = fg
    if h.cod != g.dom:
        h = dl.make(h.dom, g.dom, [min(v, g.dom) for v in h.values])
    assert dl.compose(dl.compose(f, g), h) == dl.compose(f, dl.compose(g, h))


@given(simplex_maps())
def test_identity_units(f):
    assert dl.compose(dl.identity(f.cod), f) == f == dl.compose(f, dl.identity(f.dom))


@given(st.integers(2, 6), st.data())
def test_cosimplicial_identities(n, data):
    # delta^j delta^i = delta^i delta^{j-1} for i < j
    i = data.draw(st.integers(0, n - 1))
    j = data.draw(st.integers(i + 1, n))
    assert dl.compose(dl.face(n, j), dl.face(n - 1, i)) == dl.compose(dl.face(n, i), dl.face(n - 1, j - 1))
    # sigma^j sigma^i = sigma^i sigma^{j+1} for i <= j
    i, j = sorted(data.draw(st.lists(st.integers(0, n - 2), min_size=2, max_size=2)))
    assert dl.compose(dl.degeneracy(n - 2, j), dl.degeneracy(n - 1, i)) == dl.compose(
        dl.degeneracy(n - 2, i), dl.degeneracy(n - 1, j + 1))


@given(simplex_maps(max_dim=5))
def test_ez_factorize_round_trip(f):
    surj, inj = dl.ez_factorize(f)
    assert surj.is_surjective and inj.is_injective
    assert dl.compose(inj, surj) == f


def apply_word(word, dom, cod):
    """Rebuild a map from its generator word (acting on simplices left to right)."""
    out = dl.identity(cod)
    for kind, n, i in word:
        g = dl.face(n, i) if kind == "d" else dl.degeneracy(n, i)
        out = dl.compose(out, g)
    assert out.dom == dom
    return out


@given(simplex_maps(max_dim=5))
def test_generator_word_round_trip(f):
    word = dl.generator_word(f)
    assert apply_word(word, f.dom, f.cod) == f
    kinds = [k for k, _, _ in word]
    assert kinds == sorted(kinds)  # faces first, then degeneracies


def join_positions(n):
    """Elements of [n]^op * [n] in order: the reversed copy first, then the straight copy."""
    elems = [("L", i) for i in range(n, -1, -1)] + [("R", j) for j in range(n + 1)]
    return elems, {e: p for p, e in enumerate(elems)}


def q_oracle(a):
    """Q(a) = a^op * a, read off positions in the two joins."""
    src, _ = join_positions(a.dom)
    _, pos = join_positions(a.cod)
    return [pos[(side, a(i))] for side, i in src]


@given(simplex_maps())
def test_q_map_formula(a):
    assert list(dl.q_map(a).values) == q_oracle(a)
    assert dl.q_object(a.dom) == dl.q_map(a).dom


@given(composable_pairs())
def test_q_map_functorial(fg):
    f, g = fg
    assert dl.q_map(dl.compose(f, g)) == dl.compose(dl.q_map(f), dl.q_map(g))
    assert dl.q_map(dl.identity(g.dom)) == dl.identity(2 * g.dom + 1)


@given(simplex_maps())
def test_op_involution(a):
    assert dl.op_map(dl.op_map(a)) == a


@given(composable_pairs())
def test_op_functorial(fg):
    f, g = fg
    assert dl.op_map(dl.compose(f, g)) == dl.compose(dl.op_map(f), dl.op_map(g))


@given(simplex_maps())
def test_block_inclusions_natural(a):
    m, n = a.dom, a.cod
    assert dl.compose(dl.block_inclusion_left(n), dl.op_map(a)) == dl.compose(dl.q_map(a), dl.block_inclusion_left(m))
    assert dl.compose(dl.block_inclusion_right(n), a) == dl.compose(dl.q_map(a), dl.block_inclusion_right(m))


def test_q_of_faces_of_an_edge():
    # the source face of a twisted edge is the middle edge, the target the outer one
    assert dl.q_map(dl.face(1, 1)).values == (1, 2)
    assert dl.q_map(dl.face(1, 0)).values == (0, 3)
