"""The simplex category as executable algebra.

Objects ``[n] = {0 < 1 < ... < n}`` are encoded by the integer ``n``; a
morphism is a :class:`SimplexMap`, i.e. a weakly increasing value sequence.
Maps compose like functions: ``compose(f, g)`` is ``f o g``.

The twisting functor sends ``[n]`` to the join ``[n]^op * [n]``, identified
with ``[2n+1]``: the reversed copy of ``[n]`` occupies positions ``0..n``
(position ``p`` holds element ``n - p``) and the straight copy occupies
positions ``n+1..2n+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator


class DimensionError(ValueError):
    """Raised when maps are not composable or an index is out of range."""


@dataclass(frozen=True)
class SimplexMap:
    """A monotone map ``[dom] -> [cod]``."""

    dom: int
    cod: int
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if self.dom < 0 or self.cod < 0:
            raise DimensionError(f"negative dimension in [{self.dom}] -> [{self.cod}]")
        if len(vals) != self.dom + 1:
            raise DimensionError(
                f"expected {self.dom + 1} values for a map out of [{self.dom}], got {len(vals)}"
            )
        if any(v < 0 or v > self.cod for v in vals):
            raise DimensionError(f"values {vals} leave [{self.cod}]")
        if any(a > b for a, b in zip(vals, vals[1:])):
            raise DimensionError(f"values {vals} are not monotone")

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __repr__(self):
        return f"SimplexMap([{self.dom}]->[{self.cod}], {self.values})"

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == len(self.values)

    @property
    def is_surjective(self) -> bool:
        return set(self.values) == set(range(self.cod + 1))

    @property
    def is_identity(self) -> bool:
        return self.dom == self.cod and self.values == tuple(range(self.dom + 1))

    def image(self) -> frozenset[int]:
        return frozenset(self.values)


def make(dom: int, cod: int, values) -> SimplexMap:
    return SimplexMap(dom, cod, tuple(values))


def identity(n: int) -> SimplexMap:
    return SimplexMap(n, n, tuple(range(n + 1)))


def compose(f: SimplexMap, g: SimplexMap) -> SimplexMap:
    """Return ``f o g`` (apply ``g`` first)."""
    if g.cod != f.dom:
        raise DimensionError(f"cannot compose {f!r} after {g!r}")
    fv = f.values
    return SimplexMap(g.dom, f.cod, tuple(fv[v] for v in g.values))


def compose_all(*maps: SimplexMap) -> SimplexMap:
    """``compose_all(f, g, h) == f o g o h``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


@lru_cache(maxsize=None)
def face(n: int, i: int) -> SimplexMap:
    """The coface ``[n-1] -> [n]`` whose image misses ``i``."""
    if n < 1 or not 0 <= i <= n:
        raise DimensionError(f"no face map delta^{i} into [{n}]")
    return SimplexMap(n - 1, n, tuple(v if v < i else v + 1 for v in range(n)))


@lru_cache(maxsize=None)
def degeneracy(n: int, i: int) -> SimplexMap:
    """The codegeneracy ``[n+1] -> [n]`` hitting ``i`` twice."""
    if n < 0 or not 0 <= i <= n:
        raise DimensionError(f"no degeneracy map sigma^{i} onto [{n}]")
    return SimplexMap(n + 1, n, tuple(v if v <= i else v - 1 for v in range(n + 2)))


def vertex(n: int, v: int) -> SimplexMap:
    """The map ``[0] -> [n]`` picking out ``v``."""
    return SimplexMap(0, n, (v,))


def terminal_map(n: int) -> SimplexMap:
    """The unique map ``[n] -> [0]``."""
    return SimplexMap(n, 0, (0,) * (n + 1))


def monotone_maps(m: int, n: int) -> Iterator[SimplexMap]:
    """All monotone maps ``[m] -> [n]`` in lexicographic order of values."""
    for vals in combinations_with_replacement(range(n + 1), m + 1):
        yield SimplexMap(m, n, vals)


def ez_factorize(f: SimplexMap) -> tuple[SimplexMap, SimplexMap]:
    """Epi-mono factorization ``f = injection o surjection``."""
    img = sorted(set(f.values))
    pos = {v: k for k, v in enumerate(img)}
    r = len(img) - 1
    surj = SimplexMap(f.dom, r, tuple(pos[v] for v in f.values))
    inj = SimplexMap(r, f.cod, tuple(img))
    return surj, inj


def generator_word(f: SimplexMap) -> list[tuple[str, int, int]]:
    """Factor ``f`` into generators, in the order they act on simplices.

    Each entry is ``("d", n, i)`` (the face ``d_i`` out of level ``n``) or
    ``("s", n, i)`` (the degeneracy ``s_i`` out of level ``n``). Applying the
    entries left to right to an ``f.cod``-simplex yields its image under
    ``f``, an ``f.dom``-simplex.
    """
    surj, inj = ez_factorize(f)
    word: list[tuple[str, int, int]] = []
    # injection: peel one missing value at a time, f = delta^v o f'
    cur = inj
    while cur.dom != cur.cod:
        missing = max(set(range(cur.cod + 1)) - set(cur.values))
        word.append(("d", cur.cod, missing))
        cur = SimplexMap(cur.dom, cur.cod - 1, tuple(v if v < missing else v - 1 for v in cur.values))
    # surjection: s = s' o sigma^p with p the first repeated position
    tail: list[tuple[str, int, int]] = []
    cur = surj
    while cur.dom != cur.cod:
        vals = cur.values
        p = next(q for q in range(cur.dom) if vals[q] == vals[q + 1])
        tail.append(("s", cur.dom - 1, p))
        cur = SimplexMap(cur.dom - 1, cur.cod, vals[: p + 1] + vals[p + 2 :])
    word.extend(reversed(tail))
    return word


def q_object(n: int) -> int:
    """Size index of the join ``[n]^op * [n]``."""
    return 2 * n + 1


@lru_cache(maxsize=None)
def q_map(a: SimplexMap) -> SimplexMap:
    """The twisting functor on a monotone map ``[m] -> [n]``."""
    m, n = a.dom, a.cod
    left = tuple(n - a.values[m - i] for i in range(m + 1))
    right = tuple(n + 1 + a.values[j] for j in range(m + 1))
    return SimplexMap(2 * m + 1, 2 * n + 1, left + right)


@lru_cache(maxsize=None)
def op_map(a: SimplexMap) -> SimplexMap:
    """Order reversal: ``op(a)(i) = cod - a(dom - i)``."""
    return SimplexMap(a.dom, a.cod, tuple(a.cod - a.values[a.dom - i] for i in range(a.dom + 1)))


def block_inclusion_left(n: int) -> SimplexMap:
    """Inclusion of the reversed block, ``i -> i``.

    Naturality: ``left(n) o op_map(a) == q_map(a) o left(m)``.
    """
    return SimplexMap(n, 2 * n + 1, tuple(range(n + 1)))


def block_inclusion_right(n: int) -> SimplexMap:
    """Inclusion of the straight block, ``j -> n + 1 + j``."""
    return SimplexMap(n, 2 * n + 1, tuple(range(n + 1, 2 * n + 2)))


def initial_vertex(n: int) -> SimplexMap:
    return vertex(n, 0)


def front(n: int, k: int) -> SimplexMap:
    """The front face ``[k] -> [n]``, ``i -> i``."""
    return SimplexMap(k, n, tuple(range(k + 1)))


def back(n: int, k: int) -> SimplexMap:
    """The back face ``[k] -> [n]``, ``i -> n - k + i``."""
    return SimplexMap(k, n, tuple(range(n - k, n + 1)))


def edge(n: int, a: int, b: int) -> SimplexMap:
    return SimplexMap(1, n, (a, b))
