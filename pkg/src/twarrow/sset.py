"""Finite truncated simplicial sets.

A :class:`FinSimplicialSet` stores levels ``0..trunc`` as dense integer
indices together with face and degeneracy tables (numpy integer arrays).
Arbitrary operators act through :func:`twarrow.delta.generator_word`.
Cells may carry hashable labels; labels never take part in equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Hashable, Sequence

import numpy as np

from . import delta
from .fincat import FinCategory, FinFunctor
from .delta import SimplexMap
from .unionfind import UnionFind


class TruncationError(ValueError):
    """A construction needs more stored levels than the input carries."""


def _arr(xs) -> np.ndarray:
    return np.asarray(xs, dtype=np.int64).reshape(-1)


class FinSimplicialSet:
    """A simplicial set truncated at dimension ``trunc``.

    Parameters
    ----------
    sizes : sequence of int
        ``sizes[k]`` is the number of ``k``-cells.
    faces : list of list of arrays
        ``faces[k][i][x]`` is ``d_i x`` for a ``k``-cell ``x`` (``k >= 1``);
        ``faces[0]`` is empty.
    degens : list of list of arrays
        ``degens[k][i][x]`` is ``s_i x`` for ``k < trunc``.
    labels : optional per-level label lists.
    """

    def __init__(self, sizes, faces, degens, labels=None, name=""):
        self.sizes = [int(s) for s in sizes]
        self.trunc = len(self.sizes) - 1
        self.faces = [[_arr(t) for t in lvl] for lvl in faces]
        self.degens = [[_arr(t) for t in lvl] for lvl in degens]
        self.labels = labels
        self.name = name
        self._act_cache: dict[SimplexMap, np.ndarray] = {}
        self._label_index: list[dict] | None = None
        if len(self.faces) != self.trunc + 1 or len(self.degens) != self.trunc + 1:
            raise ValueError("face/degeneracy tables must cover every stored level")
        for k in range(self.trunc + 1):
            nf = k + 1 if k >= 1 else 0
            nd = k + 1 if k < self.trunc else 0
            if len(self.faces[k]) != nf or len(self.degens[k]) != nd:
                raise ValueError(f"wrong number of generator tables at level {k}")
            for t in self.faces[k]:
                if len(t) != self.sizes[k] or (len(t) and (t.min() < 0 or t.max() >= self.sizes[k - 1])):
                    raise ValueError(f"bad face table at level {k}")
            for t in self.degens[k]:
                if len(t) != self.sizes[k] or (len(t) and (t.min() < 0 or t.max() >= self.sizes[k + 1])):
                    raise ValueError(f"bad degeneracy table at level {k}")

    # construction helpers -------------------------------------------------

    @classmethod
    def from_model(cls, trunc: int, cells: Callable[[int], Sequence[Hashable]],
                   act: Callable[[SimplexMap, Hashable], Hashable], name="") -> "FinSimplicialSet":
        """Build from labelled cells and a label-level operator action.

        ``act(a, x)`` must return the label of ``x`` pulled back along ``a``
        (``x`` a ``a.cod``-cell, result a ``a.dom``-cell).
        """
        labels = [list(cells(k)) for k in range(trunc + 1)]
        index = [{x: i for i, x in enumerate(lv)} for lv in labels]
        for k, lv in enumerate(labels):
            if len(index[k]) != len(lv):
                raise ValueError(f"duplicate labels at level {k}")
        faces = [[]]
        for k in range(1, trunc + 1):
            faces.append([[index[k - 1][act(delta.face(k, i), x)] for x in labels[k]]
                          for i in range(k + 1)])
        degens = []
        for k in range(trunc + 1):
            if k == trunc:
                degens.append([])
            else:
                degens.append([[index[k + 1][act(delta.degeneracy(k, i), x)] for x in labels[k]]
                               for i in range(k + 1)])
        out = cls([len(lv) for lv in labels], faces, degens, labels=labels, name=name)
        out._label_index = index
        return out

    def index_of(self, k: int, label) -> int:
        if self.labels is None:
            raise KeyError("simplicial set carries no labels")
        if self._label_index is None:
            self._label_index = [{x: i for i, x in enumerate(lv)} for lv in self.labels]
        return self._label_index[k][label]

    # actions -----------------------------------------------------------------

    def face(self, k: int, i: int) -> np.ndarray:
        return self.faces[k][i]

    def degen(self, k: int, i: int) -> np.ndarray:
        return self.degens[k][i]

    def act(self, a: SimplexMap) -> np.ndarray:
        """Table of ``S(a): S_{a.cod} -> S_{a.dom}``."""
        if a.cod > self.trunc or a.dom > self.trunc:
            raise TruncationError(f"operator {a!r} exceeds truncation {self.trunc}")
        hit = self._act_cache.get(a)
        if hit is not None:
            return hit
        out = np.arange(self.sizes[a.cod], dtype=np.int64)
        for kind, k, i in delta.generator_word(a):
            out = (self.faces[k][i] if kind == "d" else self.degens[k][i])[out]
        self._act_cache[a] = out
        return out

    def is_degenerate(self, k: int, x: int) -> bool:
        return k > 0 and any(self.degens[k - 1][i][self.faces[k][i][x]] == x for i in range(k))

    def nondegenerate(self, k: int) -> list[int]:
        return [x for x in range(self.sizes[k]) if not self.is_degenerate(k, x)]

    def ez_decompose(self, k: int, x: int) -> tuple[int, int, SimplexMap]:
        """Return ``(j, y, s)`` with ``y`` a nondegenerate ``j``-cell and ``x = S(s)(y)``."""
        s = delta.identity(k)
        while k > 0:
            for i in range(k):
                y = self.faces[k][i][x]
                if self.degens[k - 1][i][y] == x:
                    s = delta.compose(delta.degeneracy(k - 1, i), s)
                    x, k = y, k - 1
                    break
            else:
                break
        return k, int(x), s

    def check_identities(self) -> list[str]:
        """Exhaustively check the simplicial identities; return violations."""
        bad = []
        T = self.trunc

        def eq(lhs, rhs, what):
            if not np.array_equal(lhs, rhs):
                bad.append(what)

        for k in range(2, T + 1):
            for j in range(k + 1):
                for i in range(j):
                    # d_i d_j = d_{j-1} d_i on level k
                    eq(self.faces[k - 1][i][self.faces[k][j]], self.faces[k - 1][j - 1][self.faces[k][i]],
                       f"d{i}d{j} level {k}")
        for k in range(T):
            for j in range(k + 1):
                for i in range(j + 1):
                    # s_i s_j = s_{j+1} s_i on level k
                    if k + 1 < T:
                        eq(self.degens[k + 1][i][self.degens[k][j]], self.degens[k + 1][j + 1][self.degens[k][i]],
                           f"s{i}s{j} level {k}")
            for j in range(k + 1):
                for i in range(k + 2):
                    lhs = self.faces[k + 1][i][self.degens[k][j]]
                    if i < j:
                        rhs = self.degens[k - 1][j - 1][self.faces[k][i]] if k >= 1 else None
                    elif i in (j, j + 1):
                        rhs = np.arange(self.sizes[k])
                    else:
                        rhs = self.degens[k - 1][j][self.faces[k][i - 1]] if k >= 1 else None
                    if rhs is not None:
                        eq(lhs, rhs, f"d{i}s{j} level {k}")
        return bad

    def __eq__(self, other):
        if not isinstance(other, FinSimplicialSet):
            return NotImplemented
        return (self.sizes == other.sizes
                and all(np.array_equal(a, b) for la, lb in zip(self.faces, other.faces) for a, b in zip(la, lb))
                and all(np.array_equal(a, b) for la, lb in zip(self.degens, other.degens) for a, b in zip(la, lb)))

    __hash__ = None

    def truncate(self, D: int) -> "FinSimplicialSet":
        if D > self.trunc:
            raise TruncationError(f"cannot extend truncation {self.trunc} to {D}")
        degens = self.degens[:D] + [[]]
        labels = self.labels[: D + 1] if self.labels is not None else None
        return FinSimplicialSet(self.sizes[: D + 1], self.faces[: D + 1], degens, labels, self.name)

    def __repr__(self):
        return f"FinSimplicialSet({self.name or '?'}, sizes={self.sizes})"


@dataclass
class SSetMorphism:
    source: FinSimplicialSet
    target: FinSimplicialSet
    components: list[np.ndarray] = field(default_factory=list)

    def __post_init__(self):
        self.components = [_arr(c) for c in self.components]
        if self.source.trunc != self.target.trunc:
            raise TruncationError("morphism between different truncations")
        if len(self.components) != self.source.trunc + 1:
            raise ValueError("one component per stored level required")
        for k, c in enumerate(self.components):
            if len(c) != self.source.sizes[k] or (len(c) and (c.min() < 0 or c.max() >= self.target.sizes[k])):
                raise ValueError(f"bad component at level {k}")

    def naturality_failures(self) -> list[str]:
        S, T, c = self.source, self.target, self.components
        bad = []
        for k in range(1, S.trunc + 1):
            for i in range(k + 1):
                if not np.array_equal(c[k - 1][S.faces[k][i]], T.faces[k][i][c[k]]):
                    bad.append(f"d{i} at level {k}")
        for k in range(S.trunc):
            for i in range(k + 1):
                if not np.array_equal(c[k + 1][S.degens[k][i]], T.degens[k][i][c[k]]):
                    bad.append(f"s{i} at level {k}")
        return bad

    def is_natural(self) -> bool:
        return not self.naturality_failures()

    def then(self, other: "SSetMorphism") -> "SSetMorphism":
        """``other o self``."""
        return SSetMorphism(self.source, other.target, [b[a] for a, b in zip(self.components, other.components)])


def identity_morphism(S: FinSimplicialSet) -> SSetMorphism:
    return SSetMorphism(S, S, [np.arange(n) for n in S.sizes])


# standard objects -------------------------------------------------------------


def _precompose(a: SimplexMap, x: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x[v] for v in a.values)


def monotone_table(k: int, n: int) -> np.ndarray:
    """All monotone maps ``[k] -> [n]`` as rows, in lexicographic order."""
    from itertools import combinations_with_replacement
    rows = list(combinations_with_replacement(range(n + 1), k + 1))
    return np.array(rows, dtype=np.int64).reshape(len(rows), k + 1)


def monotone_keys(table: np.ndarray, n: int) -> np.ndarray:
    """Base ``n+1`` keys of the rows; increasing along a lexicographic table."""
    w = (n + 1) ** np.arange(table.shape[1] - 1, -1, -1, dtype=np.int64)
    return table @ w


@lru_cache(maxsize=64)
def _standard_simplex(n: int, D: int) -> FinSimplicialSet:
    tables = [monotone_table(k, n) for k in range(D + 1)]
    keys = [monotone_keys(t, n) for t in tables]
    faces: list = [[]]
    for k in range(1, D + 1):
        faces.append([np.searchsorted(keys[k - 1], monotone_keys(np.delete(tables[k], i, axis=1), n))
                      for i in range(k + 1)])
    degens: list = []
    for k in range(D):
        degens.append([np.searchsorted(keys[k + 1], monotone_keys(np.insert(tables[k], i, tables[k][:, i], axis=1), n))
                       for i in range(k + 1)])
    degens.append([])
    labels = [list(map(tuple, t.tolist())) for t in tables]
    return FinSimplicialSet([len(t) for t in tables], faces, degens, labels, name=f"Delta[{n}]")


def standard_simplex(n: int, D: int) -> FinSimplicialSet:
    """``Delta[n]`` truncated at ``D``; ``k``-cells are monotone ``[k] -> [n]``.

    Cells are the value tuples in lexicographic order. Results are cached and
    shared, so treat them as immutable.
    """
    return _standard_simplex(n, D)


def empty(D: int) -> FinSimplicialSet:
    return FinSimplicialSet([0] * (D + 1), [[]] + [[[]] * (k + 1) for k in range(1, D + 1)],
                            [[[]] * (k + 1) for k in range(D)] + [[]], labels=[[] for _ in range(D + 1)],
                            name="empty")


def subobject(S: FinSimplicialSet, keep: Callable[[int, int], bool], name="") -> tuple[FinSimplicialSet, SSetMorphism]:
    """Sub-simplicial set on the cells satisfying ``keep(k, x)``; must be closed."""
    cells = [[x for x in range(S.sizes[k]) if keep(k, x)] for k in range(S.trunc + 1)]
    pos = [{x: i for i, x in enumerate(c)} for c in cells]
    try:
        faces = [[]] + [[[pos[k - 1][int(S.faces[k][i][x])] for x in cells[k]] for i in range(k + 1)]
                        for k in range(1, S.trunc + 1)]
        degens = [[[pos[k + 1][int(S.degens[k][i][x])] for x in cells[k]] for i in range(k + 1)]
                  for k in range(S.trunc)] + [[]]
    except KeyError as exc:
        raise ValueError("selected cells are not closed under the simplicial operators") from exc
    labels = None
    if S.labels is not None:
        labels = [[S.labels[k][x] for x in c] for k, c in enumerate(cells)]
    sub = FinSimplicialSet([len(c) for c in cells], faces, degens, labels, name=name)
    return sub, SSetMorphism(sub, S, cells)


def boundary(n: int, D: int) -> tuple[FinSimplicialSet, SSetMorphism]:
    """``dDelta[n]`` inside ``Delta[n]``: the non-surjective simplices."""
    simplex = standard_simplex(n, D)
    full = set(range(n + 1))
    return subobject(simplex, lambda k, x: set(simplex.labels[k][x]) != full, name=f"dDelta[{n}]")


def coproduct(parts: Sequence[FinSimplicialSet]) -> tuple[FinSimplicialSet, list[SSetMorphism]]:
    if not parts:
        raise ValueError("empty coproduct needs an explicit truncation; use empty(D)")
    D = parts[0].trunc
    if any(p.trunc != D for p in parts):
        raise TruncationError("coproduct of different truncations")
    offs = [[0] * (D + 1)]
    for p in parts:
        offs.append([o + s for o, s in zip(offs[-1], p.sizes)])
    sizes = offs[-1]
    faces: list = [[]]
    for k in range(1, D + 1):
        faces.append([np.concatenate([p.faces[k][i] + offs[j][k - 1] for j, p in enumerate(parts)]).astype(np.int64)
                      for i in range(k + 1)])
    degens: list = []
    for k in range(D):
        degens.append([np.concatenate([p.degens[k][i] + offs[j][k + 1] for j, p in enumerate(parts)]).astype(np.int64)
                       for i in range(k + 1)])
    degens.append([])
    labels = [[(j, p.labels[k][x] if p.labels is not None else x) for j, p in enumerate(parts)
               for x in range(p.sizes[k])] for k in range(D + 1)]
    out = FinSimplicialSet(sizes, faces, degens, labels, name=" + ".join(p.name for p in parts))
    incl = [SSetMorphism(p, out, [np.arange(p.sizes[k]) + offs[j][k] for k in range(D + 1)])
            for j, p in enumerate(parts)]
    return out, incl


def coequalizer(f: SSetMorphism, g: SSetMorphism) -> tuple[FinSimplicialSet, SSetMorphism]:
    """Level-wise quotient of the common target by ``f(x) ~ g(x)``.

    Classes are numbered by their minimal member.
    """
    if f.source is not g.source and f.source != g.source:
        raise ValueError("coequalizer needs a parallel pair (different sources)")
    if f.target is not g.target and f.target != g.target:
        raise ValueError("coequalizer needs a parallel pair (different targets)")
    B = f.target
    D = B.trunc
    quot = []
    for k in range(D + 1):
        if not np.any(f.components[k] != g.components[k]):
            quot.append(np.arange(B.sizes[k], dtype=np.int64))
            continue
        uf = UnionFind(B.sizes[k])
        for a, b in zip(f.components[k], g.components[k]):
            uf.union(int(a), int(b))
        quot.append(uf.dense_labels())
    sizes = [int(q.max()) + 1 if len(q) else 0 for q in quot]
    faces: list = [[]]
    for k in range(1, D + 1):
        lvl = []
        for i in range(k + 1):
            t = np.zeros(sizes[k], dtype=np.int64)
            t[quot[k]] = quot[k - 1][B.faces[k][i]]
            lvl.append(t)
        faces.append(lvl)
    degens: list = []
    for k in range(D):
        lvl = []
        for i in range(k + 1):
            t = np.zeros(sizes[k], dtype=np.int64)
            t[quot[k]] = quot[k + 1][B.degens[k][i]]
            lvl.append(t)
        degens.append(lvl)
    degens.append([])
    labels = None
    if B.labels is not None:
        labels = []
        for k in range(D + 1):
            # each class keeps the label of its minimal member
            _, first = np.unique(quot[k], return_index=True)
            labels.append([B.labels[k][i] for i in first])
    Q = FinSimplicialSet(sizes, faces, degens, labels, name=f"coeq({B.name})")
    return Q, SSetMorphism(B, Q, quot)


def product(S: FinSimplicialSet, T: FinSimplicialSet) -> FinSimplicialSet:
    """Level-wise product; the pair ``(a, b)`` has index ``a * |T_k| + b``."""
    if S.trunc != T.trunc:
        raise TruncationError("product of different truncations")
    D = S.trunc

    def pair(tS, tT, nT_out):
        return (tS[:, None] * nT_out + tT[None, :]).reshape(-1)

    faces: list = [[]]
    for k in range(1, D + 1):
        faces.append([pair(S.faces[k][i], T.faces[k][i], T.sizes[k - 1]) for i in range(k + 1)])
    degens: list = [[pair(S.degens[k][i], T.degens[k][i], T.sizes[k + 1]) for i in range(k + 1)] for k in range(D)]
    degens.append([])
    labels = None
    if S.labels is not None and T.labels is not None:
        labels = [[(a, b) for a in S.labels[k] for b in T.labels[k]] for k in range(D + 1)]
    return FinSimplicialSet([a * b for a, b in zip(S.sizes, T.sizes)], faces, degens, labels,
                            name=f"{S.name} x {T.name}")


def op_sset(S: FinSimplicialSet) -> FinSimplicialSet:
    """Opposite: ``d_i`` becomes ``d_{k-i}``, ``s_i`` becomes ``s_{k-i}``."""
    D = S.trunc
    faces = [[]] + [[S.faces[k][k - i] for i in range(k + 1)] for k in range(1, D + 1)]
    degens = [[S.degens[k][k - i] for i in range(k + 1)] for k in range(D)] + [[]]
    name = S.name[:-3] if S.name.endswith("^op") else f"{S.name}^op"
    return FinSimplicialSet(S.sizes, faces, degens, S.labels, name=name)


def tw_sset(S: FinSimplicialSet, D: int | None = None) -> FinSimplicialSet:
    """The twisted arrow simplicial set ``S o Q``, truncated at ``D``.

    Level ``n`` is level ``2n+1`` of ``S``; ``a`` acts by ``S(q_map(a))``.
    """
    if D is None:
        D = (S.trunc - 1) // 2
    if D < 0 or 2 * D + 1 > S.trunc:
        raise TruncationError(f"twisting to truncation {D} needs {2 * D + 1} stored levels, have {S.trunc}")
    sizes = [S.sizes[2 * n + 1] for n in range(D + 1)]
    faces = [[]] + [[S.act(delta.q_map(delta.face(n, i))) for i in range(n + 1)] for n in range(1, D + 1)]
    degens = [[S.act(delta.q_map(delta.degeneracy(n, i))) for i in range(n + 1)] for n in range(D)] + [[]]
    labels = [S.labels[2 * n + 1] for n in range(D + 1)] if S.labels is not None else None
    return FinSimplicialSet(sizes, faces, degens, labels, name=f"Tw({S.name})")


def tw_projection(S: FinSimplicialSet, D: int | None = None) -> SSetMorphism:
    """``Tw(S) -> S^op x S``, ``x -> (S(left_n) x, S(right_n) x)``."""
    T = tw_sset(S, D)
    D = T.trunc
    base = S.truncate(D)
    target = product(op_sset(base), base)
    comps = []
    for n in range(D + 1):
        a = S.act(delta.block_inclusion_left(n))
        b = S.act(delta.block_inclusion_right(n))
        comps.append(a * S.sizes[n] + b)
    return SSetMorphism(T, target, comps)


def tw_sset_map(f: SSetMorphism, D: int | None = None) -> SSetMorphism:
    """Twisting applied to a morphism."""
    src, tgt = tw_sset(f.source, D), tw_sset(f.target, D)
    return SSetMorphism(src, tgt, [f.components[2 * n + 1] for n in range(src.trunc + 1)])


# nerves -------------------------------------------------------------------------


def _chains(C: FinCategory, k: int):
    """Composable ``k``-chains as ``(objects, arrows)`` label pairs."""
    if k == 0:
        return [((x,), ()) for x in range(C.n_obj)]
    out = []
    for objs, arrows in _chains(C, k - 1):
        for f in range(C.n_mor):
            if C.src[f] == objs[-1]:
                out.append((objs + (int(C.tgt[f]),), arrows + (f,)))
    return out


def _chain_segment(C: FinCategory, objs, arrows, i: int, j: int) -> int:
    out = int(C.ident[objs[i]])
    for t in range(i, j):
        out = int(C.comp[arrows[t], out])
    return out


def nerve_action(C: FinCategory):
    def act(a: SimplexMap, x):
        objs, arrows = x
        v = a.values
        return (tuple(objs[p] for p in v),
                tuple(_chain_segment(C, objs, arrows, v[j], v[j + 1]) for j in range(a.dom)))
    return act


def nerve(C: FinCategory, D: int) -> FinSimplicialSet:
    """Nerve of ``C`` truncated at ``D``; ``k``-cells are composable ``k``-chains.

    Cells are labelled ``(objects, arrows)``; ``d_1`` is the source and
    ``d_0`` the target of an edge.
    """
    return FinSimplicialSet.from_model(D, lambda k: _chains(C, k), nerve_action(C), name=f"N({C.name})")


def nerve_functor(F: FinFunctor, D: int, source: FinSimplicialSet | None = None,
                  target: FinSimplicialSet | None = None) -> SSetMorphism:
    source = source or nerve(F.source, D)
    target = target or nerve(F.target, D)
    comps = []
    for k in range(D + 1):
        comps.append([target.index_of(k, (tuple(int(F.obj[o]) for o in objs), tuple(int(F.mor[f]) for f in arrows)))
                      for objs, arrows in source.labels[k]])
    return SSetMorphism(source, target, comps)


def nerve_op_product_comparison(C: FinCategory, D: int, source: FinSimplicialSet,
                                target: FinSimplicialSet) -> SSetMorphism:
    """The canonical map ``N(C^op x C) -> N(C)^op x N(C)``.

    ``source`` must be the nerve of ``product(opposite(C), C)`` and
    ``target`` the product of the opposite nerve with the nerve, both
    carrying labels. A chain in ``C^op`` is read backwards as a chain in ``C``.
    """
    n_obj, n_mor = C.n_obj, C.n_mor
    comps = []
    for k in range(D + 1):
        row = []
        for objs, arrows in source.labels[k]:
            a = tuple(o // n_obj for o in objs)
            b = tuple(o % n_obj for o in objs)
            ka = tuple(f // n_mor for f in arrows)
            hb = tuple(f % n_mor for f in arrows)
            row.append(target.index_of(k, ((a[::-1], ka[::-1]), (b, hb))))
        comps.append(row)
    return SSetMorphism(source, target, comps)


# isomorphisms -----------------------------------------------------------------


def is_iso(f: SSetMorphism) -> bool:
    S, T = f.source, f.target
    if S.sizes != T.sizes:
        return False
    for k, c in enumerate(f.components):
        if len(np.unique(c)) != S.sizes[k]:
            return False
    return f.is_natural()


def find_iso(S: FinSimplicialSet, T: FinSimplicialSet,
             over: tuple[SSetMorphism, SSetMorphism] | None = None) -> SSetMorphism | None:
    """Backtracking search for an isomorphism ``S -> T``.

    Nondegenerate cells are assigned level by level; degenerate cells follow
    from their Eilenberg-Zilber decomposition. With ``over=(p, q)`` the
    search only accepts ``phi`` with ``q o phi == p``.
    """
    if S.trunc != T.trunc or S.sizes != T.sizes:
        return None
    D = S.trunc
    ndS = [S.nondegenerate(k) for k in range(D + 1)]
    ndT = [T.nondegenerate(k) for k in range(D + 1)]
    if [len(x) for x in ndS] != [len(x) for x in ndT]:
        return None
    p = q = None
    if over is not None:
        p, q = over
        if p.source.sizes != S.sizes or q.source.sizes != T.sizes or p.target.sizes != q.target.sizes:
            raise ValueError("over= expects morphisms out of S and T into a common base")

    # degree profiles of vertices: how many nondegenerate cells touch them, per level
    def profile(X, nd):
        prof = [[0] * (D + 1) for _ in range(X.sizes[0])]
        for k in range(1, D + 1):
            for x in nd[k]:
                for v in range(k + 1):
                    prof[int(X.act(delta.vertex(k, v))[x])][k] += 1
        return [tuple(r) for r in prof]

    profS, profT = profile(S, ndS), profile(T, ndT)
    if sorted(profS) != sorted(profT):
        return None

    def edge_counts(X, nd):
        cnt: dict[tuple[int, int], int] = {}
        if D >= 1:
            for e in nd[1]:
                key = (int(X.faces[1][1][e]), int(X.faces[1][0][e]))
                cnt[key] = cnt.get(key, 0) + 1
        return cnt

    ecS, ecT = edge_counts(S, ndS), edge_counts(T, ndT)
    order = [(k, x) for k in range(D + 1) for x in ndS[k]]
    phi = [dict() for _ in range(D + 1)]
    used = [set() for _ in range(D + 1)]

    def image(k, x):
        hit = phi[k].get(x)
        if hit is not None:
            return hit
        j, y, s = S.ez_decompose(k, x)
        return int(T.act(s)[phi[j][y]])

    def candidates(k, x):
        out = []
        faces = [image(k - 1, int(S.faces[k][i][x])) for i in range(k + 1)] if k else []
        want = int(p.components[k][x]) if p is not None else None
        for c in ndT[k]:
            if c in used[k]:
                continue
            if want is not None and int(q.components[k][c]) != want:
                continue
            if k and any(int(T.faces[k][i][c]) != faces[i] for i in range(k + 1)):
                continue
            if k == 0:
                if profS[x] != profT[c]:
                    continue
                if any(ecS.get((x, u), 0) != ecT.get((c, v), 0) or ecS.get((u, x), 0) != ecT.get((v, c), 0)
                       for u, v in phi[0].items()):
                    continue
                if ecS.get((x, x), 0) != ecT.get((c, c), 0):
                    continue
            out.append(c)
        return out

    stack = []
    pos = 0
    cand_iter = None
    while True:
        if pos == len(order):
            comps = [np.array([image(k, x) for x in range(S.sizes[k])], dtype=np.int64) for k in range(D + 1)]
            f = SSetMorphism(S, T, comps)
            if is_iso(f) and (p is None or all(np.array_equal(q.components[k][comps[k]], p.components[k])
                                               for k in range(D + 1))):
                return f
            # dead end: backtrack
        else:
            k, x = order[pos]
            cand_iter = iter(candidates(k, x))
            stack.append(cand_iter)
        # advance
        while stack:
            k, x = order[len(stack) - 1]
            if x in phi[k]:
                used[k].discard(phi[k].pop(x))
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                continue
            phi[k][x] = nxt
            used[k].add(nxt)
            pos = len(stack)
            break
        else:
            return None
