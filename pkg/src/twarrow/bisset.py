"""Truncated bisimplicial sets and finite cell-complex presentations.

A :class:`BiSSet` has cells indexed by ``(k, j)``: ``k`` is the categorical
direction and ``j`` the spatial one. It is stored twice over the same cell
numbering, as rows (for each ``j`` a simplicial set in ``k``) and columns
(for each ``k`` a simplicial set in ``j``).

A :class:`CellComplexPresentation` is a colimit of representables
``F(n) x Delta[l]`` glued along relations. Presentations stay symbolic, so
twisting can be applied before evaluation: generators are reindexed
``n -> 2n+1`` and relations pushed through ``q_map``. That is the left
adjoint of the level-wise twist :func:`tw_bisset`; the two agree on mapping
spaces (see :func:`adjunction_check`) but not on objects.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import delta as dl
from . import sset as ss
from .delta import SimplexMap
from .sset import FinSimplicialSet, SSetMorphism, TruncationError, monotone_keys, monotone_table


class FactorizationError(RuntimeError):
    """An attaching map could not be factored through the expected quotient."""


def constant_sset(labels: Sequence, D: int) -> FinSimplicialSet:
    """The constant simplicial set on a finite set."""
    n = len(labels)
    ident = np.arange(n, dtype=np.int64)
    faces = [[]] + [[ident] * (k + 1) for k in range(1, D + 1)]
    degens = [[ident] * (k + 1) for k in range(D)] + [[]]
    return FinSimplicialSet([n] * (D + 1), faces, degens, [list(labels)] * (D + 1), name="const")


class BiSSet:
    def __init__(self, rows: Sequence[FinSimplicialSet], cols: Sequence[FinSimplicialSet], name=""):
        self.rows = list(rows)
        self.cols = list(cols)
        self.name = name
        self.trunc_l = len(self.rows) - 1
        self.trunc_n = len(self.cols) - 1
        for j, r in enumerate(self.rows):
            if r.trunc != self.trunc_n:
                raise TruncationError(f"row {j} has truncation {r.trunc}, expected {self.trunc_n}")
            for k in range(self.trunc_n + 1):
                if r.sizes[k] != self.cols[k].sizes[j]:
                    raise ValueError(f"row and column disagree on the size of level ({k}, {j})")

    @property
    def sizes(self) -> np.ndarray:
        return np.array([[self.rows[j].sizes[k] for j in range(self.trunc_l + 1)] for k in range(self.trunc_n + 1)],
                        dtype=np.int64)

    def labels(self, k: int, j: int) -> list:
        lab = self.rows[j].labels
        return lab[k] if lab is not None else list(range(self.rows[j].sizes[k]))

    def act(self, a: SimplexMap, b: SimplexMap) -> np.ndarray:
        """Table of the action of ``(a, b)`` from level ``(a.cod, b.cod)`` to ``(a.dom, b.dom)``."""
        first = self.rows[b.cod].act(a)
        return self.cols[a.dom].act(b)[first]

    def check_identities(self) -> list[str]:
        bad = []
        for j, r in enumerate(self.rows):
            bad += [f"row {j}: {m}" for m in r.check_identities()]
        for k, c in enumerate(self.cols):
            bad += [f"column {k}: {m}" for m in c.check_identities()]
        # the two directions commute on generators
        for k in range(self.trunc_n + 1):
            for j in range(self.trunc_l + 1):
                hs = [("d", dl.face(k, i)) for i in range(k + 1) if k >= 1]
                hs += [("s", dl.degeneracy(k - 1, i)) for i in range(k) if k >= 1]
                vs = [("d", dl.face(j, i)) for i in range(j + 1) if j >= 1]
                vs += [("s", dl.degeneracy(j - 1, i)) for i in range(j) if j >= 1]
                for _, a in hs:
                    for _, b in vs:
                        if a.cod != k or b.cod != j:
                            continue
                        lhs = self.cols[a.dom].act(b)[self.rows[b.cod].act(a)]
                        rhs = self.rows[b.dom].act(a)[self.cols[a.cod].act(b)]
                        if not np.array_equal(lhs, rhs):
                            bad.append(f"{a!r} and {b!r} do not commute at ({k}, {j})")
        return bad

    def __eq__(self, other):
        if not isinstance(other, BiSSet):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols

    __hash__ = None

    def __repr__(self):
        return f"BiSSet({self.name or '?'}, trunc=({self.trunc_n}, {self.trunc_l}))"


@dataclass
class BiSSetMorphism:
    source: BiSSet
    target: BiSSet
    components: list[list[np.ndarray]] = field(default_factory=list)

    def __post_init__(self):
        self.components = [[np.asarray(c, dtype=np.int64).reshape(-1) for c in row] for row in self.components]
        S, T = self.source, self.target
        if (S.trunc_n, S.trunc_l) != (T.trunc_n, T.trunc_l):
            raise TruncationError("morphism between different truncations")
        sz, tz = S.sizes, T.sizes
        for k in range(S.trunc_n + 1):
            for j in range(S.trunc_l + 1):
                c = self.components[k][j]
                if len(c) != sz[k, j] or (len(c) and (c.min() < 0 or c.max() >= tz[k, j])):
                    raise ValueError(f"bad component at level ({k}, {j})")

    def row(self, j: int) -> SSetMorphism:
        return SSetMorphism(self.source.rows[j], self.target.rows[j],
                            [self.components[k][j] for k in range(self.source.trunc_n + 1)])

    def col(self, k: int) -> SSetMorphism:
        return SSetMorphism(self.source.cols[k], self.target.cols[k], self.components[k])

    def naturality_failures(self) -> list[str]:
        bad = []
        for j in range(self.source.trunc_l + 1):
            bad += [f"row {j}: {m}" for m in self.row(j).naturality_failures()]
        for k in range(self.source.trunc_n + 1):
            bad += [f"column {k}: {m}" for m in self.col(k).naturality_failures()]
        return bad


# constructions --------------------------------------------------------------------


def external_product(S: FinSimplicialSet, T: FinSimplicialSet, name="") -> BiSSet:
    """Cells ``S_k x T_j``; the pair ``(a, b)`` has index ``a * |T_j| + b``."""
    rows = []
    for j in range(T.trunc + 1):
        nT = T.sizes[j]
        bs = np.arange(nT, dtype=np.int64)

        def lift(t, nT=nT, bs=bs):
            return (t[:, None] * nT + bs[None, :]).reshape(-1)

        faces = [[]] + [[lift(S.faces[k][i]) for i in range(k + 1)] for k in range(1, S.trunc + 1)]
        degens = [[lift(S.degens[k][i]) for i in range(k + 1)] for k in range(S.trunc)] + [[]]
        labels = None
        if S.labels is not None and T.labels is not None:
            labels = [[(a, b) for a in S.labels[k] for b in T.labels[j]] for k in range(S.trunc + 1)]
        rows.append(FinSimplicialSet([s * nT for s in S.sizes], faces, degens, labels))
    cols = []
    for k in range(S.trunc + 1):
        nS = S.sizes[k]
        a_s = np.arange(nS, dtype=np.int64)

        def lift(t, n_out, a_s=a_s):
            return (a_s[:, None] * n_out + t[None, :]).reshape(-1)

        faces = [[]] + [[lift(T.faces[j][i], T.sizes[j - 1]) for i in range(j + 1)] for j in range(1, T.trunc + 1)]
        degens = [[lift(T.degens[j][i], T.sizes[j + 1]) for i in range(j + 1)] for j in range(T.trunc)] + [[]]
        cols.append(FinSimplicialSet([nS * t for t in T.sizes], faces, degens))
    return BiSSet(rows, cols, name=name or f"{S.name} (x) {T.name}")


def representable(n: int, l: int, trunc_n: int, trunc_l: int) -> BiSSet:
    """``F(n) x Delta[l]``: cells at ``(k, j)`` are pairs of monotone maps."""
    if n < 0 or l < 0:
        return empty_bisset(trunc_n, trunc_l)
    return external_product(ss.standard_simplex(n, trunc_n), ss.standard_simplex(l, trunc_l),
                            name=f"F({n}) x Delta[{l}]")


def empty_bisset(trunc_n: int, trunc_l: int) -> BiSSet:
    return external_product(ss.empty(trunc_n), ss.empty(trunc_l), name="empty")


def p1_star(S: FinSimplicialSet, trunc_l: int) -> BiSSet:
    """Constant in the spatial direction: ``(k, j)`` cells are ``S_k``."""
    return external_product(S, ss.standard_simplex(0, trunc_l), name=f"p1*({S.name})")


def space_embedding(S: FinSimplicialSet, trunc_n: int) -> BiSSet:
    """Constant in the categorical direction: ``(k, j)`` cells are ``S_j``."""
    return external_product(ss.standard_simplex(0, trunc_n), S, name=f"sp({S.name})")


def tw_bisset(W: BiSSet, D: int | None = None) -> BiSSet:
    """Level-wise twisting: ``(k, j)`` cells are ``W_{2k+1, j}``."""
    if D is None:
        D = (W.trunc_n - 1) // 2
    if D < 0 or 2 * D + 1 > W.trunc_n:
        raise TruncationError(f"twisting to level {D} needs truncation {2 * D + 1}, have {W.trunc_n}")
    rows = [ss.tw_sset(r, D) for r in W.rows]
    cols = [W.cols[2 * k + 1] for k in range(D + 1)]
    return BiSSet(rows, cols, name=f"Tw({W.name})")


def tw_bisset_map(f: BiSSetMorphism, D: int | None = None) -> BiSSetMorphism:
    S, T = tw_bisset(f.source, D), tw_bisset(f.target, D)
    return BiSSetMorphism(S, T, [f.components[2 * k + 1] for k in range(S.trunc_n + 1)])


def coproduct(parts: Sequence[BiSSet]) -> tuple[BiSSet, list[BiSSetMorphism]]:
    if not parts:
        raise ValueError("empty coproduct needs an explicit truncation; use empty_bisset")
    Tn, Tl = parts[0].trunc_n, parts[0].trunc_l
    if any((p.trunc_n, p.trunc_l) != (Tn, Tl) for p in parts):
        raise TruncationError("coproduct of different truncations")
    rows = [ss.coproduct([p.rows[j] for p in parts])[0] for j in range(Tl + 1)]
    cols = [ss.coproduct([p.cols[k] for p in parts])[0] for k in range(Tn + 1)]
    out = BiSSet(rows, cols, name=" + ".join(p.name for p in parts))
    incl = []
    off = np.zeros((Tn + 1, Tl + 1), dtype=np.int64)
    for p in parts:
        sz = p.sizes
        incl.append(BiSSetMorphism(p, out, [[np.arange(sz[k, j]) + off[k, j] for j in range(Tl + 1)]
                                            for k in range(Tn + 1)]))
        off += sz
    return out, incl


def coequalizer(f: BiSSetMorphism, g: BiSSetMorphism) -> tuple[BiSSet, BiSSetMorphism]:
    """Level-wise quotient of the common target; classes numbered by minimal member."""
    B = f.target
    rq = [ss.coequalizer(f.row(j), g.row(j)) for j in range(B.trunc_l + 1)]
    cq = [ss.coequalizer(f.col(k), g.col(k)) for k in range(B.trunc_n + 1)]
    Q = BiSSet([r for r, _ in rq], [c for c, _ in cq], name=f"coeq({B.name})")
    return Q, BiSSetMorphism(B, Q, [c.components for _, c in cq])


# presentations ----------------------------------------------------------------------


@lru_cache(maxsize=4096)
def _postcompose(a: SimplexMap, k: int) -> np.ndarray:
    """Index table of ``c -> a o c`` from ``Delta[a.dom]_k`` to ``Delta[a.cod]_k``."""
    src = monotone_table(k, a.dom)
    vals = np.asarray(a.values, dtype=np.int64)
    keys = monotone_keys(vals[src], a.cod)
    return np.searchsorted(monotone_keys(monotone_table(k, a.cod), a.cod), keys)


def _pair_component(a: SimplexMap, b: SimplexMap, k: int, j: int) -> np.ndarray:
    """Level ``(k, j)`` of ``F(a) x Delta[b]: F(a.dom) x Delta[b.dom] -> F(a.cod) x Delta[b.cod]``."""
    ia, ib = _postcompose(a, k), _postcompose(b, j)
    n_out = len(monotone_table(j, b.cod))
    return (ia[:, None] * n_out + ib[None, :]).reshape(-1)


@dataclass(frozen=True)
class Relation:
    """Identify ``(gen, a, b)`` with ``(gen', a', b')`` on ``F(p) x Delta[q]``, ``shape = (p, q)``.

    ``left = (gen, a, b)`` with ``a: [p] -> [n_gen]`` and ``b: [q] -> [l_gen]``.
    """

    shape: tuple[int, int]
    left: tuple[int, SimplexMap, SimplexMap]
    right: tuple[int, SimplexMap, SimplexMap]


@dataclass
class Evaluated:
    """A presentation evaluated at a truncation, with the coequalizer data."""

    bisset: BiSSet
    generators: BiSSet
    relations: BiSSet
    left: BiSSetMorphism
    right: BiSSetMorphism
    quotient: BiSSetMorphism
    offsets: list[np.ndarray]

    def cell(self, g: int, a: SimplexMap, b: SimplexMap) -> int:
        """Class of the cell ``(a, b)`` of generator ``g``."""
        k, j = a.dom, b.dom
        ka = int(np.searchsorted(monotone_keys(monotone_table(k, a.cod), a.cod),
                                 monotone_keys(np.array([a.values]), a.cod)[0]))
        kb = int(np.searchsorted(monotone_keys(monotone_table(j, b.cod), b.cod),
                                 monotone_keys(np.array([b.values]), b.cod)[0]))
        n_b = len(monotone_table(j, b.cod))
        x = int(self.offsets[g][k, j]) + ka * n_b + kb
        return int(self.quotient.components[k][j][x])


@dataclass
class CellComplexPresentation:
    generators: list[tuple[int, int]]
    relations: list[Relation] = field(default_factory=list)
    target: tuple[int, int] | None = None
    target_maps: list[tuple[SimplexMap, SimplexMap]] | None = None
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for r in self.relations:
            for g, a, b in (r.left, r.right):
                n, l = self.generators[g]
                if (a.dom, b.dom) != tuple(r.shape) or (a.cod, b.cod) != (n, l):
                    raise ValueError(f"relation {r} does not fit generator {g} of shape {(n, l)}")
        if self.target_maps is not None:
            N, L = self.target
            for (n, l), (a, b) in zip(self.generators, self.target_maps):
                if (a.dom, a.cod, b.dom, b.cod) != (n, N, l, L):
                    raise ValueError("target map has the wrong shape")

    def evaluate(self, trunc_n: int, trunc_l: int = 0) -> Evaluated:
        key = (trunc_n, trunc_l)
        if key in self._cache:
            return self._cache[key]
        gens = [representable(n, l, trunc_n, trunc_l) for n, l in self.generators]
        if not gens:
            E = empty_bisset(trunc_n, trunc_l)
            ident = [[np.zeros(0, dtype=np.int64)] * (trunc_l + 1) for _ in range(trunc_n + 1)]
            out = Evaluated(E, E, E, BiSSetMorphism(E, E, ident), BiSSetMorphism(E, E, ident),
                            BiSSetMorphism(E, E, ident), [])
            self._cache[key] = out
            return out
        G, incl = coproduct(gens)
        offsets = []
        off = np.zeros((trunc_n + 1, trunc_l + 1), dtype=np.int64)
        for B in gens:
            offsets.append(off.copy())
            off += B.sizes
        rels = [r for r in self.relations if r.shape[0] >= 0 and r.shape[1] >= 0]
        if rels:
            R, _ = coproduct([representable(p, q, trunc_n, trunc_l) for p, q in (r.shape for r in rels)])
        else:
            R = empty_bisset(trunc_n, trunc_l)

        def side(pick):
            comps = []
            for k in range(trunc_n + 1):
                row = []
                for j in range(trunc_l + 1):
                    parts = [offsets[g][k, j] + _pair_component(a, b, k, j) for g, a, b in (pick(r) for r in rels)]
                    row.append(np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64))
                comps.append(row)
            return BiSSetMorphism(R, G, comps)

        f, g = side(lambda r: r.left), side(lambda r: r.right)
        if rels:
            Q, quot = coequalizer(f, g)
        else:
            Q = G
            quot = BiSSetMorphism(G, G, [[np.arange(G.sizes[k, j], dtype=np.int64) for j in range(trunc_l + 1)]
                                         for k in range(trunc_n + 1)])
        Q.name = self.name
        out = Evaluated(Q, G, R, f, g, quot, offsets)
        self._cache[key] = out
        return out

    def canonical_map(self, trunc_n: int, trunc_l: int = 0) -> BiSSetMorphism:
        """The induced map from the evaluated colimit into its target representable."""
        if self.target is None or self.target_maps is None:
            raise ValueError("presentation has no target")
        ev = self.evaluate(trunc_n, trunc_l)
        T = representable(*self.target, trunc_n, trunc_l)
        comps = []
        for k in range(trunc_n + 1):
            row = []
            for j in range(trunc_l + 1):
                size = int(ev.bisset.sizes[k, j])
                out = np.zeros(size, dtype=np.int64)
                if size:
                    img = np.concatenate([_pair_component(a, b, k, j) for a, b in self.target_maps])
                    q = ev.quotient.components[k][j]
                    out[q] = img
                    if not np.array_equal(out[q], img):
                        raise ValueError(f"target maps do not respect the relations at level ({k}, {j})")
                row.append(out)
            comps.append(row)
        return BiSSetMorphism(ev.bisset, T, comps)


def representable_presentation(n: int, l: int) -> CellComplexPresentation:
    return CellComplexPresentation([(n, l)], [], (n, l), [(dl.identity(n), dl.identity(l))], name=f"F({n}) x Delta[{l}]")


def boundary_F(n: int) -> CellComplexPresentation:
    """``dF(n)``: ``n+1`` copies of ``F(n-1)``, copy ``j`` along ``d^i`` glued to copy ``i`` along ``d^{j-1}``."""
    if n < 1:
        return CellComplexPresentation([], [], (max(n, 0), 0), [], name=f"dF({n})")
    gens = [(n - 1, 0)] * (n + 1)
    rels = []
    if n >= 2:
        z = dl.identity(0)
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                rels.append(Relation((n - 2, 0), (j, dl.face(n - 1, i), z), (i, dl.face(n - 1, j - 1), z)))
    maps = [(dl.face(n, i), dl.identity(0)) for i in range(n + 1)]
    return CellComplexPresentation(gens, rels, (n, 0), maps, name=f"dF({n})")


def tw_presentation(A: CellComplexPresentation) -> CellComplexPresentation:
    """Twist a presentation: ``F(n) x Delta[l] -> F(2n+1) x Delta[l]``, relations through ``q_map``."""
    gens = [(2 * n + 1, l) for n, l in A.generators]
    rels = [Relation((2 * r.shape[0] + 1, r.shape[1]), (r.left[0], dl.q_map(r.left[1]), r.left[2]),
                     (r.right[0], dl.q_map(r.right[1]), r.right[2])) for r in A.relations]
    target = maps = None
    if A.target is not None:
        target = (2 * A.target[0] + 1, A.target[1])
        maps = [(dl.q_map(a), b) for a, b in A.target_maps] if A.target_maps is not None else None
    return CellComplexPresentation(gens, rels, target, maps, name=f"Tw({A.name})")


def dtw_boundary(n: int) -> CellComplexPresentation:
    """The twisted boundary of ``F(2n+1)`` with its map into ``F(2n+1)``."""
    out = tw_presentation(boundary_F(n))
    out.name = f"dTwF({2 * n + 1})"
    if n < 1:
        out.target = (2 * n + 1, 0)
    return out


def sset_presentation(S: FinSimplicialSet) -> CellComplexPresentation:
    """``S`` as a colimit of simplices: one generator per stored nondegenerate cell."""
    gens, pos = [], {}
    for k in range(S.trunc + 1):
        for x in S.nondegenerate(k):
            pos[(k, x)] = len(gens)
            gens.append((k, 0))
    z = dl.identity(0)
    rels = []
    for (k, x), g in pos.items():
        for i in range(k + 1 if k >= 1 else 0):
            j, y, s = S.ez_decompose(k - 1, int(S.faces[k][i][x]))
            rels.append(Relation((k - 1, 0), (g, dl.face(k, i), z), (pos[(j, y)], s, z)))
    return CellComplexPresentation(gens, rels, name=f"pres({S.name})")


def tw_left_sset(S: FinSimplicialSet, D: int | None = None) -> FinSimplicialSet:
    """Left adjoint twist of a simplicial set: each ``n``-simplex becomes a ``(2n+1)``-simplex.

    ``tw_left_sset(Delta[n]) == Delta[2n+1]``. Computed from the stored
    nondegenerate cells, evaluated up to level ``D`` (default ``S.trunc``).
    """
    D = S.trunc if D is None else D
    ev = tw_presentation(sset_presentation(S)).evaluate(D, 0)
    out = ev.bisset.rows[0]
    out.name = f"Tw_!({S.name})"
    return out


def is_levelwise_injective(f: BiSSetMorphism | SSetMorphism, k_max: int | None = None) -> tuple[bool, dict | None]:
    """Injectivity at every level ``k <= k_max``; the witness is a colliding pair."""
    if isinstance(f, SSetMorphism):
        levels = [[c] for c in f.components]
    else:
        levels = f.components
    top = len(levels) - 1 if k_max is None else k_max
    if top > len(levels) - 1:
        raise TruncationError(f"injectivity up to level {top} needs truncation {top}")
    for k in range(top + 1):
        for j, c in enumerate(levels[k]):
            if len(np.unique(c)) != len(c):
                order = np.argsort(c, kind="stable")
                dup = np.nonzero(np.diff(c[order]) == 0)[0][0]
                x, y = int(order[dup]), int(order[dup + 1])
                return False, {"level": (k, j), "cells": (x, y), "image": int(c[x])}
    return True, None


# corner objects ---------------------------------------------------------------------


def _attach(dtw: CellComplexPresentation, k: int, block: SimplexMap, trunc_n: int) -> list[tuple[int, SimplexMap]]:
    """Factor each face of a block inclusion through a generator of the twisted boundary."""
    ev = dtw.evaluate(trunc_n, 0)
    z = dl.identity(0)
    out = []
    for i in range(k + 1):
        want = dl.compose(block, dl.face(k, i))
        sols = []
        for g in range(k + 1):
            Qg = dl.q_map(dl.face(k, g))
            for phi in dl.monotone_maps(k - 1, 2 * k - 1):
                if dl.compose(Qg, phi) == want:
                    sols.append((g, phi))
        if not sols:
            raise FactorizationError(f"face {i} of the block inclusion does not factor through the boundary")
        classes = {ev.cell(g, phi, z) for g, phi in sols}
        if len(classes) != 1:
            raise FactorizationError(f"face {i} factors through {len(classes)} distinct boundary cells")
        out.append(sols[0])
    return out


@lru_cache(maxsize=None)
def corner_object(k: int) -> CellComplexPresentation:
    """Twisted boundary of ``F(2k+1)`` with two copies of ``F(k)`` glued along their boundaries.

    The copies map to ``F(2k+1)`` by the two block inclusions; the gluing
    maps are found by factoring each block face through the boundary.
    """
    dtw = dtw_boundary(k)
    gens = list(dtw.generators) + [(k, 0), (k, 0)]
    L, R = len(dtw.generators), len(dtw.generators) + 1
    rels = list(dtw.relations)
    z = dl.identity(0)
    left, right = dl.block_inclusion_left(k), dl.block_inclusion_right(k)
    if k >= 1:
        for gen, block in ((L, left), (R, right)):
            for i, (g, phi) in enumerate(_attach(dtw, k, block, max(k - 1, 0))):
                rels.append(Relation((k - 1, 0), (gen, dl.face(k, i), z), (g, phi, z)))
    maps = list(dtw.target_maps or []) + [(left, z), (right, z)]
    return CellComplexPresentation(gens, rels, (2 * k + 1, 0), maps, name=f"corner({k})")


def attaching_pattern(k: int) -> dict[str, list[int]]:
    """Which boundary generator each face of each block is attached to."""
    dtw = dtw_boundary(k)
    if k < 1:
        return {"left": [], "right": []}
    return {side: [g for g, _ in _attach(dtw, k, block, k - 1)]
            for side, block in (("left", dl.block_inclusion_left(k)), ("right", dl.block_inclusion_right(k)))}


# mapping simplicial sets -------------------------------------------------------------


def mapping_sset(A: CellComplexPresentation, W: BiSSet) -> FinSimplicialSet:
    """``Map(A, W)``: level ``l`` is the set of maps ``A x Delta[l] -> W``.

    Supports presentations whose generators and relations are spatially
    discrete (``l = 0``); a point is a family ``w_g`` in ``W_{n_g, l}``
    matching along every relation.
    """
    if any(l != 0 for _, l in A.generators) or any(r.shape[1] != 0 for r in A.relations):
        raise NotImplementedError("mapping spaces are computed for spatially discrete presentations only")
    need = max((n for n, _ in A.generators), default=0)
    if need > W.trunc_n:
        raise TruncationError(f"mapping out of F({need}) needs categorical truncation {need}, have {W.trunc_n}")
    gens = [(g, n) for g, (n, _) in enumerate(A.generators) if n >= 0]
    rels = [r for r in A.relations if r.shape[0] >= 0]
    by_last: dict[int, list[Relation]] = {}
    order = {g: t for t, (g, _) in enumerate(gens)}
    for r in rels:
        by_last.setdefault(max(order[r.left[0]], order[r.right[0]]), []).append(r)

    def cells(j):
        acts = {}

        def act(a):
            if a not in acts:
                acts[a] = W.rows[j].act(a)
            return acts[a]

        out = [()]
        for t, (g, n) in enumerate(gens):
            nxt = []
            for part in out:
                for w in range(W.rows[j].sizes[n]):
                    cand = part + (w,)
                    if all(act(r.left[1])[cand[order[r.left[0]]]] == act(r.right[1])[cand[order[r.right[0]]]]
                           for r in by_last.get(t, [])):
                        nxt.append(cand)
            out = nxt
        return out

    def act(b, x):
        return tuple(int(W.cols[n].act(b)[w]) for (_, n), w in zip(gens, x))

    return FinSimplicialSet.from_model(W.trunc_l, cells, act, name=f"Map({A.name}, {W.name})")


def adjunction_check(n: int, W: BiSSet) -> bool:
    """``Map(dF(n), Tw W)`` and ``Map(dTwF(2n+1), W)`` agree as simplicial sets."""
    lhs = mapping_sset(boundary_F(n), tw_bisset(W))
    rhs = mapping_sset(dtw_boundary(n), W)
    return lhs == rhs and lhs.labels == rhs.labels


def bisset_iso_by_labels(S: BiSSet, T: BiSSet, relabel) -> BiSSetMorphism | None:
    """The map sending each cell of ``S`` to the cell of ``T`` with label ``relabel(label)``.

    Returns the morphism when it exists, is bijective and natural.
    """
    if (S.trunc_n, S.trunc_l) != (T.trunc_n, T.trunc_l) or not np.array_equal(S.sizes, T.sizes):
        return None
    comps = []
    for k in range(S.trunc_n + 1):
        row = []
        for j in range(S.trunc_l + 1):
            index = {lab: i for i, lab in enumerate(T.labels(k, j))}
            try:
                c = np.array([index[relabel(lab)] for lab in S.labels(k, j)], dtype=np.int64)
            except KeyError:
                return None
            if len(np.unique(c)) != len(c):
                return None
            row.append(c)
        comps.append(row)
    f = BiSSetMorphism(S, T, comps)
    return None if f.naturality_failures() else f
