"""Groupoid-valued simplicial spaces.

A space ``W`` is a truncated simplicial object in finite groupoids. Level
``n`` is the groupoid ``W.levels[n]`` and a monotone map ``a: [m] -> [n]``
acts by the functor ``W.functor(a): G_n -> G_m``. Homotopy-level questions
(Segal maps, completeness, homotopy pullbacks) reduce to deciding
equivalences of groupoids and building iso-comma groupoids.

Conventions: at level 1, ``d_1`` is the source and ``d_0`` the target. The
twisted projection ``Tw W -> W^op x W`` puts the source in the first (op)
factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import delta as dl
from .delta import SimplexMap
from .fincat import (CategoryError, EquivalenceReport, FinCategory, FinFunctor, build, find_equivalence,
                     is_equivalence, tw_cat)
from .groupoid import (Arrow, DiscreteGroupoid, FullSubgroupoid, Groupoid, GroupoidFunctor, NatIsoGroupoid,
                       ProductGroupoid, PseudoPullback, Square, SquareCheckReport, functor_differences,
                       groupoid_equivalence, homotopy_pullback_check, product_functor, strict_pullback)
from .sset import FinSimplicialSet, TruncationError, _chains, nerve, tw_sset


class NotSegalError(ValueError):
    """Raised when a construction needs Segal input and did not get it."""


class GroupoidSimplicialSpace:
    def __init__(self, levels: Sequence[Groupoid], act: Callable[[SimplexMap], GroupoidFunctor], name=""):
        self.levels = list(levels)
        self._act = act
        self._cache: dict[SimplexMap, GroupoidFunctor] = {}
        self.name = name

    @property
    def trunc(self) -> int:
        return len(self.levels) - 1

    def functor(self, a: SimplexMap) -> GroupoidFunctor:
        """The functor ``G_{a.cod} -> G_{a.dom}``."""
        F = self._cache.get(a)
        if F is None:
            if a.cod > self.trunc:
                raise TruncationError(f"{self.name}: operator into [{a.cod}] beyond truncation {self.trunc}")
            F = self._act(a)
            if F.source is not self.levels[a.cod] or F.target is not self.levels[a.dom]:
                raise ValueError(f"action of {a!r} has the wrong endpoints")
            self._cache[a] = F
        return F

    def face(self, n: int, i: int) -> GroupoidFunctor:
        return self.functor(dl.face(n, i))

    def degen(self, n: int, i: int) -> GroupoidFunctor:
        return self.functor(dl.degeneracy(n, i))

    def truncate(self, D: int) -> "GroupoidSimplicialSpace":
        if D > self.trunc:
            raise TruncationError(f"cannot truncate {self.name} at {D} > {self.trunc}")
        return GroupoidSimplicialSpace(self.levels[: D + 1], self.functor, name=self.name)

    def sizes(self) -> list[int]:
        return [G.n_obj for G in self.levels]

    def identity_failures(self, max_level: int | None = None) -> list[str]:
        """Check that generator functors compose like the operators they represent.

        For every pair of composable generators (faces and degeneracies) the
        composite functor must equal ``functor`` of the composite operator;
        together with the direct action this covers all simplicial identities.
        """
        top = self.trunc if max_level is None else min(max_level, self.trunc)
        gens = []
        for n in range(top + 1):
            gens += [dl.face(n, i) for i in range(n + 1) if n >= 1]
            gens += [dl.degeneracy(n, i) for i in range(n + 1) if n + 1 <= top]
        bad = []
        for a in gens:
            for b in gens:
                if b.cod != a.dom:
                    continue
                # a o b acts as functor(a) then functor(b)
                lhs = self.functor(a).then(self.functor(b))
                rhs = self.functor(dl.compose(a, b))
                diff = functor_differences(lhs, rhs)
                if diff:
                    bad.append(f"{a!r} o {b!r}: {diff[0]!r}")
        return bad

    def __repr__(self):
        return f"GroupoidSimplicialSpace({self.name or '?'}, sizes={self.sizes()})"


@dataclass
class SpaceMap:
    source: GroupoidSimplicialSpace
    target: GroupoidSimplicialSpace
    components: list[GroupoidFunctor]
    name: str = ""
    factors: tuple | None = field(default=None, repr=False)

    def naturality_failures(self, max_level: int | None = None) -> list[str]:
        top = min(self.source.trunc, self.target.trunc)
        if max_level is not None:
            top = min(top, max_level)
        bad = []
        for n in range(top + 1):
            for m in range(top + 1):
                for a in dl.monotone_maps(m, n):
                    lhs = self.source.functor(a).then(self.components[m])
                    rhs = self.components[n].then(self.target.functor(a))
                    diff = functor_differences(lhs, rhs)
                    if diff:
                        bad.append(f"{a!r}: {diff[0]!r}")
        return bad


# constructors -------------------------------------------------------------------


def discrete_embedding(S: FinSimplicialSet) -> GroupoidSimplicialSpace:
    """Each level the discrete groupoid on the cells of ``S``."""
    levels = [DiscreteGroupoid(S.labels[k], name=f"{S.name}_{k}") for k in range(S.trunc + 1)]

    def act(a):
        obj = S.act(a)
        G = levels[a.dom]
        return GroupoidFunctor(levels[a.cod], G, obj, lambda f: G.identity(int(obj[f.src])), name=repr(a))

    return GroupoidSimplicialSpace(levels, act, name=f"disc({S.name})")


def classifying_diagram(C: FinCategory, D: int) -> GroupoidSimplicialSpace:
    """Level ``n``: functors ``[n] -> C`` and natural isomorphisms."""
    N = nerve(C, D)
    levels = [NatIsoGroupoid(C, N.labels[k], k) for k in range(D + 1)]

    def act(a):
        obj = N.act(a)
        src, tgt = levels[a.cod], levels[a.dom]
        vals = a.values
        return GroupoidFunctor(src, tgt, obj,
                               lambda f: Arrow(int(obj[f.src]), int(obj[f.tgt]), tuple(f.data[v] for v in vals)),
                               name=repr(a))

    return GroupoidSimplicialSpace(levels, act, name=f"Class({C.name})")


def discrete_nerve(C: FinCategory, D: int) -> GroupoidSimplicialSpace:
    return discrete_embedding(nerve(C, D))


def tw_space(W: GroupoidSimplicialSpace, D: int | None = None) -> GroupoidSimplicialSpace:
    """Level ``n`` is ``G_{2n+1}``; operators act through ``q_map``."""
    top = (W.trunc - 1) // 2
    D = top if D is None else D
    if D < 0 or 2 * D + 1 > W.trunc:
        raise TruncationError(f"twisting to level {D} needs truncation {2 * D + 1}, have {W.trunc}")
    levels = [W.levels[2 * n + 1] for n in range(D + 1)]
    return GroupoidSimplicialSpace(levels, lambda a: W.functor(dl.q_map(a)), name=f"Tw({W.name})")


def op_space(W: GroupoidSimplicialSpace, D: int | None = None) -> GroupoidSimplicialSpace:
    D = W.trunc if D is None else D
    return GroupoidSimplicialSpace(W.levels[: D + 1], lambda a: W.functor(dl.op_map(a)), name=f"{W.name}^op")


def product_space(V: GroupoidSimplicialSpace, W: GroupoidSimplicialSpace) -> GroupoidSimplicialSpace:
    D = min(V.trunc, W.trunc)
    levels = [ProductGroupoid(V.levels[n], W.levels[n]) for n in range(D + 1)]

    def act(a):
        return product_functor(V.functor(a), W.functor(a), levels[a.cod], levels[a.dom])

    out = GroupoidSimplicialSpace(levels, act, name=f"{V.name} x {W.name}")
    out.factors = (V, W)
    return out


def spaces_equal(V: GroupoidSimplicialSpace, W: GroupoidSimplicialSpace, max_level: int | None = None) -> bool:
    """Strict equality of discrete spaces: same cells and same operator tables."""
    if V.trunc != W.trunc:
        return False
    top = V.trunc if max_level is None else min(V.trunc, max_level)
    for n in range(V.trunc + 1):
        if V.levels[n].labels != W.levels[n].labels:
            return False
    for n in range(top + 1):
        for m in range(top + 1):
            for a in dl.monotone_maps(m, n):
                if not np.array_equal(V.functor(a).obj, W.functor(a).obj):
                    return False
    return True


def twisted_projection_space(W: GroupoidSimplicialSpace, D: int | None = None) -> SpaceMap:
    """``Tw W -> W^op x W``; level ``n`` restricts along the two block inclusions."""
    T = tw_space(W, D)
    D = T.trunc
    Wt = W.truncate(D)
    B = product_space(op_space(Wt), Wt)
    comps = []
    for n in range(D + 1):
        Fl, Fr = W.functor(dl.block_inclusion_left(n)), W.functor(dl.block_inclusion_right(n))
        P = B.levels[n]
        obj = Fl.obj * P.B.n_obj + Fr.obj
        comps.append(GroupoidFunctor(T.levels[n], P, obj,
                                     (lambda Fl, Fr, P: lambda f: P.arrow(Fl.mor(f), Fr.mor(f)))(Fl, Fr, P),
                                     name=f"proj_{n}"))
    return SpaceMap(T, B, comps, name=f"proj({W.name})", factors=(op_space(Wt), Wt))


def first_projection(W: GroupoidSimplicialSpace) -> SpaceMap:
    """``W x W -> W``; not a left fibration in general."""
    P = product_space(W, W)
    comps = []
    for n in range(P.trunc + 1):
        G = P.levels[n]
        obj = np.arange(G.n_obj) // G.B.n_obj
        comps.append(GroupoidFunctor(G, W.levels[n], obj, lambda f: f.data[0], name=f"pr1_{n}"))
    return SpaceMap(P, W, comps, name=f"pr1({W.name})")


# Segal condition ------------------------------------------------------------------


@dataclass
class SegalReport:
    levels: dict[int, EquivalenceReport]
    mode: str = "inductive"

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.levels.values())

    def __bool__(self):
        return self.ok

    def first_failure(self) -> int | None:
        return next((n for n, r in sorted(self.levels.items()) if not r.ok), None)

    def as_dict(self) -> dict:
        return {"mode": self.mode, "ok": self.ok, "levels": {str(n): r.as_dict() for n, r in sorted(self.levels.items())}}


def _segal_inductive(W: GroupoidSimplicialSpace, n: int) -> GroupoidFunctor:
    """``G_n -> G_{n-1} x^h_{G_0} G_1`` via the front face and the last edge."""
    F = W.functor(dl.vertex(n - 1, n - 1))
    G = W.functor(dl.vertex(1, 0))
    P = PseudoPullback(F, G)
    fr, bk = W.functor(dl.front(n, n - 1)), W.functor(dl.back(n, 1))
    G0 = W.levels[0]
    mid = W.functor(dl.vertex(n, n - 1)).obj
    obj = np.array([P.index_of((int(fr.obj[x]), int(bk.obj[x]), G0.identity(int(mid[x]))))
                    for x in range(W.levels[n].n_obj)], dtype=np.int64)
    return GroupoidFunctor(W.levels[n], P, obj,
                           lambda f: Arrow(int(obj[f.src]), int(obj[f.tgt]), (fr.mor(f), bk.mor(f))),
                           name=f"segal_{n}")


def _segal_iterated(W: GroupoidSimplicialSpace, n: int) -> GroupoidFunctor:
    """``G_n -> G_1 x^h ... x^h G_1`` built as a left-nested pseudo-pullback."""
    G0 = W.levels[0]
    src, tgt = W.functor(dl.vertex(1, 0)), W.functor(dl.vertex(1, 1))
    # P_1 = G_1 with its target functor; comparison_1 = identity
    P: Groupoid = W.levels[1]
    end = tgt
    cmp_obj = W.functor(dl.edge(n, 0, 1)).obj
    cmp_mor = W.functor(dl.edge(n, 0, 1)).mor
    for k in range(2, n + 1):
        Q = PseudoPullback(end, src)
        e = W.functor(dl.edge(n, k - 1, k))
        v = W.functor(dl.vertex(n, k - 1)).obj
        new_obj = np.array([Q.index_of((int(cmp_obj[x]), int(e.obj[x]), G0.identity(int(v[x]))))
                            for x in range(W.levels[n].n_obj)], dtype=np.int64)
        new_mor = (lambda cm, e, no: lambda f: Arrow(int(no[f.src]), int(no[f.tgt]), (cm(f), e.mor(f))))(cmp_mor, e, new_obj)
        _, pb = Q.projections()
        end = pb.then(tgt)
        P, cmp_obj, cmp_mor = Q, new_obj, new_mor
    return GroupoidFunctor(W.levels[n], P, cmp_obj, cmp_mor, name=f"segal_{n}")


def segal_map(W: GroupoidSimplicialSpace, n: int, mode: str = "inductive") -> GroupoidFunctor:
    if mode == "inductive":
        return _segal_inductive(W, n)
    if mode == "iterated":
        return _segal_iterated(W, n)
    raise ValueError(f"unknown mode {mode!r}")


def segal_check(W: GroupoidSimplicialSpace, n_max: int, mode: str = "inductive") -> SegalReport:
    """Check that the Segal maps ``G_n -> G_1 x^h_{G_0} ... x^h_{G_0} G_1`` are equivalences.

    The default inductive mode compares ``G_n`` with ``G_{n-1} x^h G_1``;
    given the lower levels, this is equivalent to the iterated comparison.
    """
    if n_max > W.trunc:
        raise TruncationError(f"segal check up to {n_max} needs truncation {n_max}, have {W.trunc}")
    return SegalReport({n: groupoid_equivalence(segal_map(W, n, mode)) for n in range(2, n_max + 1)}, mode)


def strict_pseudo_agree(W: GroupoidSimplicialSpace) -> EquivalenceReport:
    """The strict pullback ``G_1 x_{G_0} G_1`` includes into the pseudo one by an equivalence."""
    F, G = W.functor(dl.vertex(1, 1)), W.functor(dl.vertex(1, 0))
    S = strict_pullback(F, G)
    incl = GroupoidFunctor(S, S.ambient, S.objs, lambda f: f.data, name="incl")
    return groupoid_equivalence(incl)


# homotopy category ----------------------------------------------------------------


@dataclass
class HoResult:
    """Homotopy category of a Segal space.

    Morphisms ``x -> y`` are components of the iso-fibre of ``(d_1, d_0)``
    over ``(x, y)``; ``class_of`` sends an object of ``G_1`` to its class.
    """

    category: FinCategory
    space: GroupoidSimplicialSpace = field(repr=False)
    fiber: PseudoPullback = field(repr=False)
    fiber_class: np.ndarray = field(repr=False)
    representatives: list[int] = field(repr=False)

    def classify(self, f: int, x: int, y: int, phi_s: Arrow, phi_t: Arrow) -> int:
        """Class of ``f`` viewed over ``(x, y)`` through ``phi_s: d_1 f -> x``, ``phi_t: d_0 f -> y``."""
        P = self.fiber
        n0 = self.space.levels[0].n_obj
        base = P.C
        phi = base.arrow(phi_s, phi_t)
        if phi.src != int(P.F.obj[f]) or phi.tgt != x * n0 + y:
            raise ValueError("comparison arrows do not match the endpoints of f")
        return int(self.fiber_class[P.index_of((f, x * n0 + y, phi))])

    def class_of(self, f: int) -> int:
        W = self.space
        s, t = int(W.face(1, 1).obj[f]), int(W.face(1, 0).obj[f])
        G0 = W.levels[0]
        return self.classify(f, s, t, G0.identity(s), G0.identity(t))

    def representative(self, m: int) -> tuple:
        """``(f, x, y, phi_s, phi_t)`` for a fixed member of class ``m``."""
        P = self.fiber
        f, pair, phi = P.labels[self.representatives[m]]
        x, y = divmod(pair, self.space.levels[0].n_obj)
        return f, x, y, phi.data[0], phi.data[1]


def _ho_fiber(W: GroupoidSimplicialSpace) -> PseudoPullback:
    G0, G1 = W.levels[0], W.levels[1]
    B = ProductGroupoid(G0, G0)
    d1, d0 = W.face(1, 1), W.face(1, 0)
    E = GroupoidFunctor(G1, B, d1.obj * G0.n_obj + d0.obj, lambda f: B.arrow(d1.mor(f), d0.mor(f)), name="(d1,d0)")
    pairs = DiscreteGroupoid([(x, y) for x in G0.labels for y in G0.labels], name="Ob x Ob")
    I = GroupoidFunctor(pairs, B, np.arange(pairs.n_obj), lambda f: B.identity(f.src), name="incl")
    return PseudoPullback(E, I, name="ho-fiber")


def ho_category(W: GroupoidSimplicialSpace, check_segal: bool = True) -> HoResult:
    """Homotopy category; composition is computed from Segal lifts.

    Each composite is found twice (lowest-index lift with minimal class
    representatives, highest-index lift with maximal representatives) and
    the two answers must agree.
    """
    if W.trunc < 2:
        raise TruncationError("homotopy category needs levels up to 2")
    if check_segal:
        rep = segal_check(W, min(3, W.trunc))
        if not rep.ok:
            raise NotSegalError(f"{W.name} is not Segal at level {rep.first_failure()}")
    G0, G1, G2 = W.levels[0], W.levels[1], W.levels[2]
    n0 = G0.n_obj
    P = _ho_fiber(W)
    comp = P.components()
    roots = sorted(set(int(c) for c in comp))
    # order classes by (source, target, minimal member)
    by_pair: dict[tuple[int, int], list[int]] = {}
    members: dict[int, list[int]] = {}
    for p, c in enumerate(comp):
        members.setdefault(int(c), []).append(p)
    for r in roots:
        x, y = divmod(P.labels[r][1], n0)
        by_pair.setdefault((x, y), []).append(r)
    order = [r for key in sorted(by_pair) for r in by_pair[key]]
    cls = {r: i for i, r in enumerate(order)}
    fiber_class = np.array([cls[int(c)] for c in comp], dtype=np.int64)
    mors = []
    for i, r in enumerate(order):
        x, y = divmod(P.labels[r][1], n0)
        mors.append(((x, y, by_pair[(x, y)].index(r)), x, y))

    partial = HoResult(None, W, P, fiber_class, order)  # type: ignore[arg-type]
    s0 = W.degen(0, 0)
    ident = [partial.classify(int(s0.obj[x]), x, x, G0.identity(x), G0.identity(x)) for x in range(n0)]

    d2, d1, d0 = W.face(2, 2), W.face(2, 1), W.face(2, 0)
    e1s, e1t = W.face(1, 1), W.face(1, 0)
    comp1 = G1.components()
    buckets: dict[tuple[int, int], list[int]] = {}
    for s in range(G2.n_obj):
        buckets.setdefault((int(comp1[d2.obj[s]]), int(comp1[d0.obj[s]])), []).append(s)

    def lift(p1, p2, reverse):
        f, pair1, phi = P.labels[p1]
        g, pair2, psi = P.labels[p2]
        (phi_s, phi_t), (psi_s, psi_t) = phi.data, psi.data
        x, z = pair1 // n0, pair2 % n0
        theta = G0.compose(G0.inverse(psi_s), phi_t)
        cand = buckets.get((int(comp1[f]), int(comp1[g])), [])
        for s in (reversed(cand) if reverse else cand):
            us = G1.hom(int(d2.obj[s]), f)
            vs = G1.hom(int(d0.obj[s]), g)
            if reverse:
                us, vs = us[::-1], vs[::-1]
            for u in us:
                want = G0.compose(theta, e1t.mor(u))
                for v in vs:
                    if e1s.mor(v) == want:
                        # d_1 sigma starts where d_2 sigma does and ends where d_0 sigma does
                        return partial.classify(int(d1.obj[s]), x, z, G0.compose(phi_s, e1s.mor(u)),
                                                G0.compose(psi_t, e1t.mor(v)))
        return None

    table: dict[tuple[int, int], int] = {}

    def compose(g, f):
        key = (g, f)
        if key not in table:
            lo = lift(members[order[f]][0], members[order[g]][0], False)
            hi = lift(members[order[f]][-1], members[order[g]][-1], True)
            if lo is None or hi is None:
                raise NotSegalError(f"no Segal lift for the composable pair ({f}, {g})")
            if lo != hi:
                raise NotSegalError(f"composite of ({f}, {g}) depends on the chosen lift: {lo} vs {hi}")
            table[key] = lo
        return table[key]

    try:
        C = build(list(G0.labels), mors, ident, compose, name=f"Ho({W.name})", check=True)
    except CategoryError as e:
        raise NotSegalError(f"homotopy category laws fail: {e}") from e
    partial.category = C
    return partial


def ho_dot_labels(ho: HoResult) -> list[str]:
    return [str(lab) for lab in ho.category.mor_labels]


# twisted comparison functor ---------------------------------------------------------


@dataclass
class FWResult:
    functor: FinFunctor
    report: EquivalenceReport
    ho_tw: HoResult = field(repr=False)
    ho: HoResult = field(repr=False)
    tw_ho: FinCategory = field(repr=False)


def f_w_functor(W: GroupoidSimplicialSpace, ho: HoResult | None = None, ho_tw: HoResult | None = None) -> FWResult:
    """``Ho(Tw W) -> Tw(Ho W)``: objects to their classes, a 3-simplex to its two outer edges."""
    if W.trunc < 7:
        raise TruncationError("the twisted comparison needs truncation 7")
    ho = ho or ho_category(W)
    T = tw_space(W)
    ho_tw = ho_tw or ho_category(T)
    TwHo, _ = tw_cat(ho.category)
    lab = {l: i for i, l in enumerate(TwHo.mor_labels)}
    G1 = W.levels[1]
    d1, d0 = W.face(1, 1), W.face(1, 0)
    e01, e23 = W.functor(dl.edge(3, 0, 1)), W.functor(dl.edge(3, 2, 3))
    obj = np.array([ho.class_of(f) for f in range(G1.n_obj)], dtype=np.int64)
    Htw = ho_tw.category
    mor = np.empty(Htw.n_mor, dtype=np.int64)
    for m in range(Htw.n_mor):
        sigma, f, g, phi_s, phi_t = ho_tw.representative(m)
        k = ho.classify(int(e01.obj[sigma]), int(d1.obj[g]), int(d1.obj[f]), d1.mor(phi_t), d1.mor(phi_s))
        h = ho.classify(int(e23.obj[sigma]), int(d0.obj[f]), int(d0.obj[g]), d0.mor(phi_s), d0.mor(phi_t))
        key = (int(obj[f]), int(obj[g]), k, h)
        if key not in lab:
            raise NotSegalError(f"outer edges of morphism {m} do not factor {key[1]} through {key[0]}")
        mor[m] = lab[key]
    F = FinFunctor(Htw, TwHo, obj, mor, check=True)
    return FWResult(F, is_equivalence(F), ho_tw, ho, TwHo)


def ho_tw_equivalent(res: FWResult) -> FinFunctor | None:
    """An equivalence ``Ho(Tw W) -> Tw(Ho W)`` found by search, independent of the comparison functor."""
    return find_equivalence(res.ho_tw.category, res.tw_ho)


# completeness -------------------------------------------------------------------------


def hoequiv_subgroupoid(W: GroupoidSimplicialSpace, ho: HoResult | None = None) -> tuple[FullSubgroupoid, GroupoidFunctor]:
    """Objects of ``G_1`` whose class is invertible, with the inclusion into ``G_1``."""
    ho = ho or ho_category(W)
    G1 = W.levels[1]
    inv = ho.category.inverses()
    keep = [f for f in range(G1.n_obj) if inv[ho.class_of(f)] >= 0]
    comp = G1.components()
    kept = set(keep)
    for f in range(G1.n_obj):
        if (f in kept) != (int(comp[f]) in kept):
            raise NotSegalError("invertible classes are not closed under isomorphism in G_1")
    H = FullSubgroupoid(G1, keep, name=f"{W.name}_hoequiv")
    return H, GroupoidFunctor(H, G1, keep, lambda f: f.data, name="incl")


@dataclass
class CompletenessReport:
    equivalence: EquivalenceReport
    n_objects: int
    n_hoequiv: int
    components_objects: int
    components_hoequiv: int

    @property
    def ok(self) -> bool:
        return self.equivalence.ok

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"ok": self.ok, **self.equivalence.as_dict(), "objects": self.n_objects,
                "hoequiv": self.n_hoequiv, "object_components": self.components_objects,
                "hoequiv_components": self.components_hoequiv}


def completeness_check(W: GroupoidSimplicialSpace, ho: HoResult | None = None) -> CompletenessReport:
    """Is the degeneracy ``G_0 -> hoequiv`` an equivalence?"""
    H, _ = hoequiv_subgroupoid(W, ho)
    s0 = W.degen(0, 0)
    obj = np.array([H.pos[int(s0.obj[x])] for x in range(W.levels[0].n_obj)], dtype=np.int64)
    F = GroupoidFunctor(W.levels[0], H, obj, lambda f: H.wrap(s0.mor(f)), name="s0")
    return CompletenessReport(groupoid_equivalence(F), W.levels[0].n_obj, H.n_obj,
                              len(W.levels[0].component_reps()), len(H.component_reps()))


@dataclass
class TwHoequivReport:
    direct: list[int]
    preimage: list[int]
    counterexamples: list[int]

    @property
    def ok(self) -> bool:
        return self.direct == self.preimage and not self.counterexamples

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"ok": self.ok, "direct": len(self.direct), "preimage": len(self.preimage),
                "counterexamples": self.counterexamples[:10]}


def tw_hoequiv_pullback_check(W: GroupoidSimplicialSpace, ho: HoResult | None = None,
                              ho_tw: HoResult | None = None) -> TwHoequivReport:
    """Compare the invertible twisted arrows with the preimage of ``hoequiv^op x hoequiv``."""
    ho = ho or ho_category(W)
    T = tw_space(W)
    ho_tw = ho_tw or ho_category(T)
    direct, _ = hoequiv_subgroupoid(T, ho_tw)
    H, _ = hoequiv_subgroupoid(W, ho)
    good = set(H.objs)
    left, right = W.functor(dl.edge(3, 0, 1)).obj, W.functor(dl.edge(3, 2, 3)).obj
    pre = [s for s in range(W.levels[3].n_obj) if int(left[s]) in good and int(right[s]) in good]
    d = set(direct.objs)
    bad = sorted(d.symmetric_difference(pre))
    return TwHoequivReport(sorted(d), pre, bad)


# left fibrations ------------------------------------------------------------------------


def initial_vertex_square(p: SpaceMap, n: int) -> Square:
    a = dl.initial_vertex(n)
    X, Y = p.source, p.target
    return Square(top=X.functor(a), left=p.components[n], right=p.components[0], bottom=Y.functor(a))


@dataclass
class LeftFibrationReport:
    levels: dict[int, SquareCheckReport]
    shortcut: bool
    agree: bool

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.levels.values())

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"ok": self.ok, "shortcut": self.shortcut, "agree": self.agree,
                "levels": {str(n): r.as_dict() for n, r in sorted(self.levels.items())}}


def left_fibration_check(p: SpaceMap, n_max: int) -> LeftFibrationReport:
    """Initial-vertex squares are homotopy pullbacks for ``1 <= n <= n_max``."""
    top = min(p.source.trunc, p.target.trunc)
    if n_max > top:
        raise TruncationError(f"left fibration check up to {n_max} needs truncation {n_max}, have {top}")
    levels = {n: homotopy_pullback_check(initial_vertex_square(p, n)) for n in range(1, n_max + 1)}
    full = all(r.ok for r in levels.values())
    shortcut = levels[1].ok if levels else True
    return LeftFibrationReport(levels, shortcut, shortcut == full)


def fiber_at(p: SpaceMap, x: int, D: int | None = None) -> tuple[GroupoidSimplicialSpace, SpaceMap]:
    """Pseudo-fibre of ``p: X -> V x W`` over ``{x} x W``, with its map to ``W``.

    Level ``n`` is the iso-comma of ``pr_V p_n: X_n -> V_n`` and the constant
    ``n``-simplex at ``x``; it is equivalent to the iso-comma over ``{x} x W``
    (the ``W`` coordinate is carried along strictly) and much smaller.
    """
    if p.factors is None:
        raise ValueError("fiber_at needs a map into a product space")
    V, W = p.factors
    X, Y = p.source, p.target
    if not 0 <= x < V.levels[0].n_obj:
        raise ValueError(f"unknown object {x}")
    top = min(X.trunc, Y.trunc)
    D = top if D is None else D
    if D > top:
        raise TruncationError(f"fibre up to level {D} needs truncation {D}, have {top}")
    pt = DiscreteGroupoid([x], name="pt")
    levels = []
    for n in range(D + 1):
        Vn, Yn = V.levels[n], Y.levels[n]
        c = int(V.functor(dl.terminal_map(n)).obj[x])
        pn = p.components[n]
        q = GroupoidFunctor(X.levels[n], Vn, pn.obj // Yn.B.n_obj, (lambda pn: lambda f: pn.mor(f).data[0])(pn),
                            name=f"pr_V p_{n}")
        incl = GroupoidFunctor(pt, Vn, [c], (lambda Vn, c: lambda f: Vn.identity(c))(Vn, c), name=f"x_{n}")
        levels.append(PseudoPullback(q, incl, name=f"fib_{n}"))

    def act(a):
        P, Q = levels[a.cod], levels[a.dom]
        fX, fV = X.functor(a), V.functor(a)
        obj = np.array([Q.index_of((int(fX.obj[s]), 0, fV.mor(phi))) for s, _, phi in P.labels], dtype=np.int64)
        return GroupoidFunctor(P, Q, obj,
                               lambda f: Arrow(int(obj[f.src]), int(obj[f.tgt]), (fX.mor(f.data[0]), f.data[1])),
                               name=repr(a))

    F = GroupoidSimplicialSpace(levels, act, name=f"{X.name}_{x}")
    comps = []
    for n, L in enumerate(levels):
        pn, Yn = p.components[n], Y.levels[n]
        obj = [int(pn.obj[s]) % Yn.B.n_obj for s, _, _ in L.labels]
        comps.append(GroupoidFunctor(L, W.levels[n], obj, (lambda pn: lambda f: pn.mor(f.data[0]).data[1])(pn),
                                     name=f"pr_{n}"))
    return F, SpaceMap(F, W.truncate(D), comps, name="fiber projection")
