"""Finite categories with dense composition tables.

Objects and morphisms are dense integer indices. ``comp[g, f]`` is the index
of ``g o f`` or ``-1`` when ``tgt(f) != src(g)``. Labels are optional and
only used for display and serialization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .unionfind import UnionFind

NOT_COMPOSABLE = -1


class CategoryError(ValueError):
    pass


class CongruenceError(CategoryError):
    """The proposed relation is not compatible with composition."""

    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


class FinCategory:
    def __init__(self, n_obj: int, src, tgt, ident, comp, obj_labels=None, mor_labels=None, name="",
                 check=True):
        self.n_obj = int(n_obj)
        self.src = np.asarray(src, dtype=np.int64).reshape(-1)
        self.tgt = np.asarray(tgt, dtype=np.int64).reshape(-1)
        self.ident = np.asarray(ident, dtype=np.int64).reshape(-1)
        m = len(self.src)
        self.comp = np.asarray(comp, dtype=np.int64).reshape(m, m)
        self.obj_labels = list(obj_labels) if obj_labels is not None else list(range(self.n_obj))
        self.mor_labels = list(mor_labels) if mor_labels is not None else list(range(m))
        self.name = name
        self._homs: dict[tuple[int, int], list[int]] | None = None
        self._inv: np.ndarray | None = None
        if check:
            problems = self.law_failures()
            if problems:
                raise CategoryError(f"{name or 'category'}: " + "; ".join(problems[:5]))

    @property
    def n_mor(self) -> int:
        return len(self.src)

    def law_failures(self) -> list[str]:
        bad = []
        m = self.n_mor
        if len(self.tgt) != m or len(self.ident) != self.n_obj:
            return ["inconsistent array sizes"]
        for x in range(self.n_obj):
            i = self.ident[x]
            if self.src[i] != x or self.tgt[i] != x:
                bad.append(f"identity of {x} has wrong endpoints")
        composable = self.src[:, None] == self.tgt[None, :]
        if np.any((self.comp >= 0) != composable):
            bad.append("composition defined off composable pairs")
            return bad
        g, f = np.nonzero(composable)
        h = self.comp[g, f]
        if np.any(self.src[h] != self.src[f]) or np.any(self.tgt[h] != self.tgt[g]):
            bad.append("composite has wrong endpoints")
            return bad
        mors = np.arange(m)
        if np.any(self.comp[self.ident[self.tgt], mors] != mors) or np.any(self.comp[mors, self.ident[self.src]] != mors):
            bad.append("unit law fails")
        # associativity on composable triples h o (g o f) = (h o g) o f
        for gi, fi in zip(g, f):
            gf = self.comp[gi, fi]
            hs = np.nonzero(self.src == self.tgt[gi])[0]
            if np.any(self.comp[hs, gf] != self.comp[self.comp[hs, gi], fi]):
                bad.append(f"associativity fails at g={gi}, f={fi}")
                break
        return bad

    def hom(self, a: int, b: int) -> list[int]:
        if self._homs is None:
            homs: dict[tuple[int, int], list[int]] = {}
            for f in range(self.n_mor):
                homs.setdefault((int(self.src[f]), int(self.tgt[f])), []).append(f)
            self._homs = homs
        return self._homs.get((a, b), [])

    def compose(self, g: int, f: int) -> int:
        h = int(self.comp[g, f])
        if h < 0:
            raise CategoryError(f"morphisms {g} and {f} are not composable")
        return h

    def compose_all(self, *ms: int) -> int:
        out = ms[-1]
        for g in reversed(ms[:-1]):
            out = self.compose(g, out)
        return out

    def inverses(self) -> np.ndarray:
        """``inv[f]`` is the inverse of ``f`` or ``-1``."""
        if self._inv is None:
            inv = np.full(self.n_mor, -1, dtype=np.int64)
            for f in range(self.n_mor):
                a, b = int(self.src[f]), int(self.tgt[f])
                for g in self.hom(b, a):
                    if self.comp[g, f] == self.ident[a] and self.comp[f, g] == self.ident[b]:
                        inv[f] = g
                        break
            self._inv = inv
        return self._inv

    def is_iso(self, f: int) -> bool:
        return bool(self.inverses()[f] >= 0)

    def isos(self, a: int, b: int) -> list[int]:
        inv = self.inverses()
        return [f for f in self.hom(a, b) if inv[f] >= 0]

    def is_groupoid(self) -> bool:
        return bool(np.all(self.inverses() >= 0))

    def is_thin(self) -> bool:
        return all(len(v) <= 1 for v in (self.hom(a, b) for a in range(self.n_obj) for b in range(self.n_obj)))

    def iso_classes(self) -> np.ndarray:
        uf = UnionFind(self.n_obj)
        inv = self.inverses()
        for f in range(self.n_mor):
            if inv[f] >= 0:
                uf.union(int(self.src[f]), int(self.tgt[f]))
        return uf.roots()

    def renamed(self, name: str) -> "FinCategory":
        return FinCategory(self.n_obj, self.src, self.tgt, self.ident, self.comp, self.obj_labels,
                           self.mor_labels, name, check=False)

    def __repr__(self):
        return f"FinCategory({self.name or '?'}, {self.n_obj} objects, {self.n_mor} morphisms)"

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return (self.n_obj == other.n_obj and np.array_equal(self.src, other.src)
                and np.array_equal(self.tgt, other.tgt) and np.array_equal(self.ident, other.ident)
                and np.array_equal(self.comp, other.comp))

    __hash__ = None


class FinGroupoid(FinCategory):
    """A finite category all of whose morphisms are invertible."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        if not self.is_groupoid():
            bad = int(np.nonzero(self.inverses() < 0)[0][0])
            raise CategoryError(f"morphism {self.mor_labels[bad]!r} has no inverse")

    @property
    def inv(self) -> np.ndarray:
        return self.inverses()

    @classmethod
    def from_category(cls, C: FinCategory) -> "FinGroupoid":
        return cls(C.n_obj, C.src, C.tgt, C.ident, C.comp, C.obj_labels, C.mor_labels, C.name, check=False)


# builders ---------------------------------------------------------------------


def build(objects: Sequence[Hashable], morphisms: Sequence[tuple[Hashable, int, int]], identities: Sequence[int],
          compose: Callable[[int, int], int], name="", check=True, cls=FinCategory) -> FinCategory:
    """Build from labelled morphisms ``(label, src, tgt)`` and a composition rule on indices."""
    m = len(morphisms)
    src = np.array([s for _, s, _ in morphisms], dtype=np.int64)
    tgt = np.array([t for _, _, t in morphisms], dtype=np.int64)
    comp = np.full((m, m), NOT_COMPOSABLE, dtype=np.int64)
    for g in range(m):
        for f in np.nonzero(tgt == src[g])[0]:
            comp[g, f] = compose(g, int(f))
    return cls(len(objects), src, tgt, identities, comp, objects, [lab for lab, _, _ in morphisms], name, check)


def category(objects: Sequence[Hashable], morphisms: Sequence[tuple[Hashable, Hashable, Hashable]],
             composition: dict[tuple[Hashable, Hashable], Hashable] | None = None, name="",
             identity_label: Callable[[Hashable], Hashable] = lambda x: f"1_{x}") -> FinCategory:
    """Category from names: ``morphisms`` lists non-identity ``(name, src, tgt)``;
    ``composition[(g, f)] = h`` for every composable non-identity pair."""
    composition = composition or {}
    opos = {x: i for i, x in enumerate(objects)}
    mors = [(identity_label(x), opos[x], opos[x]) for x in objects]
    mors += [(lab, opos[s], opos[t]) for lab, s, t in morphisms]
    mpos = {lab: i for i, (lab, _, _) in enumerate(mors)}
    if len(mpos) != len(mors):
        raise CategoryError("duplicate morphism names")
    n = len(objects)

    def comp(g, f):
        if g < n:
            return f
        if f < n:
            return g
        key = (mors[g][0], mors[f][0])
        if key not in composition:
            raise CategoryError(f"missing composite {key[0]} o {key[1]}")
        return mpos[composition[key]]

    return build(list(objects), mors, list(range(n)), comp, name=name)


def poset(elements: Sequence[Hashable], leq: Iterable[tuple[Hashable, Hashable]], name="") -> FinCategory:
    """Thin category of the reflexive-transitive closure of ``leq``."""
    n = len(elements)
    pos = {x: i for i, x in enumerate(elements)}
    rel = np.eye(n, dtype=bool)
    for a, b in leq:
        rel[pos[a], pos[b]] = True
    for k in range(n):
        rel |= rel[:, k:k + 1] & rel[k:k + 1, :]
    pairs = [(a, b) for a in range(n) for b in range(n) if rel[a, b] and a != b]
    if any(rel[b, a] for a, b in pairs):
        raise CategoryError("relation is not antisymmetric")
    mors = [((elements[a], elements[a]), a, a) for a in range(n)] + [((elements[a], elements[b]), a, b) for a, b in pairs]
    mpos = {(s, t): i for i, (_, s, t) in enumerate(mors)}
    return build(list(elements), mors, list(range(n)), lambda g, f: mpos[(mors[f][1], mors[g][2])], name=name)


def chain(n: int) -> FinCategory:
    """The ordinal ``[n]`` as a category."""
    return poset(list(range(n + 1)), [(i, i + 1) for i in range(n)], name=f"[{n}]")


def terminal() -> FinCategory:
    return chain(0).renamed("*")


def discrete(n: int) -> FinCategory:
    return build(list(range(n)), [((i, i), i, i) for i in range(n)], list(range(n)), lambda g, f: f,
                 name=f"disc{n}")


def walking_iso() -> FinCategory:
    """``J``: two objects and a single isomorphism between them."""
    return category([0, 1], [("u", 0, 1), ("v", 1, 0)], {("v", "u"): "1_0", ("u", "v"): "1_1"}, name="J")


def monoid(elements: Sequence[Hashable], table: dict[tuple[Hashable, Hashable], Hashable], unit: Hashable,
           name="") -> FinCategory:
    """One-object category; ``table[(g, f)] = g*f``."""
    pos = {x: i for i, x in enumerate(elements)}
    idx = [pos[unit]] + [pos[x] for x in elements if x != unit]
    labs = [elements[i] for i in idx]
    lpos = {x: i for i, x in enumerate(labs)}
    return build(["*"], [(x, 0, 0) for x in labs], [0], lambda g, f: lpos[table[(labs[g], labs[f])]], name=name)


def idempotent_monoid() -> FinCategory:
    """The monoid ``{1, e}`` with ``e e = e``."""
    t = {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"}
    return monoid(["1", "e"], t, "1", name="{1,e}")


def cyclic_group(n: int) -> FinCategory:
    els = list(range(n))
    return monoid(els, {(a, b): (a + b) % n for a in els for b in els}, 0, name=f"Z/{n}")


def parallel_pair() -> FinCategory:
    return category(["a", "b"], [("f", "a", "b"), ("g", "a", "b")], name="parallel")


# functors ---------------------------------------------------------------------


@dataclass
class FinFunctor:
    source: FinCategory
    target: FinCategory
    obj: np.ndarray
    mor: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.obj = np.asarray(self.obj, dtype=np.int64).reshape(-1)
        self.mor = np.asarray(self.mor, dtype=np.int64).reshape(-1)
        if self.check:
            bad = self.law_failures()
            if bad:
                raise CategoryError("not a functor: " + "; ".join(bad[:5]))

    def law_failures(self) -> list[str]:
        C, D = self.source, self.target
        if len(self.obj) != C.n_obj or len(self.mor) != C.n_mor:
            return ["wrong map sizes"]
        bad = []
        if np.any(D.src[self.mor] != self.obj[C.src]) or np.any(D.tgt[self.mor] != self.obj[C.tgt]):
            bad.append("endpoints not preserved")
            return bad
        if np.any(self.mor[C.ident] != D.ident[self.obj]):
            bad.append("identities not preserved")
        g, f = np.nonzero(C.comp >= 0)
        lhs = self.mor[C.comp[g, f]]
        rhs = D.comp[self.mor[g], self.mor[f]]
        if np.any(lhs != rhs):
            k = int(np.nonzero(lhs != rhs)[0][0])
            bad.append(f"composition not preserved at ({int(g[k])}, {int(f[k])})")
        return bad

    def then(self, other: "FinFunctor") -> "FinFunctor":
        """``other o self``."""
        return FinFunctor(self.source, other.target, other.obj[self.obj], other.mor[self.mor], check=False)


def identity_functor(C: FinCategory) -> FinFunctor:
    return FinFunctor(C, C, np.arange(C.n_obj), np.arange(C.n_mor), check=False)


# constructions -----------------------------------------------------------------


def opposite(C: FinCategory) -> FinCategory:
    name = C.name[:-3] if C.name.endswith("^op") else f"{C.name}^op"
    return FinCategory(C.n_obj, C.tgt, C.src, C.ident, C.comp.T.copy(), C.obj_labels, C.mor_labels, name,
                       check=False)


def product(C: FinCategory, D: FinCategory) -> FinCategory:
    """Objects ``(a, b)`` at ``a * |Ob D| + b``; morphisms ``(f, g)`` at ``f * |Mor D| + g``."""
    nD, mD = D.n_obj, D.n_mor
    src = (C.src[:, None] * nD + D.src[None, :]).reshape(-1)
    tgt = (C.tgt[:, None] * nD + D.tgt[None, :]).reshape(-1)
    ident = (C.ident[:, None] * mD + D.ident[None, :]).reshape(-1)
    m = C.n_mor * mD
    gC, gD = np.divmod(np.arange(m), mD)
    cc = C.comp[gC[:, None], gC[None, :]]
    cd = D.comp[gD[:, None], gD[None, :]]
    comp = np.where((cc >= 0) & (cd >= 0), cc * mD + cd, NOT_COMPOSABLE)
    return FinCategory(C.n_obj * nD, src, tgt, ident, comp,
                       [(a, b) for a in C.obj_labels for b in D.obj_labels],
                       [(f, g) for f in C.mor_labels for g in D.mor_labels], f"{C.name} x {D.name}", check=False)


def product_functor(F: FinFunctor, G: FinFunctor, source: FinCategory | None = None,
                    target: FinCategory | None = None) -> FinFunctor:
    source = source or product(F.source, G.source)
    target = target or product(F.target, G.target)
    obj = (F.obj[:, None] * G.target.n_obj + G.obj[None, :]).reshape(-1)
    mor = (F.mor[:, None] * G.target.n_mor + G.mor[None, :]).reshape(-1)
    return FinFunctor(source, target, obj, mor)


def tw_cat(C: FinCategory) -> tuple[FinCategory, FinFunctor]:
    """Twisted arrow category and its projection to ``C^op x C``.

    A morphism ``g -> g'`` is a pair ``(k, h)`` with ``g' = h o g o k``; it is
    labelled ``(g, g', k, h)`` using morphism indices of ``C``.
    """
    mors = []
    for g in range(C.n_mor):
        for g2 in range(C.n_mor):
            for k in C.hom(int(C.src[g2]), int(C.src[g])):
                gk = C.comp[g, k]
                for h in C.hom(int(C.tgt[g]), int(C.tgt[g2])):
                    if C.comp[h, gk] == g2:
                        mors.append(((g, g2, k, h), g, g2))
    pos = {lab: i for i, (lab, _, _) in enumerate(mors)}
    ident = [pos[(g, g, int(C.ident[C.src[g]]), int(C.ident[C.tgt[g]]))] for g in range(C.n_mor)]

    def comp(b, a):
        g, _, k1, h1 = mors[a][0]
        _, g3, k2, h2 = mors[b][0]
        return pos[(g, g3, int(C.comp[k1, k2]), int(C.comp[h2, h1]))]

    T = build(list(C.mor_labels), mors, ident, comp, name=f"Tw({C.name})", check=False)
    base = product(opposite(C), C)
    obj = C.src * C.n_obj + C.tgt
    mor = np.array([lab[2] * C.n_mor + lab[3] for lab, _, _ in mors], dtype=np.int64)
    return T, FinFunctor(T, base, obj, mor)


def under_category(C: FinCategory, x: int) -> tuple[FinCategory, FinFunctor]:
    """``x/C`` with its forgetful functor to ``C``."""
    if not 0 <= x < C.n_obj:
        raise CategoryError(f"unknown object {x}")
    objs = [f for f in range(C.n_mor) if C.src[f] == x]
    opos = {f: i for i, f in enumerate(objs)}
    mors = []
    for f in objs:
        for f2 in objs:
            for t in C.hom(int(C.tgt[f]), int(C.tgt[f2])):
                if C.comp[t, f] == f2:
                    mors.append(((f, f2, t), opos[f], opos[f2]))
    pos = {lab: i for i, (lab, _, _) in enumerate(mors)}
    ident = [pos[(f, f, int(C.ident[C.tgt[f]]))] for f in objs]

    def comp(b, a):
        f, _, t1 = mors[a][0]
        _, f3, t2 = mors[b][0]
        return pos[(f, f3, int(C.comp[t2, t1]))]

    U = build([C.mor_labels[f] for f in objs], mors, ident, comp, name=f"{C.obj_labels[x]}/{C.name}", check=False)
    forget = FinFunctor(U, C, C.tgt[objs], np.array([lab[2] for lab, _, _ in mors], dtype=np.int64))
    return U, forget


def full_subcategory(C: FinCategory, objs: Sequence[int], name="") -> tuple[FinCategory, FinFunctor]:
    objs = list(objs)
    opos = {x: i for i, x in enumerate(objs)}
    mors = [f for f in range(C.n_mor) if int(C.src[f]) in opos and int(C.tgt[f]) in opos]
    mpos = {f: i for i, f in enumerate(mors)}
    S = build([C.obj_labels[x] for x in objs], [(C.mor_labels[f], opos[int(C.src[f])], opos[int(C.tgt[f])]) for f in mors],
              [mpos[int(C.ident[x])] for x in objs], lambda g, f: mpos[int(C.comp[mors[g], mors[f]])],
              name=name or f"full({C.name})", check=False)
    return S, FinFunctor(S, C, np.array(objs, dtype=np.int64), np.array(mors, dtype=np.int64))


def quotient_by_congruence(C: FinCategory, pairs: Iterable[tuple[int, int]]) -> tuple[FinCategory, FinFunctor]:
    """Quotient by the equivalence relation generated by ``pairs``.

    The generated relation must already be a congruence; otherwise
    :class:`CongruenceError` is raised with a witness ``(h, f, f2)`` such
    that ``f ~ f2`` but the composites with ``h`` are not related.
    """
    uf = UnionFind(C.n_mor)
    for f, f2 in pairs:
        if C.src[f] != C.src[f2] or C.tgt[f] != C.tgt[f2]:
            raise CategoryError(f"morphisms {f} and {f2} are not parallel")
        uf.union(int(f), int(f2))
    root = uf.roots()
    for f in range(C.n_mor):
        r = int(root[f])
        if r == f:
            continue
        for h in np.nonzero(C.src == C.tgt[f])[0]:
            if root[C.comp[h, f]] != root[C.comp[h, r]]:
                raise CongruenceError("relation not closed under postcomposition",
                                      ("post", int(h), int(r), int(f)))
        for h in np.nonzero(C.tgt == C.src[f])[0]:
            if root[C.comp[f, h]] != root[C.comp[r, h]]:
                raise CongruenceError("relation not closed under precomposition",
                                      ("pre", int(h), int(r), int(f)))
    cls = uf.dense_labels()
    n = int(cls.max()) + 1 if len(cls) else 0
    rep = np.zeros(n, dtype=np.int64)
    for f in range(C.n_mor - 1, -1, -1):
        rep[cls[f]] = f
    mors = [(C.mor_labels[int(rep[c])], int(C.src[rep[c]]), int(C.tgt[rep[c]])) for c in range(n)]
    Q = build(C.obj_labels, mors, [int(cls[C.ident[x]]) for x in range(C.n_obj)],
              lambda g, f: int(cls[C.comp[rep[g], rep[f]]]), name=f"{C.name}/~")
    return Q, FinFunctor(C, Q, np.arange(C.n_obj), cls)


# equivalences -----------------------------------------------------------------


@dataclass
class EquivalenceReport:
    essentially_surjective: bool
    full: bool
    faithful: bool
    witness: dict | None = None

    @property
    def ok(self) -> bool:
        return self.essentially_surjective and self.full and self.faithful

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"essentially_surjective": self.essentially_surjective, "full": self.full,
                "faithful": self.faithful, "witness": self.witness}


def is_equivalence(F: FinFunctor) -> EquivalenceReport:
    """Brute-force essential surjectivity and hom-set comparison."""
    C, D = F.source, F.target
    classes = D.iso_classes()
    hit = set(int(classes[F.obj[c]]) for c in range(C.n_obj))
    witness: dict = {}
    es = True
    for d in range(D.n_obj):
        if int(classes[d]) not in hit:
            es = False
            witness["missed_object"] = d
            break
    full = faithful = True
    for a in range(C.n_obj):
        for b in range(C.n_obj):
            img = [int(F.mor[f]) for f in C.hom(a, b)]
            if faithful and len(set(img)) != len(img):
                faithful = False
                witness["not_faithful"] = (a, b)
            if full and set(img) != set(D.hom(int(F.obj[a]), int(F.obj[b]))):
                full = False
                witness["not_full"] = (a, b)
    return EquivalenceReport(es, full, faithful, witness or None)


def _functors(C: FinCategory, D: FinCategory, obj_choices: Sequence[Sequence[int]] | None = None):
    """Enumerate all functors ``C -> D``."""
    nonid = [f for f in range(C.n_mor) if C.ident[C.src[f]] != f]
    obj_choices = obj_choices or [range(D.n_obj)] * C.n_obj
    for objs in iproduct(*obj_choices):
        objs = np.array(objs, dtype=np.int64)
        choices = [D.hom(int(objs[C.src[f]]), int(objs[C.tgt[f]])) for f in nonid]
        if any(not c for c in choices):
            continue
        for pick in iproduct(*choices):
            mor = D.ident[objs[C.src]].copy()
            mor[nonid] = pick
            F = FinFunctor(C, D, objs, mor, check=False)
            if not F.law_failures():
                yield F


def _natural_iso_exists(F: FinFunctor, G: FinFunctor) -> bool:
    """Is there a natural isomorphism ``F => G``?"""
    C, D = F.source, F.target
    comps = [D.isos(int(F.obj[c]), int(G.obj[c])) for c in range(C.n_obj)]
    if any(not c for c in comps):
        return False
    for eta in iproduct(*comps):
        if all(D.comp[eta[C.tgt[f]], F.mor[f]] == D.comp[G.mor[f], eta[C.src[f]]] for f in range(C.n_mor)):
            return True
    return False


def has_quasi_inverse(F: FinFunctor) -> bool:
    """Independent oracle: search ``G`` with ``GF ~= id`` and ``FG ~= id``."""
    C, D = F.source, F.target
    idC, idD = identity_functor(C), identity_functor(D)
    for G in _functors(D, C):
        if _natural_iso_exists(F.then(G), idC) and _natural_iso_exists(G.then(F), idD):
            return True
    return False


def skeleton(C: FinCategory) -> tuple[FinCategory, FinFunctor, FinFunctor]:
    """Full subcategory on minimal iso-class representatives, with inclusion and retraction."""
    classes = C.iso_classes()
    reps = sorted(set(int(r) for r in classes))
    S, incl = full_subcategory(C, reps, name=f"sk({C.name})")
    rpos = {r: i for i, r in enumerate(reps)}
    to_rep = [C.isos(x, int(classes[x]))[0] for x in range(C.n_obj)]
    inv = C.inverses()
    sub_mor = {int(f): i for i, f in enumerate(incl.mor)}
    mor = []
    for f in range(C.n_mor):
        a, b = int(C.src[f]), int(C.tgt[f])
        g = C.compose_all(to_rep[b], f, int(inv[to_rep[a]]))
        mor.append(sub_mor[g])
    retract = FinFunctor(C, S, [rpos[int(classes[x])] for x in range(C.n_obj)], mor)
    return S, incl, retract


def find_isomorphism(C: FinCategory, D: FinCategory) -> FinFunctor | None:
    """Backtracking search for an isomorphism of categories."""
    if C.n_obj != D.n_obj or C.n_mor != D.n_mor:
        return None
    n = C.n_obj
    hc = np.array([[len(C.hom(a, b)) for b in range(n)] for a in range(n)])
    hd = np.array([[len(D.hom(a, b)) for b in range(n)] for a in range(n)])

    def prof(h):
        return [(sorted(h[a]), sorted(h[:, a]), h[a, a]) for a in range(n)]

    pc, pd = prof(hc), prof(hd)
    if sorted(map(repr, pc)) != sorted(map(repr, pd)):
        return None
    obj = [-1] * n
    used = set()

    def assign_obj(a):
        if a == n:
            return assign_mor()
        for b in range(n):
            if b in used or repr(pc[a]) != repr(pd[b]):
                continue
            if any(hc[a, c] != hd[b, obj[c]] or hc[c, a] != hd[obj[c], b] for c in range(a)):
                continue
            obj[a] = b
            used.add(b)
            r = assign_obj(a + 1)
            if r is not None:
                return r
            used.discard(b)
            obj[a] = -1
        return None

    def assign_mor():
        mor = [-1] * C.n_mor
        for x in range(n):
            mor[int(C.ident[x])] = int(D.ident[obj[x]])
        order = [f for f in range(C.n_mor) if mor[f] < 0]
        usedm = set(mor[f] for f in range(C.n_mor) if mor[f] >= 0)
        assigned = [f for f in range(C.n_mor) if mor[f] >= 0]

        def consistent(f):
            for g in assigned:
                for a, b in ((g, f), (f, g)):
                    h = int(C.comp[a, b])
                    if h >= 0 and mor[h] >= 0 and int(D.comp[mor[a], mor[b]]) != mor[h]:
                        return False
                # f may itself be a composite of assigned morphisms
            return True

        def rec(i):
            if i == len(order):
                F = FinFunctor(C, D, obj, mor, check=False)
                return F if not F.law_failures() else None
            f = order[i]
            for g in D.hom(obj[C.src[f]], obj[C.tgt[f]]):
                if g in usedm:
                    continue
                mor[f] = g
                usedm.add(g)
                assigned.append(f)
                if consistent(f):
                    r = rec(i + 1)
                    if r is not None:
                        return r
                assigned.pop()
                usedm.discard(g)
                mor[f] = -1
            return None

        return rec(0)

    return assign_obj(0)


def find_equivalence(C: FinCategory, D: FinCategory) -> FinFunctor | None:
    """Search an equivalence ``C -> D`` through an isomorphism of skeleta."""
    SC, _, rC = skeleton(C)
    SD, iD, _ = skeleton(D)
    iso = find_isomorphism(SC, SD)
    if iso is None:
        return None
    return rC.then(iso).then(iD)
