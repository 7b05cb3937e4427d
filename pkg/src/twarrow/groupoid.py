"""Finite groupoids with implicitly enumerated hom-sets.

Levels of classifying diagrams grow quickly (functors ``[9] -> J`` already
give 1024 objects with a million morphisms), so groupoids here do not store
composition tables. Each groupoid enumerates ``hom(a, b)`` on demand and
supplies a small set of ``generators(a)`` whose closure is the whole
groupoid; connected components are computed from the generators.

Morphisms are :class:`Arrow` values ``(src, tgt, data)`` with canonical
``data``, so arrows compare by value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, NamedTuple, Sequence

import numpy as np

from .fincat import EquivalenceReport, FinCategory
from .unionfind import UnionFind


class Arrow(NamedTuple):
    src: int
    tgt: int
    data: Hashable


class Groupoid:
    """Base class; subclasses implement ``hom``, ``identity``, ``compose``, ``inverse``."""

    name = ""

    def __init__(self, labels: Sequence[Hashable]):
        self.labels = list(labels)
        self._index: dict | None = None
        self._components: np.ndarray | None = None

    @property
    def n_obj(self) -> int:
        return len(self.labels)

    def index_of(self, label) -> int:
        if self._index is None:
            self._index = {x: i for i, x in enumerate(self.labels)}
        return self._index[label]

    def hom(self, a: int, b: int) -> list[Arrow]:
        raise NotImplementedError

    def identity(self, a: int) -> Arrow:
        raise NotImplementedError

    def compose(self, g: Arrow, f: Arrow) -> Arrow:
        raise NotImplementedError

    def inverse(self, f: Arrow) -> Arrow:
        raise NotImplementedError

    def generators(self, a: int) -> Iterable[Arrow]:
        """Arrows out of ``a`` that, over all objects, generate the groupoid."""
        ida = self.identity(a)
        for b in range(self.n_obj):
            for f in self.hom(a, b):
                if f != ida:
                    yield f

    def components(self) -> np.ndarray:
        """Component id of each object (its minimal member)."""
        if self._components is None:
            uf = UnionFind(self.n_obj)
            for a in range(self.n_obj):
                for g in self.generators(a):
                    uf.union(a, g.tgt)
            self._components = uf.roots()
        return self._components

    def component_reps(self) -> list[int]:
        comp = self.components()
        return [a for a in range(self.n_obj) if comp[a] == a]

    def automorphisms(self, a: int) -> list[Arrow]:
        return self.hom(a, a)

    def __repr__(self):
        return f"{type(self).__name__}({self.name or '?'}, {self.n_obj} objects)"


class DiscreteGroupoid(Groupoid):
    def __init__(self, labels, name=""):
        super().__init__(labels)
        self.name = name

    def hom(self, a, b):
        return [Arrow(a, a, None)] if a == b else []

    def identity(self, a):
        return Arrow(a, a, None)

    def compose(self, g, f):
        if f.tgt != g.src:
            raise ValueError("arrows not composable")
        return f

    def inverse(self, f):
        return f

    def generators(self, a):
        return ()

    def components(self):
        return np.arange(self.n_obj, dtype=np.int64)


class TableGroupoid(Groupoid):
    """Adapter exposing a :class:`FinCategory` groupoid through this interface."""

    def __init__(self, C: FinCategory):
        if not C.is_groupoid():
            raise ValueError(f"{C.name} is not a groupoid")
        super().__init__(C.obj_labels)
        self.category = C
        self.name = C.name
        self._inv = C.inverses()

    def hom(self, a, b):
        return [Arrow(a, b, f) for f in self.category.hom(a, b)]

    def identity(self, a):
        return Arrow(a, a, int(self.category.ident[a]))

    def compose(self, g, f):
        return Arrow(f.src, g.tgt, self.category.compose(g.data, f.data))

    def inverse(self, f):
        return Arrow(f.tgt, f.src, int(self._inv[f.data]))


class NatIsoGroupoid(Groupoid):
    """Functors ``[k] -> C`` and natural isomorphisms between them.

    Objects are nerve labels ``(objects, arrows)``; an arrow carries the tuple
    of components ``(u_0, ..., u_k)`` as morphism indices of ``C``.
    """

    def __init__(self, C: FinCategory, chains: Sequence, k: int):
        super().__init__(chains)
        self.category = C
        self.k = k
        self.name = f"Fun([{k}], {C.name})^iso"
        self._inv = C.inverses()
        n = C.n_obj
        self._isos = [[C.isos(a, b) for b in range(n)] for a in range(n)]
        self._isos_from = [[(b, f) for b in range(n) for f in self._isos[a][b] if f != C.ident[a]] for a in range(n)]
        self.index_of(chains[0]) if chains else None

    def hom(self, a, b):
        C = self.category
        (xo, xf), (yo, yf) = self.labels[a], self.labels[b]
        out = []
        comps = [self._isos[xo[i]][yo[i]] for i in range(self.k + 1)]
        if any(not c for c in comps):
            return out

        def rec(i, acc):
            if i == self.k + 1:
                out.append(Arrow(a, b, tuple(acc)))
                return
            for u in comps[i]:
                if i and C.comp[u, xf[i - 1]] != C.comp[yf[i - 1], acc[-1]]:
                    continue
                acc.append(u)
                rec(i + 1, acc)
                acc.pop()

        rec(0, [])
        return out

    def identity(self, a):
        objs, _ = self.labels[a]
        return Arrow(a, a, tuple(int(self.category.ident[o]) for o in objs))

    def compose(self, g, f):
        if f.tgt != g.src:
            raise ValueError("arrows not composable")
        c = self.category.comp
        return Arrow(f.src, g.tgt, tuple(int(c[v, u]) for u, v in zip(f.data, g.data)))

    def inverse(self, f):
        return Arrow(f.tgt, f.src, tuple(int(self._inv[u]) for u in f.data))

    def generators(self, a):
        # natural isos that are identities away from one position
        C = self.category
        objs, arrows = self.labels[a]
        for i in range(self.k + 1):
            for z, w in self._isos_from[objs[i]]:
                new_objs = objs[:i] + (z,) + objs[i + 1:]
                new_arrows = list(arrows)
                if i > 0:
                    new_arrows[i - 1] = int(C.comp[w, arrows[i - 1]])
                if i < self.k:
                    new_arrows[i] = int(C.comp[arrows[i], self._inv[w]])
                b = self.index_of((new_objs, tuple(new_arrows)))
                data = tuple(int(C.ident[o]) if j != i else int(w) for j, o in enumerate(objs))
                yield Arrow(a, b, data)


class ProductGroupoid(Groupoid):
    """``A x B`` with ``(a, b)`` at index ``a * |B| + b``; arrow data ``(u, v)``."""

    def __init__(self, A: Groupoid, B: Groupoid):
        super().__init__([(x, y) for x in A.labels for y in B.labels])
        self.A, self.B = A, B
        self.name = f"{A.name} x {B.name}"

    def pair(self, a, b) -> int:
        return a * self.B.n_obj + b

    def split(self, p) -> tuple[int, int]:
        return divmod(p, self.B.n_obj)

    def arrow(self, u: Arrow, v: Arrow) -> Arrow:
        return Arrow(self.pair(u.src, v.src), self.pair(u.tgt, v.tgt), (u, v))

    def hom(self, p, q):
        (a, b), (a2, b2) = self.split(p), self.split(q)
        return [self.arrow(u, v) for u in self.A.hom(a, a2) for v in self.B.hom(b, b2)]

    def identity(self, p):
        a, b = self.split(p)
        return self.arrow(self.A.identity(a), self.B.identity(b))

    def compose(self, g, f):
        return self.arrow(self.A.compose(g.data[0], f.data[0]), self.B.compose(g.data[1], f.data[1]))

    def inverse(self, f):
        return self.arrow(self.A.inverse(f.data[0]), self.B.inverse(f.data[1]))

    def generators(self, p):
        a, b = self.split(p)
        ida, idb = self.A.identity(a), self.B.identity(b)
        for u in self.A.generators(a):
            yield self.arrow(u, idb)
        for v in self.B.generators(b):
            yield self.arrow(ida, v)


class FullSubgroupoid(Groupoid):
    """Full subgroupoid on ``objs``; arrow data is the ambient arrow.

    With ``closed=True`` (a union of components) ambient generators are
    reused; otherwise generators are all arrows inside the subset.
    """

    def __init__(self, G: Groupoid, objs: Sequence[int], closed=True, name=""):
        objs = [int(x) for x in objs]
        super().__init__([G.labels[x] for x in objs])
        self.ambient = G
        self.objs = objs
        self.pos = {x: i for i, x in enumerate(objs)}
        self.closed = closed
        self.name = name or f"sub({G.name})"

    def wrap(self, f: Arrow) -> Arrow:
        return Arrow(self.pos[f.src], self.pos[f.tgt], f)

    def hom(self, a, b):
        return [self.wrap(f) for f in self.ambient.hom(self.objs[a], self.objs[b])]

    def identity(self, a):
        return self.wrap(self.ambient.identity(self.objs[a]))

    def compose(self, g, f):
        return self.wrap(self.ambient.compose(g.data, f.data))

    def inverse(self, f):
        return self.wrap(self.ambient.inverse(f.data))

    def generators(self, a):
        if not self.closed:
            yield from super().generators(a)
            return
        for g in self.ambient.generators(self.objs[a]):
            if g.tgt in self.pos:
                yield self.wrap(g)


@dataclass
class GroupoidFunctor:
    source: Groupoid
    target: Groupoid
    obj: np.ndarray
    mor: Callable[[Arrow], Arrow] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        self.obj = np.asarray(self.obj, dtype=np.int64).reshape(-1)
        if len(self.obj) != self.source.n_obj:
            raise ValueError("object map has the wrong length")

    def __call__(self, f: Arrow) -> Arrow:
        return self.mor(f)

    def then(self, other: "GroupoidFunctor") -> "GroupoidFunctor":
        """``other o self``."""
        m1, m2 = self.mor, other.mor
        return GroupoidFunctor(self.source, other.target, other.obj[self.obj], lambda f: m2(m1(f)),
                               name=f"{other.name} o {self.name}")


def identity_functor(G: Groupoid) -> GroupoidFunctor:
    return GroupoidFunctor(G, G, np.arange(G.n_obj), lambda f: f, name="id")


def functor_differences(F: GroupoidFunctor, G: GroupoidFunctor, limit: int = 1) -> list:
    """Where two parallel functors differ (objects, then generating arrows)."""
    out = []
    diff = np.nonzero(F.obj != G.obj)[0]
    for a in diff[:limit]:
        out.append(("object", int(a)))
    if out:
        return out
    for a in range(F.source.n_obj):
        for g in F.source.generators(a):
            if F.mor(g) != G.mor(g):
                out.append(("arrow", g))
                if len(out) >= limit:
                    return out
    return out


def product_functor(F: GroupoidFunctor, G: GroupoidFunctor, source: ProductGroupoid,
                    target: ProductGroupoid) -> GroupoidFunctor:
    obj = (F.obj[:, None] * target.B.n_obj + G.obj[None, :]).reshape(-1)
    return GroupoidFunctor(source, target, obj, lambda f: target.arrow(F.mor(f.data[0]), G.mor(f.data[1])),
                           name=f"{F.name} x {G.name}")


class PseudoPullback(Groupoid):
    """Iso-comma groupoid of ``F: A -> C`` and ``G: B -> C``.

    Objects are ``(a, b, phi)`` with ``phi: F(a) -> G(b)`` in ``C``; an arrow
    ``(a, b, phi) -> (a', b', phi')`` is a pair ``(u, v)`` with
    ``G(v) phi = phi' F(u)``.
    """

    def __init__(self, F: GroupoidFunctor, G: GroupoidFunctor, name=""):
        if F.target is not G.target:
            raise ValueError("pseudo-pullback needs a cospan with a common target")
        self.F, self.G = F, G
        self.A, self.B, self.C = F.source, G.source, F.target
        C = self.C
        buckets: dict[int, list[int]] = {}
        for b, c in enumerate(G.obj):
            buckets.setdefault(int(c), []).append(b)
        homs: dict[tuple[int, int], list[Arrow]] = {}
        labels = []
        for a, c1 in enumerate(F.obj):
            c1 = int(c1)
            for c2, bs in buckets.items():
                key = (c1, c2)
                hs = homs.get(key)
                if hs is None:
                    hs = homs[key] = C.hom(c1, c2)
                if hs:
                    for b in bs:
                        for phi in hs:
                            labels.append((a, b, phi))
        labels.sort(key=lambda t: (t[0], t[1]))
        super().__init__(labels)
        self.name = name or f"{self.A.name} x^h {self.B.name}"
        self.index_of(labels[0]) if labels else None

    def arrow(self, p: int, q: int, u: Arrow, v: Arrow) -> Arrow:
        return Arrow(p, q, (u, v))

    def hom(self, p, q):
        a, b, phi = self.labels[p]
        a2, b2, phi2 = self.labels[q]
        C, F, G = self.C, self.F, self.G
        out = []
        for u in self.A.hom(a, a2):
            rhs = C.compose(phi2, F.mor(u))
            for v in self.B.hom(b, b2):
                if C.compose(G.mor(v), phi) == rhs:
                    out.append(Arrow(p, q, (u, v)))
        return out

    def identity(self, p):
        a, b, _ = self.labels[p]
        return Arrow(p, p, (self.A.identity(a), self.B.identity(b)))

    def compose(self, g, f):
        if f.tgt != g.src:
            raise ValueError("arrows not composable")
        return Arrow(f.src, g.tgt, (self.A.compose(g.data[0], f.data[0]), self.B.compose(g.data[1], f.data[1])))

    def inverse(self, f):
        return Arrow(f.tgt, f.src, (self.A.inverse(f.data[0]), self.B.inverse(f.data[1])))

    def generators(self, p):
        a, b, phi = self.labels[p]
        C, F, G = self.C, self.F, self.G
        ida, idb = self.A.identity(a), self.B.identity(b)
        for u in self.A.generators(a):
            q = self.index_of((u.tgt, b, C.compose(phi, C.inverse(F.mor(u)))))
            yield Arrow(p, q, (u, idb))
        for v in self.B.generators(b):
            q = self.index_of((a, v.tgt, C.compose(G.mor(v), phi)))
            yield Arrow(p, q, (ida, v))

    def projections(self) -> tuple[GroupoidFunctor, GroupoidFunctor]:
        pa = GroupoidFunctor(self, self.A, [t[0] for t in self.labels], lambda f: f.data[0], name="pr_A")
        pb = GroupoidFunctor(self, self.B, [t[1] for t in self.labels], lambda f: f.data[1], name="pr_B")
        return pa, pb

    def identity_objects(self) -> list[int]:
        """Objects whose comparison iso is an identity (the strict pullback)."""
        C = self.C
        return [p for p, (a, b, phi) in enumerate(self.labels)
                if phi.src == phi.tgt and phi == C.identity(phi.src)]


def pseudo_pullback(F: GroupoidFunctor, G: GroupoidFunctor) -> tuple[PseudoPullback, GroupoidFunctor, GroupoidFunctor]:
    P = PseudoPullback(F, G)
    pa, pb = P.projections()
    return P, pa, pb


def strict_pullback(F: GroupoidFunctor, G: GroupoidFunctor) -> FullSubgroupoid:
    P = PseudoPullback(F, G)
    return FullSubgroupoid(P, P.identity_objects(), closed=False, name=f"{P.A.name} x {P.B.name}")


def pseudo_pullback_map(P: PseudoPullback, Q: PseudoPullback, fA: GroupoidFunctor, fB: GroupoidFunctor,
                        fC: GroupoidFunctor) -> GroupoidFunctor:
    """Functor between pseudo-pullbacks induced by a strict map of cospans."""
    obj = [Q.index_of((int(fA.obj[a]), int(fB.obj[b]), fC.mor(phi))) for a, b, phi in P.labels]
    obj = np.asarray(obj, dtype=np.int64)

    def mor(f):
        u, v = f.data
        return Arrow(int(obj[f.src]), int(obj[f.tgt]), (fA.mor(u), fB.mor(v)))

    return GroupoidFunctor(P, Q, obj, mor, name="induced")


def groupoid_equivalence(F: GroupoidFunctor) -> EquivalenceReport:
    """Decide whether a functor of groupoids is an equivalence.

    Equivalent to the induced map of nerves being a homotopy equivalence:
    bijective on components and on automorphism groups.
    """
    A, B = F.source, F.target
    compA, compB = A.components(), B.components()
    witness: dict = {}
    hit = {int(compB[F.obj[a]]): a for a in range(A.n_obj)}
    es = True
    for b in B.component_reps():
        if b not in hit:
            es = False
            witness["missed_object"] = b
            witness["missed_label"] = repr(B.labels[b])
            break
    full = faithful = True
    seen: dict[int, int] = {}
    for a in A.component_reps():
        cb = int(compB[F.obj[a]])
        if cb in seen:
            full = False
            witness.setdefault("merged_components", (seen[cb], a))
        else:
            seen[cb] = a
        aut = A.automorphisms(a)
        img = [F.mor(u) for u in aut]
        fa = int(F.obj[a])
        if any(g.src != fa or g.tgt != fa for g in img):
            raise ValueError("functor does not respect endpoints")
        if len(set(img)) != len(img):
            faithful = False
            witness.setdefault("not_faithful_at", a)
        if len(set(img)) != len(B.automorphisms(fa)):
            full = False
            witness.setdefault("not_full_at", a)
    return EquivalenceReport(es, full, faithful, witness or None)


@dataclass
class Square:
    """A commutative square ``corner -> top_target``, ``corner -> left_target``.

    ::

        corner --top--> B
          |             |
         left         right
          v             v
          A ---bottom-> C
    """

    top: GroupoidFunctor
    left: GroupoidFunctor
    right: GroupoidFunctor
    bottom: GroupoidFunctor


class NonCommutingSquare(ValueError):
    def __init__(self, msg, witness):
        super().__init__(msg)
        self.witness = witness


@dataclass
class SquareCheckReport:
    essentially_surjective: bool
    full: bool
    faithful: bool
    witness: dict | None = None
    sizes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.essentially_surjective and self.full and self.faithful

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"essentially_surjective": self.essentially_surjective, "full": self.full,
                "faithful": self.faithful, "witness": self.witness, "sizes": self.sizes}


def comparison_functor(sq: Square) -> tuple[GroupoidFunctor, PseudoPullback]:
    """Corner of a strictly commuting square into the pseudo-pullback of its cospan."""
    P = PseudoPullback(sq.bottom, sq.right)
    C = P.C
    left, top = sq.left, sq.top
    obj = np.empty(sq.top.source.n_obj, dtype=np.int64)
    for x in range(len(obj)):
        a, b = int(left.obj[x]), int(top.obj[x])
        obj[x] = P.index_of((a, b, C.identity(int(sq.bottom.obj[a]))))

    def mor(f):
        return Arrow(int(obj[f.src]), int(obj[f.tgt]), (left.mor(f), top.mor(f)))

    return GroupoidFunctor(sq.top.source, P, obj, mor, name="comparison"), P


def check_commutes(sq: Square) -> None:
    lhs = sq.top.then(sq.right)
    rhs = sq.left.then(sq.bottom)
    diff = functor_differences(lhs, rhs)
    if diff:
        raise NonCommutingSquare("square does not commute strictly", {"where": repr(diff[0])})


def homotopy_pullback_check(sq: Square) -> SquareCheckReport:
    """Is the square a homotopy pullback? (comparison into the iso-comma is an equivalence)"""
    if sq.top.source is not sq.left.source or sq.top.target is not sq.right.source \
            or sq.left.target is not sq.bottom.source or sq.right.target is not sq.bottom.target:
        raise ValueError("square functors do not fit together")
    check_commutes(sq)
    cmp, P = comparison_functor(sq)
    rep = groupoid_equivalence(cmp)
    sizes = {"corner": cmp.source.n_obj, "pseudo_pullback": P.n_obj,
             "corner_components": len(cmp.source.component_reps()),
             "pseudo_pullback_components": len(P.component_reps())}
    return SquareCheckReport(rep.essentially_surjective, rep.full, rep.faithful, rep.witness, sizes)
