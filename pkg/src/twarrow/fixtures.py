"""Small named categories, simplicial sets and spaces used by tests, demos and the CLI."""

from __future__ import annotations

from . import bisset as bs
from . import delta as dl
from . import fincat as fc
from . import gss
from . import sset as ss


def categories() -> dict[str, fc.FinCategory]:
    return {
        "terminal": fc.terminal(),
        "[1]": fc.chain(1),
        "[2]": fc.chain(2),
        "[3]": fc.chain(3),
        "V": fc.poset(["a", "b", "c"], [("a", "b"), ("a", "c")], name="V"),
        "cospan": fc.poset(["a", "b", "c"], [("a", "c"), ("b", "c")], name="cospan"),
        "diamond": fc.poset(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("a", "d")],
                            name="diamond"),
        "disc2": fc.discrete(2),
        "J": fc.walking_iso(),
        "idem": fc.idempotent_monoid(),
        "Z/2": fc.cyclic_group(2),
        "parallel": fc.parallel_pair(),
    }


# the heavier spaces are built from this subset
SPACE_CATEGORIES = tuple(categories())


def ssets(D: int = 5) -> dict[str, ss.FinSimplicialSet]:
    out = {f"Delta[{n}]": ss.standard_simplex(n, D) for n in range(4)}
    out["dDelta[2]"] = ss.boundary(2, D)[0]
    out["dDelta[3]"] = ss.boundary(3, D)[0]
    out["Delta[1]+Delta[1]"] = ss.coproduct([ss.standard_simplex(1, D), ss.standard_simplex(1, D)])[0]
    out["empty"] = ss.empty(D)
    out["spine"] = spine_sset(D)
    for name in ("[1]", "J", "idem", "Z/2", "parallel", "V"):
        out[f"N({name})"] = ss.nerve(categories()[name], D)
    return out


def segal_spaces(D: int = 9, names=SPACE_CATEGORIES) -> dict[str, gss.GroupoidSimplicialSpace]:
    """Classifying diagrams and discrete nerves; all are Segal."""
    cats = categories()
    out = {}
    for name in names:
        out[f"class:{name}"] = gss.classifying_diagram(cats[name], D)
        out[f"disc:{name}"] = gss.discrete_nerve(cats[name], D)
    return out


def spine_presentation() -> bs.CellComplexPresentation:
    """Two edges, the end of the first glued to the start of the second."""
    z = dl.identity(0)
    rel = bs.Relation((0, 0), (0, dl.face(1, 0), z), (1, dl.face(1, 1), z))
    return bs.CellComplexPresentation([(1, 0), (1, 0)], [rel], name="spine")


def spine_sset(D: int = 3) -> ss.FinSimplicialSet:
    """``Delta[1]`` glued to ``Delta[1]`` end to start; not the nerve of a category."""
    out = spine_presentation().evaluate(D, 0).bisset.rows[0]
    out.name = "spine"
    return out
