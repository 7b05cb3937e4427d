"""JSON documents for categories, simplicial sets and groupoid-valued spaces.

Category::

    {"kind": "category", "name": "[1]",
     "objects": ["0", "1"],
     "morphisms": [{"name": "f", "src": "0", "tgt": "1"}],
     "composition": [],            # [g, f, g o f] for composable non-identity pairs
     "inverses": []}               # optional [f, f^-1] pairs, checked when present

Identities are implicit and named ``1_<object>``.

Simplicial set::

    {"kind": "sset", "name": "Delta[1]", "trunc": 2, "sizes": [2, 3, 4],
     "faces": [[[1, 1, 0], [0, 1, 1]], ...],      # levels 1..trunc, d_0..d_k
     "degeneracies": [[[0, 2]], ...]}             # levels 0..trunc-1, s_0..s_k

Space::

    {"kind": "space", "construction": "classifying_diagram", "trunc": 9,
     "category": {...}}                          # or "discrete_nerve"
    {"kind": "space", "construction": "discrete", "sset": {...}}
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from . import fincat as fc
from . import gss
from .fincat import FinCategory
from .sset import FinSimplicialSet


class FormatError(ValueError):
    """Malformed input document; ``where`` is ``(line, column)`` or a JSON path."""

    def __init__(self, msg: str, where=None):
        self.where = where
        if isinstance(where, tuple):
            msg = f"line {where[0]}, column {where[1]}: {msg}"
        elif where:
            msg = f"at {where}: {msg}"
        super().__init__(msg)


def loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, (e.lineno, e.colno)) from None
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("expected an object with a 'kind' field", (1, 1))
    return doc


def dumps(doc: Any) -> str:
    return json.dumps(jsonable(doc), sort_keys=True, indent=2) + "\n"


def jsonable(x: Any) -> Any:
    """Convert reports and witnesses to plain JSON values, deterministically."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.ndarray):
        return [jsonable(v) for v in x.tolist()]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    return repr(x)


def _need(doc: dict, key: str, typ, path: str):
    if key not in doc:
        raise FormatError(f"missing field '{key}'", path or "$")
    val = doc[key]
    if not isinstance(val, typ):
        raise FormatError(f"field '{key}' has the wrong type", f"{path}.{key}")
    return val


# categories ---------------------------------------------------------------------------


def _identity_name(x) -> str:
    return f"1_{x}"


def canonical_category(C: FinCategory) -> FinCategory:
    """Reindex so identities come first (in object order), then the rest in order."""
    ident = [int(i) for i in C.ident]
    rest = [f for f in range(C.n_mor) if f not in set(ident)]
    order = ident + rest
    pos = {f: i for i, f in enumerate(order)}
    comp = np.full((C.n_mor, C.n_mor), fc.NOT_COMPOSABLE, dtype=np.int64)
    for g in range(C.n_mor):
        for f in range(C.n_mor):
            h = C.comp[g, f]
            if h >= 0:
                comp[pos[g], pos[f]] = pos[int(h)]
    return FinCategory(C.n_obj, C.src[order], C.tgt[order], list(range(C.n_obj)), comp, C.obj_labels,
                       [C.mor_labels[f] for f in order], C.name, check=False)


def category_to_doc(C: FinCategory) -> dict:
    C = canonical_category(C)
    objs = [str(x) for x in C.obj_labels]
    if len(set(objs)) != len(objs):
        raise FormatError("object labels are not distinct as strings")
    names = [_identity_name(x) for x in objs] + [str(C.mor_labels[f]) for f in range(C.n_obj, C.n_mor)]
    if len(set(names)) != len(names):
        raise FormatError("morphism labels are not distinct as strings")
    n = C.n_obj
    mors = [{"name": names[f], "src": objs[int(C.src[f])], "tgt": objs[int(C.tgt[f])]} for f in range(n, C.n_mor)]
    comp = [[names[g], names[f], names[int(C.comp[g, f])]]
            for g in range(n, C.n_mor) for f in range(n, C.n_mor) if C.comp[g, f] >= 0]
    inv = C.inverses()
    inverses = [[names[f], names[int(inv[f])]] for f in range(n, C.n_mor) if inv[f] >= 0]
    return {"kind": "category", "name": C.name, "objects": objs, "morphisms": mors, "composition": comp,
            "inverses": inverses}


def category_from_doc(doc: dict, path: str = "") -> FinCategory:
    objs = _need(doc, "objects", list, path)
    if not all(isinstance(x, str) for x in objs) or len(set(objs)) != len(objs):
        raise FormatError("objects must be distinct strings", f"{path}.objects")
    mors = []
    for i, m in enumerate(_need(doc, "morphisms", list, path)):
        where = f"{path}.morphisms[{i}]"
        if not isinstance(m, dict):
            raise FormatError("morphism must be an object", where)
        name, s, t = (_need(m, key, str, where) for key in ("name", "src", "tgt"))
        for end in (s, t):
            if end not in objs:
                raise FormatError(f"unknown object '{end}'", where)
        mors.append((name, s, t))
    names = [m[0] for m in mors] + [_identity_name(x) for x in objs]
    if len(set(names)) != len(names):
        raise FormatError("morphism names must be distinct and differ from identity names", f"{path}.morphisms")
    comp = {}
    for i, row in enumerate(doc.get("composition", [])):
        where = f"{path}.composition[{i}]"
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(v, str) for v in row)):
            raise FormatError("composition entries are [g, f, g o f] name triples", where)
        for v in row:
            if v not in names:
                raise FormatError(f"unknown morphism '{v}'", where)
        comp[(row[0], row[1])] = row[2]
    try:
        C = fc.category(objs, mors, comp, name=doc.get("name", ""), identity_label=_identity_name)
    except fc.CategoryError as e:
        raise FormatError(str(e), path or "$") from None
    if "inverses" in doc:
        pos = {lab: i for i, lab in enumerate(C.mor_labels)}
        inv = C.inverses()
        for i, row in enumerate(doc["inverses"]):
            where = f"{path}.inverses[{i}]"
            if not (isinstance(row, list) and len(row) == 2 and all(v in pos for v in row)):
                raise FormatError("inverse entries are [f, g] morphism names", where)
            if inv[pos[row[0]]] != pos[row[1]]:
                raise FormatError(f"'{row[1]}' is not inverse to '{row[0]}'", where)
    return C


# simplicial sets -------------------------------------------------------------------------


def sset_to_doc(S: FinSimplicialSet) -> dict:
    doc = {"kind": "sset", "name": S.name, "trunc": S.trunc, "sizes": list(S.sizes),
           "faces": [[t.tolist() for t in S.faces[k]] for k in range(1, S.trunc + 1)],
           "degeneracies": [[t.tolist() for t in S.degens[k]] for k in range(S.trunc)]}
    return doc


def sset_from_doc(doc: dict, path: str = "") -> FinSimplicialSet:
    trunc = _need(doc, "trunc", int, path)
    sizes = _need(doc, "sizes", list, path)
    faces = _need(doc, "faces", list, path)
    degens = _need(doc, "degeneracies", list, path)
    if len(sizes) != trunc + 1 or len(faces) != trunc or len(degens) != trunc:
        raise FormatError("sizes/faces/degeneracies do not match trunc", path or "$")
    labels = doc.get("labels")
    try:
        S = FinSimplicialSet(sizes, [[]] + faces, degens + [[]], labels, name=doc.get("name", ""))
    except (ValueError, TypeError) as e:
        raise FormatError(str(e), path or "$") from None
    bad = S.check_identities()
    if bad:
        raise FormatError(f"simplicial identities fail: {bad[0]}", path or "$")
    return S


# spaces ------------------------------------------------------------------------------------


def space_from_doc(doc: dict, trunc: int | None = None, path: str = "") -> gss.GroupoidSimplicialSpace:
    kind = _need(doc, "construction", str, path)
    if kind in ("classifying_diagram", "discrete_nerve"):
        C = category_from_doc(_need(doc, "category", dict, path), f"{path}.category")
        D = trunc if trunc is not None else doc.get("trunc", 7)
        if not isinstance(D, int) or D < 0:
            raise FormatError("trunc must be a natural number", f"{path}.trunc")
        return gss.classifying_diagram(C, D) if kind == "classifying_diagram" else gss.discrete_nerve(C, D)
    if kind == "discrete":
        S = sset_from_doc(_need(doc, "sset", dict, path), f"{path}.sset")
        return gss.discrete_embedding(S)
    raise FormatError(f"unknown construction '{kind}'", f"{path}.construction")


def space_doc(C: FinCategory, construction: str = "classifying_diagram", trunc: int = 7) -> dict:
    return {"kind": "space", "construction": construction, "trunc": trunc, "category": category_to_doc(C)}


def category_dot(C: FinCategory) -> str:
    """Objects as nodes, non-identity morphisms as labelled edges."""
    lines = [f"digraph {json.dumps(C.name or 'C')} {{"]
    for x in C.obj_labels:
        lines.append(f"  {json.dumps(str(x))};")
    for f in range(C.n_mor):
        if C.ident[C.src[f]] == f:
            continue
        s, t = str(C.obj_labels[C.src[f]]), str(C.obj_labels[C.tgt[f]])
        lines.append(f"  {json.dumps(s)} -> {json.dumps(t)} [label={json.dumps(str(C.mor_labels[f]))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
