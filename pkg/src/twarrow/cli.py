"""Command line front end: twist objects, run check suites, export graphs and reports.

Inputs are JSON documents (see ``twarrow.formats``) or ``fixture:<name>`` for
a built-in category or simplicial set.  Exit status is 0 when every check
passes, 1 when a check fails and 2 for unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Callable

from . import __version__
from . import bisset as bs
from . import fincat as fc
from . import fixtures
from . import formats as fm
from . import gss
from . import sset as ss
from .sset import TruncationError

SUITES = ("boundary-mono", "corner-mono", "segal", "complete", "hoequiv-pullback", "fw-equiv", "left-fib",
          "fiber-slice")
DEFAULT_N_MAX, DEFAULT_K_MAX, DEFAULT_TRUNC = 4, 9, 7
CONVENTIONS = {
    "projection": "Tw W -> W^op x W; the first factor carries the source of a twisted arrow",
    "fibre": "taken over {x} x W, so fibres compare with under-categories x/C",
    "segal": "inductive: W_n -> W_{n-1} x^h_{W_0} W_1",
}


class UsageError(Exception):
    pass


# input ------------------------------------------------------------------------------


def read_input(path: str) -> dict:
    """Load a document from a file, ``-`` for stdin, or ``fixture:<name>``."""
    if path.startswith("fixture:"):
        name = path[len("fixture:"):]
        cats = fixtures.categories()
        if name in cats:
            return fm.category_to_doc(cats[name])
        sets = fixtures.ssets()
        if name in sets:
            return fm.sset_to_doc(sets[name])
        raise UsageError(f"unknown fixture '{name}'")
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    return fm.loads(text)


def load_space(doc: dict, args, need: int) -> gss.GroupoidSimplicialSpace:
    """A space from a category, space or sset document with at least ``need`` levels."""
    kind = doc["kind"]
    explicit = args.trunc is not None
    if kind == "category":
        doc = {"kind": "space", "construction": args.space, "category": doc}
    elif kind == "sset":
        doc = {"kind": "space", "construction": "discrete", "sset": doc}
    elif kind != "space":
        raise fm.FormatError(f"unknown kind '{kind}'", "$.kind")
    trunc = args.trunc if explicit else max(doc.get("trunc", DEFAULT_TRUNC), need)
    W = fm.space_from_doc(doc, trunc)
    if W.trunc < need:
        raise TruncationError(f"suite needs truncation {need}, input has {W.trunc}")
    if doc.get("construction") == "discrete" and explicit and W.trunc > trunc:
        W = W.truncate(trunc)
    return W


# check suites ------------------------------------------------------------------------


def _check(name: str, ok, details: dict) -> dict:
    return {"name": name, "ok": bool(ok), "details": details}


def suite_boundary_mono(args) -> list[dict]:
    out = []
    for n in range(args.n_max + 1):
        f = bs.dtw_boundary(n).canonical_map(args.k_max, 0)
        ok, witness = bs.is_levelwise_injective(f, args.k_max)
        sizes = [int(s) for s in f.source.sizes[:, 0]]
        out.append(_check(f"boundary-mono n={n}", ok, {"levels": sizes, "witness": witness}))
    return out


def suite_corner_mono(args) -> list[dict]:
    out = []
    for k in range(args.n_max + 1):
        f = bs.corner_object(k).canonical_map(args.k_max, 0)
        ok, witness = bs.is_levelwise_injective(f, args.k_max)
        out.append(_check(f"corner-mono k={k}", ok, {"attaching": bs.attaching_pattern(k), "witness": witness}))
    return out


def suite_segal(args, W) -> list[dict]:
    base = gss.segal_check(W, min(args.n_max, W.trunc))
    tw = gss.segal_check(gss.tw_space(W), args.n_max)
    return [_check(f"segal {W.name}", base.ok, base.as_dict()),
            _check(f"segal Tw({W.name})", tw.ok, tw.as_dict())]


def suite_complete(args, W) -> list[dict]:
    base = gss.completeness_check(W)
    tw = gss.completeness_check(gss.tw_space(W))
    return [_check(f"complete {W.name}", base.ok, base.as_dict()),
            _check(f"complete Tw({W.name})", tw.ok, tw.as_dict())]


def suite_hoequiv_pullback(args, W) -> list[dict]:
    r = gss.tw_hoequiv_pullback_check(W)
    details = {**r.as_dict(), "tested": "both directions: a twisted arrow is invertible iff both outer edges are"}
    return [_check(f"hoequiv-pullback {W.name}", r.ok, details)]


def suite_fw_equiv(args, W) -> list[dict]:
    res = gss.f_w_functor(W)
    found = gss.ho_tw_equivalent(res)
    sizes = {"ho_tw_objects": res.ho_tw.category.n_obj, "tw_ho_objects": res.tw_ho.n_obj}
    return [_check(f"fw-equiv {W.name}", res.report.ok, {**res.report.as_dict(), **sizes}),
            _check(f"searched-equiv {W.name}", found is not None, sizes)]


def suite_left_fib(args, W) -> list[dict]:
    p = gss.twisted_projection_space(W)
    r = gss.left_fibration_check(p, args.n_max)
    return [_check(f"left-fib {W.name}", r.ok and r.agree, r.as_dict())]


def suite_fiber_slice(args, W) -> list[dict]:
    ho = gss.ho_category(W).category
    p = gss.twisted_projection_space(W)
    out = []
    for x in range(W.levels[0].n_obj):
        F, _ = gss.fiber_at(p, x, D=3)
        fib = gss.ho_category(F).category
        under, _ = fc.under_category(ho, x)
        eq = fc.find_equivalence(fib, under)
        out.append(_check(f"fiber-slice {W.name} at {W.levels[0].labels[x]}", eq is not None,
                          {"fiber_objects": fib.n_obj, "under_objects": under.n_obj}))
    return out


SPACE_SUITES: dict[str, tuple[Callable, Callable]] = {
    "segal": (suite_segal, lambda a: 2 * a.n_max + 1),
    "complete": (suite_complete, lambda a: 7),
    "hoequiv-pullback": (suite_hoequiv_pullback, lambda a: 7),
    "fw-equiv": (suite_fw_equiv, lambda a: 7),
    "left-fib": (suite_left_fib, lambda a: 2 * a.n_max + 1),
    "fiber-slice": (suite_fiber_slice, lambda a: 7),
}


def run_check(args) -> tuple[dict, bool]:
    t0 = time.perf_counter()
    if args.suite == "corner-mono":
        args.n_max = 3 if args.n_max is None else args.n_max
        args.k_max = 7 if args.k_max is None else args.k_max
    args.n_max = DEFAULT_N_MAX if args.n_max is None else args.n_max
    args.k_max = DEFAULT_K_MAX if args.k_max is None else args.k_max
    if args.n_max < 0 or args.k_max < 0:
        raise UsageError("bounds must be natural numbers")
    if args.suite == "boundary-mono":
        checks = suite_boundary_mono(args)
    elif args.suite == "corner-mono":
        checks = suite_corner_mono(args)
    else:
        if args.input is None:
            raise UsageError(f"suite '{args.suite}' needs an input")
        run, need = SPACE_SUITES[args.suite]
        W = load_space(read_input(args.input), args, need(args))
        checks = run(args, W)
    ok = all(c["ok"] for c in checks)
    report = {"tool": "twarrow", "version": __version__, "ok": ok, "checks": checks, "conventions": CONVENTIONS,
              "command": {"verb": "check", "suite": args.suite, "input": args.input, "n_max": args.n_max,
                          "k_max": args.k_max, "trunc": args.trunc, "space": args.space}}
    if args.timing:
        report["seconds"] = round(time.perf_counter() - t0, 3)
    return report, ok


def report_text(report: dict) -> str:
    lines = [f"{'PASS' if c['ok'] else 'FAIL'} {c['name']}" for c in report["checks"]]
    lines.append(f"{'PASS' if report['ok'] else 'FAIL'} overall ({len(report['checks'])} checks)")
    return "\n".join(lines) + "\n"


# tw and export ------------------------------------------------------------------------


def _tw_category_doc(C: fc.FinCategory) -> dict:
    T, proj = fc.tw_cat(C)
    names = [str(m) for m in C.mor_labels]
    quads = list(T.mor_labels)
    labels = [f"({names[k]}, {names[h]}): {names[g]} -> {names[g2]}" for g, g2, k, h in quads]
    T = fc.FinCategory(T.n_obj, T.src, T.tgt, T.ident, T.comp, names, labels, f"Tw({C.name})", check=False)
    doc = fm.category_to_doc(T)
    objs = [str(x) for x in C.obj_labels]
    doc["projection"] = {"objects": {names[g]: [objs[int(C.src[g])], objs[int(C.tgt[g])]] for g in range(C.n_mor)},
                         "morphisms": {labels[m]: [names[k], names[h]]
                                       for m, (_, _, k, h) in enumerate(quads)
                                       if T.ident[T.src[m]] != m}}
    return doc


def run_tw(args) -> dict:
    doc = read_input(args.input)
    if doc["kind"] == "category":
        return _tw_category_doc(fm.category_from_doc(doc))
    if doc["kind"] != "sset":
        raise fm.FormatError(f"cannot twist a document of kind '{doc['kind']}'", "$.kind")
    S = fm.sset_from_doc(doc)
    if args.left:
        return fm.sset_to_doc(bs.tw_left_sset(S, args.trunc))
    p = ss.tw_projection(S, args.trunc)
    out = fm.sset_to_doc(p.source)
    out["projection"] = [[[int(c) // S.sizes[n], int(c) % S.sizes[n]] for c in comp]
                         for n, comp in enumerate(p.components)]
    return out


def run_export(args) -> str:
    doc = read_input(args.input)
    kind = doc["kind"]
    if kind == "category":
        C = fm.category_from_doc(doc)
        if args.format == "dot":
            return fm.category_dot(C)
        inv = C.inverses()
        summary = {"objects": C.n_obj, "morphisms": C.n_mor, "isomorphisms": int((inv >= 0).sum()),
                   "groupoid": C.is_groupoid(), "iso_classes": len(set(int(c) for c in C.iso_classes()))}
    elif kind == "sset":
        if args.format == "dot":
            raise UsageError("dot export is for categories and spaces")
        S = fm.sset_from_doc(doc)
        summary = {"sizes": list(S.sizes), "nondegenerate": [len(S.nondegenerate(k)) for k in range(S.trunc + 1)]}
    elif kind == "space":
        W = fm.space_from_doc(doc, args.trunc)
        if args.format == "dot":
            return fm.category_dot(gss.ho_category(W).category)
        seg = gss.segal_check(W, min(args.n_max or DEFAULT_N_MAX, W.trunc))
        summary = {"sizes": W.sizes(), "components": [len(G.component_reps()) for G in W.levels],
                   "segal": seg.ok}
    else:
        raise fm.FormatError(f"unknown kind '{kind}'", "$.kind")
    return fm.dumps({"tool": "twarrow", "version": __version__, "kind": kind, "name": doc.get("name", ""),
                     "summary": summary})


# entry point ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twarrow", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"twarrow {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True)

    tw = sub.add_parser("tw", help="twisted arrow category or simplicial set, with projection")
    tw.add_argument("input")
    tw.add_argument("--trunc", type=int, default=None, help="levels of the output (default: all available)")
    tw.add_argument("--left", action="store_true", help="left adjoint twist of a simplicial set")
    tw.add_argument("--out", default=None)

    ck = sub.add_parser("check", help="run a check suite")
    ck.add_argument("suite", choices=SUITES)
    ck.add_argument("input", nargs="?", default=None)
    ck.add_argument("--n-max", "--n", dest="n_max", type=int, default=None)
    ck.add_argument("--k-max", "--k", dest="k_max", type=int, default=None)
    ck.add_argument("--trunc", type=int, default=None)
    ck.add_argument("--space", choices=("classifying_diagram", "discrete_nerve"), default="classifying_diagram",
                    help="space built from a category input")
    ck.add_argument("--format", choices=("json", "text"), default="json")
    ck.add_argument("--timing", action="store_true", help="include wall-clock seconds in the report")
    ck.add_argument("--out", default=None)

    ex = sub.add_parser("export", help="DOT graph or JSON summary")
    ex.add_argument("input")
    ex.add_argument("--format", choices=("dot", "json-report"), default="dot")
    ex.add_argument("--trunc", type=int, default=None)
    ex.add_argument("--n-max", dest="n_max", type=int, default=None)
    ex.add_argument("--out", default=None)
    return ap


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "tw":
            _emit(fm.dumps(run_tw(args)), args.out)
            return 0
        if args.verb == "export":
            _emit(run_export(args), args.out)
            return 0
        report, ok = run_check(args)
        _emit(report_text(report) if args.format == "text" else fm.dumps(report), args.out)
        return 0 if ok else 1
    except (fm.FormatError, UsageError, TruncationError, gss.NotSegalError, fc.CategoryError) as e:
        print(f"twarrow: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
