"""Command-line driver: verify structure-constant files, build derived structures, run demos.

Exit status is 0 when every check passes, 1 when some check fails and 2 on
usage, parse or typing errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from importlib import resources

from . import braided_module as bm
from . import reflective as rfl
from . import transmutation as tm
from . import zoo
from .hopf import (
    ComoduleData,
    HopfData,
    ModuleAlgebraData,
    NotAHopfAlgebra,
    NotInvertible,
    check_hopf,
    check_module_algebra,
    check_rform,
    make_algebra,
    make_coalgebra,
    make_module_algebra,
    rform_from_array,
)
from .report import Report
from .tensor import UNIT, TypeMismatch, transposition
from .textformat import ParseError, SpecDocument, check_spaces, load_document, parse_document, serialize_document

SUITES = ("hopf", "rform", "module-algebra", "transmutation", "kmap", "reflective", "twisted")
BUILDS = ("transmute", "reflective", "twisted")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- document -> data

def hopf_from_doc(doc: SpecDocument) -> HopfData:
    mul = doc.role("mul")
    H = mul.codomain[0]
    check_spaces(doc, "mul", ((H, H), (H,)))
    check_spaces(doc, "unit", ((UNIT,), (H,)))
    check_spaces(doc, "comul", ((H,), (H, H)))
    check_spaces(doc, "counit", ((H,), (UNIT,)))
    ctx = doc.ctx
    alg = make_algebra(H, mul.entries, doc.role("unit").entries.reshape(-1), ctx)
    coalg = make_coalgebra(H, doc.role("comul").entries, doc.role("counit").entries.reshape(-1), ctx)
    S = None
    if doc.has("antipode"):
        S = check_spaces(doc, "antipode", ((H,), (H,)))
    return HopfData(alg, coalg, S, H.name)


def rform_from_doc(doc: SpecDocument, h: HopfData):
    H = h.space
    R = check_spaces(doc, "r", ((H, H), (UNIT,))).entries
    Rinv = None
    if doc.has("r_inv"):
        Rinv = check_spaces(doc, "r_inv", ((H, H), (UNIT,))).entries
    return rform_from_array(h, R.reshape(h.dim, h.dim), None if Rinv is None else Rinv.reshape(h.dim, h.dim))


def algebra_from_doc(doc: SpecDocument, prefix="a"):
    mul = doc.role(f"{prefix}_mul")
    A = mul.codomain[0]
    check_spaces(doc, f"{prefix}_mul", ((A, A), (A,)))
    check_spaces(doc, f"{prefix}_unit", ((UNIT,), (A,)))
    return make_algebra(A, mul.entries, doc.role(f"{prefix}_unit").entries.reshape(-1), doc.ctx)


def module_algebra_from_doc(doc: SpecDocument, h: HopfData) -> ModuleAlgebraData:
    alg = algebra_from_doc(doc)
    A = alg.space
    act = check_spaces(doc, "a_act", ((A, h.space), (A,)))
    return make_module_algebra(alg, act.entries, h.space, A.name)


def coaction_from_doc(doc: SpecDocument, h: HopfData) -> ComoduleData:
    A = doc.role("a_mul").codomain[0]
    delta = check_spaces(doc, "a_coaction", ((A,), (A, h.space)))
    return ComoduleData((A,), delta, A.name)


def transmutation_from_doc(doc: SpecDocument):
    base = hopf_from_doc(doc).with_antipode()
    rf = rform_from_doc(doc, base)
    t = tm.transmute(base, rf)
    H, Hb = t.space, t.hbar
    given = {
        "bullet": ((H, H), (H,)),
        "coad": ((H,), (H, Hb)),
        "hit": ((H, Hb), (H,)),
        "braided_antipode": ((H,), (H,)),
    }
    changes = {role: check_spaces(doc, role, typ) for role, typ in given.items() if doc.has(role)}
    return dataclasses.replace(t, **changes) if changes else t


# ---------------------------------------------------------------- data -> document

def _put(doc, name, m, role=None):
    doc.add_tensor(name, m, role or name)


def hopf_document(h: HopfData, rf=None, notes=()) -> SpecDocument:
    doc = SpecDocument(h.ctx, notes=list(notes))
    doc.add_space(h.space)
    _put(doc, "mul", h.algebra.mul)
    _put(doc, "unit", h.algebra.unit)
    _put(doc, "comul", h.coalgebra.comul)
    _put(doc, "counit", h.coalgebra.counit)
    if h.antipode is not None:
        _put(doc, "antipode", h.antipode)
    if rf is not None:
        _put(doc, "r", rf.r)
        _put(doc, "r_inv", rf.r_inv)
    return doc


def add_module_algebra(doc: SpecDocument, A: ModuleAlgebraData, coaction: ComoduleData | None = None):
    _put(doc, "a_mul", A.algebra.mul)
    _put(doc, "a_unit", A.algebra.unit)
    _put(doc, "a_act", A.haction)
    if coaction is not None:
        _put(doc, "a_coaction", coaction.coaction)
    return doc


def add_transmutation(doc: SpecDocument, t):
    _put(doc, "bullet", t.bullet)
    _put(doc, "coad", t.coad)
    _put(doc, "hit", t.hit)
    if t.braided_antipode is not None:
        _put(doc, "braided_antipode", t.braided_antipode)
    return doc


def copy_document(doc: SpecDocument) -> SpecDocument:
    return parse_document(serialize_document(doc), doc.source)


# ---------------------------------------------------------------- suites

def _guard(rep: Report, name, fn):
    """Run ``fn``; structural exceptions become a failed check rather than a crash."""
    try:
        return fn()
    except (NotAHopfAlgebra, NotInvertible, bm.InvalidKMap) as exc:
        rep.add(name, False, detail=str(exc))
        return None


def suite_hopf(doc):
    return check_hopf(hopf_from_doc(doc))


def suite_rform(doc):
    rep = Report("rform suite")
    h = hopf_from_doc(doc)
    rep.extend(check_hopf(h), "hopf.")
    rf = _guard(rep, "rform.invertible", lambda: rform_from_doc(doc, h.with_antipode()))
    if rf is not None:
        rep.extend(check_rform(h, rf), "rform.")
    return rep


def suite_module_algebra(doc):
    rep = Report("module-algebra suite")
    h = hopf_from_doc(doc)
    rep.extend(check_hopf(h), "hopf.")
    rep.extend(check_module_algebra(module_algebra_from_doc(doc, h), h), "module_algebra.")
    return rep


def suite_transmutation(doc):
    rep = Report("transmutation suite")
    t = _guard(rep, "transmute", lambda: transmutation_from_doc(doc))
    if t is None:
        return rep
    probes = zoo.probe_set(t.base, t.coad_comodule)
    rep.extend(check_transmutation_safe(t, probes))
    return rep


def check_transmutation_safe(t, probes):
    rep = Report("transmutation")
    try:
        rep.extend(tm.check_transmutation(t, probes))
    except NotAHopfAlgebra as exc:
        rep.add("antipode.exists", False, detail=str(exc))
    return rep


def suite_kmap(doc):
    rep = Report("kmap suite")
    h = hopf_from_doc(doc).with_antipode()
    rf = rform_from_doc(doc, h)
    A = module_algebra_from_doc(doc, h)
    K = check_spaces(doc, "K", ((h.space,), (A.space,)))
    k = _guard(rep, "kmap.valid", lambda: bm.make_kmap(K, A, h))
    if k is not None:
        rep.extend(bm.check_reflective_structure(k, A, h, rf), "reflective_structure.")
    return rep


def suite_reflective(doc):
    rep = Report("reflective suite")
    t = transmutation_from_doc(doc)
    A = module_algebra_from_doc(doc, t.base)
    s = rfl.reflective_algebra(t, A)
    rep.extend(rfl.check_smash(s, t.base), "smash.")
    rep.extend(bm.check_reflective_structure(s.embedded_kmap, s.module_algebra, t.base, t.rform), "canonical_kmap.")
    S = s.space
    for role, mine, typ in (
        ("smash_mul", s.underlying.mul, ((S, S), (S,))),
        ("smash_unit", s.underlying.unit, ((UNIT,), (S,))),
        ("smash_act", s.haction, ((S, t.hbar), (S,))),
        ("smash_K", s.embedded_kmap.k, ((t.hbar,), (S,))),
    ):
        if doc.has(role):
            rep.compare(f"input.{role}", check_spaces(doc, role, typ), mine)
    return rep


def twisted_from_doc(doc, check=False):
    A = algebra_from_doc(doc, "a")
    if doc.has("b_mul"):
        B = algebra_from_doc(doc, "b")
        if doc.has("sigma"):
            sigma = check_spaces(doc, "sigma", ((B.space, A.space), (A.space, B.space)))
        else:
            sigma = transposition(B.space, A.space, doc.ctx)
        return rfl.twisted_product(A, B, sigma, check=check)
    t = transmutation_from_doc(doc)
    coaction = coaction_from_doc(doc, t.base)
    return rfl.central_twisted_product(A, coaction, t, check=check)


def suite_twisted(doc):
    rep = Report("twisted suite")
    tp = twisted_from_doc(doc)
    rep.extend(rfl.check_twisted(tp), "twisted.")
    if doc.has("twisted_mul"):
        rep.compare("input.twisted_mul", check_spaces(doc, "twisted_mul", ((tp.space, tp.space), (tp.space,))),
                    tp.underlying.mul)
    return rep


SUITE_FUNCS = {
    "hopf": suite_hopf,
    "rform": suite_rform,
    "module-algebra": suite_module_algebra,
    "transmutation": suite_transmutation,
    "kmap": suite_kmap,
    "reflective": suite_reflective,
    "twisted": suite_twisted,
}


def run_suite(suite: str, doc: SpecDocument) -> Report:
    if suite not in SUITE_FUNCS:
        raise UsageError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    rep = SUITE_FUNCS[suite](doc)
    rep.title = f"{suite} on {doc.source or '<input>'}"
    return rep


# ---------------------------------------------------------------- builds

def build(what: str, doc: SpecDocument) -> SpecDocument:
    out = copy_document(doc)
    out.source = None
    if what == "transmute":
        add_transmutation(out, transmutation_from_doc(doc))
    elif what == "reflective":
        t = transmutation_from_doc(doc)
        s = rfl.reflective_algebra(t, module_algebra_from_doc(doc, t.base))
        _put(out, "smash_mul", s.underlying.mul)
        _put(out, "smash_unit", s.underlying.unit)
        _put(out, "smash_act", s.haction)
        _put(out, "smash_K", s.embedded_kmap.k)
    elif what == "twisted":
        tp = twisted_from_doc(doc, check=True)
        if not doc.has("b_mul"):
            _put(out, "b_mul", tp.B.mul)
            _put(out, "b_unit", tp.B.unit)
        _put(out, "sigma", tp.half_braiding_used)
        _put(out, "twisted_mul", tp.underlying.mul)
        _put(out, "twisted_unit", tp.underlying.unit)
    else:
        raise UsageError(f"unknown build {what!r}; choose from {', '.join(BUILDS)}")
    return out


# ---------------------------------------------------------------- shipped data and demos

def data_path(name):
    return resources.files("refcenter") / "data" / name


def load_shipped(name) -> SpecDocument:
    p = data_path(name)
    return parse_document(p.read_text(encoding="utf-8"), source=name)


DEMOS = {"z1": "z1.txt", "z2-sign": "z2-sign.txt", "z4-zeta": "z4-zeta.txt", "sweedler": "sweedler.txt"}


def demo(name: str) -> Report:
    """load, verify H̄, transmute, verify H, build A[H], verify K(h) = h#1."""
    if name not in DEMOS:
        raise UsageError(f"unknown demo {name!r}; available: {', '.join(DEMOS)}")
    doc = load_shipped(DEMOS[name])
    rep = Report(f"demo {name}")
    rep.extend(suite_rform(doc), "base.")
    t = transmutation_from_doc(doc)
    probes = zoo.probe_set(t.base, t.coad_comodule)
    rep.extend(check_transmutation_safe(t, probes), "transmutation.")
    A = module_algebra_from_doc(doc, t.base)
    s = rfl.reflective_algebra(t, A)
    rep.extend(rfl.check_smash(s, t.base), "reflective.")
    rep.extend(bm.check_reflective_structure(s.embedded_kmap, s.module_algebra, t.base, t.rform), "kmap.")
    return rep


# ---------------------------------------------------------------- entry point

def _emit(rep: Report, fmt: str, path=None):
    text = json.dumps(rep.as_dict(), indent=2) + "\n" if fmt == "structured" else rep.text() + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def make_parser():
    p = argparse.ArgumentParser(prog="refcenter", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    v = sub.add_parser("verify", help="run a verification suite on a document")
    v.add_argument("--suite", required=True, choices=SUITES)
    v.add_argument("--in", dest="input", required=True)
    v.add_argument("--report")
    v.add_argument("--format", choices=("text", "structured"), default="text")
    b = sub.add_parser("build", help="construct a derived structure")
    b.add_argument("--what", required=True, choices=BUILDS)
    b.add_argument("--in", dest="input", required=True)
    b.add_argument("--out", required=True)
    d = sub.add_parser("demo", help="end-to-end pipeline on a shipped example")
    d.add_argument("name")
    d.add_argument("--format", choices=("text", "structured"), default="text")
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.cmd == "verify":
            rep = run_suite(args.suite, load_document(args.input))
            _emit(rep, args.format, args.report)
            if args.report:
                sys.stdout.write(rep.text().splitlines()[-1] + "\n")
            return 0 if rep.ok else 1
        if args.cmd == "build":
            out = build(args.what, load_document(args.input))
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(serialize_document(out))
            return 0
        rep = demo(args.name)
        _emit(rep, args.format)
        return 0 if rep.ok else 1
    except (ParseError, TypeMismatch, UsageError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (rfl.AssocFailure, rfl.NotComoduleAlgebra) as exc:
        sys.stderr.write(f"error: {exc}\n")
        if exc.report is not None:
            sys.stderr.write(exc.report.text() + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
