"""Regenerate the shipped example documents and mutants from the zoo builders.

Run ``python -m refcenter.datagen <dir>`` to rewrite the files; the test
suite compares the shipped copies against this generator.
"""

from __future__ import annotations

import sys
from pathlib import Path

from . import zoo
from .cli import add_module_algebra, build, copy_document, hopf_document
from .hopf import ComoduleData, make_module_algebra
from .tensor import MultilinearMap, Space, zeros
from .textformat import serialize_document

BASE = "Hbar"


def _rebase(h, rf, algebras=()):
    hb = Space(BASE, h.dim, h.space.basis_labels)
    mp = {h.space: hb}
    out = [make_module_algebra(A.algebra, A.haction.retyped(mp).entries, hb, A.name) for A in algebras]
    return h.retyped(hb, BASE), rf.retyped(mp), out


def _grading_coaction(A, h, degree):
    """``a -> a ⊗ g^degree(a)`` for an algebra graded by the grouplikes of ``h``."""
    n = A.dim
    arr = zeros((n, h.dim, n), h.ctx)
    for i in range(n):
        arr[i, degree(i), i] = h.ctx.one
    return ComoduleData((A.space,), MultilinearMap((A.space,), (A.space, h.space), arr, h.ctx), A.name)


def _kmap_tensor(doc, h, A, K):
    doc.add_tensor("K", MultilinearMap((h.space,), (A.space,), K, h.ctx), "K")


def z1_document():
    e = zoo.manifest_entry("z1")
    h, rf, (A,) = _rebase(e.hopf, e.rform, [e.module_algebra("k")])
    doc = hopf_document(h, rf, ["trivial group algebra with trivial r; A = k"])
    add_module_algebra(doc, A, _grading_coaction(A, h, lambda i: 0))
    _kmap_tensor(doc, h, A, zoo.kmap_array(A, {0: {0: 1}}))
    return doc


def z2_document():
    e = zoo.manifest_entry("z2-sign")
    h, rf, (A,) = _rebase(e.hopf, e.rform, [e.module_algebra("A")])
    doc = hopf_document(h, rf, ["kZ/2 with r(g|g) = -1; A = k[y]/(y^2-1) with y.g = -y, y of degree g; K(g) = -1"])
    add_module_algebra(doc, A, _grading_coaction(A, h, lambda i: i))
    _kmap_tensor(doc, h, A, zoo.kmap_array(A, {0: {0: 1}, 1: {0: -1}}))
    return doc


def z4_document():
    e = zoo.manifest_entry("z4-zeta")
    h, rf, (A,) = _rebase(e.hopf, e.rform, [e.module_algebra("A")])
    doc = hopf_document(h, rf, ["kZ/4 with r(g|g) = z; A = k[y]/(y^4-1) with y^j.g^b = (-1)^(jb) y^j; K(g^a) = y^a"])
    add_module_algebra(doc, A, _grading_coaction(A, h, lambda i: i))
    _kmap_tensor(doc, h, A, dict(e.kmaps)["A"])
    return doc


def sweedler_document(param_index=1):
    e = zoo.manifest_entry("sweedler")
    h, rf, (A,) = _rebase(e.hopf, e.rforms[param_index], [e.module_algebra("adj")])
    lam = zoo.SWEEDLER_SAMPLE_PARAMS[param_index]
    doc = hopf_document(h, rf, [f"Sweedler H4 with r(x|x) = {lam}; A = H4 with the adjoint action"])
    add_module_algebra(doc, A)
    return doc


def _mutant(doc, note):
    out = copy_document(doc)
    out.notes = [note]
    return out


def mutant_corrupted_comul():
    doc = _mutant(z2_document(), "mutant suite=hopf target=coalgebra.counit_left: comul(g) = g (x) 1")
    D = doc.tensors["comul"].entries
    D[1, 1, 1] = doc.ctx.zero
    D[1, 0, 1] = doc.ctx.one
    del doc.roles["antipode"], doc.tensors["antipode"]
    return doc


def mutant_r_gg_2():
    doc = _mutant(z2_document(), "mutant suite=rform target=hexagon_1,hexagon_2: r(g|g) = 2")
    doc.tensors["r"].entries[0, 1, 1] = doc.ctx(2)
    del doc.roles["r_inv"], doc.tensors["r_inv"]
    return doc


def mutant_kmap_g_2():
    doc = _mutant(z2_document(), "mutant suite=kmap target=eq2: K(g) = 2")
    doc.tensors["K"].entries[0, 1] = doc.ctx(2)
    return doc


def mutant_sigma_sign():
    doc = _mutant(build("twisted", z4_document()), "mutant suite=twisted target=associativity: sigma(g (x) y) sign flipped")
    S = doc.tensors["sigma"].entries
    # sigma[a', b', b, a]: the g (x) y -> y (x) g coefficient
    S[1, 1, 1, 1] = -S[1, 1, 1, 1]
    for role in ("twisted_mul", "twisted_unit"):
        del doc.roles[role], doc.tensors[role]
    return doc


def shipped_documents():
    return {
        "z1.txt": z1_document(),
        "z2-sign.txt": z2_document(),
        "z4-zeta.txt": z4_document(),
        "sweedler.txt": sweedler_document(),
        "mutants/corrupted-comul.txt": mutant_corrupted_comul(),
        "mutants/r-gg-2.txt": mutant_r_gg_2(),
        "mutants/kmap-g-2.txt": mutant_kmap_g_2(),
        "mutants/sigma-sign.txt": mutant_sigma_sign(),
    }


def write_all(root):
    root = Path(root)
    for name, doc in shipped_documents().items():
        p = root / name
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(serialize_document(doc), encoding="utf-8")


if __name__ == "__main__":
    write_all(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).parent / "data")
