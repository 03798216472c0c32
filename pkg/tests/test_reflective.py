import functools
import itertools

import numpy as np
import pytest

from refcenter import braided_module as bm
from refcenter import hopf, zoo
from refcenter import reflective as rfl
from refcenter.cli import coaction_from_doc, load_shipped, module_algebra_from_doc, transmutation_from_doc
from refcenter.scalar import FieldCtx
from refcenter.tensor import MultilinearMap, identity, transposition

from conftest import entry, transmuted

Q = FieldCtx(1)


@functools.lru_cache(maxsize=None)
def shipped(name):
    """``(t, A, coaction)`` from a shipped document, all over the same spaces."""
    doc = load_shipped(name)
    t = transmutation_from_doc(doc)
    return t, module_algebra_from_doc(doc, t.base), coaction_from_doc(doc, t.base)


def assoc_oracle(M):
    """Brute-force associativity over all basis triples."""
    n = M.shape[0]
    for a, b, c in itertools.product(range(n), repeat=3):
        for o in range(n):
            lhs = sum((M[p, a, b] * M[o, p, c] for p in range(n)), Q.zero)
            rhs = sum((M[p, b, c] * M[o, a, p] for p in range(n)), Q.zero)
            if lhs != rhs:
                return False
    return True


def times(s, x, y):
    """Product of two basis labels of a smash algebra as ``{label: str}``."""
    L = s.space.basis_labels
    v = s.product(s.underlying.element(x), s.underlying.element(y))
    return {L[i]: str(c) for i, c in enumerate(v) if c}


# ---------------------------------------------------------------- smash products

def test_smash_over_trivial_comodule_algebra():
    t, A, _ = shipped("z2-sign.txt")
    k = hopf.ground_algebra(Q, "k")
    triv = hopf.ComoduleData((k.space,), hopf.trivial_comodule(t.base, "k").coaction, "k")
    s = rfl.generalized_smash(k, triv, A, t.base)
    assert (s.underlying.M == A.algebra.M).all()


def test_smash_with_ground_module_algebra():
    t = transmuted("sweedler", 1)
    k = zoo.trivial_module_algebra(t.base)
    s = rfl.generalized_smash(t.algebra, t.coad_comodule, k, t.base)
    assert (s.underlying.M == t.B).all()


def test_smash_z2_sign_flip():
    t, A, _ = shipped("z2-sign.txt")
    s = rfl.generalized_smash(t.algebra, t.coad_comodule, A, t.base)
    assert s.dim == 4 and assoc_oracle(s.underlying.M)


def test_not_comodule_algebra():
    t, A, co = shipped("z2-sign.txt")
    with pytest.raises(rfl.NotComoduleAlgebra):
        rfl.generalized_smash(A.algebra, bad_coaction(t, A), A, t.base)


def bad_coaction(t, A):
    # y -> y⊗1 + y⊗g is not multiplicative
    D = np.full((2, 2, 2), Q.zero, dtype=object)
    D[0, 0, 0] = Q.one
    D[1, 0, 1] = D[1, 1, 1] = Q.one
    return hopf.make_comodule((A.space,), D, Q, t.hbar, "bad")


# ---------------------------------------------------------------- A[H]

def test_reflective_of_ground_is_transmuted():
    t = transmuted("sweedler", 1)
    s = rfl.reflective_algebra(t, zoo.trivial_module_algebra(t.base))
    assert (s.underlying.M == t.B).all()


def test_reflective_z2_table():
    t, A, _ = shipped("z2-sign.txt")
    s = rfl.reflective_algebra(t, A)
    assert times(s, "g#1", "g#1") == {"1#1": "1"}
    # the coadjoint coaction is trivial on g, so y passes g unchanged
    assert times(s, "g#1", "1#y") == times(s, "1#y", "g#1") == {"g#y": "1"}
    assert times(s, "1#y", "1#y") == {"1#1": "1"}


def test_reflective_sweedler_adjoint():
    t = transmuted("sweedler", 1)
    s = rfl.reflective_algebra(t, entry("sweedler").module_algebra("adj"))
    assert s.dim == 16
    assert assoc_oracle(s.underlying.M)
    assert rfl.check_smash(s, t.base).ok


@pytest.mark.parametrize("name", zoo.manifest_names())
def test_reflective_is_generalized_smash(name):
    t = transmuted(name)
    for A in entry(name).module_algebras:
        a = rfl.reflective_algebra(t, A)
        b = rfl.generalized_smash(t.algebra, t.coad_comodule, A, t.base)
        assert (a.underlying.M == b.underlying.M).all()
        assert (a.underlying.eta == b.underlying.eta).all()


def test_module_structure_unit_acts_trivially():
    t = transmuted("sweedler", 1)
    s = rfl.reflective_algebra(t, entry("sweedler").module_algebra("adj"))
    one = t.base.index("1")
    assert (s.haction.entries[:, :, one] == identity(s.space, Q).matrix()).all()


def test_module_structure_z2():
    t, A, _ = shipped("z2-sign.txt")
    s = rfl.reflective_algebra(t, A)
    L = s.space.basis_labels
    col = s.haction.entries[:, L.index("g#1"), t.base.index("g")]
    assert {L[i]: str(c) for i, c in enumerate(col) if c} == {"g#1": "1"}


def test_module_structure_sweedler():
    t = transmuted("sweedler", 1)
    s = rfl.reflective_algebra(t, entry("sweedler").module_algebra("adj"))
    assert hopf.check_module_algebra(s.module_algebra, t.base).ok


def test_canonical_kmap_unit():
    t, A, _ = shipped("z2-sign.txt")
    s = rfl.reflective_algebra(t, A)
    K = s.embedded_kmap.K
    assert {s.space.basis_labels[i] for i in np.flatnonzero(K[:, t.base.index("1")])} == {"1#1"}
    assert {s.space.basis_labels[i] for i in np.flatnonzero(K[:, t.base.index("g")])} == {"g#1"}


@pytest.mark.parametrize("name,Aname,i", [("z2-sign", "A", 0), ("sweedler", "adj", 1), ("sweedler", "adj", 3)])
def test_canonical_kmap_reflective(name, Aname, i):
    t = transmuted(name, i)
    s = rfl.reflective_algebra(t, entry(name).module_algebra(Aname))
    for reading in bm.READINGS:
        assert bm.check_reflective_structure(s.embedded_kmap, s.module_algebra, t.base, t.rform, reading).ok


def test_split_combine_round_trip():
    for name in zoo.manifest_names():
        t = transmuted(name)
        for A in entry(name).module_algebras:
            s = rfl.reflective_algebra(t, A)
            M = hopf.regular_amodule(s.underlying, "M")
            back = rfl.combine_module(rfl.split_module(M, s, t), s)
            assert (back.L == M.L).all()


def test_split_module_haction():
    t = transmuted("sweedler", 1)
    s = rfl.reflective_algebra(t, entry("sweedler").module_algebra("adj"))
    M = rfl.split_module(hopf.regular_amodule(s.underlying, "M"), s, t)
    assert bm.check_haction(M, entry("sweedler").module_algebra("adj"), t).ok


# ---------------------------------------------------------------- twisted products

def test_transposition_gives_tensor_algebra():
    t, A, _ = shipped("z2-sign.txt")
    tp = rfl.plain_tensor_product(A.algebra, t.algebra)
    M = tp.underlying.M.reshape(2, 2, 2, 2, 2, 2)
    want = np.einsum("oab,pcd->opacbd", A.algebra.M, t.B)
    assert (M == want).all()


def test_twisted_z2_matches_reflective():
    t, A, co = shipped("z2-sign.txt")
    tp = rfl.central_twisted_product(A.algebra, co, t)
    s = rfl.reflective_algebra(t, A)
    # a⊗h -> h#a
    P = np.full((4, 4), Q.zero, dtype=object)
    for a, h in itertools.product(range(2), range(2)):
        P[h * 2 + a, a * 2 + h] = Q.one
    assert rfl.check_algebra_map(P, tp.underlying, s.underlying).ok


def test_corrupted_sigma_fails():
    t, A, co = shipped("z4-zeta.txt")
    sig = t.half_braiding(co)
    bad = sig.entries.copy()
    bad[1, 1, 1, 1] = -bad[1, 1, 1, 1]
    with pytest.raises(rfl.AssocFailure) as info:
        rfl.twisted_product(A.algebra, t.algebra, MultilinearMap(sig.domain, sig.codomain, bad, sig.ctx))
    assert info.value.report.failures()[0].witness


@pytest.mark.parametrize("name", zoo.manifest_names())
def test_twisted_over_regular_comodule_algebra(name):
    t = transmuted(name)
    reg = hopf.ComoduleData((t.hbar,), t.base.coalgebra.comul, "Hbar")
    assert rfl.check_twisted(rfl.central_twisted_product(t.base.algebra, reg, t)).ok


def test_sigma_must_have_right_type():
    t, A, co = shipped("z2-sign.txt")
    with pytest.raises(rfl.TypeMismatch):
        rfl.twisted_product(A.algebra, t.algebra, transposition(A.space, t.space, Q))


def test_commuting_actions_pass():
    k = hopf.ground_algebra(Q)
    B = entry("z2-sign").hopf.algebra
    tp = rfl.plain_tensor_product(k, B)
    MB = rfl.regular_right_module(B)
    # k acts by scalars
    MA = hopf.make_amodule(MB.legs, identity(MB.space, Q).matrix()[:, None, :], Q, k.space)
    assert rfl.check_right_module_comm(tp, MA, MB).ok


def pairs(name):
    t, A, co = shipped(name)
    tp = rfl.central_twisted_product(A.algebra, co, t)
    plain = rfl.plain_tensor_product(A.algebra, t.algebra)
    MA, MB = rfl.restricted_right_modules(tp, rfl.regular_right_module(tp.underlying))
    PA, _ = rfl.restricted_right_modules(plain, rfl.regular_right_module(plain.underlying))
    PA = hopf.make_amodule(MA.legs, PA.L, PA.ctx, PA.algebra_space, "M")
    return tp, (MA, MB), (PA, MB)


@pytest.mark.parametrize("name", ["z2-sign.txt", "z4-zeta.txt"])
def test_regular_module_compatible(name):
    tp, (MA, MB), _ = pairs(name)
    assert rfl.check_is_right_module(MA, tp.A).ok and rfl.check_is_right_module(MB, tp.B).ok
    assert rfl.check_right_module_comm(tp, MA, MB).ok


def test_right_module_comm_biconditional():
    tp, good, bad = pairs("z4-zeta.txt")
    for MA, MB in (good, bad):
        assert rfl.check_is_right_module(MA, tp.A).ok and rfl.check_is_right_module(MB, tp.B).ok
        comm = rfl.check_right_module_comm(tp, MA, MB)
        whole = rfl.check_is_right_module(rfl.combined_right_module(tp, MA, MB), tp.underlying)
        assert comm.ok == whole.ok
    comm = rfl.check_right_module_comm(tp, *bad)
    assert not comm.ok and comm["compat"].witness


# ---------------------------------------------------------------- centercond

def z2_k():
    t = transmuted("z2-sign")
    k = hopf.ground_algebra(t.ctx, "k")
    triv = hopf.trivial_comodule(t.base, "k")
    return t, k, triv


def test_unit_counit_satisfies_centercond():
    t, k, triv = z2_k()
    f = t.base.eps.reshape(1, -1)
    assert rfl.check_centercond(f, t, k, triv).ok


@pytest.mark.parametrize("sign", [1, -1])
def test_sign_centercond(sign):
    t, k, triv = z2_k()
    assert rfl.check_centercond(np.array([[Q.one, Q(sign)]], dtype=object), t, k, triv).ok


def test_centercond_needs_algebra_map():
    t, k, triv = z2_k()
    with pytest.raises(rfl.NotAlgebraMap):
        rfl.check_centercond(np.array([[Q.one, Q(2)]], dtype=object), t, k, triv)


def test_solve_centercond_z2():
    t, k, triv = z2_k()
    sols = sorted(str(f[0, 1]) for f in rfl.solve_centercond(t, k, triv))
    assert sols == ["-1", "1"]
    valid = sorted(str(K[0, 1]) for _, K in entry("z2-sign").kmaps)
    assert sols == valid


def test_centercond_solutions_induce_braidings():
    t, k, triv = z2_k()
    e = entry("z2-sign")
    A = e.module_algebra("k")
    pr = zoo.probe_set(e.hopf)
    for f in rfl.solve_centercond(t, k, triv):
        K = bm.make_kmap(f, A, e.hopf)
        M = hopf.regular_amodule(A.algebra)
        assert bm.check_module_braiding(bm.ModuleBraiding.from_kmap(K), pr, M, A, e.hopf, e.rform).ok


def test_solve_centercond_rejects_big_algebra():
    t, A, co = shipped("z2-sign.txt")
    with pytest.raises(ValueError):
        rfl.solve_centercond(t, A.algebra, co)
