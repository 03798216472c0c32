import numpy as np
import pytest

from refcenter import hopf
from refcenter.hopf import NotAHopfAlgebra, NotInvertible
from refcenter.scalar import FieldCtx
from refcenter.tensor import MultilinearMap, compose, identity

from conftest import entry, probe

Q = FieldCtx(1)


def sweedler():
    return entry("sweedler").hopf


def vec(h, **coeffs):
    v = np.array([Q.zero] * h.dim, dtype=object)
    for lab, c in coeffs.items():
        v[h.index(lab)] = Q(c)
    return v


def test_group_algebra_passes():
    assert hopf.check_hopf(entry("z2-sign").hopf).ok


def test_sweedler_passes():
    rep = hopf.check_hopf(sweedler())
    assert rep.ok and "algebra.associativity" in rep.names()


def test_corrupted_comul_counit_witness():
    h = sweedler()
    D = h.D.copy()
    g = h.index("g")
    D[:, :, g] = Q.zero
    D[g, h.index("1"), g] = Q.one
    bad = hopf.make_coalgebra(h.space, D, h.eps, Q)
    rep = hopf.check_coalgebra(bad)
    c = rep["counit_left"]
    assert not c.passed and c.witness["in_labels"] == ["g"]


def test_sweedler_power_zero_is_identity():
    h = sweedler()
    assert hopf.sweedler_power(h.coalgebra, 0) == identity(h.space, Q)


def test_sweedler_power_grouplike():
    h = sweedler()
    P = hopf.sweedler_power(h.coalgebra, 2)
    g = h.index("g")
    assert P.entries[g, g, g, g] == Q.one
    assert sum(1 for x in P.entries[..., g].reshape(-1) if x) == 1


def test_sweedler_power_x():
    h = sweedler()
    P = hopf.sweedler_power(h.coalgebra, 2).entries[..., h.index("x")]
    i = h.index
    want = {(i("x"), i("1"), i("1")), (i("g"), i("x"), i("1")), (i("g"), i("g"), i("x"))}
    got = {idx for idx in np.ndindex(*P.shape) if P[idx]}
    assert got == want and all(P[idx] == Q.one for idx in want)


def test_convolution_unit():
    h = sweedler()
    f = identity(h.space, Q)
    u = hopf.convolution_unit(h.coalgebra, h.algebra)
    assert hopf.convolution(f, u, h.coalgebra, h.algebra) == f


@pytest.mark.parametrize("name", ["z2-sign", "sweedler"])
def test_id_convolved_with_antipode(name):
    h = entry(name).hopf.with_antipode()
    got = hopf.convolution(identity(h.space, Q), h.antipode, h.coalgebra, h.algebra)
    assert got == hopf.convolution_unit(h.coalgebra, h.algebra)


def test_inverse_of_unit():
    h = sweedler()
    u = hopf.convolution_unit(h.coalgebra, h.algebra)
    assert hopf.convolution_inverse(u, h.coalgebra, h.algebra) == u


def test_inverse_of_identity_is_antipode():
    h = sweedler()
    S = hopf.convolution_inverse(identity(h.space, Q), h.coalgebra, h.algebra)
    assert S == hopf.solve_antipode(h)


def test_not_invertible():
    h = sweedler()
    with pytest.raises(NotInvertible):
        hopf.convolution_inverse(MultilinearMap.zero((h.space,), (h.space,), Q), h.coalgebra, h.algebra)


def test_antipode_group_algebra():
    h = entry("z2-sign").hopf
    assert hopf.solve_antipode(h) == identity(h.space, Q)


def test_antipode_sweedler():
    h = sweedler()
    S = hopf.solve_antipode(h)
    assert (S.apply(vec(h, g=1)) == vec(h, g=1)).all()
    assert (S.apply(vec(h, x=1)) == vec(h, gx=-1)).all()


def test_corrupted_mul_has_no_antipode():
    h = sweedler()
    M = h.M.copy()
    # with g.g = 0 no S(g) satisfies g S(g) = 1
    M[h.index("1"), h.index("g"), h.index("g")] = Q.zero
    bad = hopf.HopfData(hopf.make_algebra(h.space, M, h.eta, Q), h.coalgebra)
    with pytest.raises(NotAHopfAlgebra):
        hopf.solve_antipode(bad)


def test_sign_rform_passes():
    e = entry("z2-sign")
    assert hopf.check_rform(e.hopf, e.rform).ok


def test_rform_two_flags_hexagon():
    h = entry("z2-sign").hopf
    R = np.array([[Q(1), Q(1)], [Q(1), Q(2)]], dtype=object)
    rf = hopf.RForm(hopf.rform_from_array(h, R, R).r, hopf.rform_from_array(h, R, R).r)
    rep = hopf.check_rform(h, rf)
    assert rep["quasi_commutativity"].passed
    w = rep["hexagon_1"].witness
    assert w["lhs"] == "1" and w["rhs"] == "4"


def test_trivial_rform():
    h = sweedler()
    eps = h.eps
    R = np.multiply.outer(eps, eps)
    rf = hopf.rform_from_array(h, R)
    # sweedler is not cocommutative, so ε⊗ε fails quasi-commutativity
    assert not hopf.check_rform(h, rf)["quasi_commutativity"].passed
    g = entry("z4-zeta").hopf
    assert hopf.check_rform(g, hopf.rform_from_array(g, np.multiply.outer(g.eps, g.eps))).ok


def test_braiding_with_trivial_is_flip():
    e = entry("z2-sign")
    T = probe("z2-sign", "triv")
    S = probe("z2-sign", "chi_g")
    c = hopf.braiding_of_comodules(T, S, e.rform)
    assert (c.matrix() == identity(S.space, Q).matrix()).all()


def test_sign_braiding():
    e = entry("z2-sign")
    S = probe("z2-sign", "chi_g")
    c = hopf.braiding_of_comodules(S, S, e.rform)
    assert c.entries.reshape(-1)[0] == -Q.one


def test_braiding_inverse_sweedler():
    e = entry("sweedler")
    reg = probe("sweedler", "reg", 1)
    c = hopf.braiding_of_comodules(reg, reg, e.rforms[1])
    ci = hopf.inverse_braiding_of_comodules(reg, reg, e.rforms[1])
    assert compose(c, ci) == identity(c.domain, Q)


def test_regular_comodule():
    h = sweedler()
    assert hopf.check_comodule(hopf.regular_comodule(h), h.coalgebra).ok


@pytest.mark.parametrize("name", ["k", "adj"])
def test_sweedler_module_algebras(name):
    e = entry("sweedler")
    assert hopf.check_module_algebra(e.module_algebra(name), e.hopf).ok


def test_sign_flip_module_algebra():
    e = entry("z2-sign")
    assert hopf.check_module_algebra(e.module_algebra("A"), e.hopf).ok


def test_broken_module_algebra_fails():
    e = entry("z2-sign")
    A = e.module_algebra("A")
    act = A.act.copy()
    act[1, 1, 1] = Q(2)
    bad = hopf.make_module_algebra(A.algebra, act, e.hopf.space, "bad")
    assert not hopf.check_module_algebra(bad, e.hopf).ok


def test_grouplikes_sweedler():
    h = sweedler()
    labels = sorted(h.label(int(np.flatnonzero(g)[0])) for g in hopf.grouplikes(h))
    assert labels == ["1", "g"]
