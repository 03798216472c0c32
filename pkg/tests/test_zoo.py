import numpy as np
import pytest

from refcenter import hopf, zoo
from refcenter.scalar import FieldCtx

Q = FieldCtx(1)


def R_table(rf, h):
    L = h.space.basis_labels
    return {(L[a], L[b]): str(rf.R[a, b]) for a in range(h.dim) for b in range(h.dim) if rf.R[a, b]}


def test_sign_bicharacter():
    h, r = zoo.group_algebra_with_bicharacter(2, -1, Q)
    assert R_table(r, h) == {("1", "1"): "1", ("1", "g"): "1", ("g", "1"): "1", ("g", "g"): "-1"}
    assert hopf.check_rform(h, r).ok


def test_trivial_group():
    h, r = zoo.group_algebra_with_bicharacter(1, 1, Q)
    assert h.dim == 1 and R_table(r, h) == {("1", "1"): "1"}


def test_zeta4_bicharacter():
    c = FieldCtx(4)
    h, r = zoo.group_algebra_with_bicharacter(4, c.zeta(1), c)
    assert hopf.check_rform(h, r).ok
    assert r.R[2, 3] == c(-1)  # zeta^6


def test_not_a_bicharacter():
    with pytest.raises(zoo.NotBicharacter):
        zoo.group_algebra_with_bicharacter(2, [[1, 1], [1, 2]], Q)
    with pytest.raises(zoo.NotBicharacter):
        zoo.group_algebra_with_bicharacter(3, -1, Q)


def test_sweedler_hopf():
    h = zoo.sweedler_hopf(Q)
    assert hopf.check_bialgebra(h).ok
    S = hopf.solve_antipode(h).entries
    i = h.index
    assert S[i("gx"), i("x")] == -Q.one and S[i("g"), i("g")] == Q.one


def test_sweedler_rforms():
    e = zoo.manifest_entry("sweedler")
    h = e.hopf
    for lam, rf in zip(zoo.SWEEDLER_SAMPLE_PARAMS, e.rforms):
        lam = Q(lam)
        tab = {k: Q(v) for k, v in R_table(rf, h).items()}
        want = {("1", "1"): 1, ("1", "g"): 1, ("g", "1"): 1, ("g", "g"): -1,
                ("x", "x"): lam, ("x", "gx"): lam, ("gx", "x"): -lam, ("gx", "gx"): lam}
        assert tab == {k: Q(v) for k, v in want.items() if v}
        assert hopf.check_rform(h, rf).ok


def test_sweedler_lambda_zero_kills_x():
    e = zoo.manifest_entry("sweedler")
    i = e.hopf.index
    R = e.rforms[0].R
    for a in ("x", "gx"):
        assert not any(R[i(a), :]) and not any(R[:, i(a)])


def test_rform_family_is_one_parameter():
    fam = zoo.solve_rform_family(zoo.sweedler_hopf(Q))
    assert fam.shape == (4, 4, 2)


def test_rform_family_brute_force():
    # every r on H4 of the solved shape is an r-form; perturbing r(x|x) alone is not
    h = zoo.sweedler_hopf(Q)
    fam = zoo.solve_rform_family(h)
    for lam in (2, "-3/7"):
        assert hopf.check_rform(h, zoo.rform_at(h, fam, [lam])).ok
    R = zoo.rform_at(h, fam, [1]).R.copy()
    R[h.index("x"), h.index("x")] = Q(5)
    assert not hopf.check_rform(h, hopf.rform_from_array(h, R)).ok


def test_module_algebra_examples():
    h2 = zoo.group_hopf(2, Q)
    assert [A.name for A in zoo.module_algebra_examples(h2)] == ["k", "adj", "A"]
    for A in zoo.module_algebra_examples(h2):
        assert hopf.check_module_algebra(A, h2).ok
    h4 = zoo.sweedler_hopf(Q)
    assert all(hopf.check_module_algebra(A, h4).ok for A in zoo.module_algebra_examples(h4))


def test_probe_set_z2():
    h = zoo.group_hopf(2, Q)
    pr = zoo.probe_set(h)
    assert [V.name for V in pr] == ["triv", "chi_g", "reg", "H"]
    coad = pr[-1]
    # two copies of the trivial comodule
    assert (coad.delta[:, 0, :] == np.eye(2, dtype=int)).all() and not coad.delta[:, 1, :].any()


def test_probes_are_comodules():
    for e in zoo.manifest():
        pr = e.probes()
        assert any(V.name == "reg" for V in pr)
        assert all(hopf.check_comodule(V, e.hopf.coalgebra).ok for V in pr)


@pytest.mark.parametrize("name", zoo.manifest_names())
def test_manifest_entries_validate(name):
    rep = zoo.validate_entry(zoo.manifest_entry(name))
    assert rep.ok, rep.failed_names()


def test_unknown_entry():
    with pytest.raises(KeyError, match="available"):
        zoo.manifest_entry("nope")


def test_graded_algebra_needs_even_order():
    with pytest.raises(ValueError):
        zoo.graded_module_algebra(zoo.group_hopf(3, Q))
