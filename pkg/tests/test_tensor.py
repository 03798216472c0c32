import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from refcenter import expr as ex
from refcenter import transmutation as tm
from refcenter import zoo
from refcenter.scalar import FieldCtx
from refcenter.tensor import (
    UNIT,
    MultilinearMap,
    Space,
    TypeMismatch,
    compose,
    contract,
    identity,
    maps_equal,
    tensor,
    transposition,
)

from conftest import entry, probe, probes, transmuted

Q = FieldCtx(1)
V = Space("V", 2)
W = Space("W", 3)


def random_map(rng, dom, cod, ctx=Q, density=0.7):
    m = MultilinearMap.zero(dom, cod, ctx)
    for idx in np.ndindex(*m.entries.shape):
        if rng.random() < density:
            m.entries[idx] = ctx(rng.randint(-3, 3))
    return m


def z2():
    return entry("z2-sign").hopf


def test_compose_identity():
    f = random_map(random.Random(1), (V,), (W,))
    assert compose(identity(W, Q), f) == f
    assert compose(f, identity(V, Q)) == f


def test_counit_of_unit():
    h = z2()
    m = compose(h.coalgebra.counit, h.algebra.unit)
    assert m.domain == (UNIT,) and m.codomain == (UNIT,)
    assert m.entries.reshape(-1)[0] == Q.one


def test_unit_axiom_by_composition():
    h = z2()
    lhs = compose(h.algebra.mul, tensor(h.algebra.unit, identity(h.space, Q)))
    assert lhs == identity(h.space, Q)


def test_compose_type_error():
    f = random_map(random.Random(2), (V,), (W,))
    with pytest.raises(TypeMismatch):
        compose(f, f)


def test_tensor_of_identities():
    assert tensor(identity(V, Q), identity(W, Q)) == identity((V, W), Q)


def test_tensor_with_unit_map():
    f = random_map(random.Random(3), (V,), (W,))
    one = identity(UNIT, Q)
    g = tensor(f, one)
    assert g.domain == (V,) and g.codomain == (W,) and g == f


@given(st.integers(0, 10**6))
def test_tensor_entries(seed):
    rng = random.Random(seed)
    f = random_map(rng, (V,), (V,))
    g = random_map(rng, (V,), (V,))
    fg = tensor(f, g)
    for i, j, k, l in np.ndindex(2, 2, 2, 2):
        assert fg.entries[i, k, j, l] == f.entries[i, j] * g.entries[k, l]


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_interchange_law(seed):
    rng = random.Random(seed)
    f1, f2 = random_map(rng, (V,), (W,)), random_map(rng, (W,), (V,))
    g1, g2 = random_map(rng, (W,), (V,)), random_map(rng, (V,), (V,))
    assert compose(tensor(f2, g2), tensor(f1, g1)) == tensor(compose(f2, f1), compose(g2, g1))


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_contract_matches_einsum(seed):
    rng = random.Random(seed)
    a = np.array([[rng.randint(-4, 4) for _ in range(3)] for _ in range(2)])
    b = np.array([[rng.randint(-4, 4) for _ in range(2)] for _ in range(3)])
    c = contract("ij,jk->ik", a.astype(object), b.astype(object))
    assert (c == np.einsum("ij,jk->ik", a, b)).all()


def test_maps_equal_commutative_group_algebra():
    h = z2()
    mu = h.algebra.mul
    swapped = compose(mu, transposition(h.space, h.space, Q))
    assert maps_equal(mu, swapped) == (True, None)


def test_maps_equal_sweedler_witness():
    h = entry("sweedler").hopf
    mu = h.algebra.mul
    swapped = compose(mu, transposition(h.space, h.space, h.ctx))
    ok, w = maps_equal(mu, swapped)
    assert not ok
    outs, ins = w.labels(mu)
    # first differing input is g⊗x: gx versus xg = -gx
    assert ins == ("g", "x") and outs == ("gx",)
    assert (w.lhs, w.rhs) == (Q.one, -Q.one)


def test_eval_generator():
    h = z2()
    env = ex.Env(Q).bind("mu", h.algebra.mul)
    assert ex.eval_expr(ex.Gen("mu"), env) == h.algebra.mul


def test_compose_ids():
    env = ex.Env(Q)
    e = ex.Compose(ex.Id(V, W), ex.Id(V, W))
    assert ex.eval_expr(e, env) == identity((V, W), Q)
    assert ex.eval_naive(e, env) == identity((V, W), Q)


def test_unbound_generator():
    with pytest.raises(ex.UnboundGenerator):
        ex.eval_expr(ex.Gen("nope"), ex.Env(Q))


def test_ill_typed_expression():
    h = z2()
    env = ex.Env(Q).bind("mu", h.algebra.mul)
    with pytest.raises(TypeMismatch):
        ex.type_of(ex.Gen("mu") >> ex.Gen("mu"), env)


def test_central_coalgebra_left_equals_middle_z2():
    t = transmuted("z2-sign")
    X = probe("z2-sign", "chi_g")
    env = tm.diagram_env(t, probes("z2-sign"))
    left, middle, _ = tm.central_coalgebra_sides(t.space, X.legs[0])
    assert zoo.oracle_bruteforce_equation(left, middle, env, "central").ok


def test_oracle_associativity_sweedler():
    h = entry("sweedler").hopf
    s = h.space
    env = ex.Env(h.ctx).bind("mu", h.algebra.mul)
    lhs = ex.seq(ex.Gen("mu") @ ex.Id(s), ex.Gen("mu"))
    rhs = ex.seq(ex.Id(s) @ ex.Gen("mu"), ex.Gen("mu"))
    assert zoo.oracle_bruteforce_equation(lhs, rhs, env, "assoc").ok


def test_oracle_mismatch_witness():
    h = entry("sweedler").hopf
    s = h.space
    env = ex.Env(h.ctx).bind("mu", h.algebra.mul)
    env.bind_crossing("c", s, s, transposition(s, s, h.ctx))
    rep = zoo.oracle_bruteforce_equation(ex.Gen("mu"), ex.seq(ex.Swap(s, s, "c"), ex.Gen("mu")), env, "flip")
    assert not rep.ok and rep["flip"].witness["in_labels"] == ["g", "x"]


def test_oracle_rejects_type_mismatch():
    h = z2()
    env = ex.Env(Q).bind("mu", h.algebra.mul)
    with pytest.raises(TypeMismatch):
        zoo.oracle_bruteforce_equation(ex.Gen("mu"), ex.Id(h.space), env)


@pytest.mark.parametrize("name", zoo.manifest_names())
def test_planner_matches_naive(name):
    t = transmuted(name)
    pr = probes(name)
    env = tm.diagram_env(t, pr, pr)
    rng = random.Random(name)
    for _ in range(25):
        e = ex.random_expr(env, rng)
        a, b = ex.eval_expr(e, env), ex.eval_naive(e, env)
        assert (a.domain, a.codomain) == ex.type_of(e, env)
        assert a == b
