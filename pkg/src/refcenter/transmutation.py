"""Transmutation of a coquasitriangular Hopf algebra into a commutative central braided Hopf algebra.

Given ``(H̄, r)`` the transmuted ``H`` shares the coalgebra of ``H̄`` and carries

* the coadjoint coaction ``δ(h) = h2 ⊗ S(h1) h3``
* the product ``g•h = g2 h3 r(g3|S(h1)) r(g1|h2)``
* the half-braiding ``σ(h⊗v) = v0 ⊗ h2 r(v1|h1) r(h3|v2)``, rewritten as
  ``σ(h⊗v) = v0 ⊗ h↼v1`` with ``h↼g = h2 r(g1|h1) r(h3|g2)``.

Arrays follow the conventions of ``hopf``.  ``H`` lives on a space named
``"H"``; ``H̄`` keeps its own space (renamed to ``"Hbar"`` if it clashes).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import expr as ex
from .hopf import (
    AlgebraData,
    CoalgebraData,
    ComoduleData,
    HopfData,
    NotAHopfAlgebra,
    NotInvertible,
    RForm,
    braiding_of_comodules,
    check_algebra,
    check_comodule,
    comodule_map_report,
    convolution_inverse,
    inverse_braiding_of_comodules,
    tensor_comodule,
    _delta_matrix,
)
from .report import Report
from .tensor import UNIT, MultilinearMap, Space, TypeMismatch, contract, legs_shape


def _d3(D):
    """Twice-iterated comultiplication ``[h1, h2, h3, h]``."""
    return contract("xyp,pzi->xyzi", D, D)


def coadjoint_array(base: HopfData):
    D3 = _d3(base.D)
    return contract("aoch,sa,ksc->okh", D3, base.S, base.M)


def bullet_array(base: HopfData, rf: RForm):
    D3 = _d3(base.D)
    R = rf.R
    rS = contract("ts,sa->ta", R, base.S)  # r(t|S(a))
    # g•h = g2 h3 r(g3|S(h1)) r(g1|h2)
    return contract("ijkg,abch,ojc,ka,ib->ogh", D3, D3, base.M, rS, R)


def hit_array(base: HopfData, rf: RForm):
    """``h↼g = h2 r(g1|h1) r(h3|g2)``, indices ``[o, h, g]``."""
    D3 = _d3(base.D)
    return contract("aoch,xyg,xa,cy->ohg", D3, base.D, rf.R, rf.R)


def hit_array_literal(base: HopfData, rf: RForm):
    """The action read literally as ``h2 r(g1|h1) r(h2|g2)`` with a single ``Δh``.

    The repeated ``h2`` has no meaning in Sweedler notation; taking it as a
    diagonal copy in the chosen basis gives this basis-dependent map.  Kept
    only to show that it disagrees with the half-braiding.
    """
    D, R = base.D, rf.R
    d = base.dim
    out = np.empty((d, d, d), dtype=object)
    out.fill(base.ctx.zero)
    for h in range(d):
        for a in range(d):
            for o in range(d):
                if not D[a, o, h]:
                    continue
                for g in range(d):
                    s = base.ctx.zero
                    for x in range(d):
                        for y in range(d):
                            if D[x, y, g]:
                                s = s + D[x, y, g] * R[x, a] * R[o, y]
                    out[o, h, g] = out[o, h, g] + D[a, o, h] * s
    return out


def half_braiding_array(base: HopfData, rf: RForm, V: ComoduleData):
    """``σ[v0, o, h, v]`` for ``σ(h⊗v) = v0 ⊗ h2 r(v1|h1) r(h3|v2)``."""
    dl = V.delta
    vv = contract("xpu,uqv->xpqv", dl, dl)  # v0 ⊗ v1 ⊗ v2
    D3 = _d3(base.D)
    return contract("xpqv,aoch,pa,cq->xohv", vv, D3, rf.R, rf.R)


@dataclass
class TransmutationData:
    base: HopfData
    rform: RForm
    space: Space
    coad: MultilinearMap
    bullet: MultilinearMap
    hit: MultilinearMap
    braided_antipode: MultilinearMap | None = None

    @property
    def ctx(self):
        return self.base.ctx

    @property
    def hbar(self) -> Space:
        return self.base.space

    @property
    def dim(self):
        return self.space.dim

    @property
    def coalgebra(self) -> CoalgebraData:
        return self.base.coalgebra.retyped(self.space)

    @property
    def algebra(self) -> AlgebraData:
        unit = self.base.algebra.unit.retyped({self.hbar: self.space})
        return AlgebraData(self.space, self.bullet, unit)

    @property
    def coad_comodule(self) -> ComoduleData:
        return ComoduleData((self.space,), self.coad, self.space.name)

    @property
    def B(self):
        return self.bullet.entries

    @property
    def SH(self):
        if self.braided_antipode is None:
            raise NotAHopfAlgebra("braided antipode not solved yet")
        return self.braided_antipode.entries

    def half_braiding(self, V: ComoduleData) -> MultilinearMap:
        return build_half_braiding(self, V)

    def as_h_comodule(self, X: ComoduleData) -> ComoduleData:
        """The same coaction read as an ``H``-coaction (``H = H̄`` as coalgebras)."""
        return X.retyped({self.hbar: self.space})

    def with_bullet(self, bullet) -> "TransmutationData":
        """Copy with a replaced product (for corruption experiments)."""
        if not isinstance(bullet, MultilinearMap):
            bullet = MultilinearMap(self.bullet.domain, self.bullet.codomain, bullet, self.ctx)
        return TransmutationData(self.base, self.rform, self.space, self.coad, bullet, self.hit, None)

    def with_coad(self, coad) -> "TransmutationData":
        if not isinstance(coad, MultilinearMap):
            coad = MultilinearMap(self.coad.domain, self.coad.codomain, coad, self.ctx)
        return TransmutationData(
            self.base, self.rform, self.space, coad, self.bullet, self.hit, self.braided_antipode
        )


def _prepare_base(base: HopfData, rf: RForm, name):
    base = base.with_antipode()
    if base.space.name == name:
        hb = base.space.renamed(name + "bar")
        rf = rf.retyped({base.space: hb})
        base = base.retyped(hb)
    return base, rf


def build_coadjoint_coaction(base: HopfData, space: Space | None = None) -> MultilinearMap:
    base = base.with_antipode()
    space = space or Space("H", base.dim, base.space.basis_labels)
    return MultilinearMap((space,), (space, base.space), coadjoint_array(base), base.ctx)


def build_transmuted_mul(base: HopfData, rf: RForm, space: Space | None = None) -> MultilinearMap:
    base = base.with_antipode()
    space = space or Space("H", base.dim, base.space.basis_labels)
    return MultilinearMap((space, space), (space,), bullet_array(base, rf), base.ctx)


def build_hit_action(base: HopfData, rf: RForm, space: Space | None = None, literal=False) -> MultilinearMap:
    space = space or Space("H", base.dim, base.space.basis_labels)
    arr = hit_array_literal(base, rf) if literal else hit_array(base, rf)
    return MultilinearMap((space, base.space), (space,), arr, base.ctx)


def transmute(base: HopfData, rf: RForm, name="H", with_antipode=True) -> TransmutationData:
    """All transmuted structures of ``(H̄, r)``; the braided antipode is solved unless disabled."""
    base, rf = _prepare_base(base, rf, name)
    space = Space(name, base.dim, base.space.basis_labels)
    t = TransmutationData(
        base,
        rf,
        space,
        build_coadjoint_coaction(base, space),
        build_transmuted_mul(base, rf, space),
        build_hit_action(base, rf, space),
    )
    if with_antipode:
        t.braided_antipode = solve_braided_antipode(t)
    return t


def build_half_braiding(t: TransmutationData, V: ComoduleData) -> MultilinearMap:
    """``σ_{H,V}: H⊗V -> V⊗H``."""
    if V.coalgebra_space != t.hbar:
        raise TypeMismatch(f"{V.name} is not a comodule over {t.hbar.name}")
    arr = half_braiding_array(t.base, t.rform, V)
    shape = legs_shape(V.legs) + (t.dim,) + (t.dim,) + legs_shape(V.legs)
    return MultilinearMap((t.space,) + V.legs, V.legs + (t.space,), arr.reshape(shape), t.ctx)


def half_braiding_via_hit(t: TransmutationData, V: ComoduleData, hit=None) -> MultilinearMap:
    """``σ(h⊗v) = v0 ⊗ h↼v1`` from an action array ``hit[o, h, g]``."""
    hit = t.hit.entries if hit is None else hit
    arr = contract("xgv,ohg->xohv", V.delta, hit)
    shape = legs_shape(V.legs) + (t.dim,) + (t.dim,) + legs_shape(V.legs)
    return MultilinearMap((t.space,) + V.legs, V.legs + (t.space,), arr.reshape(shape), t.ctx)


def solve_braided_antipode(t: TransmutationData) -> MultilinearMap:
    """Convolution inverse of the identity for ``(•, Δ)``, with both axioms re-verified."""
    alg, coalg = t.algebra, t.coalgebra
    try:
        S = convolution_inverse(_delta_matrix(t.dim, t.ctx), coalg, alg)
    except NotInvertible as exc:
        raise NotAHopfAlgebra(f"identity has no convolution inverse for • ({exc})") from None
    rep = check_braided_antipode(t, S)
    if not rep.ok:
        raise NotAHopfAlgebra(f"braided antipode fails {rep.failed_names()}")
    return S


# ---------------------------------------------------------------- checks

def check_braided_antipode(t: TransmutationData, S=None) -> Report:
    rep = Report("braided antipode")
    S = t.SH if S is None else (S.entries if isinstance(S, MultilinearMap) else S)
    B, D = t.B, t.base.D
    target = np.multiply.outer(t.base.eta, t.base.eps)
    s = t.space
    rep.compare_arrays("S_left", contract("opq,pa,aqi->oi", B, S, D), target, (s,), (s,), t.ctx)
    rep.compare_arrays("S_right", contract("opq,qb,pbi->oi", B, S, D), target, (s,), (s,), t.ctx)
    return rep


def check_coad(t: TransmutationData) -> Report:
    return check_comodule(t.coad_comodule, t.base.coalgebra, "coadjoint coaction")


def check_yetter_drinfeld(t: TransmutationData, hit=None) -> Report:
    """Right-action axioms for ↼ and ``(h↼g)0⊗(h↼g)1 = h0↼g2 ⊗ S(g1) h1 g3``."""
    rep = Report("Yetter-Drinfeld")
    hit = t.hit.entries if hit is None else hit
    b, ctx, s, hb = t.base, t.ctx, t.space, t.hbar
    lhs = contract("oam,mgh->oagh", hit, b.M)
    rhs = contract("oph,pag->oagh", hit, hit)
    rep.compare_arrays("action_associative", lhs, rhs, (s, hb, hb), (s,), ctx)
    rep.compare_arrays(
        "action_unital", contract("oau,u->oa", hit, b.eta), _delta_matrix(t.dim, ctx), (s,), (s,), ctx
    )
    coad = t.coad.entries
    lhs = contract("okm,mhg->okhg", coad, hit)
    D3 = _d3(b.D)
    rhs = contract("oub,uah,xbyg,sx,tsa,kty->okhg", hit, coad, D3, b.S, b.M, b.M)
    rep.compare_arrays("compatibility", lhs, rhs, (s, hb), (s, hb), ctx)
    return rep


def check_half_braiding(t: TransmutationData, probes) -> Report:
    """Per probe: σ from the r-formula equals the ↼ form, is invertible and colinear."""
    from .linalg import Singular
    from .hopf import invert_map

    rep = Report("half-braiding")
    H = t.coad_comodule
    for V in probes:
        sig = build_half_braiding(t, V)
        rep.compare(f"{V.name}.hit_form", sig, half_braiding_via_hit(t, V))
        try:
            invert_map(sig)
            rep.add(f"{V.name}.invertible", True)
        except Singular as exc:
            rep.add(f"{V.name}.invertible", False, detail=str(exc))
        src = tensor_comodule(H, V, t.base.M)
        dst = tensor_comodule(V, H, t.base.M)
        comodule_map_report(sig, src, dst, f"{V.name}.colinear", rep)
    return rep


def check_braided_bialgebra(t: TransmutationData) -> Report:
    """``(H, •, η, Δ, ε)`` is a bialgebra in comodules: structure maps colinear, Δ multiplicative via ``c_{H,H}``."""
    rep = Report("braided bialgebra")
    rep.extend(check_algebra(t.algebra), "algebra.")
    rep.extend(check_coad(t), "coad.")
    b, ctx, s, H = t.base, t.ctx, t.space, t.coad_comodule
    B, D, eta, eps = t.B, b.D, b.eta, b.eps
    HH = tensor_comodule(H, H, b.M)
    comodule_map_report(t.bullet, HH, H, "mul_colinear", rep)
    comodule_map_report(t.coalgebra.comul, H, HH, "comul_colinear", rep)
    c = braiding_of_comodules(H, H, t.rform).entries
    lhs = contract("xym,mab->xyab", D, B)
    # (•⊗•)(H⊗c⊗H)(Δ⊗Δ)
    rhs = contract("pqa,rtb,uvqr,xpu,yvt->xyab", D, D, c, B, B)
    rep.compare_arrays("comul_multiplicative", lhs, rhs, (s, s), (s, s), ctx)
    rep.compare_arrays(
        "comul_unital", contract("xym,m->xy", D, eta), np.multiply.outer(eta, eta), (UNIT,), (s, s), ctx
    )
    rep.compare_arrays(
        "counit_multiplicative",
        contract("m,mab->ab", eps, B),
        np.multiply.outer(eps, eps),
        (s, s),
        (UNIT,),
        ctx,
    )
    return rep


def check_braided_commutativity(t: TransmutationData, bullet=None) -> Report:
    """``• ∘ σ_{H,H} = •``."""
    rep = Report("braided commutativity")
    B = t.B if bullet is None else bullet
    sig = build_half_braiding(t, t.coad_comodule).entries
    s = t.space
    rep.compare_arrays("commutative", contract("opq,pqab->oab", B, sig), B, (s, s), (s,), t.ctx)
    return rep


def check_central_bialgebra(t: TransmutationData, probes) -> Report:
    """Multiplication and unit are morphisms in the center, plus the bialgebra axioms in comodules."""
    rep = Report("central bialgebra")
    rep.extend(check_braided_bialgebra(t))
    s, B = t.space, t.B
    for V in probes:
        sig = build_half_braiding(t, V)
        n = V.dim
        S = sig.entries.reshape(n, t.dim, t.dim, n)
        lhs = contract("xomv,mab->xoabv", S, B)
        rhs = contract("ypbv,xqay,oqp->xoabv", S, S, B)
        Vs = V.space
        rep.compare_arrays(f"{V.name}.mul_central", lhs, rhs, (s, s, Vs), (Vs, s), t.ctx)
        lhs = contract("xohv,h->xov", S, t.base.eta)
        rhs = np.multiply.outer(_delta_matrix(n, t.ctx), t.base.eta).transpose(0, 2, 1)
        rep.compare_arrays(f"{V.name}.unit_central", lhs, rhs, (Vs,), (Vs, s), t.ctx)
    return rep


# ---------------------------------------------------------------- diagrammatic axioms

def diagram_env(t: TransmutationData, comodules, h_comodules=()) -> ex.Env:
    """Generators and crossings for the central-coalgebra and good-comodule diagrams.

    Binds ``Delta`` (comultiplication of H), ``delta[X]`` for every H-comodule
    in ``h_comodules``, and for all pairs of single-leg objects among the
    comodules and H: ``c`` (braiding), ``cinv`` (``c_{Y,X}^{-1}`` bound on
    ``(X, Y)``) and ``sigma`` (half-braiding of H).
    """
    env = ex.Env(t.ctx)
    env.bind("Delta", t.coalgebra.comul)
    objs = {t.space.name: t.coad_comodule}
    for V in list(comodules) + [X for X in h_comodules]:
        if len(V.legs) != 1:
            raise TypeMismatch(f"{V.name}: diagrams need single-leg comodules")
        if V.coalgebra_space == t.space:
            V = V.retyped({t.space: t.hbar})
        objs.setdefault(V.legs[0].name, V)
    for X in h_comodules:
        env.bind(f"delta[{X.legs[0].name}]", t.as_h_comodule(X).coaction if X.coalgebra_space == t.hbar else X.coaction)
    for X in objs.values():
        for Y in objs.values():
            env.bind_crossing("c", X.legs[0], Y.legs[0], braiding_of_comodules(X, Y, t.rform))
            env.bind_crossing("cinv", Y.legs[0], X.legs[0], inverse_braiding_of_comodules(X, Y, t.rform))
        env.bind_crossing("sigma", t.space, X.legs[0], build_half_braiding(t, X))
    return env


def central_coalgebra_sides(H: Space, X: Space):
    """The three members of the central-coalgebra axiom, as ``H⊗X -> X⊗H⊗H`` diagrams."""
    left = ex.seq(
        ex.Gen("Delta") @ ex.Id(X),
        ex.Id(H) @ ex.Swap(H, X, "sigma"),
        ex.Swap(H, X, "cinv") @ ex.Id(H),
    )
    middle = ex.seq(ex.Swap(H, X, "sigma"), ex.Id(X) @ ex.Gen("Delta"))
    right = ex.seq(
        ex.Gen("Delta") @ ex.Id(X),
        ex.Id(H) @ ex.Swap(H, X, "c"),
        ex.Swap(H, X, "sigma") @ ex.Id(H),
    )
    return left, middle, right


def good_comodule_sides(X: Space, Y: Space, H: Space):
    """The three members of the good-comodule axiom, as ``X⊗Y -> X⊗Y⊗H`` diagrams."""
    dX = ex.Gen(f"delta[{X.name}]")
    left = ex.seq(dX @ ex.Id(Y), ex.Id(X) @ ex.Swap(H, Y, "sigma"))
    middle = ex.seq(ex.Swap(X, Y, "c"), ex.Id(Y) @ dX, ex.Swap(Y, X, "c") @ ex.Id(H))
    right = ex.seq(
        dX @ ex.Id(Y),
        ex.Id(X) @ ex.Swap(H, Y, "c"),
        ex.Swap(X, Y, "c") @ ex.Id(H),
        ex.Swap(Y, X, "c") @ ex.Id(H),
    )
    return left, middle, right


def _compare_sides(rep, name, sides, env, evaluate):
    vals = [evaluate(e, env) for e in sides]
    rep.compare(f"{name}.left=middle", vals[0], vals[1])
    rep.compare(f"{name}.middle=right", vals[1], vals[2])


def check_central_coalgebra(t: TransmutationData, probes, evaluate=ex.eval_expr, env=None) -> Report:
    rep = Report("central coalgebra")
    env = env or diagram_env(t, probes)
    for X in probes:
        _compare_sides(rep, X.name, central_coalgebra_sides(t.space, X.legs[0]), env, evaluate)
    return rep


def check_good_comodule(t: TransmutationData, X: ComoduleData, probes, evaluate=ex.eval_expr, env=None) -> Report:
    """Good-comodule axiom for the H-comodule ``X`` against every probe ``Y``."""
    rep = Report(f"good comodule {X.name}")
    env = env or diagram_env(t, probes, [X])
    for Y in probes:
        sides = good_comodule_sides(X.legs[0], Y.legs[0], t.space)
        _compare_sides(rep, f"{X.name}|{Y.name}", sides, env, evaluate)
    return rep


def check_transmutation(t: TransmutationData, probes) -> Report:
    """Everything claimed of a transmutation, on a finite probe set."""
    rep = Report("transmutation")
    rep.extend(check_central_bialgebra(t, probes), "bialgebra.")
    rep.extend(check_braided_commutativity(t), "commutativity.")
    rep.extend(check_yetter_drinfeld(t), "yd.")
    rep.extend(check_half_braiding(t, probes), "sigma.")
    env = diagram_env(t, probes, probes)
    rep.extend(check_central_coalgebra(t, probes, env=env), "eq_central.")
    for X in probes:
        rep.extend(check_good_comodule(t, X, probes, env=env), "eq_good.")
    if t.braided_antipode is not None:
        rep.extend(check_braided_antipode(t), "antipode.")
    else:
        rep.skip("antipode", "not solved")
    return rep
