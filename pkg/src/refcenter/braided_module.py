"""Module braidings on left A-modules acted on by H̄-comodules.

For a right H̄-module algebra ``A``, a comodule ``V`` acts on an A-module ``M``
by ``V▷M = V⊗M`` with ``a(v⊗m) = v0⊗(a.v1)m``.  A module braiding is either
given at category level by a K-map, ``e(v⊗m) = v0⊗K(v1)m``, or at object
level by an H-action ``λ: H⊗M -> M``, ``e(v⊗m) = v0⊗λ(v1⊗m)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import expr as ex
from . import linalg
from .hopf import (
    AModuleData,
    ComoduleData,
    HopfData,
    ModuleAlgebraData,
    NotInvertible,
    RForm,
    _delta_matrix,
    braiding_of_comodules,
    convolution,
    convolution_inverse,
    convolution_unit,
    invert_map,
    make_amodule,
    tensor_comodule,
)
from .report import Report
from .tensor import MultilinearMap, Space, TypeMismatch, contract, identity, legs_shape
from .transmutation import TransmutationData, _d3


class InvalidKMap(ValueError):
    pass


class ReconstructionMismatch(ValueError):
    """A braiding that is not of the form ``v0 ⊗ λ(v1 ⊗ m)``; carries the failing report."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


@dataclass
class KMap:
    """Convolution-invertible ``K: H̄ -> A`` with ``K(1) = 1``."""

    k: MultilinearMap
    k_inv: MultilinearMap

    @property
    def K(self):
        return self.k.entries

    @property
    def Kinv(self):
        return self.k_inv.entries


def make_kmap(K, A: ModuleAlgebraData, base: HopfData) -> KMap:
    """Validate ``K`` (array ``[a, h]`` or map) and solve its convolution inverse."""
    if isinstance(K, MultilinearMap):
        K = K.entries
    K = np.asarray(K, dtype=object)
    if K.shape != (A.dim, base.dim):
        raise TypeMismatch(f"K must map {base.space.name} -> {A.space.name}")
    ctx = A.ctx
    K = np.vectorize(lambda x: ctx(x), otypes=[object])(K)
    if not np.all(contract("ah,h->a", K, base.eta) == A.algebra.eta):
        raise InvalidKMap("K(1) must be the unit of A")
    try:
        kinv = convolution_inverse(K, base.coalgebra, A.algebra)
    except NotInvertible as exc:
        raise InvalidKMap(f"K is not convolution invertible ({exc})") from None
    return KMap(MultilinearMap((base.space,), (A.space,), K, ctx), kinv)


def unit_kmap(A: ModuleAlgebraData, base: HopfData) -> KMap:
    return make_kmap(np.multiply.outer(A.algebra.eta, base.eps), A, base)


# ---------------------------------------------------------------- the action V▷M

def act_on_module(V: ComoduleData, M: AModuleData, A: ModuleAlgebraData, t: TransmutationData | None = None) -> AModuleData:
    """``V▷M`` with ``a(v⊗m) = v0⊗(a.v1)m``.

    If ``M`` carries an H-action λ (``M.haction``) and ``t`` is given, ``V▷M``
    gets ``h.(v⊗m) = v0⊗λ(h↼v1⊗m)``, the structure pulled back along σ.
    """
    if V.coalgebra_space != A.haction.domain[1]:
        raise TypeMismatch(f"{V.name} and {A.name} use different Hopf algebras")
    if M.algebra_space != A.space:
        raise TypeMismatch(f"{M.name} is not a module over {A.name}")
    nv, nm = V.dim, M.dim
    L = contract("xhv,bah,obm->xoavm", V.delta, A.act, M.L)
    legs = V.legs + M.legs
    out = make_amodule(legs, L.reshape(nv * nm, A.dim, nv * nm), A.ctx, A.space, f"{V.name}▷{M.name}")
    if M.haction is not None and t is not None:
        lam = M.haction.entries.reshape(nm, t.dim, nm)
        arr = contract("xgv,khg,okm->xohvm", V.delta, t.hit.entries, lam)
        shape = legs_shape(legs) + (t.dim,) + legs_shape(legs)
        out.haction = MultilinearMap((t.space,) + legs, legs, arr.reshape(shape), A.ctx)
    return out


def with_haction(M: AModuleData, lam) -> AModuleData:
    """Copy of ``M`` carrying the H-action ``lam`` (map ``H⊗M -> M``)."""
    return AModuleData(M.legs, M.amod, M.name, lam)


# ---------------------------------------------------------------- braidings

class ModuleBraiding:
    """Components ``e_{V,N}`` from a K-map or from H-actions on modules.

    For a K-map the H-action used on any module ``N`` is ``λ(h⊗n) = K(h)n``;
    otherwise ``N.haction`` must be present.
    """

    def __init__(self, kmap: KMap | None = None, hspace: Space | None = None):
        self.kmap = kmap
        self.hspace = hspace
        self._cache = {}

    @classmethod
    def from_kmap(cls, K: KMap):
        return cls(kmap=K)

    @classmethod
    def from_action(cls, hspace: Space):
        return cls(hspace=hspace)

    def lam(self, N: AModuleData):
        """λ array ``[n0, h, n]`` for module ``N``."""
        if self.kmap is not None:
            return contract("oam,ah->ohm", N.L, self.kmap.K)
        if N.haction is None:
            raise TypeMismatch(f"{N.name} carries no H-action")
        return N.haction.entries.reshape(N.dim, -1, N.dim)

    def component(self, V: ComoduleData, N: AModuleData) -> MultilinearMap:
        key = (V.name, N.name)
        if key not in self._cache:
            self._cache[key] = _braiding_component(V, N, self.lam(N))
        return self._cache[key]

    def inverse_component(self, V: ComoduleData, N: AModuleData, t: TransmutationData | None = None):
        if self.kmap is not None:
            return inverse_via_convolution(self.kmap, V, N)
        return braiding_inverse_from_action(N, V, t)


def _braiding_component(V: ComoduleData, N: AModuleData, lam):
    arr = contract("xhv,ohm->xovm", V.delta, lam)
    legs = V.legs + N.legs
    shape = legs_shape(legs) * 2
    return MultilinearMap(legs, legs, arr.reshape(shape), N.ctx)


def braiding_from_kmap(K: KMap, V: ComoduleData, M: AModuleData) -> MultilinearMap:
    """``e(v⊗m) = v0⊗K(v1)m``."""
    return _braiding_component(V, M, contract("oam,ah->ohm", M.L, K.K))


def inverse_via_convolution(K: KMap, V: ComoduleData, M: AModuleData) -> MultilinearMap:
    """``e⁻¹(v⊗m) = v0⊗K_inv(v1)m``."""
    return _braiding_component(V, M, contract("oam,ah->ohm", M.L, K.Kinv))


def braiding_from_action(M: AModuleData, V: ComoduleData, lam=None) -> MultilinearMap:
    """``e = (V⊗λ)(δ⊗M)``; ``lam`` defaults to ``M.haction``."""
    lam = M.haction if lam is None else lam
    if lam is None:
        raise TypeMismatch(f"{M.name} carries no H-action")
    if isinstance(lam, MultilinearMap):
        lam = lam.entries
    return _braiding_component(V, M, np.asarray(lam).reshape(M.dim, -1, M.dim))


def braiding_inverse_from_action(M: AModuleData, V: ComoduleData, t: TransmutationData, lam=None) -> MultilinearMap:
    """``e⁻¹ = (V⊗λ)(V⊗S_H⊗M)(δ⊗M)`` with the braided antipode of ``t``."""
    lam = M.haction if lam is None else lam
    if isinstance(lam, MultilinearMap):
        lam = lam.entries
    lam = np.asarray(lam).reshape(M.dim, -1, M.dim)
    return _braiding_component(V, M, contract("okm,kh->ohm", lam, t.SH))


def action_from_kmap(K: KMap, M: AModuleData, t: TransmutationData) -> MultilinearMap:
    """``λ(h⊗m) = K(h)m`` as a map ``H⊗M -> M``."""
    lam = contract("oam,ah->ohm", M.L, K.K)
    shape = legs_shape(M.legs) + (t.dim,) + legs_shape(M.legs)
    return MultilinearMap((t.space,) + M.legs, M.legs, lam.reshape(shape), M.ctx)


def action_from_braiding(e: MultilinearMap, reg: ComoduleData, M: AModuleData, t: TransmutationData, probes=()) -> MultilinearMap:
    """``λ = (ε⊗M) e_{reg,M}``, verified to reproduce ``e`` on ``reg`` and the probes.

    ``probes`` is a list of ``(V, e_V)`` pairs.  Raises ReconstructionMismatch
    if some component is not of the form ``v0⊗λ(v1⊗m)``.
    """
    n = M.dim
    E = e.entries.reshape(reg.dim, n, reg.dim, n)
    lam = contract("x,xohm->ohm", t.base.eps, E)
    shape = legs_shape(M.legs) + (t.dim,) + legs_shape(M.legs)
    out = MultilinearMap((t.space,) + M.legs, M.legs, lam.reshape(shape), M.ctx)
    rep = Report("reconstruction")
    rep.compare(f"{reg.name}", e, _braiding_component(reg, M, lam))
    for V, eV in probes:
        rep.compare(f"{V.name}", eV, _braiding_component(V, M, lam))
    if not rep.ok:
        raise ReconstructionMismatch(f"braiding is not of natural form: {rep.failed_names()}", rep)
    return out


# ---------------------------------------------------------------- checks

def check_reflective_structure(K: KMap, A: ModuleAlgebraData, base: HopfData, rf: RForm, reading="definition") -> Report:
    """The three reflective-structure equations, ``K(1) = 1`` and convolution invertibility.

    eq1: K(h1)(a.h2) = (a.h1)K(h2)
    eq2: K(gh) = K(h1) r(h2|g1) K(g2) r̄(h3|g3)      (reading="definition")
         K(gh) = K(h1) r(h2|g1) K(g2) r(g3|h3)      (reading="printed")
    eq3: K(g).h = r(h1|g1) K(g2) r(g3|h2)

    ``r̄`` is the convolution inverse of ``r``.  The readings match the two
    forms of the first module-braiding axiom in ``module_braiding_sides``.
    """
    rep = Report("reflective structure")
    Kk, MA, act, ctx = K.K, A.algebra.M, A.act, A.ctx
    M, D, R = base.M, base.D, rf.R
    s, hb = A.space, base.space
    D3 = _d3(D)
    lhs = contract("opq,px,qay,xyh->oah", MA, Kk, act, D)
    rhs = contract("opq,pax,qy,xyh->oah", MA, act, Kk, D)
    rep.compare_arrays("eq1", lhs, rhs, (s, hb), (s,), ctx)
    lhs = contract("om,mgh->ogh", Kk, M)
    last = rf.Rinv.T if _reading(reading) == "definition" else R
    rhs = contract("opq,pa,bi,qj,kc,ijkg,abch->ogh", MA, Kk, R, Kk, last, D3, D3)
    rep.compare_arrays("eq2", lhs, rhs, (hb, hb), (s,), ctx)
    lhs = contract("oph,pg->ogh", act, Kk)
    rhs = contract("ai,oj,kb,ijkg,abh->ogh", R, Kk, R, D3, D)
    rep.compare_arrays("eq3", lhs, rhs, (hb, hb), (s,), ctx)
    rep.add("unit", bool(np.all(contract("ah,h->a", Kk, base.eta) == A.algebra.eta)))
    unit = convolution_unit(base.coalgebra, A.algebra)
    rep.compare("convolution_inverse_left", convolution(K.Kinv, Kk, base.coalgebra, A.algebra), unit)
    rep.compare("convolution_inverse_right", convolution(Kk, K.Kinv, base.coalgebra, A.algebra), unit)
    return rep


def a_linearity_report(e: MultilinearMap, VM: AModuleData, rep: Report, name):
    """``e`` commutes with the A-action on ``V▷M``."""
    n = VM.dim
    E = e.entries.reshape(n, n)
    lhs = contract("on,nam->oam", E, VM.L)
    rhs = contract("oan,nm->oam", VM.L, E)
    sp = VM.space
    return rep.compare_arrays(name, lhs, rhs, (VM.algebra_space, sp), (sp,), VM.ctx)


def module_braiding_env(e: ModuleBraiding, probes, M: AModuleData, A: ModuleAlgebraData, base: HopfData, rf: RForm, t=None):
    """Generators ``e[X|M]``, ``e[X⊗Y|M]``, ``e[X|Y▷M]`` and crossings ``c``, ``cinv`` on the probes."""
    env = ex.Env(A.ctx)
    for X in probes:
        env.bind(f"e[{X.name}|{M.name}]", e.component(X, M))
        for Y in probes:
            XY = tensor_comodule(X, Y, base.M)
            env.bind(f"e[{X.name}⊗{Y.name}|{M.name}]", e.component(XY, M))
            YM = act_on_module(Y, M, A, t)
            env.bind(f"e[{X.name}|{Y.name}▷{M.name}]", e.component(X, YM))
            env.bind_crossing("c", X.legs[0], Y.legs[0], braiding_of_comodules(X, Y, rf))
            inv = invert_map(braiding_of_comodules(Y, X, rf))
            env.bind_crossing("cinv", X.legs[0], Y.legs[0], inv)
    return env


READINGS = ("definition", "printed")


def _reading(reading):
    if reading not in READINGS:
        raise ValueError(f"reading must be one of {READINGS}")
    return reading


def module_braiding_sides(X: Space, Y: Space, M, reading="definition"):
    """Members of the two module-braiding axioms on ``X⊗Y⊗M``.

    The first axiom is ``e_{X⊗Y} = (X⊗e_Y)(c_{Y,X}⊗M)(Y⊗e_X)(ψ⊗M)`` where the
    lower crossing ``ψ`` is ``c_{Y,X}^{-1}`` for ``reading="definition"`` and
    ``c_{X,Y}`` for ``reading="printed"`` (the form the K-map equations were
    derived from).  The two agree when ``r`` is triangular.
    """
    ML = tuple(M.legs)
    eX = ex.Gen(f"e[{X.name}|{M.name}]")
    eY = ex.Gen(f"e[{Y.name}|{M.name}]")
    lower = ex.Swap(X, Y, "cinv") if _reading(reading) == "definition" else ex.Swap(X, Y, "c")
    lhs1 = ex.Gen(f"e[{X.name}⊗{Y.name}|{M.name}]")
    rhs1 = ex.seq(
        lower @ ex.Id(ML),
        ex.Id(Y) @ eX,
        ex.Swap(Y, X, "c") @ ex.Id(ML),
        ex.Id(X) @ eY,
    )
    lhs2 = ex.Gen(f"e[{X.name}|{Y.name}▷{M.name}]")
    rhs2 = ex.seq(ex.Swap(X, Y, "c") @ ex.Id(ML), ex.Id(Y) @ eX, ex.Swap(Y, X, "c") @ ex.Id(ML))
    return (lhs1, rhs1), (lhs2, rhs2)


def check_module_braiding(
    e: ModuleBraiding,
    probes,
    M: AModuleData,
    A: ModuleAlgebraData,
    base: HopfData,
    rf: RForm,
    t: TransmutationData | None = None,
    reading="definition",
    evaluate=ex.eval_expr,
) -> Report:
    """Both module-braiding axioms on all probe pairs, ``e_{I,M} = id``, A-linearity and invertibility."""
    rep = Report("module braiding")
    env = module_braiding_env(e, probes, M, A, base, rf, t)
    for X in probes:
        comp = e.component(X, M)
        if X.dim == 1 and np.all(X.delta.reshape(-1) == base.eta):
            rep.compare(f"unit[{X.name}]", comp, _identity_like(comp))
        a_linearity_report(comp, act_on_module(X, M, A), rep, f"a_linear[{X.name}]")
        try:
            invert_map(comp)
            rep.add(f"invertible[{X.name}]", True)
        except linalg.Singular as exc:
            rep.add(f"invertible[{X.name}]", False, detail=str(exc))
        for Y in probes:
            (l1, r1), (l2, r2) = module_braiding_sides(X.legs[0], Y.legs[0], M, reading)
            rep.compare(f"first[{X.name},{Y.name}]", evaluate(l1, env), evaluate(r1, env))
            rep.compare(f"second[{X.name},{Y.name}]", evaluate(l2, env), evaluate(r2, env))
    return rep


def _identity_like(m: MultilinearMap):
    return identity(m.domain, m.ctx)


def check_haction(M: AModuleData, A: ModuleAlgebraData, t: TransmutationData) -> Report:
    """``λ`` is an H-module structure (over •) in the category of A-modules.

    associative: λ(g⊗λ(h⊗m)) = λ(g•h⊗m); unital: λ(1⊗m) = m;
    a_linear: a λ(h⊗m) = λ(h0⊗(a.h1)m) with the coadjoint coaction.
    """
    rep = Report(f"H-action on {M.name}")
    n = M.dim
    lam = M.haction.entries.reshape(n, t.dim, n)
    sp, hs, ctx = M.space, t.space, M.ctx
    lhs = contract("ogp,phm->oghm", lam, lam)
    rhs = contract("okm,kgh->oghm", lam, t.B)
    rep.compare_arrays("associative", lhs, rhs, (hs, hs, sp), (sp,), ctx)
    rep.compare_arrays("unital", contract("ohm,h->om", lam, t.base.eta), _delta_matrix(n, ctx), (sp,), (sp,), ctx)
    lhs = contract("oan,nhm->oahm", M.L, lam)
    rhs = contract("okp,kxh,bax,pbm->oahm", lam, t.coad.entries, A.act, M.L)
    rep.compare_arrays("a_linear", lhs, rhs, (A.space, hs, sp), (sp,), ctx)
    return rep
