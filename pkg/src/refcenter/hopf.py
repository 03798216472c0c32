"""Ordinary Hopf-algebraic structures as structure-constant tensors.

Array conventions (codomain indices first):

* multiplication ``M[o, a, b]``: coefficient of ``b_o`` in ``b_a b_b``
* unit ``eta[o]``, counit ``eps[i]``
* comultiplication ``D[a, b, i]``: coefficient of ``b_a ⊗ b_b`` in ``Δ(b_i)``
* right coaction ``delta[v0, h, v]``: coefficient of ``v_{v0} ⊗ b_h`` in ``δ(v_v)``
* dual R-matrix ``r[a, b] = r(b_a | b_b)``
* right action ``act[o, a, h]``: coefficient of ``b_o`` in ``a.h``
* left module ``L[o, a, m]``: coefficient of ``m_o`` in ``a m``

Multi-leg objects (tensor products of comodules or modules) are flattened
row-major into one index for these formulas.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import linalg
from .report import Report
from .scalar import FieldCtx
from .tensor import (
    UNIT,
    MultilinearMap,
    Space,
    TypeMismatch,
    contract,
    legs_shape,
    zeros,
)


class NotInvertible(ValueError):
    """No convolution inverse; ``rank`` and ``defect`` describe the inconsistent system."""

    def __init__(self, msg, rank=None, defect=None):
        super().__init__(msg)
        self.rank = rank
        self.defect = defect


class NotAHopfAlgebra(ValueError):
    pass


def _dim(legs):
    return int(np.prod(legs_shape(legs)))


def fused_space(legs) -> Space:
    """One space standing for the tensor product of ``legs`` (row-major basis)."""
    legs = tuple(legs)
    if len(legs) == 1:
        return legs[0]
    labels = ["⊗".join(p) for p in product(*(s.basis_labels for s in legs))]
    return Space("⊗".join(s.name for s in legs), _dim(legs), tuple(labels))


def _vec(m: MultilinearMap):
    return m.entries.reshape(-1)


def _delta_matrix(n, ctx):
    out = zeros((n, n), ctx)
    for i in range(n):
        out[i, i] = ctx.one
    return out


# ---------------------------------------------------------------- data types

@dataclass
class AlgebraData:
    space: Space
    mul: MultilinearMap
    unit: MultilinearMap

    def __post_init__(self):
        s = self.space
        if self.mul.domain != (s, s) or self.mul.codomain != (s,):
            raise TypeMismatch(f"multiplication must be {s.name}⊗{s.name} -> {s.name}")
        if self.unit.domain != (UNIT,) or self.unit.codomain != (s,):
            raise TypeMismatch(f"unit must be I -> {s.name}")

    @property
    def ctx(self) -> FieldCtx:
        return self.mul.ctx

    @property
    def dim(self):
        return self.space.dim

    @property
    def M(self):
        return self.mul.entries

    @property
    def eta(self):
        return _vec(self.unit)

    def element(self, label):
        """Basis vector by label."""
        v = zeros((self.dim,), self.ctx)
        v[self.space.basis_labels.index(label)] = self.ctx.one
        return v

    def product(self, x, y):
        return contract("oab,a,b->o", self.M, x, y)

    def retyped(self, space: Space) -> "AlgebraData":
        mp = {self.space: space}
        return AlgebraData(space, self.mul.retyped(mp), self.unit.retyped(mp))


@dataclass
class CoalgebraData:
    space: Space
    comul: MultilinearMap
    counit: MultilinearMap

    def __post_init__(self):
        s = self.space
        if self.comul.domain != (s,) or self.comul.codomain != (s, s):
            raise TypeMismatch(f"comultiplication must be {s.name} -> {s.name}⊗{s.name}")
        if self.counit.domain != (s,) or self.counit.codomain != (UNIT,):
            raise TypeMismatch(f"counit must be {s.name} -> I")

    @property
    def ctx(self) -> FieldCtx:
        return self.comul.ctx

    @property
    def dim(self):
        return self.space.dim

    @property
    def D(self):
        return self.comul.entries

    @property
    def eps(self):
        return _vec(self.counit)

    def retyped(self, space: Space) -> "CoalgebraData":
        mp = {self.space: space}
        return CoalgebraData(space, self.comul.retyped(mp), self.counit.retyped(mp))


@dataclass
class HopfData:
    algebra: AlgebraData
    coalgebra: CoalgebraData
    antipode: MultilinearMap | None = None
    name: str = "H"

    def __post_init__(self):
        if self.algebra.space != self.coalgebra.space:
            raise TypeMismatch("algebra and coalgebra live on different spaces")

    @property
    def space(self):
        return self.algebra.space

    @property
    def ctx(self):
        return self.algebra.ctx

    @property
    def dim(self):
        return self.space.dim

    M = property(lambda self: self.algebra.M)
    eta = property(lambda self: self.algebra.eta)
    D = property(lambda self: self.coalgebra.D)
    eps = property(lambda self: self.coalgebra.eps)

    @property
    def S(self):
        if self.antipode is None:
            raise NotAHopfAlgebra("antipode not solved yet")
        return self.antipode.entries

    def with_antipode(self) -> "HopfData":
        """Copy carrying the solved antipode (unchanged if already present)."""
        if self.antipode is not None:
            return self
        return HopfData(self.algebra, self.coalgebra, solve_antipode(self), self.name)

    def label(self, i):
        return self.space.basis_labels[i]

    def retyped(self, space: Space, name=None) -> "HopfData":
        S = None if self.antipode is None else self.antipode.retyped({self.space: space})
        return HopfData(self.algebra.retyped(space), self.coalgebra.retyped(space), S, name or self.name)

    def index(self, label):
        return self.space.basis_labels.index(label)


@dataclass
class RForm:
    """Dual R-matrix ``r: H⊗H -> k`` with its convolution inverse."""

    r: MultilinearMap
    r_inv: MultilinearMap

    @property
    def R(self):
        d = self.r.domain[0].dim
        return self.r.entries.reshape(d, d)

    @property
    def Rinv(self):
        d = self.r_inv.domain[0].dim
        return self.r_inv.entries.reshape(d, d)

    def retyped(self, mapping) -> "RForm":
        return RForm(self.r.retyped(mapping), self.r_inv.retyped(mapping))


@dataclass
class ComoduleData:
    """Right comodule ``δ: V -> V⊗H``; ``legs`` may list several factors."""

    legs: tuple
    coaction: MultilinearMap
    name: str = ""

    def __post_init__(self):
        self.legs = tuple(self.legs)
        if not self.name:
            self.name = "⊗".join(s.name for s in self.legs)
        cod = self.coaction.codomain
        if self.coaction.domain != self.legs or cod[:-1] != self.legs:
            raise TypeMismatch(f"coaction of {self.name} must be V -> V⊗H")

    @property
    def coalgebra_space(self):
        return self.coaction.codomain[-1]

    @property
    def ctx(self):
        return self.coaction.ctx

    @property
    def dim(self):
        return _dim(self.legs)

    @property
    def delta(self):
        """Flattened coaction array ``[v0, h, v]``."""
        n = self.dim
        return self.coaction.entries.reshape(n, self.coalgebra_space.dim, n)

    @property
    def space(self):
        return fused_space(self.legs)

    def retyped(self, mapping, name=None) -> "ComoduleData":
        m = self.coaction.retyped(mapping)
        return ComoduleData(m.domain, m, name or self.name)


@dataclass
class ModuleAlgebraData:
    """Right H-module algebra ``A⊗H -> A``, ``a⊗h -> a.h``."""

    algebra: AlgebraData
    haction: MultilinearMap
    name: str = "A"

    @property
    def space(self):
        return self.algebra.space

    @property
    def ctx(self):
        return self.algebra.ctx

    @property
    def act(self):
        return self.haction.entries

    @property
    def dim(self):
        return self.algebra.dim


@dataclass
class AModuleData:
    """Left module ``A⊗M -> M`` over an ordinary algebra; ``legs`` may list several factors."""

    legs: tuple
    amod: MultilinearMap
    name: str = "M"
    haction: MultilinearMap | None = field(default=None, repr=False)

    def __post_init__(self):
        self.legs = tuple(self.legs)

    @property
    def ctx(self):
        return self.amod.ctx

    @property
    def dim(self):
        return _dim(self.legs)

    @property
    def algebra_space(self):
        return self.amod.domain[0]

    @property
    def L(self):
        n = self.dim
        return self.amod.entries.reshape(n, self.algebra_space.dim, n)

    @property
    def space(self):
        return fused_space(self.legs)


# ---------------------------------------------------------------- builders

def make_algebra(space, M, eta, ctx) -> AlgebraData:
    return AlgebraData(
        space,
        MultilinearMap((space, space), (space,), M, ctx),
        MultilinearMap((UNIT,), (space,), np.asarray(eta, dtype=object).reshape(-1, 1), ctx),
    )


def make_coalgebra(space, D, eps, ctx) -> CoalgebraData:
    return CoalgebraData(
        space,
        MultilinearMap((space,), (space, space), D, ctx),
        MultilinearMap((space,), (UNIT,), np.asarray(eps, dtype=object).reshape(1, -1), ctx),
    )


def ground_algebra(ctx, name="k") -> AlgebraData:
    k = Space(name, 1, ("1",))
    M = zeros((1, 1, 1), ctx)
    M[0, 0, 0] = ctx.one
    return make_algebra(k, M, [ctx.one], ctx)


def tensor_coalgebra(c1: CoalgebraData, c2: CoalgebraData) -> CoalgebraData:
    """``C1⊗C2`` on a fused space, ``Δ(a⊗b) = a1⊗b1 ⊗ a2⊗b2``."""
    space = fused_space((c1.space, c2.space))
    n1, n2 = c1.dim, c2.dim
    D = contract("xzi,ywj->xyzwij", c1.D, c2.D).reshape(n1 * n2, n1 * n2, n1 * n2)
    eps = np.multiply.outer(c1.eps, c2.eps).reshape(-1)
    return make_coalgebra(space, D, eps, c1.ctx)


def tensor_algebra(a1: AlgebraData, a2: AlgebraData, name=None) -> AlgebraData:
    """Ordinary tensor product algebra on a fused space."""
    space = fused_space((a1.space, a2.space))
    if name:
        space = space.renamed(name)
    n1, n2 = a1.dim, a2.dim
    M = contract("xab,ycd->xyacbd", a1.M, a2.M).reshape(n1 * n2, n1 * n2, n1 * n2)
    eta = np.multiply.outer(a1.eta, a2.eta).reshape(-1)
    return make_algebra(space, M, eta, a1.ctx)


def make_comodule(legs, delta, ctx, hspace, name="") -> ComoduleData:
    legs = tuple(legs)
    shape = legs_shape(legs) + (hspace.dim,) + legs_shape(legs)
    m = MultilinearMap(legs, legs + (hspace,), np.asarray(delta, dtype=object).reshape(shape), ctx)
    return ComoduleData(legs, m, name)


def make_amodule(legs, L, ctx, aspace, name="M") -> AModuleData:
    legs = tuple(legs)
    shape = legs_shape(legs) + (aspace.dim,) + legs_shape(legs)
    m = MultilinearMap((aspace,) + legs, legs, np.asarray(L, dtype=object).reshape(shape), ctx)
    return AModuleData(legs, m, name)


def make_module_algebra(algebra: AlgebraData, act, hspace, name="A") -> ModuleAlgebraData:
    m = MultilinearMap((algebra.space, hspace), (algebra.space,), act, algebra.ctx)
    return ModuleAlgebraData(algebra, m, name)


def regular_amodule(alg: AlgebraData, name=None) -> AModuleData:
    """``A`` as a left module over itself (on a renamed copy of its space)."""
    sp = alg.space.renamed(name or f"{alg.space.name}_reg")
    return make_amodule((sp,), alg.M, alg.ctx, alg.space, sp.name)


# ---------------------------------------------------------------- checks

def check_algebra(alg: AlgebraData, title="algebra") -> Report:
    rep = Report(title)
    M, eta, ctx, s = alg.M, alg.eta, alg.ctx, alg.space
    n = alg.dim
    lhs = contract("opc,pab->oabc", M, M)
    rhs = contract("oaq,qbc->oabc", M, M)
    rep.compare_arrays("associativity", lhs, rhs, (s, s, s), (s,), ctx)
    ident = _delta_matrix(n, ctx)
    rep.compare_arrays("unit_left", contract("oub,u->ob", M, eta), ident, (s,), (s,), ctx)
    rep.compare_arrays("unit_right", contract("oau,u->oa", M, eta), ident, (s,), (s,), ctx)
    return rep


def check_coalgebra(c: CoalgebraData, title="coalgebra") -> Report:
    rep = Report(title)
    D, eps, ctx, s = c.D, c.eps, c.ctx, c.space
    n = c.dim
    lhs = contract("xyp,pzi->xyzi", D, D)
    rhs = contract("xpi,yzp->xyzi", D, D)
    rep.compare_arrays("coassociativity", lhs, rhs, (s,), (s, s, s), ctx)
    ident = _delta_matrix(n, ctx)
    rep.compare_arrays("counit_left", contract("u,uyi->yi", eps, D), ident, (s,), (s,), ctx)
    rep.compare_arrays("counit_right", contract("u,yui->yi", eps, D), ident, (s,), (s,), ctx)
    return rep


def check_bialgebra(h: HopfData, title="bialgebra") -> Report:
    """Algebra axioms, coalgebra axioms, and multiplicativity of Δ and ε."""
    rep = Report(title)
    rep.extend(check_algebra(h.algebra), "algebra.")
    rep.extend(check_coalgebra(h.coalgebra), "coalgebra.")
    M, eta, D, eps, ctx, s = h.M, h.eta, h.D, h.eps, h.ctx, h.space
    lhs = contract("xym,mab->xyab", D, M)
    rhs = contract("xpq,yrt,pra,qtb->xyab", M, M, D, D)
    rep.compare_arrays("comul_multiplicative", lhs, rhs, (s, s), (s, s), ctx)
    rep.compare_arrays(
        "comul_unital", contract("xym,m->xy", D, eta), np.multiply.outer(eta, eta), (UNIT,), (s, s), ctx
    )
    rep.compare_arrays(
        "counit_multiplicative",
        contract("m,mab->ab", eps, M),
        np.multiply.outer(eps, eps),
        (s, s),
        (UNIT,),
        ctx,
    )
    rep.add("counit_unital", contract("m,m->", eps, eta) == ctx.one)
    return rep


def check_antipode(h: HopfData, S=None, title="antipode") -> Report:
    rep = Report(title)
    S = h.S if S is None else (S.entries if isinstance(S, MultilinearMap) else S)
    M, eta, D, eps, ctx, s = h.M, h.eta, h.D, h.eps, h.ctx, h.space
    target = np.multiply.outer(eta, eps)
    rep.compare_arrays("S_left", contract("opq,pa,aqi->oi", M, S, D), target, (s,), (s,), ctx)
    rep.compare_arrays("S_right", contract("opq,qb,pbi->oi", M, S, D), target, (s,), (s,), ctx)
    return rep


def check_hopf(h: HopfData, title="hopf") -> Report:
    """Bialgebra axioms, then the antipode (solved if absent; skipped if the bialgebra fails)."""
    rep = check_bialgebra(h, title)
    if not rep.ok:
        rep.skip("antipode", "bialgebra axioms fail")
        return rep
    if h.antipode is None:
        try:
            S = solve_antipode(h)
        except NotAHopfAlgebra as exc:
            rep.add("antipode.exists", False, detail=str(exc))
            return rep
        rep.add("antipode.exists", True)
    else:
        S = h.antipode
    rep.extend(check_antipode(h, S), "antipode.")
    return rep


# ---------------------------------------------------------------- Sweedler powers, convolution

def sweedler_power(c: CoalgebraData, n: int) -> MultilinearMap:
    """Iterated comultiplication ``C -> C^{⊗(n+1)}`` (n = 0 gives the identity)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    d, ctx, s = c.dim, c.ctx, c.space
    P = _delta_matrix(d, ctx)
    for k in range(n):
        # split the first output leg: (Δ ⊗ id^k) ∘ P
        P = np.tensordot(c.D, P, axes=([2], [0]))
    return MultilinearMap((s,), (s,) * (n + 1), P, ctx)


def invert_map(f: MultilinearMap) -> MultilinearMap:
    """Inverse of an invertible map (raises linalg.Singular)."""
    inv = linalg.inverse_matrix(f.matrix().tolist(), f.ctx)
    shape = legs_shape(f.domain) + legs_shape(f.codomain)
    return MultilinearMap(f.codomain, f.domain, np.array(inv, dtype=object).reshape(shape), f.ctx)


def _as_array(f):
    return f.entries.reshape(f.codomain[0].dim, -1) if isinstance(f, MultilinearMap) else f


def convolution(f, g, C: CoalgebraData, A: AlgebraData) -> MultilinearMap:
    """``f * g = μ_A ∘ (f⊗g) ∘ Δ_C`` for maps ``C -> A``."""
    F, G = _as_array(f), _as_array(g)
    if F.shape != (A.dim, C.dim) or G.shape != (A.dim, C.dim):
        raise TypeMismatch("convolution operands must map C -> A")
    out = contract("opq,pa,qb,abc->oc", A.M, F, G, C.D)
    return MultilinearMap((C.space,), (A.space,), out, A.ctx)


def convolution_unit(C: CoalgebraData, A: AlgebraData) -> MultilinearMap:
    return MultilinearMap((C.space,), (A.space,), np.multiply.outer(A.eta, C.eps), A.ctx)


def _convolution_system(F, C, A, side):
    """Coefficient matrix of ``x -> F * x`` (side 'left') or ``x -> x * F`` (side 'right')."""
    if side == "left":
        T = contract("opq,pa,abc->ocqb", A.M, F, C.D)
    else:
        T = contract("opq,qb,abc->ocpa", A.M, F, C.D)
    n = A.dim * C.dim
    return T.reshape(n, n)


def convolution_inverse(f, C: CoalgebraData, A: AlgebraData) -> MultilinearMap:
    """Two-sided convolution inverse of ``f: C -> A`` by an exact linear solve.

    Raises NotInvertible when the stacked system ``f*x = ηε = x*f`` is inconsistent.
    """
    F = _as_array(f)
    if F.shape != (A.dim, C.dim):
        raise TypeMismatch("f must map C -> A")
    ctx = A.ctx
    rhs = np.multiply.outer(A.eta, C.eps).reshape(-1)
    rows = np.concatenate(
        [_convolution_system(F, C, A, "left"), _convolution_system(F, C, A, "right")]
    )
    b = list(rhs) + list(rhs)
    try:
        x, null = linalg.solve(rows.tolist(), b, ctx)
    except linalg.InconsistentSystem as exc:
        raise NotInvertible(f"no convolution inverse: {exc}", exc.rank, exc.defect) from None
    if null:
        # a two-sided inverse is unique; a kernel means f was not invertible after all
        raise NotInvertible("convolution inverse not unique", None, None)
    X = np.array(x, dtype=object).reshape(A.dim, C.dim)
    return MultilinearMap((C.space,), (A.space,), X, ctx)


def solve_antipode(h: HopfData) -> MultilinearMap:
    """Antipode as the convolution inverse of the identity; both axioms re-verified."""
    ctx = h.ctx
    ident = _delta_matrix(h.dim, ctx)
    try:
        S = convolution_inverse(ident, h.coalgebra, h.algebra)
    except NotInvertible as exc:
        raise NotAHopfAlgebra(f"identity has no convolution inverse ({exc})") from None
    rep = check_antipode(h, S)
    if not rep.ok:
        raise NotAHopfAlgebra(f"solved antipode fails {rep.failed_names()}")
    return S


# ---------------------------------------------------------------- grouplikes, comodules

def grouplikes(h: HopfData) -> list:
    """Grouplike elements among the basis vectors and their products.

    Only grouplikes appearing as basis elements (or products of such) are
    found; the zoo algebras all have grouplike-adapted bases.
    """
    ctx, d = h.ctx, h.dim
    found = []

    def is_grouplike(v):
        if contract("i,i->", h.eps, v) != ctx.one:
            return False
        return bool(np.all(contract("abi,i->ab", h.D, v) == np.multiply.outer(v, v)))

    def known(v):
        return any(np.all(v == w) for w in found)

    for i in range(d):
        v = zeros((d,), ctx)
        v[i] = ctx.one
        if is_grouplike(v) and not known(v):
            found.append(v)
    grown = True
    while grown:
        grown = False
        for a in list(found):
            for b in list(found):
                p = h.algebra.product(a, b)
                if not known(p):
                    found.append(p)
                    grown = True
    return found


def trivial_comodule(h: HopfData, name="triv") -> ComoduleData:
    sp = Space(name, 1, ("v",))
    return make_comodule((sp,), h.eta.reshape(1, -1, 1), h.ctx, h.space, name)


def character_comodule(h: HopfData, g, name=None) -> ComoduleData:
    """One-dimensional comodule ``v -> v⊗g`` for a grouplike ``g``."""
    if name is None:
        nz = [i for i, x in enumerate(g) if x]
        name = "chi_" + (h.label(nz[0]) if len(nz) == 1 else "g")
    sp = Space(name, 1, ("v",))
    return make_comodule((sp,), np.asarray(g, dtype=object).reshape(1, -1, 1), h.ctx, h.space, name)


def regular_comodule(h: HopfData, name="reg") -> ComoduleData:
    sp = h.space.renamed(name)
    return make_comodule((sp,), h.D, h.ctx, h.space, name)


def tensor_comodule(V: ComoduleData, W: ComoduleData, M) -> ComoduleData:
    """``V⊗W`` with ``δ(v⊗w) = v0⊗w0⊗v1 w1``; ``M`` is the multiplication array of H."""
    d = contract("xav,ybw,hab->xyhvw", V.delta, W.delta, M)
    legs = V.legs + W.legs
    shape = legs_shape(legs) + (V.coalgebra_space.dim,) + legs_shape(legs)
    return make_comodule(legs, d.reshape(shape), V.ctx, V.coalgebra_space, f"{V.name}⊗{W.name}")


def check_comodule(V: ComoduleData, c: CoalgebraData, title=None) -> Report:
    rep = Report(title or f"comodule {V.name}")
    ctx, dl, sp, hs = V.ctx, V.delta, V.space, c.space
    lhs = contract("uav,xbu->xbav", dl, dl)  # (δ⊗id)δ: [v00, v01, v1, v]
    rhs = contract("xhv,abh->xabv", dl, c.D)
    rep.compare_arrays("coassociativity", lhs, rhs, (sp,), (sp, hs, hs), ctx)
    rep.compare_arrays(
        "counit", contract("xhv,h->xv", dl, c.eps), _delta_matrix(V.dim, ctx), (sp,), (sp,), ctx
    )
    return rep


def check_amodule(M: AModuleData, A: AlgebraData, title=None) -> Report:
    rep = Report(title or f"A-module {M.name}")
    L, ctx, sp, s = M.L, M.ctx, M.space, A.space
    lhs = contract("opm,pab->oabm", L, A.M)
    rhs = contract("oan,nbm->oabm", L, L)
    rep.compare_arrays("associativity", lhs, rhs, (s, s, sp), (sp,), ctx)
    rep.compare_arrays(
        "unit", contract("opm,p->om", L, A.eta), _delta_matrix(M.dim, ctx), (sp,), (sp,), ctx
    )
    return rep


def check_module_algebra(A: ModuleAlgebraData, h: HopfData, title=None) -> Report:
    """Right-action axioms and the module-algebra laws ``(ab).h = (a.h1)(b.h2)``, ``1.h = ε(h)1``."""
    rep = Report(title or f"module algebra {A.name}")
    act, MA, etaA, ctx = A.act, A.algebra.M, A.algebra.eta, A.ctx
    s, hs = A.space, h.space
    rep.extend(check_algebra(A.algebra), "algebra.")
    lhs = contract("oam,mgh->oagh", act, h.M)
    rhs = contract("oph,pag->oagh", act, act)
    rep.compare_arrays("action_associative", lhs, rhs, (s, hs, hs), (s,), ctx)
    rep.compare_arrays(
        "action_unital", contract("oau,u->oa", act, h.eta), _delta_matrix(A.dim, ctx), (s,), (s,), ctx
    )
    lhs = contract("oph,pab->oabh", act, MA)
    rhs = contract("opq,pax,qby,xyh->oabh", MA, act, act, h.D)
    rep.compare_arrays("product_compatible", lhs, rhs, (s, s, hs), (s,), ctx)
    rep.compare_arrays(
        "unit_compatible",
        contract("oph,p->oh", act, etaA),
        np.multiply.outer(etaA, h.eps),
        (hs,),
        (s,),
        ctx,
    )
    return rep


# ---------------------------------------------------------------- dual R-matrices

def rform_from_array(h: HopfData, R, R_inv=None) -> RForm:
    """Wrap an ``r[a, b]`` table; the convolution inverse is solved when not given."""
    ctx, s = h.ctx, h.space
    r = MultilinearMap((s, s), (UNIT,), np.asarray(R, dtype=object).reshape(1, h.dim, h.dim), ctx)
    if R_inv is None:
        R_inv = rform_inverse(h, r)
    else:
        R_inv = MultilinearMap((s, s), (UNIT,), np.asarray(R_inv, dtype=object).reshape(1, h.dim, h.dim), ctx)
    return RForm(r, R_inv)


def rform_inverse(h: HopfData, r: MultilinearMap) -> MultilinearMap:
    HH = tensor_coalgebra(h.coalgebra, h.coalgebra)
    k = ground_algebra(h.ctx)
    inv = convolution_inverse(r.entries.reshape(1, -1), HH, k)
    return MultilinearMap((h.space, h.space), (UNIT,), inv.entries.reshape(1, h.dim, h.dim), h.ctx)


def check_rform(h: HopfData, rf: RForm, title="rform") -> Report:
    """Dual quasitriangularity identities.

    hexagon_1: r(ab|c) = r(a|c1) r(b|c2)
    hexagon_2: r(a|bc) = r(a1|c) r(a2|b)
    quasi_commutativity: b1 a1 r(a2|b2) = r(a1|b1) a2 b2
    unit_left / unit_right: r(1|.) = ε = r(.|1)
    convolution_inverse: r_inv is a two-sided convolution inverse on H⊗H
    """
    rep = Report(title)
    R, M, D, eta, eps, ctx, s = rf.R, h.M, h.D, h.eta, h.eps, h.ctx, h.space
    I = (UNIT,)
    rep.compare_arrays(
        "hexagon_1", contract("mc,mab->abc", R, M), contract("ax,by,xyc->abc", R, R, D), (s, s, s), I, ctx
    )
    rep.compare_arrays(
        "hexagon_2", contract("am,mbc->abc", R, M), contract("xya,xc,yb->abc", D, R, R), (s, s, s), I, ctx
    )
    lhs = contract("xya,zwb,ozx,yw->oab", D, D, M, R)
    rhs = contract("xya,zwb,xz,oyw->oab", D, D, R, M)
    rep.compare_arrays("quasi_commutativity", lhs, rhs, (s, s), (s,), ctx)
    rep.compare_arrays("unit_left", contract("u,ub->b", eta, R), eps, (s,), I, ctx)
    rep.compare_arrays("unit_right", contract("au,u->a", R, eta), eps, (s,), I, ctx)
    HH = tensor_coalgebra(h.coalgebra, h.coalgebra)
    k = ground_algebra(ctx)
    rv, riv = R.reshape(1, -1), rf.Rinv.reshape(1, -1)
    unit = convolution_unit(HH, k)
    left = convolution(riv, rv, HH, k)
    right = convolution(rv, riv, HH, k)
    rep.compare("convolution_inverse_left", left, unit)
    rep.compare("convolution_inverse_right", right, unit)
    return rep


def braiding_of_comodules(V: ComoduleData, W: ComoduleData, rf: RForm) -> MultilinearMap:
    """``c(v⊗w) = w0⊗v0 r(v1|w1)``."""
    c = contract("xav,ybw,ab->yxvw", V.delta, W.delta, rf.R)
    shape = legs_shape(W.legs + V.legs) + legs_shape(V.legs + W.legs)
    return MultilinearMap(V.legs + W.legs, W.legs + V.legs, c.reshape(shape), V.ctx)


def inverse_braiding_of_comodules(V: ComoduleData, W: ComoduleData, rf: RForm) -> MultilinearMap:
    """Inverse of ``c_{V,W}``: ``w⊗v -> v0⊗w0 r_inv(v1|w1)``."""
    c = contract("xav,ybw,ab->xywv", V.delta, W.delta, rf.Rinv)
    shape = legs_shape(V.legs + W.legs) + legs_shape(W.legs + V.legs)
    return MultilinearMap(W.legs + V.legs, V.legs + W.legs, c.reshape(shape), V.ctx)


def comodule_map_report(f: MultilinearMap, V: ComoduleData, W: ComoduleData, name, rep: Report):
    """Record whether ``f: V -> W`` is colinear: ``δ_W f = (f⊗id) δ_V``."""
    F = f.entries.reshape(W.dim, V.dim)
    lhs = contract("xhw,wv->xhv", W.delta, F)
    rhs = contract("xu,uhv->xhv", F, V.delta)
    return rep.compare_arrays(name, lhs, rhs, (V.space,), (W.space, V.coalgebra_space), V.ctx)
