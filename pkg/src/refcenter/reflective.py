"""Reflective algebras ``A[H] = H̄#A`` and σ-twisted tensor products."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .braided_module import KMap, make_kmap
from .hopf import (
    AlgebraData,
    AModuleData,
    ComoduleData,
    HopfData,
    ModuleAlgebraData,
    _delta_matrix,
    check_algebra,
    comodule_map_report,
    fused_space,
    make_algebra,
    make_amodule,
    tensor_comodule,
)
from .report import Report
from .tensor import MultilinearMap, Space, TypeMismatch, contract, transposition
from .transmutation import TransmutationData, build_half_braiding


class NotComoduleAlgebra(ValueError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class AssocFailure(ValueError):
    """Twisted multiplication is not associative or unital; ``report`` holds the witness."""

    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


class NotAlgebraMap(ValueError):
    def __init__(self, msg, report=None):
        super().__init__(msg)
        self.report = report


def _smash_space(R: Space, A: Space, name=None):
    labels = tuple(f"{r}#{a}" for r, a in product(R.basis_labels, A.basis_labels))
    return Space(name or f"{R.name}#{A.name}", R.dim * A.dim, labels)


@dataclass
class SmashAlgebraData:
    underlying: AlgebraData
    R: AlgebraData
    R_coaction: ComoduleData
    A: ModuleAlgebraData
    haction: MultilinearMap | None = None
    embedded_kmap: KMap | None = None
    transmutation: TransmutationData | None = None

    @property
    def space(self):
        return self.underlying.space

    @property
    def ctx(self):
        return self.underlying.ctx

    @property
    def dim(self):
        return self.underlying.dim

    @property
    def module_algebra(self) -> ModuleAlgebraData:
        if self.haction is None:
            raise TypeMismatch("smash algebra has no H̄-action")
        return ModuleAlgebraData(self.underlying, self.haction, self.space.name)

    def element(self, r_label, a_label):
        return self.underlying.element(f"{r_label}#{a_label}")

    def product(self, x, y):
        return self.underlying.product(x, y)


def check_comodule_algebra(R: AlgebraData, V: ComoduleData, hbar: HopfData, title="comodule algebra") -> Report:
    """``δ(rs) = r0 s0 ⊗ r1 s1`` and ``δ(1) = 1⊗1``."""
    rep = Report(title)
    if V.legs != (R.space,):
        raise TypeMismatch("coaction must live on the algebra's space")
    rep.extend(check_algebra(R), "algebra.")
    RR = tensor_comodule(V, V.retyped({}, V.name), hbar.M)
    comodule_map_report(R.mul, RR, V, "mul_colinear", rep)
    rep.compare_arrays(
        "unit_colinear",
        contract("xhv,v->xh", V.delta, R.eta),
        np.multiply.outer(R.eta, hbar.eta),
        (),
        (R.space, V.coalgebra_space),
        R.ctx,
    )
    return rep


def generalized_smash(R: AlgebraData, coaction: ComoduleData, A: ModuleAlgebraData, hbar: HopfData, name=None, check=True) -> SmashAlgebraData:
    """``R#A`` with ``(r#x)(s#y) = r s0 # (x.s1) y``."""
    if check:
        rep = check_comodule_algebra(R, coaction, hbar)
        if not rep.ok:
            raise NotComoduleAlgebra(f"not a comodule algebra: {rep.failed_names()}", rep)
    nr, na = R.dim, A.dim
    mul = contract("ort,tks,qxk,pqy->oprxsy", R.M, coaction.delta, A.act, A.algebra.M)
    n = nr * na
    sp = _smash_space(R.space, A.space, name)
    eta = np.multiply.outer(R.eta, A.algebra.eta).reshape(-1)
    alg = make_algebra(sp, mul.reshape(n, n, n), eta, R.ctx)
    return SmashAlgebraData(alg, R, coaction, A)


def reflective_algebra(t: TransmutationData, A: ModuleAlgebraData, name=None) -> SmashAlgebraData:
    """``A[H] = H̄#A`` with ``(g#x)(h#y) = g•h0 # (x.h1)y``, its module-algebra structure and ``K(h) = h#1``."""
    s = generalized_smash(t.algebra, t.coad_comodule, A, t.base, name or f"{A.name}[{t.space.name}]", check=False)
    s.transmutation = t
    s.haction = reflective_module_algebra_structure(s, t)
    s.embedded_kmap = canonical_kmap(s, t.base)
    return s


def reflective_module_algebra_structure(s: SmashAlgebraData, t: TransmutationData) -> MultilinearMap:
    """``(g#x).h = g↼h1 # x.h2``."""
    act = contract("ogx,pay,xyh->opgah", t.hit.entries, s.A.act, t.base.D)
    n = s.dim
    arr = act.reshape(n, n, t.base.dim)
    return MultilinearMap((s.space, t.hbar), (s.space,), arr, s.ctx)


def canonical_kmap(s: SmashAlgebraData, base: HopfData) -> KMap:
    """``K(h) = h#1``."""
    K = np.multiply.outer(_delta_matrix(base.dim, s.ctx), s.A.algebra.eta).transpose(0, 2, 1)
    return make_kmap(K.reshape(s.dim, base.dim), s.module_algebra, base)


def check_smash(s: SmashAlgebraData, hbar: HopfData | None = None) -> Report:
    """Associativity, unit ``1#1``, ``A`` embedded as ``1#A`` and (if present) the module-algebra structure."""
    from .hopf import check_module_algebra

    rep = Report(f"smash algebra {s.space.name}")
    rep.extend(check_algebra(s.underlying), "algebra.")
    nr, na = s.R.dim, s.A.dim
    ctx = s.ctx
    emb = np.multiply.outer(s.R.eta, _delta_matrix(na, ctx)).reshape(nr * na, na)
    lhs = contract("om,ma->oa", emb, s.A.algebra.M.reshape(na, na * na)).reshape(nr * na, na, na)
    rhs = contract("opq,pa,qb->oab", s.underlying.M, emb, emb)
    rep.compare_arrays("A_embeds", lhs, rhs, (s.A.space, s.A.space), (s.space,), ctx)
    if s.haction is not None and hbar is not None:
        rep.extend(check_module_algebra(s.module_algebra, hbar), "module_algebra.")
    return rep


# ---------------------------------------------------------------- A[H]-modules

def split_module(M: AModuleData, s: SmashAlgebraData, t: TransmutationData):
    """An ``A[H]``-module as ``(A-module, λ)`` with ``a m = (1#a)m`` and ``λ(h⊗m) = (h#1)m``."""
    nr, na, n = s.R.dim, s.A.dim, M.dim
    L = M.L.reshape(n, nr, na, n)
    La = contract("ohxm,h->oxm", L, s.R.eta)
    lam = contract("ohxm,x->ohm", L, s.A.algebra.eta)
    Am = make_amodule(M.legs, La, M.ctx, s.A.space, M.name)
    shape = tuple(x.dim for x in M.legs)
    Am.haction = MultilinearMap((t.space,) + M.legs, M.legs, lam.reshape(shape + (t.dim,) + shape), M.ctx)
    return Am


def combine_module(M: AModuleData, s: SmashAlgebraData) -> AModuleData:
    """Inverse of ``split_module``: ``(h#x) m = λ(h⊗ x m)``."""
    n = M.dim
    lam = M.haction.entries.reshape(n, -1, n)
    L = contract("ohp,pxm->ohxm", lam, M.L).reshape(n, s.dim, n)
    return make_amodule(M.legs, L, M.ctx, s.space, M.name)


# ---------------------------------------------------------------- twisted products

@dataclass
class TwistedProductData:
    underlying: AlgebraData
    A: AlgebraData
    B: AlgebraData
    half_braiding_used: MultilinearMap

    @property
    def space(self):
        return self.underlying.space


def twisted_mul_array(A: AlgebraData, B: AlgebraData, sigma):
    """``μ = (μ_A⊗μ_B)(A⊗σ_{B,A}⊗B)`` with ``sigma[a', b', b, a]``."""
    na, nb = A.dim, B.dim
    S = sigma.entries.reshape(na, nb, nb, na) if isinstance(sigma, MultilinearMap) else sigma
    # (a⊗b)(c⊗d) = a c' ⊗ b' d with σ(b⊗c) = c'⊗b'
    mul = contract("oax,qyd,xybc->oqabcd", A.M, B.M, S)
    n = na * nb
    return mul.reshape(n, n, n)


def check_twisted(tp: TwistedProductData) -> Report:
    rep = Report("twisted product")
    rep.extend(check_algebra(tp.underlying))
    return rep


def twisted_product(A: AlgebraData, B: AlgebraData, sigma: MultilinearMap, name=None, check=True) -> TwistedProductData:
    """``A⊗_σ B``; raises AssocFailure (with witness report) if not an algebra."""
    if sigma.domain != (B.space, A.space) or sigma.codomain != (A.space, B.space):
        raise TypeMismatch(f"sigma must map {B.space.name}⊗{A.space.name} -> {A.space.name}⊗{B.space.name}")
    sp = fused_space((A.space, B.space))
    sp = Space(name or f"{A.space.name}⊗σ{B.space.name}", sp.dim, sp.basis_labels)
    eta = np.multiply.outer(A.eta, B.eta).reshape(-1)
    alg = make_algebra(sp, twisted_mul_array(A, B, sigma), eta, A.ctx)
    tp = TwistedProductData(alg, A, B, sigma)
    if check:
        rep = check_twisted(tp)
        if not rep.ok:
            raise AssocFailure(f"twisted product is not an algebra: {rep.failed_names()}", rep)
    return tp


def plain_tensor_product(A: AlgebraData, B: AlgebraData) -> TwistedProductData:
    return twisted_product(A, B, transposition(B.space, A.space, A.ctx))


def central_twisted_product(A: AlgebraData, coaction: ComoduleData, t: TransmutationData, check=True) -> TwistedProductData:
    """``A⊗_σ H`` with the half-braiding ``σ_{H,A}`` of the transmutation."""
    sig = build_half_braiding(t, coaction)
    return twisted_product(A, t.algebra, sig, check=check)


def right_module_report(M: AModuleData, alg: AlgebraData, rep: Report, name):
    """Right-module axioms for ``L[o, a, m]`` read as ``m.a``: ``(m.a).b = m.(ab)``."""
    L = M.L
    lhs = contract("opm,pab->omab", L, alg.M)
    rhs = contract("obn,nam->omab", L, L)
    rep.compare_arrays(f"{name}.associative", lhs, rhs, (M.space, alg.space, alg.space), (M.space,), M.ctx)
    rep.compare_arrays(f"{name}.unital", contract("opm,p->om", L, alg.eta), _delta_matrix(M.dim, M.ctx), (M.space,), (M.space,), M.ctx)


def check_right_module_comm(tp: TwistedProductData, MA: AModuleData, MB: AModuleData) -> Report:
    """``(m.b).a = (m.a').b'`` where ``σ(b⊗a) = a'⊗b'``.

    ``MA``, ``MB`` hold right actions as ``L[o, a, m] = coefficient of m_o in m.a``.
    """
    rep = Report("right module compatibility")
    na, nb = tp.A.dim, tp.B.dim
    S = tp.half_braiding_used.entries.reshape(na, nb, nb, na)
    lhs = contract("oap,pbm->omba", MA.L, MB.L)
    rhs = contract("oyp,pxm,xyba->omba", MB.L, MA.L, S)
    rep.compare_arrays("compat", lhs, rhs, (MA.space, tp.B.space, tp.A.space), (MA.space,), MA.ctx)
    return rep


def combined_right_module(tp: TwistedProductData, MA: AModuleData, MB: AModuleData) -> AModuleData:
    """``m.(a⊗b) = (m.a).b`` as a right action of ``A⊗_σ B``."""
    L = contract("obp,pam->oabm", MB.L, MA.L).reshape(MA.dim, tp.A.dim * tp.B.dim, MA.dim)
    return make_amodule(MA.legs, L, MA.ctx, tp.space, MA.name)


def restricted_right_modules(tp: TwistedProductData, M: AModuleData):
    """Restrict a right ``A⊗_σ B``-module along ``a -> a⊗1`` and ``b -> 1⊗b``."""
    na, nb, n = tp.A.dim, tp.B.dim, M.dim
    L = M.L.reshape(n, na, nb, n)
    LA = contract("oabm,b->oam", L, tp.B.eta)
    LB = contract("oabm,a->obm", L, tp.A.eta)
    return make_amodule(M.legs, LA, M.ctx, tp.A.space, M.name), make_amodule(M.legs, LB, M.ctx, tp.B.space, M.name)


def regular_right_module(alg: AlgebraData, name="M") -> AModuleData:
    """``alg`` acting on itself from the right, as ``L[o, a, m]`` for ``m.a``."""
    sp = alg.space.renamed(name)
    L = alg.M.transpose(0, 2, 1)
    return make_amodule((sp,), L, alg.ctx, alg.space, name)


def check_is_right_module(M: AModuleData, alg: AlgebraData) -> Report:
    rep = Report("right module")
    right_module_report(M, alg, rep, "module")
    return rep


# ---------------------------------------------------------------- centercond

def check_algebra_map(f, src: AlgebraData, dst: AlgebraData, title="algebra map") -> Report:
    rep = Report(title)
    F = f.entries if isinstance(f, MultilinearMap) else f
    lhs = contract("om,mgh->ogh", F, src.M)
    rhs = contract("opq,pg,qh->ogh", dst.M, F, F)
    rep.compare_arrays("multiplicative", lhs, rhs, (src.space, src.space), (dst.space,), src.ctx)
    rep.compare_arrays("unital", contract("om,m->o", F, src.eta), dst.eta, (), (dst.space,), src.ctx)
    return rep


def check_centercond(f, t: TransmutationData, A: AlgebraData, coaction: ComoduleData) -> Report:
    """``f(h) a = a0 f(h↼a1)`` for an algebra map ``f: (H,•) -> A``; raises NotAlgebraMap first."""
    F = f.entries if isinstance(f, MultilinearMap) else np.asarray(f, dtype=object)
    am = check_algebra_map(F, t.algebra, A)
    if not am.ok:
        raise NotAlgebraMap(f"f is not an algebra map: {am.failed_names()}", am)
    rep = Report("centercond")
    rep.extend(am, "algebra_map.")
    sig = build_half_braiding(t, coaction).entries.reshape(A.dim, t.dim, t.dim, A.dim)
    lhs = contract("opa,ph->oha", A.M, F)
    rhs = contract("opq,pkha,qk->oha", A.M, sig, F)
    rep.compare_arrays("centercond", lhs, rhs, (t.space, A.space), (A.space,), A.ctx)
    return rep


def solve_centercond(t: TransmutationData, A: AlgebraData, coaction: ComoduleData):
    """All ``f: H -> A`` satisfying centercond, for A one-dimensional and H with a grouplike basis.

    Exhaustive: each basis element is sent to a root of unity of order
    dividing ``dim H``; the candidates are filtered by the algebra-map and
    centercond checks.  Returns the list of arrays ``f[0, h]``.
    """
    ctx = t.ctx
    if A.dim != 1:
        raise ValueError("exhaustive centercond solve needs a one-dimensional A")
    D = t.base.D
    for h in range(t.dim):
        if D[h, h, h] != ctx.one or np.count_nonzero(D[:, :, h] != ctx.zero) != 1:
            raise ValueError("exhaustive centercond solve needs a grouplike basis")
    roots = ctx.roots_of_unity(t.dim)
    out = []
    for vals in product(roots, repeat=t.dim):
        F = np.array([list(vals)], dtype=object)
        try:
            if check_centercond(F, t, A, coaction).ok:
                out.append(F)
        except NotAlgebraMap:
            continue
    return out
