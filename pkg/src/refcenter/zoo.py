"""Curated example Hopf algebras, dual R-matrices, probes and brute-force oracles."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .hopf import (
    AlgebraData,
    ComoduleData,
    HopfData,
    ModuleAlgebraData,
    character_comodule,
    check_comodule,
    check_hopf,
    check_module_algebra,
    check_rform,
    ground_algebra,
    grouplikes,
    make_algebra,
    make_coalgebra,
    make_module_algebra,
    regular_comodule,
    rform_from_array,
    trivial_comodule,
)
from .scalar import FieldCtx
from .report import Report
from .tensor import Space, TypeMismatch, contract, zeros


class NotBicharacter(ValueError):
    pass


def _power_label(base, k):
    if k == 0:
        return ""
    return base if k == 1 else f"{base}^{k}"


def group_labels(n):
    return tuple(_power_label("g", k) or "1" for k in range(n))


def group_hopf(n: int, ctx: FieldCtx, name="H") -> HopfData:
    """Group algebra of the cyclic group of order ``n`` in its grouplike basis."""
    sp = Space(name, n, group_labels(n))
    M = zeros((n, n, n), ctx)
    D = zeros((n, n, n), ctx)
    for a in range(n):
        D[a, a, a] = ctx.one
        for b in range(n):
            M[(a + b) % n, a, b] = ctx.one
    eta = zeros((n,), ctx)
    eta[0] = ctx.one
    eps = np.array([ctx.one] * n, dtype=object)
    h = HopfData(make_algebra(sp, M, eta, ctx), make_coalgebra(sp, D, eps, ctx), None, name)
    return h.with_antipode()


def check_bicharacter(n, beta, ctx):
    """Return the first violated law as a string, or None."""
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if beta[(a + b) % n][c] != beta[a][c] * beta[b][c]:
                    return f"beta({a}+{b},{c}) != beta({a},{c})beta({b},{c})"
                if beta[a][(b + c) % n] != beta[a][b] * beta[a][c]:
                    return f"beta({a},{b}+{c}) != beta({a},{b})beta({a},{c})"
    return None


def bicharacter_from_root(n, q, ctx):
    """``beta(a, b) = q^(ab)``; a bicharacter exactly when ``q^n = 1``."""
    q = ctx(q)
    return [[q ** (a * b) for b in range(n)] for a in range(n)]


def group_algebra_with_bicharacter(n: int, beta, ctx: FieldCtx, name="H"):
    """``(kZ/n, r)`` with ``r(g^a|g^b) = beta(a, b)``.

    ``beta`` is an n×n table (nested lists) or a scalar ``q`` meaning
    ``beta(a, b) = q^(ab)``.
    """
    if not isinstance(beta, (list, tuple, np.ndarray)):
        beta = bicharacter_from_root(n, beta, ctx)
    beta = [[ctx(x) for x in row] for row in beta]
    if len(beta) != n or any(len(row) != n for row in beta):
        raise NotBicharacter(f"table must be {n}x{n}")
    bad = check_bicharacter(n, beta, ctx)
    if bad:
        raise NotBicharacter(bad)
    h = group_hopf(n, ctx, name)
    R = np.array(beta, dtype=object)
    Rinv = np.array([[x.inverse() for x in row] for row in beta], dtype=object)
    return h, rform_from_array(h, R, Rinv)


def taft_labels(n):
    out = []
    for j in range(n):
        for i in range(n):
            out.append((_power_label("g", i) + _power_label("x", j)) or "1")
    return tuple(out)


def taft_hopf(n: int, ctx: FieldCtx, q=None, name="H") -> HopfData:
    """Taft algebra: ``g^n = 1, x^n = 0, xg = q gx, Δx = x⊗1 + g⊗x``.

    Basis ``g^i x^j`` at index ``j*n + i``; ``q`` defaults to ``ζ_n`` (or -1 for n = 2).
    """
    if q is None:
        q = ctx(-1) if n == 2 else ctx.zeta(ctx.n // n if ctx.n % n == 0 else 1)
    q = ctx(q)
    if q ** n != ctx.one or any(q ** k == ctx.one for k in range(1, n)):
        raise ValueError(f"q must be a primitive {n}th root of unity")
    d = n * n
    idx = lambda i, j: j * n + i
    sp = Space(name, d, taft_labels(n))
    M = zeros((d, d, d), ctx)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for e in range(n):
                    # g^a x^b g^c x^e = q^(bc) g^(a+c) x^(b+e)
                    if b + e < n:
                        M[idx((a + c) % n, b + e), idx(a, b), idx(c, e)] = q ** (b * c)
    eta = zeros((d,), ctx)
    eta[0] = ctx.one
    # Δ is multiplicative, so build Δ(g^i x^j) = Δ(g)^i Δ(x)^j in H⊗H
    def mul2(u, v):
        out = zeros((d, d), ctx)
        for (a, b), s in np.ndenumerate(u):
            if not s:
                continue
            for (c, e), t in np.ndenumerate(v):
                if not t:
                    continue
                st = s * t
                for o1 in np.flatnonzero(M[:, a, c] != ctx.zero):
                    for o2 in np.flatnonzero(M[:, b, e] != ctx.zero):
                        out[o1, o2] = out[o1, o2] + st * M[o1, a, c] * M[o2, b, e]
        return out

    one2 = zeros((d, d), ctx)
    one2[0, 0] = ctx.one
    dg = zeros((d, d), ctx)
    dg[idx(1, 0), idx(1, 0)] = ctx.one
    dx = zeros((d, d), ctx)
    dx[idx(0, 1), 0] = ctx.one
    dx[idx(1, 0), idx(0, 1)] = ctx.one
    D = zeros((d, d, d), ctx)
    for i in range(n):
        for j in range(n):
            t = one2
            for _ in range(i):
                t = mul2(t, dg)
            for _ in range(j):
                t = mul2(t, dx)
            D[:, :, idx(i, j)] = t
    eps = zeros((d,), ctx)
    for i in range(n):
        eps[idx(i, 0)] = ctx.one
    h = HopfData(make_algebra(sp, M, eta, ctx), make_coalgebra(sp, D, eps, ctx), None, name)
    return h.with_antipode()


def sweedler_hopf(ctx: FieldCtx, name="H") -> HopfData:
    """Sweedler's 4-dimensional Hopf algebra, basis ``1, g, x, gx``."""
    return taft_hopf(2, ctx, ctx(-1), name)


# ---------------------------------------------------------------- dual R-matrix discovery

class RFormSolverStuck(RuntimeError):
    """Only genuinely nonlinear constraints remain; outside the solver's reach."""


def _rform_linear_rows(h: HopfData):
    """Unit laws and quasi-commutativity as linear equations on ``r[a, b]`` (index ``a*d+b``)."""
    ctx, d = h.ctx, h.dim
    M, D, eta, eps = h.M, h.D, h.eta, h.eps
    rows, rhs = [], []
    for b in range(d):
        for left in (True, False):
            row = [ctx.zero] * (d * d)
            for u in range(d):
                k = u * d + b if left else b * d + u
                row[k] = row[k] + eta[u]
            rows.append(row)
            rhs.append(eps[b])
    # b1 a1 r(a2|b2) - r(a1|b1) a2 b2 = 0
    Da = [[(x, y, D[x, y, a]) for x in range(d) for y in range(d) if D[x, y, a]] for a in range(d)]
    for o in range(d):
        for a in range(d):
            for b in range(d):
                row = [ctx.zero] * (d * d)
                for x, y, c1 in Da[a]:
                    for z, w, c2 in Da[b]:
                        c = c1 * c2
                        if M[o, z, x]:
                            row[y * d + w] = row[y * d + w] + c * M[o, z, x]
                        if M[o, y, w]:
                            row[x * d + z] = row[x * d + z] - c * M[o, y, w]
                if any(row):
                    rows.append(row)
                    rhs.append(ctx.zero)
    return rows, rhs


def _hexagon_polys(h: HopfData, A):
    """Hexagon residuals as quadratic polynomials in the parameters.

    ``A[a][b]`` is the affine form of ``r[a, b]``: a list ``[const, t1, ..., tk]``.
    Each residual is a dict from sorted exponent tuples to Scalars.
    """
    ctx, d = h.ctx, h.dim
    M, D = h.M, h.D
    k = len(A[0][0]) - 1
    zero = ctx.zero

    def add(p, key, c):
        if c:
            v = p.get(key, zero) + c
            if v:
                p[key] = v
            else:
                p.pop(key, None)

    def add_affine(p, aff, c):
        add(p, (), c * aff[0])
        for i in range(k):
            add(p, (i,), c * aff[i + 1])

    def add_product(p, u, v, c):
        terms_u = [((), u[0])] + [((i,), u[i + 1]) for i in range(k)]
        terms_v = [((), v[0])] + [((i,), v[i + 1]) for i in range(k)]
        for mu, cu in terms_u:
            if not cu:
                continue
            for mv, cv in terms_v:
                if cv:
                    add(p, tuple(sorted(mu + mv)), c * cu * cv)

    polys = []
    for a in range(d):
        for b in range(d):
            for c in range(d):
                # r(ab|c) - r(a|c1) r(b|c2)
                p = {}
                for m in range(d):
                    if M[m, a, b]:
                        add_affine(p, A[m][c], M[m, a, b])
                for x in range(d):
                    for y in range(d):
                        if D[x, y, c]:
                            add_product(p, A[a][x], A[b][y], -D[x, y, c])
                if p:
                    polys.append(p)
                # r(a|bc) - r(a1|c) r(a2|b)
                p = {}
                for m in range(d):
                    if M[m, b, c]:
                        add_affine(p, A[a][m], M[m, b, c])
                for x in range(d):
                    for y in range(d):
                        if D[x, y, a]:
                            add_product(p, A[x][c], A[y][b], -D[x, y, a])
                if p:
                    polys.append(p)
    return polys


def solve_rform_family(h: HopfData):
    """All dual R-matrices of ``h`` as an affine family ``r = A0 + Σ t_i A_i``.

    Linear stage: unit laws and quasi-commutativity.  Then the quadratic
    hexagon equations are scanned for members that are linear in the current
    parameters; those are solved and substituted, and the scan repeats.
    Returns ``A`` of shape ``(d, d, 1 + k)``.  Raises RFormSolverStuck when
    only nonlinear equations remain.
    """
    ctx, d = h.ctx, h.dim
    rows, rhs = _rform_linear_rows(h)
    try:
        x, null = linalg.solve(rows, rhs, ctx)
    except linalg.InconsistentSystem:
        return None
    A = [[[x[a * d + b]] + [n[a * d + b] for n in null] for b in range(d)] for a in range(d)]
    while True:
        polys = _hexagon_polys(h, A)
        if not polys:
            return np.array(A, dtype=object)
        k = len(A[0][0]) - 1
        lin = [p for p in polys if all(len(m) <= 1 for m in p)]
        if not lin:
            raise RFormSolverStuck(f"{len(polys)} nonlinear hexagon equations in {k} parameters")
        mat = [[p.get((i,), ctx.zero) for i in range(k)] for p in lin]
        b = [-p.get((), ctx.zero) for p in lin]
        try:
            t, tnull = linalg.solve(mat, b, ctx)
        except linalg.InconsistentSystem:
            return None
        # t = t0 + Σ s_j n_j ; substitute into each affine form
        new = []
        for a in range(d):
            row = []
            for bb in range(d):
                aff = A[a][bb]
                const = aff[0] + sum((aff[i + 1] * t[i] for i in range(k)), ctx.zero)
                coeffs = [sum((aff[i + 1] * n[i] for i in range(k)), ctx.zero) for n in tnull]
                row.append([const] + coeffs)
            new.append(row)
        A = new


def rform_at(h: HopfData, family, params):
    """Member of an affine family at the given parameter values."""
    ctx = h.ctx
    vals = [ctx.one] + [ctx(p) for p in params]
    R = np.empty((h.dim, h.dim), dtype=object)
    for a in range(h.dim):
        for b in range(h.dim):
            R[a, b] = sum((family[a, b, i] * vals[i] for i in range(len(vals))), ctx.zero)
    return rform_from_array(h, R)


SWEEDLER_SAMPLE_PARAMS = (0, 1, -1, "1/2")


def sweedler_rforms(ctx: FieldCtx, params=SWEEDLER_SAMPLE_PARAMS, h=None):
    """Dual R-matrices ``r_λ`` on Sweedler's algebra at sample values of ``λ``.

    The one-parameter family is found by ``solve_rform_family``; ``λ`` is the
    value ``r(x|x)``.
    """
    h = h or sweedler_hopf(ctx)
    fam = solve_rform_family(h)
    if fam.shape[2] != 2:
        raise RFormSolverStuck(f"expected a one-parameter family, found {fam.shape[2] - 1}")
    return [rform_at(h, fam, [lam]) for lam in params]


# ---------------------------------------------------------------- module algebras and probes

def trivial_module_algebra(h: HopfData, algebra: AlgebraData | None = None, name="k") -> ModuleAlgebraData:
    """``a.h = ε(h)a`` (on the ground field unless ``algebra`` is given)."""
    alg = algebra or ground_algebra(h.ctx, name)
    act = np.multiply.outer(_identity(alg.dim, h.ctx), h.eps)
    return make_module_algebra(alg, act, h.space, alg.space.name)


def adjoint_module_algebra(h: HopfData, name="A") -> ModuleAlgebraData:
    """``H̄`` acting on a copy of itself by ``a.h = S(h1) a h2``."""
    h = h.with_antipode()
    alg = h.algebra.retyped(h.space.renamed(name))
    act = contract("xyh,sx,psa,opy->oah", h.D, h.S, h.M, h.M)
    return make_module_algebra(alg, act, h.space, name)


def sign_flip_module_algebra(h: HopfData, name="A") -> ModuleAlgebraData:
    """``k[y]/(y²-1)`` over ``kZ/2`` with ``y.g = -y``."""
    if h.dim != 2:
        raise ValueError("sign flip needs the group algebra of Z/2")
    ctx = h.ctx
    sp = Space(name, 2, ("1", "y"))
    M = zeros((2, 2, 2), ctx)
    for a in range(2):
        for b in range(2):
            M[(a + b) % 2, a, b] = ctx.one
    alg = make_algebra(sp, M, [ctx.one, ctx.zero], ctx)
    act = zeros((2, 2, 2), ctx)
    act[0, 0, 0] = act[0, 0, 1] = act[1, 1, 0] = ctx.one
    act[1, 1, 1] = -ctx.one
    return make_module_algebra(alg, act, h.space, name)


def module_algebra_examples(h: HopfData) -> list:
    out = [trivial_module_algebra(h), adjoint_module_algebra(h, "adj")]
    if h.dim == 2 and len(grouplikes(h)) == 2:
        out.append(sign_flip_module_algebra(h))
    return out


def probe_set(h: HopfData, coad: ComoduleData | None = None) -> list:
    """Trivial comodule, one-dimensional comodules of nontrivial grouplikes, regular, and ``coad``.

    ``coad`` is the coadjoint comodule of a transmutation; it is built on a
    space named ``"H"`` when not given.
    """
    h = h.with_antipode()
    out = [trivial_comodule(h)]
    for g in grouplikes(h):
        if not np.all(g == h.eta):
            out.append(character_comodule(h, g))
    out.append(regular_comodule(h))
    if coad is None:
        from .transmutation import build_coadjoint_coaction

        sp = Space("H", h.dim, h.space.basis_labels)
        coad = ComoduleData((sp,), build_coadjoint_coaction(h, sp), "H")
    out.append(coad)
    return out


def graded_module_algebra(h: HopfData, name="A") -> ModuleAlgebraData:
    """``k[y]/(y^n - 1)`` over ``kZ/n`` (n even) with ``y^j.g^b = (-1)^(jb) y^j``."""
    n = h.dim
    if n % 2 or len(grouplikes(h)) != n:
        raise ValueError("graded example needs the group algebra of Z/n with n even")
    ctx = h.ctx
    sp = Space(name, n, tuple(_power_label("y", j) or "1" for j in range(n)))
    M = zeros((n, n, n), ctx)
    for a in range(n):
        for b in range(n):
            M[(a + b) % n, a, b] = ctx.one
    eta = zeros((n,), ctx)
    eta[0] = ctx.one
    alg = make_algebra(sp, M, eta, ctx)
    act = zeros((n, n, n), ctx)
    for j in range(n):
        for b in range(n):
            act[j, j, b] = ctx(-1) ** (j * b)
    return make_module_algebra(alg, act, h.space, name)


def kmap_array(A: ModuleAlgebraData, values) -> np.ndarray:
    """``K`` as an ``A x H̄`` array from ``{h index: {a index: scalar}}``."""
    ctx = A.ctx
    K = zeros((A.dim, len(values)), ctx)
    for hi, col in values.items():
        for ai, v in col.items():
            K[ai, hi] = ctx(v)
    return K


# ---------------------------------------------------------------- manifest

@dataclass
class ZooEntry:
    """One catalogued example with the data the acceptance suite runs on."""

    name: str
    hopf: HopfData
    rforms: list
    module_algebras: list
    kmaps: list = field(default_factory=list)  # (module algebra name, K array)
    note: str = ""

    @property
    def ctx(self):
        return self.hopf.ctx

    @property
    def rform(self):
        return self.rforms[0]

    def module_algebra(self, name) -> ModuleAlgebraData:
        for A in self.module_algebras:
            if A.name == name:
                return A
        raise KeyError(name)

    def probes(self, coad=None):
        return probe_set(self.hopf, coad)


def _z1():
    ctx = FieldCtx(1)
    h, r = group_algebra_with_bicharacter(1, 1, ctx)
    return ZooEntry("z1", h, [r], module_algebra_examples(h), note="trivial group, trivial r")


def _z2_sign():
    ctx = FieldCtx(1)
    h, r = group_algebra_with_bicharacter(2, -1, ctx)
    algs = module_algebra_examples(h)
    ks = [("k", kmap_array(algs[0], {0: {0: 1}, 1: {0: s}})) for s in (1, -1)]
    return ZooEntry("z2-sign", h, [r], algs, ks, "kZ/2 with r(g|g) = -1 over Q")


def _z4_zeta():
    ctx = FieldCtx(4)
    h, r = group_algebra_with_bicharacter(4, ctx.zeta(1), ctx)
    algs = module_algebra_examples(h) + [graded_module_algebra(h)]
    K = kmap_array(algs[-1], {a: {a: 1} for a in range(4)})
    return ZooEntry("z4-zeta", h, [r], algs, [("A", K)], "kZ/4 with r(g|g) = zeta_4; graded A with K(g^a) = y^a")


def printed_reading_kmap_z4(A: ModuleAlgebraData):
    """``K(g^a) = ζ^(a²) y^a`` on the graded algebra: valid only for the printed reading of the K-map equations."""
    z = A.ctx.zeta(1)
    return kmap_array(A, {a: {a: z ** (a * a)} for a in range(4)})


def _sweedler():
    ctx = FieldCtx(1)
    h = sweedler_hopf(ctx)
    return ZooEntry(
        "sweedler",
        h,
        sweedler_rforms(ctx, h=h),
        [trivial_module_algebra(h), adjoint_module_algebra(h, "adj")],
        note="Sweedler H4 with r at lambda in " + ", ".join(str(p) for p in SWEEDLER_SAMPLE_PARAMS),
    )


_BUILDERS = {"z1": _z1, "z2-sign": _z2_sign, "z4-zeta": _z4_zeta, "sweedler": _sweedler}


def manifest_names():
    return list(_BUILDERS)


def manifest_entry(name) -> ZooEntry:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown example {name!r}; available: {', '.join(_BUILDERS)}") from None


def manifest() -> list:
    return [b() for b in _BUILDERS.values()]


def validate_entry(e: ZooEntry) -> Report:
    """Structural checks every manifest entry must pass."""
    rep = Report(f"zoo entry {e.name}")
    rep.extend(check_hopf(e.hopf), "hopf.")
    for i, rf in enumerate(e.rforms):
        rep.extend(check_rform(e.hopf, rf), f"rform[{i}].")
    for A in e.module_algebras:
        rep.extend(check_module_algebra(A, e.hopf), f"module_algebra[{A.name}].")
    for V in e.probes():
        rep.extend(check_comodule(V, e.hopf.coalgebra), f"probe[{V.name}].")
    return rep


# ---------------------------------------------------------------- oracle

def oracle_bruteforce_equation(lhs, rhs, env, name="equation") -> Report:
    """Evaluate both sides naively, without contraction planning, and compare entrywise."""
    from .expr import eval_naive, type_of

    dl, cl = type_of(lhs, env)
    dr, cr = type_of(rhs, env)
    if (dl, cl) != (dr, cr):
        raise TypeMismatch(f"{name}: sides have different types")
    rep = Report(f"oracle {name}")
    rep.compare(name, eval_naive(lhs, env), eval_naive(rhs, env))
    return rep


def _identity(n, ctx):
    out = zeros((n, n), ctx)
    for i in range(n):
        out[i, i] = ctx.one
    return out
