"""Structure-constant tensors between tensor products of based spaces.

A ``MultilinearMap`` stores one dense object array whose axes are the
codomain legs followed by the domain legs.  The unit object is the
one-dimensional space ``UNIT``; leg lists never mention it except as the
sole leg of an otherwise empty side.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .scalar import FieldCtx, Scalar


class TypeMismatch(TypeError):
    pass


@dataclass(frozen=True)
class Space:
    name: str
    dim: int
    basis_labels: tuple = field(default=None, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"space {self.name} must have positive dimension")
        labels = self.basis_labels
        if labels is None:
            labels = tuple(f"{self.name}{i}" for i in range(self.dim))
        labels = tuple(str(x) for x in labels)
        if len(labels) != self.dim or len(set(labels)) != self.dim:
            raise ValueError(f"space {self.name}: need {self.dim} distinct basis labels")
        object.__setattr__(self, "basis_labels", labels)

    def renamed(self, name: str) -> "Space":
        return Space(name, self.dim, self.basis_labels)

    def __repr__(self):
        return f"Space({self.name!r}, {self.dim})"


UNIT = Space("I", 1, ("1",))


def normalize_legs(legs) -> tuple:
    legs = tuple(s for s in legs if s != UNIT)
    return legs if legs else (UNIT,)


def legs_shape(legs) -> tuple:
    return tuple(s.dim for s in legs)


def zeros(shape, ctx: FieldCtx) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr.fill(ctx.zero)
    return arr


def _legs_str(legs):
    return "⊗".join(s.name for s in legs)


class MultilinearMap:
    """A linear map ``domain[0]⊗... -> codomain[0]⊗...`` with exact entries."""

    __slots__ = ("domain", "codomain", "entries", "ctx")

    def __init__(self, domain, codomain, entries, ctx: FieldCtx):
        self.domain = normalize_legs(domain)
        self.codomain = normalize_legs(codomain)
        self.ctx = ctx
        shape = legs_shape(self.codomain) + legs_shape(self.domain)
        entries = np.asarray(entries, dtype=object)
        if entries.size != int(np.prod(shape)):
            raise TypeMismatch(
                f"entries of size {entries.size} do not fit {_legs_str(self.domain)} -> {_legs_str(self.codomain)}"
            )
        self.entries = entries.reshape(shape)

    @classmethod
    def zero(cls, domain, codomain, ctx):
        dom, cod = normalize_legs(domain), normalize_legs(codomain)
        return cls(dom, cod, zeros(legs_shape(cod) + legs_shape(dom), ctx), ctx)

    @classmethod
    def from_dict(cls, domain, codomain, data: dict, ctx):
        """Build from ``{(out_idx, in_idx): value}`` with tuple multi-indices; omitted entries are zero."""
        m = cls.zero(domain, codomain, ctx)
        for (out, inn), v in data.items():
            m.entries[tuple(out) + tuple(inn)] = ctx.scalar(v)
        return m

    @classmethod
    def from_function(cls, domain, codomain, fn, ctx):
        """Entries from ``fn(in_idx) -> {out_idx: value}`` over every domain basis multi-index."""
        m = cls.zero(domain, codomain, ctx)
        for inn in product(*(range(s.dim) for s in m.domain)):
            for out, v in fn(inn).items():
                m.entries[tuple(out) + inn] += ctx.scalar(v)
        return m

    @property
    def n_out(self):
        return len(self.codomain)

    @property
    def n_in(self):
        return len(self.domain)

    def __getitem__(self, key):
        out, inn = key
        return self.entries[tuple(out) + tuple(inn)]

    def matrix(self) -> np.ndarray:
        rows = int(np.prod(legs_shape(self.codomain)))
        return self.entries.reshape(rows, -1)

    def apply(self, vec) -> np.ndarray:
        """Image of a vector given as an array over the domain legs."""
        v = np.asarray(vec, dtype=object).reshape(-1)
        return (self.matrix().dot(v)).reshape(legs_shape(self.codomain))

    def retyped(self, mapping: dict) -> "MultilinearMap":
        """Same entries with legs renamed via ``{old_space: new_space}`` (dims must agree)."""
        def sub(legs):
            out = []
            for s in legs:
                t = mapping.get(s, s)
                if t.dim != s.dim:
                    raise TypeMismatch(f"cannot retype {s} as {t}")
                out.append(t)
            return out
        return MultilinearMap(sub(self.domain), sub(self.codomain), self.entries, self.ctx)

    def scaled(self, c) -> "MultilinearMap":
        c = self.ctx.scalar(c)
        return MultilinearMap(self.domain, self.codomain, self.entries * c, self.ctx)

    def __add__(self, other):
        _same_type(self, other)
        return MultilinearMap(self.domain, self.codomain, self.entries + other.entries, self.ctx)

    def __sub__(self, other):
        _same_type(self, other)
        return MultilinearMap(self.domain, self.codomain, self.entries - other.entries, self.ctx)

    def __eq__(self, other):
        if not isinstance(other, MultilinearMap):
            return NotImplemented
        return maps_equal(self, other)[0]

    __hash__ = None

    def __matmul__(self, other):
        return tensor(self, other)

    def __repr__(self):
        return f"MultilinearMap({_legs_str(self.domain)} -> {_legs_str(self.codomain)})"

    def nonzero(self):
        """Iterate ``(out_idx, in_idx, value)`` over nonzero entries in index order."""
        k = self.n_out
        for idx in np.ndindex(*self.entries.shape):
            v = self.entries[idx]
            if v:
                yield idx[:k], idx[k:], v


def _same_type(f, g):
    if f.domain != g.domain or f.codomain != g.codomain:
        raise TypeMismatch(f"{f!r} vs {g!r}")
    if f.ctx is not g.ctx:
        raise TypeMismatch("maps over different fields")


def identity(legs, ctx: FieldCtx) -> MultilinearMap:
    legs = normalize_legs(legs if isinstance(legs, (tuple, list)) else (legs,))
    n = int(np.prod(legs_shape(legs)))
    arr = zeros((n, n), ctx)
    for i in range(n):
        arr[i, i] = ctx.one
    return MultilinearMap(legs, legs, arr, ctx)


def transposition(a: Space, b: Space, ctx: FieldCtx) -> MultilinearMap:
    """The flip ``a⊗b -> b⊗a``."""
    arr = zeros((b.dim, a.dim, a.dim, b.dim), ctx)
    for i in range(a.dim):
        for j in range(b.dim):
            arr[j, i, i, j] = ctx.one
    return MultilinearMap((a, b), (b, a), arr, ctx)


def compose(f: MultilinearMap, g: MultilinearMap) -> MultilinearMap:
    """``f ∘ g``: apply g first."""
    if g.codomain != f.domain:
        raise TypeMismatch(
            f"cannot compose: {_legs_str(g.codomain)} feeds {_legs_str(f.domain)}"
        )
    a = f.entries.reshape(int(np.prod(legs_shape(f.codomain))), -1)
    b = g.entries.reshape(a.shape[1], -1)
    ent = _sparse_matmul(a, b) if a.size and b.size else a.dot(b)
    return MultilinearMap(g.domain, f.codomain, ent, f.ctx)


def tensor(f: MultilinearMap, g: MultilinearMap) -> MultilinearMap:
    """Kronecker product with concatenated leg lists (unit legs dropped)."""
    fo, fi, go, gi = f.n_out, f.n_in, g.n_out, g.n_in
    outer = np.multiply.outer(f.entries, g.entries)
    perm = (
        list(range(fo))
        + list(range(fo + fi, fo + fi + go))
        + list(range(fo, fo + fi))
        + list(range(fo + fi + go, fo + fi + go + gi))
    )
    outer = outer.transpose(perm)
    return MultilinearMap(f.domain + g.domain, f.codomain + g.codomain, outer, f.ctx)


def tensor_all(*maps):
    out = maps[0]
    for m in maps[1:]:
        out = tensor(out, m)
    return out


def compose_all(*maps):
    """``compose_all(f, g, h) = f ∘ g ∘ h``."""
    out = maps[-1]
    for m in reversed(maps[:-1]):
        out = compose(m, out)
    return out


@dataclass
class Witness:
    out_index: tuple
    in_index: tuple
    lhs: Scalar
    rhs: Scalar

    def labels(self, f: MultilinearMap):
        outs = tuple(s.basis_labels[i] for s, i in zip(f.codomain, self.out_index))
        ins = tuple(s.basis_labels[i] for s, i in zip(f.domain, self.in_index))
        return outs, ins

    def as_dict(self):
        return {
            "out": [int(i) for i in self.out_index],
            "in": [int(i) for i in self.in_index],
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
        }


def maps_equal(f: MultilinearMap, g: MultilinearMap):
    """``(True, None)`` if equal entrywise, else ``(False, Witness)`` at the first differing index.

    Indices are visited domain-major (all outputs of the first input basis
    element first), so the witness names the first input where the maps differ.
    """
    _same_type(f, g)
    k = f.n_out
    fe, ge = f.entries, g.entries
    diff = np.argwhere(fe != ge)
    if len(diff) == 0:
        return True, None
    order = sorted(map(tuple, diff), key=lambda idx: (idx[k:], idx[:k]))
    idx = order[0]
    return False, Witness(idx[:k], idx[k:], fe[idx], ge[idx])


# ------------------------------------------------------------ contraction

def contract(spec: str, *arrays) -> np.ndarray:
    """Exact ``einsum``: contract object arrays pairwise, greedy smallest-intermediate order.

    ``spec`` uses einsum syntax with an explicit output, e.g. ``"ij,jk->ik"``.
    Each index letter must appear at most twice over the inputs, and an index
    appearing twice must not appear in the output.
    """
    lhs, out = spec.replace(" ", "").split("->")
    terms = lhs.split(",")
    if len(terms) != len(arrays):
        raise ValueError("operand count does not match spec")
    nodes = []
    dims = {}
    for t, a in zip(terms, arrays):
        a = np.asarray(a, dtype=object)
        if a.ndim != len(t):
            raise ValueError(f"operand {t!r} has {a.ndim} axes")
        for ch, n in zip(t, a.shape):
            if dims.setdefault(ch, n) != n:
                raise ValueError(f"index {ch} has inconsistent extent")
        nodes.append((list(t), a))
    return contract_network(nodes, list(out), dims)


def _size(idx, dims):
    n = 1
    for ch in idx:
        n *= dims[ch]
    return n


def contract_network(nodes, out_idx, dims):
    """Contract a list of ``(index_list, array)`` nodes to the ``out_idx`` array.

    Repeatedly contracts the pair of connected nodes whose result is smallest
    (ties: earliest pair); disconnected components are joined by outer
    products, smallest first.
    """
    keep = set(out_idx)
    counts = {}
    for ix, _ in nodes:
        if len(set(ix)) != len(ix):
            raise ValueError("repeated index within one operand is not supported")
        for c in ix:
            counts[c] = counts.get(c, 0) + 1
    summed = []
    for ix, a in nodes:
        ix = list(ix)
        for pos in range(len(ix) - 1, -1, -1):
            if counts[ix[pos]] == 1 and ix[pos] not in keep:
                a = a.sum(axis=pos)
                ix.pop(pos)
        summed.append((ix, np.asarray(a, dtype=object)))
    nodes = summed
    while len(nodes) > 1:
        best = None
        for i in range(len(nodes)):
            si = set(nodes[i][0])
            for j in range(i + 1, len(nodes)):
                shared = si & set(nodes[j][0])
                if not shared:
                    continue
                res = [c for c in nodes[i][0] if c not in shared] + [
                    c for c in nodes[j][0] if c not in shared
                ]
                cost = _size(res, dims)
                if best is None or cost < best[0]:
                    best = (cost, i, j)
        if best is None:
            order = sorted(range(len(nodes)), key=lambda k: (_size(nodes[k][0], dims), k))
            i, j = sorted(order[:2])
        else:
            _, i, j = best
        nodes.append(_pair(nodes[i], nodes[j]))
        del nodes[j]
        del nodes[i]
    ix, a = nodes[0]
    if sorted(ix) != sorted(out_idx):
        raise ValueError(f"output indices {out_idx} not produced (have {ix})")
    return a.transpose([ix.index(c) for c in out_idx]) if ix else a


def _pair(n1, n2):
    ix1, a1 = n1
    ix2, a2 = n2
    shared = [c for c in ix1 if c in ix2]
    free1 = [c for c in ix1 if c not in shared]
    free2 = [c for c in ix2 if c not in shared]
    # bring both operands to matrices (free, shared) x (shared, free)
    p1 = a1.transpose([ix1.index(c) for c in free1 + shared])
    p2 = a2.transpose([ix2.index(c) for c in shared + free2])
    s1 = p1.shape[: len(free1)]
    s2 = p2.shape[len(shared):]
    k = 1
    for n in p2.shape[: len(shared)]:
        k *= n
    m1 = p1.reshape(-1, k)
    m2 = p2.reshape(k, -1)
    res = _sparse_matmul(m1, m2)
    return (free1 + free2, res.reshape(tuple(s1) + tuple(s2)))


def _nonzero_rows(m):
    rows = []
    for row in m:
        rows.append([(j, x) for j, x in enumerate(row) if x])
    return rows


def _sparse_matmul(m1, m2):
    """Matrix product of object matrices, touching only nonzero entries."""
    r, k = m1.shape
    c = m2.shape[1]
    out = np.empty((r, c), dtype=object)
    zero = _zero_like(m1, m2)
    out.fill(zero)
    right = _nonzero_rows(m2)
    for i, row in enumerate(m1):
        acc = {}
        for j, x in enumerate(row):
            if not x:
                continue
            for col, y in right[j]:
                t = x * y
                if col in acc:
                    acc[col] = acc[col] + t
                else:
                    acc[col] = t
        for col, v in acc.items():
            out[i, col] = v
    return out


def _zero_like(m1, m2):
    for m in (m1, m2):
        for x in m.flat:
            return x * 0
    return 0
