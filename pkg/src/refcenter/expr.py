"""String diagrams as expression trees, evaluated to ``MultilinearMap``s.

Diagrams are read top to bottom: in ``Compose(upper, lower)`` the upper
part is applied first.  Crossings are not hardwired; a ``Swap`` names a
crossing kind (``"c"``, ``"cinv"``, ``"sigma"``, ``"tau"``, ...) that the
environment binds per pair of spaces.

Two evaluators are provided.  ``eval_naive`` materializes every
identity and Kronecker product bottom-up; ``eval_expr`` flattens the
diagram to a tensor network and contracts it pairwise in greedy
smallest-intermediate order.  Both are exact, so they agree entrywise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .scalar import FieldCtx
from .tensor import (
    UNIT,
    MultilinearMap,
    Space,
    TypeMismatch,
    compose,
    contract_network,
    identity,
    legs_shape,
    normalize_legs,
    tensor,
)


class UnboundGenerator(KeyError):
    pass


class MorphismExpr:
    def __rshift__(self, other):
        """``a >> b``: a on top, then b."""
        return Compose(self, other)

    def __matmul__(self, other):
        return Tensor(self, other)


@dataclass(frozen=True)
class Gen(MorphismExpr):
    name: str


@dataclass(frozen=True)
class Id(MorphismExpr):
    legs: tuple

    def __init__(self, *legs):
        flat = []
        for s in legs:
            flat.extend(s if isinstance(s, (tuple, list)) else (s,))
        object.__setattr__(self, "legs", normalize_legs(flat))


@dataclass(frozen=True)
class Compose(MorphismExpr):
    upper: MorphismExpr
    lower: MorphismExpr


@dataclass(frozen=True)
class Tensor(MorphismExpr):
    left: MorphismExpr
    right: MorphismExpr


@dataclass(frozen=True)
class Swap(MorphismExpr):
    left: Space
    right: Space
    kind: str = "c"


def seq(*layers) -> MorphismExpr:
    """Stack layers top to bottom."""
    out = layers[0]
    for layer in layers[1:]:
        out = Compose(out, layer)
    return out


def par(*parts) -> MorphismExpr:
    out = parts[0]
    for p in parts[1:]:
        out = Tensor(out, p)
    return out


@dataclass
class Env:
    ctx: FieldCtx
    gens: dict = field(default_factory=dict)
    crossings: dict = field(default_factory=dict)

    def bind(self, name, m: MultilinearMap):
        self.gens[name] = m
        return self

    def bind_crossing(self, kind, left: Space, right: Space, m: MultilinearMap):
        if m.domain != (left, right) or m.codomain != (right, left):
            raise TypeMismatch(f"crossing {kind} for ({left.name},{right.name}) has wrong type {m!r}")
        self.crossings[(kind, left.name, right.name)] = m
        return self

    def lookup(self, e) -> MultilinearMap:
        if isinstance(e, Gen):
            try:
                return self.gens[e.name]
            except KeyError:
                raise UnboundGenerator(e.name) from None
        try:
            return self.crossings[(e.kind, e.left.name, e.right.name)]
        except KeyError:
            raise UnboundGenerator(f"{e.kind}[{e.left.name},{e.right.name}]") from None

    def copy(self):
        return Env(self.ctx, dict(self.gens), dict(self.crossings))


def type_of(e: MorphismExpr, env: Env):
    """``(domain, codomain)`` leg tuples, raising TypeMismatch if ill-typed."""
    if isinstance(e, (Gen, Swap)):
        m = env.lookup(e)
        return m.domain, m.codomain
    if isinstance(e, Id):
        return e.legs, e.legs
    if isinstance(e, Compose):
        d1, c1 = type_of(e.upper, env)
        d2, c2 = type_of(e.lower, env)
        if c1 != d2:
            raise TypeMismatch(
                f"composition mismatch: {[s.name for s in c1]} into {[s.name for s in d2]}"
            )
        return d1, c2
    if isinstance(e, Tensor):
        d1, c1 = type_of(e.left, env)
        d2, c2 = type_of(e.right, env)
        return normalize_legs(d1 + d2), normalize_legs(c1 + c2)
    raise TypeError(f"not a morphism expression: {e!r}")


def eval_naive(e: MorphismExpr, env: Env) -> MultilinearMap:
    """Bottom-up evaluation by ``compose``/``tensor`` with materialized identities."""
    if isinstance(e, (Gen, Swap)):
        return env.lookup(e)
    if isinstance(e, Id):
        return identity(e.legs, env.ctx)
    if isinstance(e, Compose):
        return compose(eval_naive(e.lower, env), eval_naive(e.upper, env))
    if isinstance(e, Tensor):
        return tensor(eval_naive(e.left, env), eval_naive(e.right, env))
    raise TypeError(f"not a morphism expression: {e!r}")


def _real(legs):
    return [s for s in legs if s != UNIT]


class _Net:
    def __init__(self):
        self.nodes = []
        self.dims = {}
        self.counter = 0

    def wire(self, space):
        w = self.counter
        self.counter += 1
        self.dims[w] = space.dim
        return w


def _build(e, wires, env, net: _Net):
    if isinstance(e, Id):
        return wires
    if isinstance(e, (Gen, Swap)):
        m = env.lookup(e)
        outs = [net.wire(s) for s in _real(m.codomain)]
        shape = legs_shape(_real(m.codomain)) + legs_shape(_real(m.domain))
        net.nodes.append((outs + list(wires), m.entries.reshape(shape)))
        return outs
    if isinstance(e, Compose):
        return _build(e.lower, _build(e.upper, wires, env, net), env, net)
    if isinstance(e, Tensor):
        dl, _ = type_of(e.left, env)
        k = len(_real(dl))
        return _build(e.left, wires[:k], env, net) + _build(e.right, wires[k:], env, net)
    raise TypeError(f"not a morphism expression: {e!r}")


def eval_expr(e: MorphismExpr, env: Env) -> MultilinearMap:
    """Planned evaluation: tensor-network contraction without materializing identities."""
    dom, cod = type_of(e, env)
    net = _Net()
    ins = [net.wire(s) for s in _real(dom)]
    outs = _build(e, ins, env, net)
    inset = set(ins)
    final_outs = []
    for w in outs:
        if w in inset:
            # a straight wire from input to output
            w2 = net.counter
            net.counter += 1
            net.dims[w2] = net.dims[w]
            n = net.dims[w]
            delta = np.empty((n, n), dtype=object)
            delta.fill(env.ctx.zero)
            for i in range(n):
                delta[i, i] = env.ctx.one
            net.nodes.append(([w2, w], delta))
            final_outs.append(w2)
        else:
            final_outs.append(w)
    shape = legs_shape(cod) + legs_shape(dom)
    if not net.nodes:
        return identity(dom, env.ctx)
    # inputs never touched by any node are disconnected identity legs handled above;
    # inputs consumed by nothing at all (not possible for well-typed diagrams)
    arr = contract_network(net.nodes, final_outs + ins, net.dims)
    return MultilinearMap(dom, cod, np.asarray(arr, dtype=object).reshape(shape), env.ctx)


# ------------------------------------------------------------ random diagrams

def random_expr(env: Env, rng: random.Random, max_size: int = 32, layers: int = 4):
    """A random well-typed expression over ``env``.

    Picks a generator or crossing as the first layer, then repeatedly stacks a
    layer that applies some bound map to a contiguous window of the current
    legs; occasionally juxtaposes a second random diagram.  The product of
    leg dimensions on every cut stays at most ``max_size``.
    """
    items = [(Gen(n), m) for n, m in sorted(env.gens.items())]
    items += [
        (Swap(m.domain[0], m.domain[1], kind), m)
        for (kind, _, _), m in sorted(env.crossings.items(), key=lambda kv: kv[0])
    ]

    def size(legs):
        return int(np.prod(legs_shape(legs)))

    def fits(m):
        return size(m.domain) <= max_size and size(m.codomain) <= max_size

    start = [it for it in items if fits(it[1])]
    if not start:
        raise ValueError("no generator small enough")
    expr, m = rng.choice(start)
    cur = list(_real(m.codomain))
    dom = list(m.domain)
    if rng.random() < 0.3:
        pad = [s for _, mm in items for s in _real(mm.domain)]
        s = rng.choice(pad)
        if size(dom + [s]) <= max_size and size(cur + [s]) <= max_size:
            if rng.random() < 0.5:
                expr, cur = Tensor(Id(s), expr), [s] + cur
            else:
                expr, cur = Tensor(expr, Id(s)), cur + [s]
    for _ in range(rng.randint(1, layers)):
        options = []
        for it, mm in items:
            d = _real(mm.domain)
            for i in range(len(cur) - len(d) + 1):
                if d and cur[i : i + len(d)] == d:
                    new = cur[:i] + _real(mm.codomain) + cur[i + len(d) :]
                    if size(new) <= max_size:
                        options.append((it, mm, i, len(d)))
                elif not d and len(cur) == 0:
                    options.append((it, mm, 0, 0))
        if not options:
            break
        it, mm, i, k = rng.choice(options)
        parts = []
        if i:
            parts.append(Id(*cur[:i]))
        parts.append(it)
        if i + k < len(cur):
            parts.append(Id(*cur[i + k :]))
        expr = Compose(expr, par(*parts))
        cur = cur[:i] + _real(mm.codomain) + cur[i + k :]
    return expr
