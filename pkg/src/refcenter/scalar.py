"""Exact arithmetic in the cyclotomic fields Q(zeta_n).

Elements are stored as coefficient tuples in the power basis
1, z, ..., z^(d-1) where z = zeta_n and d = phi(n); every result is
reduced modulo the n-th cyclotomic polynomial, so equality is
coefficientwise.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

Rational = mpq


class FieldMismatch(TypeError):
    pass


class ScalarParseError(ValueError):
    pass


def _poly_divmod_int(num, den):
    """Exact division of integer polynomials (low-to-high coefficients), den monic."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for j, dc in enumerate(den):
                num[k + j] -= c * dc
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (n - 1) + [1]  # z^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, cyclotomic_poly(d))
            assert not any(rem)
    return tuple(poly)


_MPQ = type(mpq())


def _coerce_rational(x):
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, (int, Fraction, _MPQ)):
        return mpq(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


class FieldCtx:
    """The field Q(zeta_n); n = 1 gives the rationals."""

    _cache: dict[int, "FieldCtx"] = {}

    def __new__(cls, n: int = 1):
        if n in cls._cache:
            return cls._cache[n]
        self = super().__new__(cls)
        self.n = n
        self.min_poly = cyclotomic_poly(n)
        self.degree = len(self.min_poly) - 1
        d = self.degree
        # z^k for d <= k <= 2d-2, expressed in the power basis
        self._reduce = {}
        cur = [mpq(-c) for c in self.min_poly[:d]]  # z^d
        for k in range(d, 2 * d - 1):
            self._reduce[k] = tuple(cur)
            lead = cur[-1]
            cur = [mpq(0)] + cur[:-1]
            if lead:
                cur = [cur[i] - lead * self.min_poly[i] for i in range(d)]
        self.zero = Scalar._make((mpq(0),) * d, self)
        self.one = Scalar._make((mpq(1),) + (mpq(0),) * (d - 1), self)
        cls._cache[n] = self
        return self

    def __reduce__(self):
        return (FieldCtx, (self.n,))

    def __repr__(self):
        return f"FieldCtx({self.n})"

    def __call__(self, x) -> "Scalar":
        return self.scalar(x)

    def scalar(self, x) -> "Scalar":
        if isinstance(x, Scalar):
            if x.ctx is not self:
                raise FieldMismatch(f"{x.ctx} vs {self}")
            return x
        if isinstance(x, str):
            return self.parse(x)
        q = _coerce_rational(x)
        return Scalar._make((q,) + (mpq(0),) * (self.degree - 1), self)

    def from_coeffs(self, coeffs) -> "Scalar":
        """Build from power-basis coefficients of any length, reducing mod Phi_n."""
        d = self.degree
        c = [mpq(0)] * max(d, len(coeffs))
        for i, x in enumerate(coeffs):
            c[i] = x if type(x) is _MPQ else _coerce_rational(x)
        return Scalar._make(self._reduce_list(c), self)

    def _reduce_list(self, c):
        d = self.degree
        if len(c) <= d:
            return tuple(c) + (mpq(0),) * (d - len(c))
        # reduce z^k for large k using z^n = 1 first
        if len(c) > 2 * d - 1:
            folded = [mpq(0)] * self.n
            for k, x in enumerate(c):
                folded[k % self.n] += x
            c = folded
            if len(c) <= d:
                return tuple(c) + (mpq(0),) * (d - len(c))
            if len(c) > 2 * d - 1:
                # n > 2d-1 cannot happen for phi(n) = d except tiny cases; reduce stepwise
                return self._reduce_stepwise(c)
        out = list(c[:d])
        for k in range(d, len(c)):
            x = c[k]
            if x:
                red = self._reduce[k]
                for i in range(d):
                    out[i] += x * red[i]
        return tuple(out)

    def _reduce_stepwise(self, c):
        c = list(c)
        d = self.degree
        for k in range(len(c) - 1, d - 1, -1):
            x = c[k]
            if x:
                c[k] = mpq(0)
                for i in range(d):
                    c[k - d + i] -= x * self.min_poly[i]
        return tuple(c[:d])

    def zeta(self, k: int = 1) -> "Scalar":
        return zeta_power(k, self)

    def parse(self, text: str) -> "Scalar":
        return parse_scalar(text, self)

    def roots_of_unity(self, m: int) -> list["Scalar"]:
        """All m-th roots of unity lying in this field, sorted by exponent of zeta_n."""
        out = []
        # Q(zeta_n) contains exactly the 2n-th (n odd) or n-th (n even) roots of unity
        base = 2 * self.n if self.n % 2 else self.n
        w = _primitive_root(self, base)
        for k in range(base):
            x = w ** k
            if x ** m == self.one and x not in out:
                out.append(x)
        return out


def _primitive_root(ctx: FieldCtx, base: int) -> "Scalar":
    if base == ctx.n:
        return ctx.zeta(1)
    # n odd: -zeta_n generates the 2n-th roots of unity
    return -ctx.zeta(1)


class Scalar:
    """An element of Q(zeta_n) in canonical power-basis form."""

    __slots__ = ("c", "ctx")

    @classmethod
    def _make(cls, c, ctx):
        self = object.__new__(cls)
        self.c = c
        self.ctx = ctx
        return self

    def _other(self, x):
        if isinstance(x, Scalar):
            if x.ctx is not self.ctx:
                raise FieldMismatch(f"{x.ctx} vs {self.ctx}")
            return x
        try:
            return self.ctx.scalar(x)
        except TypeError:
            return None

    def __add__(self, x):
        o = self._other(x)
        if o is None:
            return NotImplemented
        if len(self.c) == 1:
            return Scalar._make((self.c[0] + o.c[0],), self.ctx)
        return Scalar._make(tuple(a + b for a, b in zip(self.c, o.c)), self.ctx)

    __radd__ = __add__

    def __sub__(self, x):
        o = self._other(x)
        if o is None:
            return NotImplemented
        return Scalar._make(tuple(a - b for a, b in zip(self.c, o.c)), self.ctx)

    def __rsub__(self, x):
        o = self._other(x)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return Scalar._make(tuple(-a for a in self.c), self.ctx)

    def __pos__(self):
        return self

    def __mul__(self, x):
        o = self._other(x)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) == 1:
            return Scalar._make((a[0] * b[0],), self.ctx)
        if not any(a) or not any(b):
            return self.ctx.zero
        d = len(a)
        prod = [mpq(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return Scalar._make(self.ctx._reduce_list(prod), self.ctx)

    __rmul__ = __mul__

    def __truediv__(self, x):
        o = self._other(x)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, x):
        o = self._other(x)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ctx.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Scalar":
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        if len(self.c) == 1:
            return Scalar._make((1 / self.c[0],), self.ctx)
        # solve (multiplication-by-self matrix) x = e_0 over Q
        d = self.ctx.degree
        cols = []
        zk = self.ctx.one
        z = self.ctx.zeta(1)
        for _ in range(d):
            cols.append((self * zk).c)
            zk = zk * z
        aug = [[cols[j][i] for j in range(d)] + [mpq(1 if i == 0 else 0)] for i in range(d)]
        for col in range(d):
            piv = next(i for i in range(col, d) if aug[i][col])
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = 1 / aug[col][col]
            aug[col] = [x * inv for x in aug[col]]
            for i in range(d):
                if i != col and aug[i][col]:
                    f = aug[i][col]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
        return Scalar._make(tuple(row[d] for row in aug), self.ctx)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, x):
        if isinstance(x, Scalar):
            return x.ctx is self.ctx and x.c == self.c
        try:
            o = self.ctx.scalar(x)
        except (TypeError, ValueError):
            return NotImplemented
        return o.c == self.c

    def __ne__(self, x):
        r = self.__eq__(x)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if len(self.c) == 1:
            return hash(self.c[0])
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash((self.c, self.ctx.n))

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r}, n={self.ctx.n})"

    def __reduce__(self):
        return (parse_scalar, (format_scalar(self), self.ctx))


def zeta_power(k: int, ctx: FieldCtx) -> Scalar:
    """Canonical representation of zeta_n^k (k taken mod n)."""
    k %= ctx.n
    c = [0] * (k + 1)
    c[k] = 1
    return ctx.from_coeffs(c)


def field_ops(a, b, ctx: FieldCtx):
    """(sum, difference, product, quotient) of a and b, the quotient None when b is zero."""
    a, b = ctx.scalar(a), ctx.scalar(b)
    return a + b, a - b, a * b, (a / b if b else None)


# ---------------------------------------------------------------- text syntax

_TOKEN = re.compile(r"\s*(?:(\d+)(?:\s*/\s*(\d+))?|(z)(?:\s*\^\s*(\d+))?|([+\-*]))")


def parse_scalar(text: str, ctx: FieldCtx) -> Scalar:
    """Parse the scalar grammar: sums of terms ``c``, ``c*z^k``, ``z^k``, ``c*z``.

    ``c`` is ``p`` or ``p/q`` with non-negative integers; signs are separate
    tokens between terms (or leading). ``z`` denotes zeta_n of ``ctx``.
    """
    s = text.strip()
    if not s:
        raise ScalarParseError("empty scalar")
    pos = 0
    coeffs: dict[int, mpq] = {}
    sign = 1
    expect_term = True
    coeff = None
    power = None
    pending_mul = False

    def flush():
        nonlocal coeff, power
        if coeff is None and power is None:
            raise ScalarParseError(f"dangling operator in {text!r}")
        c = coeff if coeff is not None else mpq(1)
        p = power if power is not None else 0
        coeffs[p] = coeffs.get(p, mpq(0)) + sign * c
        coeff = None
        power = None

    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ScalarParseError(f"unexpected character at {pos} in {text!r}")
        pos = m.end()
        num, den, zed, exp, op = m.groups()
        if num is not None:
            if coeff is not None or power is not None:
                raise ScalarParseError(f"misplaced number in {text!r}")
            if den is not None and int(den) == 0:
                raise ScalarParseError(f"zero denominator in {text!r}")
            coeff = mpq(int(num), int(den) if den else 1)
            expect_term = False
            pending_mul = False
        elif zed is not None:
            if power is not None or (coeff is not None and not pending_mul):
                raise ScalarParseError(f"misplaced z in {text!r}")
            power = int(exp) if exp is not None else 1
            expect_term = False
            pending_mul = False
        elif op == "*":
            if coeff is None or power is not None or pending_mul:
                raise ScalarParseError(f"misplaced '*' in {text!r}")
            pending_mul = True
        else:
            if pending_mul:
                raise ScalarParseError(f"misplaced sign in {text!r}")
            if expect_term:
                if coeff is not None or power is not None:
                    raise ScalarParseError(f"misplaced sign in {text!r}")
                sign = sign * (-1 if op == "-" else 1)
            else:
                flush()
                sign = -1 if op == "-" else 1
                expect_term = True
    if pending_mul or expect_term:
        raise ScalarParseError(f"incomplete scalar {text!r}")
    flush()
    top = max(coeffs)
    dense = [mpq(0)] * (top + 1)
    for p, c in coeffs.items():
        dense[p] += c
    return ctx.from_coeffs(dense)


def _fmt_q(q) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    """Canonical text form, highest power of z first, e.g. ``1/2*z^2 - 3``."""
    parts = []
    for p in range(len(x.c) - 1, -1, -1):
        q = x.c[p]
        if not q:
            continue
        neg = q < 0
        mag = -q if neg else q
        if p == 0:
            body = _fmt_q(mag)
        else:
            zp = "z" if p == 1 else f"z^{p}"
            body = zp if mag == 1 else f"{_fmt_q(mag)}*{zp}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"
