"""Dense univariate polynomials over a :class:`~lincharpoly.ff.FieldCtx`.

Coefficients are stored little-endian as field encodings with no trailing
zeros. Arithmetic runs in the compiled kernels whenever the base field has
log tables; otherwise it falls back to scalar loops.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import (
    DivisionByZero,
    DuplicateAbscissa,
    FieldMismatch,
    NotMonic,
    TooFewPoints,
)
from .ff import FieldCtx, FieldElement, _prime_factors, embed


def _norm(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class Poly:
    __slots__ = ("base", "coeffs")

    def __init__(self, base: FieldCtx, coeffs: Iterable = ()):
        out = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.ctx != base:
                    raise FieldMismatch(f"coefficient in {c.ctx!r}, expected {base!r}")
                out.append(c.value)
            else:
                c = int(c)
                if base.is_prime:
                    c %= base.p
                elif not 0 <= c < base.order:
                    raise ValueError(f"coefficient encoding {c} out of range")
                out.append(c)
        self.base = base
        self.coeffs = _norm(out)

    @classmethod
    def _raw(cls, base: FieldCtx, coeffs) -> Poly:
        p = cls.__new__(cls)
        p.base = base
        p.coeffs = _norm([int(c) for c in coeffs])
        return p

    @classmethod
    def x(cls, base: FieldCtx) -> Poly:
        return cls._raw(base, [0, 1])

    @classmethod
    def constant(cls, base: FieldCtx, c) -> Poly:
        v = c.value if isinstance(c, FieldElement) else base.from_int(int(c))
        return cls._raw(base, [v])

    @classmethod
    def monomial(cls, base: FieldCtx, n: int, c=1) -> Poly:
        v = c.value if isinstance(c, FieldElement) else base.from_int(int(c))
        return cls._raw(base, [0] * n + [v])

    # -- basic properties --------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> FieldElement:
        return FieldElement(self.base, self.coeffs[-1] if self.coeffs else 0)

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> FieldElement:
        v = self.coeffs[i] if 0 <= i < len(self.coeffs) else 0
        return FieldElement(self.base, v)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.base == other.base and self.coeffs == other.coeffs
        if isinstance(other, (int, FieldElement)):
            return self == Poly.constant(self.base, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.base, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(c) if self.base.is_prime else f"[{FieldElement(self.base, c).encode()}]"
            if i == 0:
                terms.append(cs)
            else:
                mono = "T" if i == 1 else f"T^{i}"
                terms.append(mono if c == 1 else f"{cs}*{mono}")
        return " + ".join(terms)

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.base != self.base:
                raise FieldMismatch(f"{other.base!r} vs {self.base!r}")
            return other
        if isinstance(other, (int, np.integer, FieldElement)):
            return Poly.constant(self.base, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return poly_add(self, o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return poly_sub(self, o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return poly_sub(o, self)

    def __neg__(self):
        b = self.base
        return Poly._raw(b, [b.neg(c) for c in self.coeffs])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return poly_mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        r = Poly.constant(self.base, 1)
        a = self
        while e:
            if e & 1:
                r = r * a
            e >>= 1
            if e:
                a = a * a
        return r

    def __divmod__(self, other):
        return poly_divrem(self, self._coerce(other))

    def __floordiv__(self, other):
        return poly_divrem(self, self._coerce(other))[0]

    def __mod__(self, other):
        return poly_divrem(self, self._coerce(other))[1]

    def __call__(self, x) -> FieldElement:
        return poly_eval(self, x)

    def scale(self, c) -> Poly:
        b = self.base
        v = c.value if isinstance(c, FieldElement) else b.from_int(int(c))
        return Poly._raw(b, [b.mul(v, a) for a in self.coeffs])

    def monic(self) -> Poly:
        if self.is_zero:
            raise DivisionByZero("zero polynomial has no monic associate")
        return self.scale(FieldElement(self.base, self.base.inv(self.coeffs[-1])))

    def eval_raw(self, x: int) -> int:
        """Horner evaluation at an encoding of the same field."""
        b = self.base
        r = 0
        for c in reversed(self.coeffs):
            r = b.add(b.mul(r, x), c)
        return r

    def encode(self) -> str:
        """Semicolon-separated element encodings, little-endian (``"1;0;1"``)."""
        if not self.coeffs:
            return "0"
        return ";".join(FieldElement(self.base, c).encode() for c in self.coeffs)

    @classmethod
    def parse(cls, base: FieldCtx, text: str) -> Poly:
        from .ff import parse_element

        text = text.strip()
        if text in ("", "0"):
            return cls._raw(base, [])
        return cls._raw(base, [parse_element(base, t).value for t in text.split(";")])


# ---------------------------------------------------------------- operations


def _check(a: Poly, b: Poly):
    if a.base != b.base:
        raise FieldMismatch(f"{a.base!r} vs {b.base!r}")


def poly_add(a: Poly, b: Poly) -> Poly:
    _check(a, b)
    f = a.base
    n = max(len(a.coeffs), len(b.coeffs))
    x = a.coeffs + (0,) * (n - len(a.coeffs))
    y = b.coeffs + (0,) * (n - len(b.coeffs))
    return Poly._raw(f, [f.add(u, v) for u, v in zip(x, y)])


def poly_sub(a: Poly, b: Poly) -> Poly:
    _check(a, b)
    f = a.base
    n = max(len(a.coeffs), len(b.coeffs))
    x = a.coeffs + (0,) * (n - len(a.coeffs))
    y = b.coeffs + (0,) * (n - len(b.coeffs))
    return Poly._raw(f, [f.sub(u, v) for u, v in zip(x, y)])


def poly_mul(a: Poly, b: Poly) -> Poly:
    _check(a, b)
    f = a.base
    if not a.coeffs or not b.coeffs:
        return Poly._raw(f, [])
    if f.kernel_ready:
        return Poly._raw(f, K.poly_mul(a.array(), b.array(), *f.kernel_args()).tolist())
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] = f.add(out[i + j], f.mul(x, y))
    return Poly._raw(f, out)


def poly_divrem(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """``(q, r)`` with ``a = q*b + r`` and ``deg r < deg b``."""
    _check(a, b)
    if b.is_zero:
        raise DivisionByZero("polynomial division by zero")
    f = a.base
    if f.kernel_ready:
        q, r = K.poly_divmod(a.array(), b.array(), *f.kernel_args())
        return Poly._raw(f, q.tolist()), Poly._raw(f, r.tolist())
    r = list(a.coeffs)
    lb = len(b.coeffs)
    if len(r) < lb:
        return Poly._raw(f, []), a
    inv = f.inv(b.coeffs[-1])
    q = [0] * (len(r) - lb + 1)
    for i in range(len(r) - 1, lb - 2, -1):
        c = f.mul(r[i], inv)
        q[i - lb + 1] = c
        if c:
            for j, bj in enumerate(b.coeffs):
                r[i - lb + 1 + j] = f.sub(r[i - lb + 1 + j], f.mul(c, bj))
    return Poly._raw(f, q), Poly._raw(f, r[: lb - 1])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    _check(a, b)
    while not b.is_zero:
        a, b = b, poly_divrem(a, b)[1]
    return a.monic() if not a.is_zero else a


def poly_eval(f: Poly, x) -> FieldElement:
    """Horner evaluation at ``x``, which may live in an extension of ``f.base``."""
    if isinstance(x, (int, np.integer)):
        x = f.base(int(x))
    E = x.ctx
    if E == f.base:
        return FieldElement(E, f.eval_raw(x.value))
    coeffs = [embed(FieldElement(f.base, c), E).value for c in f.coeffs]
    r = 0
    for c in reversed(coeffs):
        r = E.add(E.mul(r, x.value), c)
    return FieldElement(E, r)


def poly_interpolate(points: Sequence[tuple], monic_degree: int | None = None) -> Poly:
    """Lagrange interpolation, O(count^2).

    With ``monic_degree=n`` and exactly ``n`` points the result is the monic
    degree-``n`` polynomial through them.
    """
    if not points:
        raise TooFewPoints("no points given")
    F = points[0][0].ctx
    xs = [F(x).value for x, _ in points]
    ys = [F(y).value for _, y in points]
    if len(set(xs)) != len(xs):
        raise DuplicateAbscissa("abscissae must be distinct")
    n = len(xs)
    shift = None
    if monic_degree is not None:
        if n < monic_degree:
            raise TooFewPoints(f"{n} points cannot fix a monic polynomial of degree {monic_degree}")
        if n == monic_degree:
            ys = [F.sub(y, F.pow(x, n)) for x, y in zip(xs, ys)]
            shift = n
    # master polynomial prod (X - x_i), coefficients little-endian
    master = [1]
    for x in xs:
        nx = F.neg(x)
        nxt = [0] * (len(master) + 1)
        for i, c in enumerate(master):
            nxt[i + 1] = F.add(nxt[i + 1], c)
            nxt[i] = F.add(nxt[i], F.mul(nx, c))
        master = nxt
    out = [0] * n
    for x, y in zip(xs, ys):
        if y == 0:
            continue
        # quotient master / (X - x) by synthetic division
        quo = [0] * n
        carry = 0
        for i in range(n, 0, -1):
            carry = F.add(master[i], F.mul(carry, x)) if i < n else master[i]
            quo[i - 1] = carry
        denom = 0
        for c in reversed(quo):
            denom = F.add(F.mul(denom, x), c)
        w = F.div(y, denom)
        for i in range(n):
            out[i] = F.add(out[i], F.mul(w, quo[i]))
    if shift is not None:
        out = out + [0] * (shift + 1 - len(out))
        out[shift] = F.add(out[shift], 1)
    return Poly._raw(F, out)


# ------------------------------------------------------------ irreducibility


def _x_pow_chain(f: Poly):
    """Yield X^(Q^i) mod f for i = 1, 2, ... (f of degree at least 2)."""
    F = f.base
    args = F.kernel_args()
    fa = f.array()
    h = np.zeros(f.degree, dtype=np.int64)
    h[1] = 1
    while True:
        h = K.poly_powmod(h, F.order, fa, *args)
        yield h


def _gcd_is_one(h: np.ndarray, f: Poly) -> bool:
    F = f.base
    args = F.kernel_args()
    p, E = args[0], args[1]
    g = h.copy()
    if g.shape[0] < 2:
        g = np.concatenate([g, np.zeros(2 - g.shape[0], dtype=np.int64)])
    g[1] = K.f_sub(g[1], 1, p, E)
    d = K.poly_gcd(g, f.array(), *args)
    return d.shape[0] == 1


def is_irreducible(f: Poly) -> bool:
    """Rabin's test: X^(Q^s) = X mod f and gcd(X^(Q^(s/t)) - X, f) = 1 for primes t | s.

    A short distinct-degree scan runs first so most reducible inputs exit
    after a few powerings.
    """
    if not f.is_monic:
        raise NotMonic("irreducibility test needs a monic polynomial")
    s = f.degree
    if s < 1:
        raise ValueError("degree must be at least 1")
    if s == 1:
        return True
    if f.coeffs[0] == 0:
        return False
    if not f.base.kernel_ready:
        return _is_irreducible_slow(f)
    needed = {s // t for t in _prime_factors(s)}
    chain = _x_pow_chain(f)
    prescan = min(s // 2, 12)
    for i in range(1, s + 1):
        h = next(chain)
        if i <= prescan or i in needed:
            if not _gcd_is_one(h, f):
                return False
    expect = np.zeros(s, dtype=np.int64)
    expect[1] = 1
    return bool(np.array_equal(h, expect))


def _is_irreducible_slow(f: Poly) -> bool:
    F = f.base
    s = f.degree
    X = Poly.x(F)

    def qpow(g: Poly) -> Poly:
        r, a, e = Poly.constant(F, 1), g, F.order
        while e:
            if e & 1:
                r = (r * a) % f
            e >>= 1
            if e:
                a = (a * a) % f
        return r

    needed = {s // t for t in _prime_factors(s)}
    h = X
    for i in range(1, s + 1):
        h = qpow(h)
        if i in needed and poly_gcd(h - X, f).degree != 0:
            return False
    return h == X % f
