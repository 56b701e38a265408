"""Finite fields as towers of explicit extensions.

Every element is stored as its canonical integer encoding: a prime-field
element is its residue, and an element ``c_0 + c_1 g + ... + c_{s-1} g^{s-1}``
of a degree-``s`` extension over a base of order ``Q`` is encoded as
``sum(enc(c_i) * Q**i)``. Unwinding the tower, the encoding is the base-``p``
number whose digits are the coordinates over the prime field, so addition is
digit-wise and the first ``p**k`` encodings form an F_p-subspace.

Fields up to ``TABLE_LIMIT`` elements get discrete log tables on first use;
larger ones multiply by polynomial reduction over their base.
"""

from __future__ import annotations

import functools
from typing import Iterable, Sequence

import numpy as np

from . import _kernels as K
from .errors import (
    DegreeMismatch,
    DivisionByZero,
    Falsification,
    FieldMismatch,
    FieldTooSmall,
    NotInTower,
    NotIrreducible,
    NotPrime,
    ZeroTower,
)

TABLE_LIMIT = 1 << 20

_DUMMY = np.zeros(1, dtype=np.int64)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class FieldCtx:
    """A finite field: either F_p or ``base[X]/(modulus)``.

    Contexts compare by value, so two independently built towers with the
    same moduli are interchangeable.
    """

    def __init__(self, p: int, base: FieldCtx | None = None, modulus: Sequence[int] | None = None):
        self.p = p
        self.base = base
        if base is None:
            self.modulus = None
            self.degree = 1
            self.order = p
            self.prime_degree = 1
            self._key = (p,)
        else:
            self.modulus = tuple(int(c) for c in modulus)
            self.degree = len(self.modulus) - 1
            self.order = base.order ** self.degree
            self.prime_degree = base.prime_degree * self.degree
            self._key = (base._key, self.modulus)
        self._tables = None
        self._mod_arr = None

    # -- identity -----------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.base is None:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.prime_degree})[deg {self.degree} over GF({self.base.order})]"

    @property
    def is_prime(self) -> bool:
        return self.base is None

    def tower(self) -> list[FieldCtx]:
        """This field and its ancestors, innermost last."""
        out = [self]
        while out[-1].base is not None:
            out.append(out[-1].base)
        return out

    def degree_over(self, sub: FieldCtx) -> int:
        d = 1
        for f in self.tower():
            if f == sub:
                return d
            d *= f.degree
        raise NotInTower(f"{sub!r} is not a subfield in the tower of {self!r}")

    # -- element construction -------------------------------------------------

    def __call__(self, value=0) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.ctx == self:
                return value
            return embed(value, self)
        if isinstance(value, (int, np.integer)):
            return FieldElement(self, self.from_int(int(value)))
        return FieldElement(self, self.from_coeffs(value))

    def from_int(self, n: int) -> int:
        """Encoding of ``n * 1`` (integers act through the prime field)."""
        return n % self.p

    def from_coeffs(self, coeffs: Iterable) -> int:
        coeffs = list(coeffs)
        if self.base is None:
            if len(coeffs) != 1:
                raise DegreeMismatch("prime field elements have one coefficient")
            c = coeffs[0]
            return int(c.value if isinstance(c, FieldElement) else c) % self.p
        if len(coeffs) > self.degree:
            raise DegreeMismatch(f"expected at most {self.degree} coefficients, got {len(coeffs)}")
        enc = []
        for c in coeffs:
            if isinstance(c, FieldElement):
                if c.ctx != self.base:
                    raise FieldMismatch("coefficient not in the base field")
                enc.append(c.value)
            else:
                c = int(c)
                if not 0 <= c < self.base.order:
                    raise ValueError(f"coefficient encoding {c} out of range")
                enc.append(c)
        return self.encode(enc)

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    @property
    def gen(self) -> FieldElement:
        """The class of X in ``base[X]/(modulus)``."""
        if self.base is None:
            return self.one
        if self.degree == 1:
            return FieldElement(self, self.base.neg(self.modulus[0]))
        return FieldElement(self, self.base.order)

    def decode(self, a: int) -> list[int]:
        """Base-field coefficient encodings of ``a``, little-endian, full length."""
        if self.base is None:
            return [a]
        Q = self.base.order
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, Q)
            out.append(r)
        return out

    def encode(self, coeffs: Sequence[int]) -> int:
        Q = self.base.order
        a = 0
        for c in reversed(coeffs):
            a = a * Q + int(c)
        return a

    # -- scalar arithmetic on encodings ----------------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.base is None:
            return (a + b) % p
        if p == 2:
            return a ^ b
        r, m = 0, 1
        while a or b:
            a, da = divmod(a, p)
            b, db = divmod(b, p)
            r += ((da + db) % p) * m
            m *= p
        return r

    def neg(self, a: int) -> int:
        p = self.p
        if self.base is None:
            return (-a) % p
        if p == 2:
            return a
        r, m = 0, 1
        while a:
            a, d = divmod(a, p)
            r += ((-d) % p) * m
            m *= p
        return r

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.base is None:
            return a * b % self.p
        t = self._ensure_tables()
        if t is not None:
            lg, ex = t[2], t[3]
            return ex[lg[a] + lg[b]]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        t = self._ensure_tables()
        if t is not None:
            lg, ex = t[2], t[3]
            q1 = self.order - 1
            return ex[(q1 - lg[a]) % q1]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 1 if e == 0 else 0
        if self.base is None:
            return pow(a, e, self.p)
        t = self._ensure_tables()
        if t is not None:
            lg, ex = t[2], t[3]
            return ex[(lg[a] * e) % (self.order - 1)]
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            e >>= 1
            if e:
                a = self._mul_slow(a, a)
        return r

    def _modulus_array(self):
        if self._mod_arr is None:
            self._mod_arr = np.array(self.modulus, dtype=np.int64)
        return self._mod_arr

    def _mul_slow(self, a: int, b: int) -> int:
        base = self.base
        if base.kernel_ready:
            args = base.kernel_args()
            x = np.array(self.decode(a), dtype=np.int64)
            y = np.array(self.decode(b), dtype=np.int64)
            r = K.poly_mulmod(x, y, self._modulus_array(), *args)
            return self.encode([int(v) for v in r])
        s = self.degree
        x, y = self.decode(a), self.decode(b)
        prod = [0] * (2 * s - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    if yj:
                        prod[i + j] = base.add(prod[i + j], base.mul(xi, yj))
        mod = self.modulus
        for i in range(2 * s - 2, s - 1, -1):
            c = prod[i]
            if c:
                for j in range(s):
                    prod[i - s + j] = base.sub(prod[i - s + j], base.mul(c, mod[j]))
        return self.encode(prod[:s])

    # -- kernel support ------------------------------------------------------

    @property
    def kernel_ready(self) -> bool:
        return self.base is None or self.order <= TABLE_LIMIT

    def kernel_args(self):
        """``(p, E, lg, ex)`` for the compiled kernels."""
        if self.base is None:
            return (self.p, 1, _DUMMY, _DUMMY)
        t = self._ensure_tables()
        if t is None:
            raise FieldTooSmall(f"{self!r} is too large for table arithmetic")
        return t[0], t[1], t[4], t[5]

    def _ensure_tables(self):
        if self._tables is None:
            if self.order > TABLE_LIMIT:
                self._tables = False
            else:
                self._tables = self._build_tables()
        return self._tables or None

    def _build_tables(self):
        p, E, Q = self.p, self.prime_degree, self.order
        factors = _prime_factors(Q - 1)
        g = 1
        if Q > 2:
            g = next(
                g for g in range(2, Q)
                if all(self._pow_slow(g, (Q - 1) // f) != 1 for f in factors)
            )
        mulg = np.zeros((E, E), dtype=np.int64)
        for j in range(E):
            v = self._mul_slow(g, p**j)
            for i in range(E):
                v, d = divmod(v, p)
                mulg[i, j] = d
        lg, ex, ok = K.build_tables(mulg, p, E, Q)
        if not ok:
            raise Falsification("primitive element check failed while building tables")
        return (p, E, lg.tolist(), ex.tolist(), lg, ex)

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            e >>= 1
            if e:
                a = self._mul_slow(a, a)
        return r


class FieldElement:
    """An element of a :class:`FieldCtx`, with the usual operators."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: FieldCtx, value: int):
        self.ctx = ctx
        self.value = value

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"{other.ctx!r} vs {self.ctx!r}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.ctx.from_int(int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.sub(o, self.value))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(o, self.value))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, e))

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == self.ctx.from_int(int(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.ctx!r}({self.encode()})"

    @property
    def coeffs(self) -> tuple:
        """Coordinates over the immediate base field, little-endian."""
        if self.ctx.base is None:
            return (self.value,)
        b = self.ctx.base
        return tuple(FieldElement(b, c) for c in self.ctx.decode(self.value))

    def encode(self) -> str:
        """Comma-separated coefficient encodings, little-endian."""
        return ",".join(str(c) for c in self.ctx.decode(self.value))


def parse_element(ctx: FieldCtx, text: str) -> FieldElement:
    """Inverse of :meth:`FieldElement.encode`; short sequences are zero-padded."""
    parts = [s.strip() for s in text.strip().split(",")]
    if not parts or any(not s for s in parts):
        raise ValueError(f"bad element encoding {text!r}")
    vals = [int(s) for s in parts]
    if ctx.base is None:
        if len(vals) != 1:
            raise DegreeMismatch(f"prime field element takes one coefficient: {text!r}")
        if not 0 <= vals[0] < ctx.p:
            raise ValueError(f"coefficient out of range in {text!r}")
        return FieldElement(ctx, vals[0])
    return FieldElement(ctx, ctx.from_coeffs(vals))


# ---------------------------------------------------------------- builders


@functools.lru_cache(maxsize=None)
def make_prime_field(p: int) -> FieldCtx:
    if not isinstance(p, int) or not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return FieldCtx(p)


def make_field(p: int, e: int = 1) -> FieldCtx:
    """F_(p^e): the prime field or its canonical degree-e extension."""
    F = make_prime_field(p)
    if e < 1:
        raise DegreeMismatch("field exponent must be positive")
    return F if e == 1 else extend_field(F, e)


_EXT_CACHE: dict = {}


def extend_field(base: FieldCtx, s: int, modulus=None) -> FieldCtx:
    """Degree-``s`` extension of ``base``.

    Without a modulus the smallest monic irreducible of degree ``s`` (see
    :func:`find_irreducible`) is used, so repeated calls agree.
    """
    from .polyring import Poly, is_irreducible

    if s < 1:
        raise DegreeMismatch("extension degree must be positive")
    if modulus is None:
        coeffs = find_irreducible(base, s).coeffs
    else:
        if isinstance(modulus, Poly):
            if modulus.base != base:
                raise FieldMismatch("modulus is not over the base field")
            coeffs = modulus.coeffs
        else:
            coeffs = Poly(base, modulus).coeffs
        if len(coeffs) - 1 != s:
            raise DegreeMismatch(f"modulus degree {len(coeffs) - 1} != {s}")
        if coeffs[-1] != 1:
            raise NotIrreducible("modulus must be monic")
        if not is_irreducible(Poly(base, coeffs)):
            raise NotIrreducible(f"modulus {coeffs} is reducible over {base!r}")
    key = (base, tuple(coeffs))
    ctx = _EXT_CACHE.get(key)
    if ctx is None:
        ctx = _EXT_CACHE[key] = FieldCtx(base.p, base, coeffs)
    return ctx


@functools.lru_cache(maxsize=None)
def find_irreducible(base: FieldCtx, s: int):
    """Smallest monic irreducible of degree ``s`` over ``base``.

    Candidates ``X^s + c_{s-1}X^{s-1} + ... + c_0`` are scanned by the integer
    value of ``sum(enc(c_i) * Q**i)``, i.e. the same order as element
    encodings.
    """
    from .polyring import Poly, is_irreducible

    if s < 1:
        raise DegreeMismatch("degree must be positive")
    Q = base.order
    if s == 1:
        return Poly(base, [0, 1])
    small_roots = range(Q) if Q <= 64 else ()
    for k in range(1, Q**s):
        tail = []
        v = k
        for _ in range(s):
            v, r = divmod(v, Q)
            tail.append(r)
        if tail[0] == 0:
            continue
        f = Poly(base, tail + [1])
        if any(f.eval_raw(x) == 0 for x in small_roots):
            continue
        if is_irreducible(f):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ------------------------------------------------------ Frobenius and norm


def frobenius(a: FieldElement, k: int, over: FieldCtx) -> FieldElement:
    """``a ** (|over| ** k)``."""
    deg = a.ctx.degree_over(over)
    k %= deg
    q = over.order
    v = a.value
    for _ in range(k):
        v = a.ctx.pow(v, q)
    return FieldElement(a.ctx, v)


def norm(a: FieldElement, down_to: FieldCtx | None = None) -> FieldElement:
    """Norm of ``a`` down to a subfield of its tower (the prime field by default)."""
    if down_to is None:
        down_to = a.ctx.tower()[-1]
    m = a.ctx.degree_over(down_to)
    if m == 0:
        raise ZeroTower("zero-degree tower")
    q = down_to.order
    ctx = a.ctx
    acc, conj = 1, a.value
    for i in range(m):
        acc = ctx.mul(acc, conj)
        if i + 1 < m:
            conj = ctx.pow(conj, q)
    if acc >= down_to.order:
        raise Falsification("norm does not lie in the subfield")
    return FieldElement(down_to, acc)


def enumerate_elements(ctx: FieldCtx, count: int) -> list[FieldElement]:
    """The first ``count`` elements in encoding order."""
    if count > ctx.order:
        raise FieldTooSmall(f"{ctx!r} has only {ctx.order} elements, {count} requested")
    return [FieldElement(ctx, i) for i in range(count)]


# ----------------------------------------------------- subfield embeddings


def _vec_to_int(vec, Q: int) -> int:
    a = 0
    for c in reversed([int(v) for v in vec]):
        a = a * Q + c
    return a


@functools.lru_cache(maxsize=None)
def _generator_image(src: FieldCtx, dst: FieldCtx) -> tuple[int, ...]:
    """Coordinates in ``dst`` of the image of ``src.gen``.

    Both fields are direct extensions of the same base. The image is the
    root of ``src.modulus`` in ``dst`` that is smallest in encoding order.
    """
    base = src.base
    args = base.kernel_args()
    Q = base.order
    m, N = src.degree, dst.degree
    f = dst._modulus_array()
    fr = K.frobenius_matrix(f, Q, *args)
    frm = np.eye(N, dtype=np.int64)
    for _ in range(m):
        frm = K.mat_mul(frm, fr, *args)
    p, E = args[0], args[1]
    for i in range(N):
        frm[i, i] = K.f_sub(frm[i, i], 1, p, E)
    basis = K.nullspace(frm, *args)
    if basis.shape[0] != m:
        raise Falsification(f"subfield of degree {m} has dimension {basis.shape[0]}")
    mu = [int(c) for c in src.modulus]

    def is_root(z):
        acc = np.zeros(N, dtype=np.int64)
        for c in reversed(mu):
            acc = K.poly_mulmod(acc, z, f, *args)
            acc[0] = K.f_add(acc[0], c, p, E)
        return not acc.any()

    root = None
    for k in range(1, Q**m):
        z = np.zeros(N, dtype=np.int64)
        v = k
        for i in range(m):
            v, c = divmod(v, Q)
            if c:
                z = K.mat_add(z[None, :], K.mat_scale(basis[i : i + 1], c, *args), p, E)[0]
        if is_root(z):
            root = z
            break
    if root is None:
        raise Falsification("no root of the subfield modulus found")
    best = _vec_to_int(root, Q)
    z = root
    for _ in range(m - 1):
        z = K.mat_mul(fr, z[:, None], *args)[:, 0]
        best = min(best, _vec_to_int(z, Q))
    return tuple(dst.decode(best))


def embedding_vector(x: FieldElement, dst: FieldCtx) -> np.ndarray:
    """Coordinates of the image of ``x`` in ``dst`` over ``dst.base``."""
    return np.array(dst.decode(embed(x, dst).value), dtype=np.int64)


def embed(x: FieldElement, dst: FieldCtx) -> FieldElement:
    """Map ``x`` into ``dst``.

    Supported: ``x`` already in ``dst``; ``x`` in a field of ``dst``'s tower
    (encodings coincide); ``x`` in a direct extension of ``dst.base`` whose
    degree divides ``dst.degree`` (deterministic root embedding).
    """
    src = x.ctx
    if src == dst:
        return x
    if src in dst.tower():
        return FieldElement(dst, x.value)
    if (
        src.base is not None
        and dst.base is not None
        and src.base == dst.base
        and dst.degree % src.degree == 0
    ):
        if x.value < src.base.order:  # constants, including every element when deg 1
            return FieldElement(dst, x.value)
        base = src.base
        args = base.kernel_args()
        f = dst._modulus_array()
        theta = np.array(_generator_image(src, dst), dtype=np.int64)
        acc = np.zeros(dst.degree, dtype=np.int64)
        p, E = args[0], args[1]
        for c in reversed(src.decode(x.value)):
            acc = K.poly_mulmod(acc, theta, f, *args)
            acc[0] = K.f_add(acc[0], c, p, E)
        return FieldElement(dst, _vec_to_int(acc, base.order))
    raise NotInTower(f"no embedding from {src!r} into {dst!r}")
