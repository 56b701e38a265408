"""q-linearized polynomials viewed as F_q-linear maps, and the dense baseline."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels as K
from .errors import FieldMismatch, InvalidInstance
from .ff import FieldCtx, FieldElement, embed, embedding_vector, extend_field
from .polyring import Poly


class LinearizedPoly:
    """``L = sum t_i Z^(q^i)`` with ``t_i`` in F_{q^m}.

    ``base_field`` is F_q; the coefficient field is F_q itself when ``m == 1``
    and ``extend_field(base_field, m)`` otherwise. Coefficients may be given
    as elements of the coefficient field or as their integer encodings.
    """

    def __init__(self, base_field: FieldCtx, m: int, t: Sequence):
        if m < 1:
            raise InvalidInstance("extension degree m must be positive")
        self.base_field = base_field
        self.m = m
        self.coeff_field = base_field if m == 1 else extend_field(base_field, m)
        ts = []
        for c in t:
            if isinstance(c, FieldElement):
                if c.ctx != self.coeff_field:
                    raise FieldMismatch(f"coefficient in {c.ctx!r}, expected {self.coeff_field!r}")
                ts.append(c)
            else:
                c = int(c)
                if not 0 <= c < self.coeff_field.order:
                    raise InvalidInstance(f"coefficient encoding {c} out of range")
                ts.append(FieldElement(self.coeff_field, c))
        if len(ts) < 2:
            raise InvalidInstance("q-degree must be at least 1")
        if not ts[-1]:
            raise InvalidInstance("leading coefficient t_r must be nonzero")
        self.t = tuple(ts)

    @property
    def q(self) -> int:
        return self.base_field.order

    @property
    def r(self) -> int:
        return len(self.t) - 1

    def __repr__(self):
        terms = " + ".join(f"[{c.encode()}]Z^(q^{i})" for i, c in enumerate(self.t) if c)
        return f"LinearizedPoly(q={self.q}, m={self.m}: {terms})"

    def __eq__(self, other):
        return (
            isinstance(other, LinearizedPoly)
            and self.base_field == other.base_field
            and self.m == other.m
            and self.t == other.t
        )

    def __hash__(self):
        return hash((self.base_field, self.m, tuple(c.value for c in self.t)))


@dataclass(frozen=True)
class DenseMatrix:
    base: FieldCtx
    entries: np.ndarray  # n x n, int64 encodings

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        return DenseMatrix(self.base, _matmul(self.entries, other.entries, self.base))

    def __add__(self, other: DenseMatrix) -> DenseMatrix:
        a = self.base.kernel_args()
        return DenseMatrix(self.base, K.mat_add(self.entries, other.entries, a[0], a[1]))

    def __eq__(self, other):
        return (
            isinstance(other, DenseMatrix)
            and self.base == other.base
            and np.array_equal(self.entries, other.entries)
        )


def _matmul(A: np.ndarray, B: np.ndarray, F: FieldCtx) -> np.ndarray:
    if F.is_prime and A.shape[1] * (F.p - 1) ** 2 < 2**52:
        # exact in float64, and BLAS is much faster than an integer loop
        C = A.astype(np.float64) @ B.astype(np.float64)
        return np.fmod(C, F.p).astype(np.int64)
    return K.mat_mul(A, B, *F.kernel_args())


def extension_for(L: LinearizedPoly, ell: int) -> FieldCtx:
    """F_{q^(m*ell)} as a direct extension of F_q."""
    return extend_field(L.base_field, L.m * ell)


def apply(L: LinearizedPoly, alpha: FieldElement) -> FieldElement:
    """``sum t_i alpha^(q^i)``."""
    E = alpha.ctx
    q = L.q
    acc = 0
    a = alpha.value
    for i, c in enumerate(L.t):
        if i:
            a = E.pow(a, q)
        if c:
            acc = E.add(acc, E.mul(embed(c, E).value, a))
    return FieldElement(E, acc)


def matrix_of(L: LinearizedPoly, ell: int) -> DenseMatrix:
    """Matrix of ``alpha -> L(alpha)`` on F_{q^(m*ell)} in the power basis over F_q."""
    F = L.base_field
    E = extension_for(L, ell)
    args = F.kernel_args()
    p, Ep = args[0], args[1]
    f = E._modulus_array()
    n = E.degree
    fr = K.frobenius_matrix(f, L.q, *args)
    acc = np.zeros((n, n), dtype=np.int64)
    frpow = np.eye(n, dtype=np.int64)
    for i, c in enumerate(L.t):
        if i:
            frpow = _matmul(frpow, fr, F)
        if not c:
            continue
        if c.value < L.q:  # t_i lies in F_q
            term = K.mat_scale(frpow, c.value, *args)
        else:
            mt = K.multiplication_matrix(embedding_vector(c, E), f, *args)
            term = _matmul(mt, frpow, F)
        acc = K.mat_add(acc, term, p, Ep)
    return DenseMatrix(F, acc)


def charpoly_dense(A: DenseMatrix) -> Poly:
    """``det(T*I - A)`` via Hessenberg reduction."""
    F = A.base
    return Poly._raw(F, K.hessenberg_charpoly(A.entries, *F.kernel_args()).tolist())


def charpoly_direct(L: LinearizedPoly, ell: int) -> Poly:
    """C_L^(ell) from the dense matrix, O((m*ell)^3)."""
    return charpoly_dense(matrix_of(L, ell))
