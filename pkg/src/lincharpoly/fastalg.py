"""Characteristic polynomials of linearized maps through a recurrence in the level.

For fixed ``L`` the sequence ``l -> C_L^(l)`` satisfies a linear recurrence
over F_q[T] of order at most ``2^r``. The pipeline computes the first
``2^(r+1)`` terms densely, fits the recurrence once, evaluates the target term
at enough points of a small extension by companion-matrix powering, and
interpolates.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels as K
from .errors import DegreeTooLarge, Falsification, FieldTooSmall, NotMonic
from .ff import FieldCtx, FieldElement, extend_field, norm
from .linmap import LinearizedPoly, charpoly_direct
from .polyring import Poly
from .recurrence import LinearRecurrence, fit_recurrence, terms_at_points

log = logging.getLogger(__name__)

EPS_MAX_DEGREE = 6


@dataclass(frozen=True)
class EvalLayout:
    """Where the target term of degree ``n`` is sampled.

    The points are the encodings ``0 .. count-1`` of ``field``, with
    ``count = cosets * p^J``: ``cosets`` translates of the F_p-span of the
    first ``J`` coordinate vectors. ``count >= n + 1`` always holds.
    """

    n: int
    field: FieldCtx
    s: int
    J: int
    cosets: int

    @property
    def count(self) -> int:
        return self.cosets * self.field.p**self.J


def eval_layout(base: FieldCtx, n: int) -> EvalLayout:
    q, p = base.order, base.p
    s = 1
    while q**s < n + 1:
        s += 1
    E = base if s == 1 else extend_field(base, s)
    k = 0
    while p**k < n + 1:
        k += 1
    J = k - 1
    cosets = -(-(n + 1) // p**J)
    lay = EvalLayout(n, E, s, J, cosets)
    if lay.count > E.order:  # pragma: no cover - p^(J+1) <= q^s by construction
        raise FieldTooSmall(f"{E!r} cannot hold {lay.count} points")
    return lay


@dataclass(frozen=True)
class PipelinePlan:
    """The part of the computation that depends on ``L`` only."""

    L: LinearizedPoly
    bootstrap: tuple
    recurrence: LinearRecurrence

    @property
    def bootstrap_count(self) -> int:
        return len(self.bootstrap)


def bootstrap(L: LinearizedPoly) -> list[Poly]:
    """``C_L^(1) .. C_L^(2^(r+1))`` from the dense baseline."""
    return [charpoly_direct(L, i) for i in range(1, 2 ** (L.r + 1) + 1)]


def make_plan(L: LinearizedPoly) -> PipelinePlan:
    terms = bootstrap(L)
    rec = fit_recurrence(terms, 2**L.r, bound=L.m * 2 ** (L.r - 1))
    return PipelinePlan(L, tuple(terms), rec)


def norm_coefficient(L: LinearizedPoly, ell: int) -> FieldElement:
    """``(-1)^((r-1) m ell - r) * N^ell`` with ``N`` the norm of ``t_r`` to F_q."""
    F = L.base_field
    N = norm(L.t[-1], F)
    e = (L.r - 1) * L.m * ell - L.r
    v = N**ell
    return -v if e % 2 else v


def fast_charpoly(
    L: LinearizedPoly, ell: int, plan: PipelinePlan | None = None, parallel: bool = False
) -> Poly:
    """C_L^(ell), monic of degree ``m*ell`` over F_q."""
    if ell < 1:
        raise ValueError("ell must be positive")
    if ell <= 2 ** (L.r + 1):
        if plan is not None:
            return plan.bootstrap[ell - 1]
        return charpoly_direct(L, ell)
    if plan is None:
        plan = make_plan(L)
    F = L.base_field
    n = L.m * ell
    lay = eval_layout(F, n)
    E = lay.field
    args = E.kernel_args()
    points = np.arange(lay.count, dtype=np.int64)
    values = terms_at_points(plan.recurrence, points, E, ell, parallel=parallel)
    coeffs = K.subspace_interpolate(values, lay.J, lay.cosets, *args)
    if coeffs[n] != 1 or coeffs[n + 1 :].any() or (coeffs[:n] >= F.order).any():
        raise Falsification(f"interpolant is not a monic degree-{n} polynomial over F_q")
    return Poly._raw(F, coeffs[: n + 1].tolist())


# ------------------------------------------------------------- eps_ell
#
# Polynomials in X over F_q[T] are lists of Poly, little-endian in X.


def _xadd(a: list, b: list) -> list:
    n = max(len(a), len(b))
    F = (a or b)[0].base
    z = Poly(F)
    out = [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n)]
    while out and out[-1].is_zero:
        out.pop()
    return out


def _xmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    F = a[0].base
    out = [Poly(F) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero:
            continue
        for j, y in enumerate(b):
            if not y.is_zero:
                out[i + j] = out[i + j] + x * y
    while out and out[-1].is_zero:
        out.pop()
    return out


def _matmul_tx(A, B):
    F = A[0][0].base
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = Poly(F)
            for k in range(n):
                if not A[i][k].is_zero and not B[k][j].is_zero:
                    acc = acc + A[i][k] * B[k][j]
            row.append(acc)
        out.append(row)
    return out


def _perm_sign(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def _check_monic_x(P: Sequence[Poly]) -> FieldCtx:
    if len(P) < 2:
        raise ValueError("P must have degree at least 1 in X")
    if P[-1] != Poly.constant(P[-1].base, 1):
        raise NotMonic("P must be monic in X")
    if len(P) - 1 > EPS_MAX_DEGREE:
        raise DegreeTooLarge(f"degree {len(P) - 1} exceeds {EPS_MAX_DEGREE}")
    return P[-1].base


def eps_ell(P: Sequence[Poly], ell: int) -> list[Poly]:
    """The monic polynomial whose roots are the ``ell``-th powers of the roots of P.

    Computed as ``det(X*I - A^ell)`` for the companion matrix A of P, with the
    determinant expanded over F_q[T][X] by the Leibniz formula.
    """
    F = _check_monic_x(P)
    if ell < 1:
        raise ValueError("ell must be positive")
    r = len(P) - 1
    zero, one = Poly(F), Poly.constant(F, 1)
    A = [[zero] * r for _ in range(r)]
    for i in range(r):
        if i:
            A[i][i - 1] = one
        A[i][r - 1] = -P[i]
    B = None
    base, e = A, ell
    while e:
        if e & 1:
            B = base if B is None else _matmul_tx(B, base)
        e >>= 1
        if e:
            base = _matmul_tx(base, base)
    # entries of X*I - B as X-polynomials
    M = [[([-B[i][j], one] if i == j else [-B[i][j]]) for j in range(r)] for i in range(r)]
    det: list = []
    for perm in itertools.permutations(range(r)):
        term = [one]
        for i in range(r):
            term = _xmul(term, M[i][perm[i]])
            if not term:
                break
        if not term:
            continue
        if _perm_sign(perm) < 0:
            term = [-c for c in term]
        det = _xadd(det, term)
    return det


def lrs_of_eps_values(P: Sequence[Poly], count: int) -> list[Poly]:
    """``[eps_l(P)(1) for l = 1..count]``."""
    F = _check_monic_x(P)
    out = []
    for ell in range(1, count + 1):
        acc = Poly(F)
        for c in eps_ell(P, ell):
            acc = acc + c
        out.append(acc)
    return out
