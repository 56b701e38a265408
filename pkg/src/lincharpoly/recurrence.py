"""Linear recurrences over F_q[T]: fitting, companion matrices, terms at points.

Sequences are indexed from 1. A relation of order d reads
``a_{k+d} = c_{d-1} a_{k+d-1} + ... + c_0 a_k`` and the state vector is
``[a_{k+d-1}, ..., a_k]``, so ``M^(l-d) [a_d, ..., a_1]`` has ``a_l`` on top.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels as K
from .errors import (
    FieldMismatch,
    InsufficientSeeds,
    InsufficientTerms,
    NoRelation,
    ParseError,
)
from .ff import FieldCtx, FieldElement
from .polyring import Poly, poly_divrem, poly_eval

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearRecurrence:
    order: int
    coeffs: tuple  # c_0 .. c_{d-1}
    seeds: tuple  # a_1, a_2, ...
    bound: int | None = None

    def __post_init__(self):
        if self.order < 1 or len(self.coeffs) != self.order:
            raise ValueError("a recurrence needs order >= 1 and exactly `order` coefficients")

    @property
    def base(self) -> FieldCtx:
        return self.coeffs[0].base

    @property
    def max_coeff_degree(self) -> int:
        return max(c.degree for c in self.coeffs)

    def next_term(self, window: Sequence[Poly]) -> Poly:
        """The term following ``window`` (the last ``order`` terms, oldest first)."""
        acc = Poly(self.base)
        for c, a in zip(self.coeffs, window[-self.order :]):
            if not c.is_zero:
                acc = acc + c * a
        return acc

    def unroll(self, count: int) -> list[Poly]:
        """``a_1 .. a_count`` by direct iteration in F_q[T]."""
        if len(self.seeds) < self.order:
            raise InsufficientSeeds(f"need {self.order} seeds, have {len(self.seeds)}")
        out = list(self.seeds[: self.order])
        while len(out) < count:
            out.append(self.next_term(out))
        return out[:count]

    def characteristic(self) -> list[Poly]:
        """``X^d - c_{d-1} X^{d-1} - ... - c_0`` as X-coefficients, little-endian."""
        return [-c for c in self.coeffs] + [Poly.constant(self.base, 1)]


@dataclass(frozen=True)
class CompanionState:
    M: tuple  # d x d, rows of Poly
    U: tuple  # [a_d, ..., a_1]

    @property
    def order(self) -> int:
        return len(self.U)


# ------------------------------------------------------------------ fitting


def _exact_div(a: Poly, b: Poly) -> Poly | None:
    q, r = poly_divrem(a, b)
    return q if r.is_zero else None


def _solve_fraction_free(H: list[list[Poly]], rhs: list[Poly]) -> list[Poly] | None:
    """Solve ``H c = rhs`` over F_q(T) for a polynomial solution.

    Bareiss elimination keeps every entry in F_q[T]; back substitution is
    carried out on ``det * c`` (Cramer numerators), which are polynomials, and
    the final division by ``det`` is checked for exactness. Returns None when
    H is singular or the solution is not polynomial.
    """
    d = len(H)
    A = [list(row) + [b] for row, b in zip(H, rhs)]
    one = Poly.constant(rhs[0].base, 1)
    prev = one
    for k in range(d):
        piv = next((i for i in range(k, d) if not A[i][k].is_zero), None)
        if piv is None:
            return None
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
        for i in range(k + 1, d):
            for j in range(k + 1, d + 1):
                num = A[k][k] * A[i][j] - A[i][k] * A[k][j]
                q = _exact_div(num, prev)
                if q is None:  # pragma: no cover - Bareiss divisions are exact
                    raise ArithmeticError("inexact Bareiss division")
                A[i][j] = q
            A[i][k] = Poly(rhs[0].base)
        prev = A[k][k]
    det = A[d - 1][d - 1]
    # y_i = det * c_i; U_ii y_i = det * b_i - sum_{j>i} U_ij y_j
    y = [None] * d
    for i in range(d - 1, -1, -1):
        acc = det * A[i][d]
        for j in range(i + 1, d):
            acc = acc - A[i][j] * y[j]
        q = _exact_div(acc, A[i][i])
        if q is None:  # pragma: no cover - Cramer numerators are polynomials
            raise ArithmeticError("inexact back substitution")
        y[i] = q
    out = []
    for v in y:
        q = _exact_div(v, det)
        if q is None:
            return None
        out.append(q)
    return out


def _hankel(terms: Sequence[Poly], d: int):
    # equations k = 1..d: a_{k+d} = sum_i c_i a_{k+i}; zero-based list index k-1
    H = [[terms[k + i] for i in range(d)] for k in range(d)]
    rhs = [terms[k + d] for k in range(d)]
    return H, rhs


def verify_recurrence(rec: LinearRecurrence, terms: Sequence[Poly]) -> bool:
    """True iff every window of ``terms`` satisfies the relation exactly."""
    d = rec.order
    for k in range(len(terms) - d):
        if rec.next_term(terms[k : k + d]) != terms[k + d]:
            return False
    return True


def fit_recurrence(
    terms: Sequence[Poly], max_order: int, bound: int | None = None
) -> LinearRecurrence:
    """Smallest-order relation with coefficients in F_q[T] satisfied by all ``terms``.

    Orders 1..max_order are tried in turn; a singular Hankel system means no
    relation of that order. ``bound`` is kept as metadata and a warning is
    logged when a coefficient degree exceeds it.
    """
    if max_order < 1:
        raise ValueError("max_order must be positive")
    if len(terms) < 2 * max_order:
        raise InsufficientTerms(f"{len(terms)} terms cannot determine order {max_order}")
    F = terms[0].base
    if any(t.base != F for t in terms):
        raise FieldMismatch("terms live over different fields")
    terms = list(terms)
    if all(t.is_zero for t in terms):
        # every Hankel system is singular; X is the natural order-1 annihilator
        return LinearRecurrence(1, (Poly(F),), tuple(terms), bound)
    for d in range(1, max_order + 1):
        H, rhs = _hankel(terms, d)
        sol = _solve_fraction_free(H, rhs)
        if sol is None:
            continue
        rec = LinearRecurrence(d, tuple(sol), tuple(terms), bound)
        if verify_recurrence(rec, terms):
            if bound is not None and rec.max_coeff_degree > bound:
                log.warning(
                    "order-%d relation has coefficient degree %d above the bound %d",
                    d, rec.max_coeff_degree, bound,
                )
            return rec
    raise NoRelation(f"no relation of order <= {max_order} fits {len(terms)} terms")


# ------------------------------------------------------ companion and terms


def companion(rec: LinearRecurrence) -> CompanionState:
    d = rec.order
    if len(rec.seeds) < d:
        raise InsufficientSeeds(f"need {d} seeds, have {len(rec.seeds)}")
    F = rec.base
    zero, one = Poly(F), Poly.constant(F, 1)
    rows = [tuple(rec.coeffs[d - 1 - j] for j in range(d))]
    for i in range(1, d):
        rows.append(tuple(one if j == i - 1 else zero for j in range(d)))
    U = tuple(rec.seeds[d - 1 - i] for i in range(d))
    return CompanionState(tuple(rows), U)


def _matvec(E: FieldCtx, B, u):
    return [_dot(E, row, u) for row in B]


def _dot(E: FieldCtx, row, u) -> int:
    s = 0
    for a, b in zip(row, u):
        if a and b:
            s = E.add(s, E.mul(a, b))
    return s


def term_at_point(state: CompanionState, x: FieldElement, ell: int) -> FieldElement:
    """``a_ell(x)`` by square-and-multiply on the companion matrix evaluated at x."""
    if ell < 1:
        raise ValueError("terms are indexed from 1")
    E = x.ctx
    d = state.order
    u = [poly_eval(a, x).value for a in state.U]
    if ell <= d:
        return FieldElement(E, u[d - ell])
    B = [[poly_eval(c, x).value for c in row] for row in state.M]
    k = ell - d
    while k:
        if k & 1:
            u = _matvec(E, B, u)
        k >>= 1
        if k:
            cols = list(zip(*B))
            B = [[_dot(E, row, col) for col in cols] for row in B]
    return FieldElement(E, u[0])


def _pack(polys: Sequence[Poly]):
    width = max(1, max(len(p.coeffs) for p in polys))
    mat = np.zeros((len(polys), width), dtype=np.int64)
    lens = np.zeros(len(polys), dtype=np.int64)
    for i, p in enumerate(polys):
        mat[i, : len(p.coeffs)] = p.coeffs
        lens[i] = len(p.coeffs)
    return mat, lens


def terms_at_points(
    rec: LinearRecurrence, points: np.ndarray, E: FieldCtx, ell: int, parallel: bool = False
) -> np.ndarray:
    """``a_ell(x)`` for every encoding in ``points``; E must contain F_q in its tower."""
    if E.degree_over(rec.base) < 1:  # pragma: no cover - degree_over raises instead
        raise FieldMismatch("evaluation field does not contain the coefficient field")
    d = rec.order
    if len(rec.seeds) < d:
        raise InsufficientSeeds(f"need {d} seeds, have {len(rec.seeds)}")
    cmat, clen = _pack(rec.coeffs)
    smat, slen = _pack(rec.seeds[:d])
    kern = K.terms_at_points_parallel if parallel else K.terms_at_points
    return kern(
        np.asarray(points, dtype=np.int64), cmat, clen, smat, slen, d, ell, *E.kernel_args()
    )


# ------------------------------------------------------------ serialization


def dumps(rec: LinearRecurrence, seeds: bool = True) -> str:
    """Order, then c_0..c_{d-1}, then (optionally) the seed count and seeds."""
    lines = [str(rec.order)] + [c.encode() for c in rec.coeffs]
    if seeds:
        lines.append(str(len(rec.seeds)))
        lines += [a.encode() for a in rec.seeds]
    return "\n".join(lines) + "\n"


def loads(base: FieldCtx, text: str, bound: int | None = None) -> LinearRecurrence:
    lines = text.splitlines()
    try:
        d = int(lines[0])
        coeffs = tuple(Poly.parse(base, s) for s in lines[1 : d + 1])
        seeds = ()
        if len(lines) > d + 1:
            k = int(lines[d + 1])
            seeds = tuple(Poly.parse(base, s) for s in lines[d + 2 : d + 2 + k])
            if len(seeds) != k:
                raise ParseError(f"expected {k} seeds, found {len(seeds)}")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed recurrence: {exc}") from exc
    if len(coeffs) != d:
        raise ParseError(f"expected {d} coefficients, found {len(coeffs)}")
    return LinearRecurrence(d, coeffs, seeds, bound)
