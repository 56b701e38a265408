"""Embedded consistency checks behind ``lincharpoly selftest``."""

from __future__ import annotations

import random
from typing import TextIO

from .bench import random_linearized
from .errors import Falsification
from .fastalg import eps_ell, fast_charpoly, lrs_of_eps_values, make_plan, norm_coefficient
from .ff import make_field, make_prime_field, norm
from .linmap import LinearizedPoly, charpoly_direct
from .polyring import Poly
from .recurrence import LinearRecurrence, fit_recurrence, verify_recurrence
from .reference import ORDER8_INSTANCE, order8_recurrence_coeffs


def _order8(mutate: bool) -> bool:
    from .cli import parse_instance

    plan = make_plan(parse_instance(ORDER8_INSTANCE).L)
    rec = plan.recurrence
    if mutate:
        c = list(rec.coeffs)
        c[0] = c[0] + 1
        rec = LinearRecurrence(rec.order, tuple(c), rec.seeds, rec.bound)
    if not verify_recurrence(rec, plan.bootstrap):
        raise Falsification("recurrence does not reproduce the bootstrap terms")
    return rec.order == 8 and [c.coeffs for c in rec.coeffs] == order8_recurrence_coeffs()


def _oracle_grid() -> bool:
    rng = random.Random(2024)
    for q, (p, e) in ((2, (2, 1)), (3, (3, 1)), (4, (2, 2))):
        F = make_field(p, e)
        for m in (1, 2):
            for r in (1, 2):
                L = random_linearized(rng, F, m, r)
                plan = make_plan(L)
                if plan.recurrence.order > 2**r:
                    return False
                for ell in (2 ** (r + 1) + 1, 2 ** (r + 1) + 2):
                    if fast_charpoly(L, ell, plan) != charpoly_direct(L, ell):
                        return False
    return True


def _frobenius() -> bool:
    for p in (2, 3):
        F = make_prime_field(p)
        L = LinearizedPoly(F, 1, [0, 1])
        want = Poly(F, [p - 1] + [0] * 11 + [1])
        if fast_charpoly(L, 12) != want:
            return False
    return True


def _eps() -> bool:
    rng = random.Random(7)
    F = make_prime_field(3)
    for _ in range(3):
        P = [Poly(F, [rng.randrange(3) for _ in range(3)]) for _ in range(2)] + [Poly(F, [1])]
        if eps_ell(P, 1) != P or eps_ell(eps_ell(P, 2), 2) != eps_ell(P, 4):
            return False
        if fit_recurrence(lrs_of_eps_values(P, 8), 4).order > 4:
            return False
    return True


def _norm() -> bool:
    # v^(l) = (-1)^((r-1)m) * N * v^(l-1)
    F = make_prime_field(5)
    L = LinearizedPoly(F, 2, [1, 0, 7])
    N = norm(L.t[-1], F)
    step = N if (L.r - 1) * L.m % 2 == 0 else -N
    return all(
        norm_coefficient(L, k + 1) == step * norm_coefficient(L, k) for k in range(1, 6)
    )


CHECKS = (
    ("order-8 relation", _order8),
    ("fast equals baseline", _oracle_grid),
    ("frobenius closed form", _frobenius),
    ("eps identities", _eps),
    ("norm coefficient recurrence", _norm),
)


def run_selftest(out: TextIO, mutate: bool = False) -> int:
    failed = False
    for name, fn in CHECKS:
        try:
            ok = fn(mutate) if fn is _order8 else fn()
            detail = ""
        except Falsification as exc:
            ok, detail = False, f" ({exc})"
        out.write(f"{'ok  ' if ok else 'FAIL'} {name}{detail}\n")
        failed |= not ok
    out.write("selftest failed\n" if failed else "selftest passed\n")
    out.flush()
    return 3 if failed else 0
