import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lincharpoly import (
    DegreeTooLarge,
    FieldElement,
    LinearizedPoly,
    NotMonic,
    Poly,
    bootstrap,
    eps_ell,
    eval_layout,
    extend_field,
    fast_charpoly,
    fit_recurrence,
    lrs_of_eps_values,
    make_field,
    make_plan,
    make_prime_field,
    norm,
    norm_coefficient,
    poly_interpolate,
    verify_recurrence,
)
from lincharpoly import _kernels as K
from lincharpoly.bench import random_linearized
from lincharpoly.linmap import charpoly_direct

F2, F3, F5, F7 = (make_prime_field(p) for p in (2, 3, 5, 7))
QS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 9: (3, 2)}


def rand_poly(rng, F, deg):
    return Poly(F, [rng.randrange(F.order) for _ in range(deg + 1)])


def random_monic_x(rng, F, r, deg=2):
    return [rand_poly(rng, F, deg) for _ in range(r)] + [Poly(F, [1])]


# ---------------------------------------------------------- layout


@given(st.sampled_from(sorted(QS)), st.integers(1, 5000))
def test_eval_layout_is_large_enough(q, n):
    F = make_field(*QS[q])
    lay = eval_layout(F, n)
    assert n + 1 <= lay.count <= lay.field.order
    assert q**lay.s >= n + 1 and (lay.s == 1 or q ** (lay.s - 1) < n + 1)


@pytest.mark.parametrize("q,n", [(2, 1), (2, 7), (3, 26), (4, 50), (7, 6), (9, 100)])
def test_subspace_interpolation_matches_lagrange(q, n):
    F = make_field(*QS[q])
    lay = eval_layout(F, n)
    E = lay.field
    rng = random.Random(q * n)
    f = Poly(E, [rng.randrange(E.order) for _ in range(n)] + [1])
    ys = np.array([f.eval_raw(x) for x in range(lay.count)], dtype=np.int64)
    got = K.subspace_interpolate(ys, lay.J, lay.cosets, *E.kernel_args())
    assert tuple(got[: n + 1]) == f.coeffs and not got[n + 1 :].any()
    pts = [(FieldElement(E, x), FieldElement(E, int(ys[x]))) for x in range(n + 1)]
    assert poly_interpolate(pts) == f


# ---------------------------------------------------------- norm coefficient


def test_norm_coefficient_characteristic_two():
    F4 = extend_field(F2, 2)
    L = LinearizedPoly(F2, 2, [1, 0, 3])
    N = norm(FieldElement(F4, 3), F2)
    for ell in range(1, 6):
        assert norm_coefficient(L, ell) == N**ell


def test_norm_coefficient_rank_one_sign():
    L = LinearizedPoly(F7, 2, [1, 3])
    N = norm(L.t[-1], F7)
    for ell in range(1, 6):
        assert norm_coefficient(L, ell) == -(N**ell)


@given(st.sampled_from([3, 5, 7, 9]), st.integers(1, 3), st.integers(1, 3), st.integers(0, 10**6))
def test_norm_coefficient_order_one_recurrence(q, m, r, seed):
    F = make_field(*QS[q])
    L = random_linearized(random.Random(seed), F, m, r)
    N = norm(L.t[-1], F)
    step = N if (r - 1) * m % 2 == 0 else -N
    for ell in range(2, 6):
        assert norm_coefficient(L, ell) == step * norm_coefficient(L, ell - 1)


# ---------------------------------------------------------- pipeline


def test_bootstrap_examples():
    for q in (2, 3):
        F = make_prime_field(q)
        terms = bootstrap(LinearizedPoly(F, 1, [0, 1]))
        assert terms == [Poly(F, [q - 1] + [0] * (i - 1) + [1]) for i in range(1, 5)]
    L = LinearizedPoly(F7, 2, [1, 1, 1, 1])
    terms = bootstrap(L)
    assert [t.degree for t in terms] == list(range(2, 33, 2))
    assert all(t.is_monic for t in terms)


def test_fast_charpoly_examples():
    for q in (2, 3, 5):
        F = make_prime_field(q)
        L = LinearizedPoly(F, 1, [0, 1])
        assert fast_charpoly(L, 12) == Poly(F, [q - 1] + [0] * 11 + [1])
    L = LinearizedPoly(F7, 2, [1, 1, 1, 1])
    assert fast_charpoly(L, 3) == charpoly_direct(L, 3)
    got = fast_charpoly(L, 20)
    assert got == charpoly_direct(L, 20) and got.degree == 40 and got.is_monic


def test_plan_is_reusable_across_levels():
    L = LinearizedPoly(F5, 2, [2, 1, 3])
    plan = make_plan(L)
    assert plan.bootstrap_count == 8 and plan.recurrence.order <= 4
    for ell in (9, 10, 17, 31):
        assert fast_charpoly(L, ell, plan) == charpoly_direct(L, ell)


def test_parallel_point_evaluation_agrees():
    L = LinearizedPoly(F3, 1, [1, 2, 1])
    assert fast_charpoly(L, 40, parallel=True) == fast_charpoly(L, 40)


@given(st.sampled_from(sorted(QS)), st.integers(1, 2), st.integers(1, 2), st.integers(1, 6),
       st.integers(0, 10**6))
def test_fast_equals_dense_baseline(q, m, r, extra, seed):
    F = make_field(*QS[q])
    L = random_linearized(random.Random(seed), F, m, r)
    ell = 2 ** (r + 1) + extra
    assert fast_charpoly(L, ell) == charpoly_direct(L, ell)


@given(st.sampled_from([3, 4, 5, 7]), st.integers(1, 2), st.integers(1, 2), st.integers(0, 10**6))
def test_normalized_sequence_keeps_order_bound(q, m, r, seed):
    F = make_field(*QS[q])
    L = random_linearized(random.Random(seed), F, m, r)
    terms = bootstrap(L)
    normalized = [t.scale(norm_coefficient(L, i + 1).inverse()) for i, t in enumerate(terms)]
    assert fit_recurrence(normalized, 2**r).order <= 2**r


# ---------------------------------------------------------- eps_ell


def test_eps_examples():
    rng = random.Random(0)
    P = random_monic_x(rng, F3, 3)
    assert eps_ell(P, 1) == P
    g = rand_poly(rng, F5, 2)
    for ell in (1, 2, 5):
        assert eps_ell([-g, Poly(F5, [1])], ell) == [-(g**ell), Poly(F5, [1])]
    with pytest.raises(NotMonic):
        eps_ell([Poly(F3, [1]), Poly(F3, [2])], 2)
    with pytest.raises(DegreeTooLarge):
        eps_ell([Poly(F3, [1])] * 8, 2)


def _from_roots(roots, F):
    out = [Poly(F, [1])]
    for g in roots:
        nxt = [Poly(F)] * (len(out) + 1)
        for i, c in enumerate(out):
            nxt[i + 1] = nxt[i + 1] + c
            nxt[i] = nxt[i] - g * c
        out = nxt
    return out


@pytest.mark.parametrize("F", [F3, F5], ids=repr)
def test_eps_on_split_polynomials_raises_roots_to_powers(F):
    rng = random.Random(F.p)
    for r in (1, 2, 3, 4):
        roots = [rand_poly(rng, F, 2) for _ in range(r)]
        for ell in (1, 2, 3, 4):
            assert eps_ell(_from_roots(roots, F), ell) == _from_roots([g**ell for g in roots], F)


@given(st.sampled_from([3, 5]), st.integers(1, 3), st.integers(1, 4), st.integers(1, 4),
       st.integers(0, 10**6))
def test_eps_composes_multiplicatively(p, r, a, b, seed):
    F = make_prime_field(p)
    P = random_monic_x(random.Random(seed), F, r)
    lhs = eps_ell(eps_ell(P, b), a)
    assert lhs == eps_ell(P, a * b)
    assert len(lhs) == len(P)


def test_lrs_of_eps_values_examples():
    rng = random.Random(3)
    g = rand_poly(rng, F5, 2)
    seq = lrs_of_eps_values([-g, Poly(F5, [1])], 6)
    assert seq == [Poly(F5, [1]) - g**ell for ell in range(1, 7)]
    assert fit_recurrence(seq, 2).order <= 2
    for r, count in ((2, 12), (3, 20)):
        for _ in range(3):
            seq = lrs_of_eps_values(random_monic_x(rng, F3, r), count)
            rec = fit_recurrence(seq, 2**r)
            assert rec.order <= 2**r and verify_recurrence(rec, seq)
