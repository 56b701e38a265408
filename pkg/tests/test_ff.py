import pytest
from hypothesis import given
from hypothesis import strategies as st

from lincharpoly import (
    DegreeMismatch,
    FieldElement,
    FieldTooSmall,
    NotInTower,
    NotIrreducible,
    NotPrime,
    embed,
    enumerate_elements,
    extend_field,
    find_irreducible,
    frobenius,
    make_field,
    make_prime_field,
    norm,
    parse_element,
)
from lincharpoly.ff import TABLE_LIMIT

import oracles as O

F2, F3, F5, F7 = (make_prime_field(p) for p in (2, 3, 5, 7))
F4 = extend_field(F2, 2)
F9 = extend_field(F3, 2)
F49 = extend_field(F7, 2)
F343 = extend_field(F7, 3)
F16_over_4 = extend_field(F4, 2)
FIELDS = [F2, F5, F4, F9, F49, F343, F16_over_4]


def test_prime_field_rejects_composites():
    for n in (1, 4, 9, 15):
        with pytest.raises(NotPrime):
            make_prime_field(n)


def test_find_irreducible_small_cases():
    assert find_irreducible(F2, 2).coeffs == (1, 1, 1)
    assert find_irreducible(F3, 1).coeffs == (0, 1)
    assert find_irreducible(F2, 4).coeffs == (1, 1, 0, 0, 1)


def _first_irreducible_brute(p, s):
    # candidates ordered by the integer sum c_i p^i, c_{s-1} most significant
    for k in range(p**s):
        f = O.to_digits(k, p, s) + [1]
        if O.is_irreducible_brute(f, p):
            return tuple(f)


@pytest.mark.parametrize("p,s", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2), (7, 3)])
def test_find_irreducible_matches_exhaustive_search(p, s):
    assert find_irreducible(make_prime_field(p), s).coeffs == _first_irreducible_brute(p, s)


def test_f49_modulus_regression():
    # frozen from the exhaustive search above
    assert F49.modulus == (1, 0, 1)


def test_extend_field_validation():
    with pytest.raises(NotIrreducible):
        extend_field(F2, 2, [1, 0, 1])
    with pytest.raises(DegreeMismatch):
        extend_field(F2, 3, [1, 1, 1])
    assert extend_field(F2, 1).order == 2
    assert extend_field(F7, 2) == extend_field(F7, 2)
    assert make_field(3, 2) == F9


def test_enumerate_elements():
    assert [e.value for e in enumerate_elements(F7, 3)] == [0, 1, 2]
    els = enumerate_elements(F4, 4)
    assert len(set(els)) == 4
    assert els == enumerate_elements(F4, 4)
    with pytest.raises(FieldTooSmall):
        enumerate_elements(F2, 3)


def test_frobenius_and_norm_examples():
    g = F49.gen
    assert frobenius(g, 1, F7) == g**7
    assert frobenius(g, 2, F7) == g
    assert frobenius(F49(3), 1, F7) == F49(3)
    for v in range(1, 49):
        a = FieldElement(F49, v)
        assert norm(a, F7).value == (a * a**7).value == (a**8).value
    assert norm(F49.one, F7) == F7.one
    assert norm(F7(5)) == F7(5)
    with pytest.raises(NotInTower):
        frobenius(F49.gen, 1, F5)


def test_multiplication_matches_polynomial_oracle():
    mu = list(F343.modulus)
    for a in range(0, 343, 17):
        for b in range(0, 343, 13):
            want = O.from_digits(O.trim(O.ext_mul(O.to_digits(a, 7, 3), O.to_digits(b, 7, 3), mu, 7)) + [0] * 3, 7)
            assert F343.mul(a, b) == want


def test_large_field_without_tables():
    F = extend_field(F2, 21)
    assert F.order > TABLE_LIMIT and not F.kernel_ready
    a, b = FieldElement(F, 123457), FieldElement(F, 987651)
    assert (a * b) * b.inverse() == a
    assert a ** (F.order - 1) == F.one


def test_element_encoding_round_trip():
    a = parse_element(F343, "3,0,1")
    assert a.encode() == "3,0,1"
    assert parse_element(F49, "1").encode() == "1,0"
    with pytest.raises(ValueError):
        parse_element(F7, "9")


def test_embedding_of_subfield_generator_is_root_of_its_modulus():
    E = extend_field(F7, 4)
    th = embed(F49.gen, E)
    assert th * th + 1 == E.zero
    # smallest root in encoding order
    assert th.value == min(th.value, (th**7).value)
    # additive and multiplicative
    x, y = FieldElement(F49, 12), FieldElement(F49, 40)
    assert embed(x * y, E) == embed(x, E) * embed(y, E)
    assert embed(x + y, E) == embed(x, E) + embed(y, E)


def _elements(F):
    return st.integers(0, F.order - 1).map(lambda v: FieldElement(F, v))


@pytest.mark.parametrize("F", FIELDS, ids=repr)
@given(data=st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(_elements(F)) for _ in range(3))
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero
    if a:
        assert a * a.inverse() == F.one


@pytest.mark.parametrize("F", [F4, F9, F49, F343, F16_over_4], ids=repr)
@given(data=st.data())
def test_frobenius_is_ring_homomorphism(F, data):
    sub = F.base
    a, b = data.draw(_elements(F)), data.draw(_elements(F))
    assert frobenius(a + b, 1, sub) == frobenius(a, 1, sub) + frobenius(b, 1, sub)
    assert frobenius(a * b, 1, sub) == frobenius(a, 1, sub) * frobenius(b, 1, sub)


@pytest.mark.parametrize("F", [F4, F9, F49, F343], ids=repr)
@given(data=st.data())
def test_norm_is_multiplicative(F, data):
    a, b = data.draw(_elements(F)), data.draw(_elements(F))
    assert norm(a * b, F.base) == norm(a, F.base) * norm(b, F.base)
