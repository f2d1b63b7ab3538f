"""Tests for exact cyclotomic arithmetic."""

import json
import math
from fractions import Fraction
from functools import reduce

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from gerbecalc.exactnum import (
    CyclotomicNumber,
    cyclotomic_polynomial,
    format_rational,
    parse_rational,
    power_basis_size,
    root_of_unity,
)

ORDERS = st.sampled_from([1, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 16, 24])


@st.composite
def cyclo(draw, orders=ORDERS):
    order = draw(orders)
    phi = power_basis_size(order)
    nums = tuple(draw(st.lists(st.integers(-9, 9), min_size=phi, max_size=phi)))
    den = draw(st.integers(1, 9))
    return CyclotomicNumber(order, nums, den)


rationals = st.fractions(min_value=-99, max_value=99, max_denominator=12)


def test_rational_parsing_round_trip():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -6/4 ") == Fraction(-3, 2)
    assert parse_rational("7") == 7
    assert format_rational(Fraction(3, 4)) == "3/4"
    assert format_rational(Fraction(-8, 4)) == "-2"
    assert format_rational(5) == "5"


@pytest.mark.parametrize("text", ["", "one", "1/0", "1.5.2", "2/"])
def test_rational_parsing_rejects_junk(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_cyclotomic_polynomial_known_values():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    # first order with a coefficient outside {-1, 0, 1}
    assert cyclotomic_polynomial(105)[7] == -2


def test_cyclotomic_polynomial_rejects_nonpositive():
    with pytest.raises(ValueError):
        cyclotomic_polynomial(0)


@pytest.mark.parametrize("n", range(1, 31))
def test_power_basis_size_is_totient(n):
    assert power_basis_size(n) == oracles.totient_brute(n)


def test_stored_form_is_canonical():
    a = CyclotomicNumber(6, (2, 4), 6)
    b = CyclotomicNumber(6, (1, 2), 3)
    assert a.numerators == b.numerators == (1, 2)
    assert a.denominator == b.denominator == 3
    c = CyclotomicNumber(6, (1, -2), -3)
    assert c.numerators == (-1, 2) and c.denominator == 3


def test_constructor_validation():
    with pytest.raises(ValueError):
        CyclotomicNumber(0, ())
    with pytest.raises(ValueError):
        CyclotomicNumber(6, (1,))
    with pytest.raises(ZeroDivisionError):
        CyclotomicNumber(6, (1, 2), 0)


def test_values_are_unhashable():
    # cross-order equality makes a consistent hash impossible
    with pytest.raises(TypeError):
        hash(CyclotomicNumber.one(4))


def test_root_of_unity_basics():
    assert root_of_unity(1, 1) == 1
    assert root_of_unity(0, 12) == 1
    assert root_of_unity(1, 2) == -1
    assert root_of_unity(5, 4) == root_of_unity(1, 4)
    z6 = root_of_unity(1, 6)
    assert z6 * z6 * z6 == -1
    assert z6 + root_of_unity(5, 6) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 8, 9, 12])
def test_root_of_unity_has_multiplicative_order_n(n):
    z = root_of_unity(1, n)
    acc = CyclotomicNumber.one(n)
    for k in range(1, n):
        acc = acc * z
        assert acc != 1
    assert acc * z == 1


def test_root_product_law_within_small_lcm():
    # zeta_a^i * zeta_b^j = zeta_L^(i L/a + j L/b), checked whenever L <= 24
    for big in range(1, 25):
        divs = [d for d in range(1, big + 1) if big % d == 0]
        for a in divs:
            for b in divs:
                if math.lcm(a, b) != big:
                    continue
                for i in range(a):
                    for j in range(b):
                        lhs = root_of_unity(i, a) * root_of_unity(j, b)
                        rhs = root_of_unity(i * (big // a) + j * (big // b), big)
                        assert lhs == rhs


@given(cyclo(), cyclo())
def test_addition_commutes(x, y):
    assert x + y == y + x


@given(cyclo(), cyclo())
def test_multiplication_commutes(x, y):
    assert x * y == y * x


@given(cyclo(), cyclo(), cyclo())
def test_associativity_and_distributivity(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@given(cyclo())
def test_additive_and_multiplicative_identities(x):
    assert x + CyclotomicNumber.zero(x.order) == x
    assert x * CyclotomicNumber.one(x.order) == x
    assert x - x == CyclotomicNumber.zero()
    assert x + 0 == x and x * 1 == x


@given(cyclo(), rationals)
def test_rational_scaling_and_division(x, q):
    scaled = x * q
    assert scaled == q * x
    if q != 0:
        assert scaled / q == x
        assert scaled / CyclotomicNumber.from_rational(q, x.order) == x


def test_division_errors():
    z = root_of_unity(1, 4)
    with pytest.raises(ZeroDivisionError):
        z / 0
    with pytest.raises(ValueError, match="rational"):
        z / root_of_unity(1, 4)
    assert (z * 6) / 3 == z * 2


@given(cyclo(), cyclo())
def test_conjugation_is_a_ring_involution(x, y):
    assert x.conjugate().conjugate() == x
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()


@given(st.integers(0, 23), st.integers(1, 24))
def test_conjugation_inverts_roots_of_unity(i, n):
    z = root_of_unity(i % n, n)
    assert z * z.conjugate() == 1


@given(rationals, ORDERS)
def test_conjugation_fixes_rationals(q, order):
    x = CyclotomicNumber.from_rational(q, order)
    assert x.conjugate() == x
    assert x.is_rational() and x.as_rational() == q


@given(rationals, ORDERS, ORDERS)
def test_equality_crosses_orders(q, a, b):
    assert CyclotomicNumber.from_rational(q, a) == CyclotomicNumber.from_rational(q, b)


@given(cyclo(), st.sampled_from([1, 2, 3, 4]))
def test_embedding_preserves_value(x, factor):
    big = x.order * factor
    y = x.embedded(big)
    assert y.order == big
    assert y == x
    assert y + (-x) == CyclotomicNumber.zero()


def test_embedding_requires_divisibility():
    with pytest.raises(ValueError):
        root_of_unity(1, 4).embedded(6)


def test_mixed_order_arithmetic():
    # zeta_4 * zeta_6 = zeta_12^5, computed through the lcm embedding
    assert root_of_unity(1, 4) * root_of_unity(1, 6) == root_of_unity(5, 12)
    assert root_of_unity(1, 2) + root_of_unity(1, 3) * 0 == -1


def test_non_rational_value_rejects_as_rational():
    with pytest.raises(ValueError):
        root_of_unity(1, 3).as_rational()


def test_coefficients_property():
    x = CyclotomicNumber(4, (1, 3), 2)
    assert x.coefficients == (Fraction(1, 2), Fraction(3, 2))


def test_serialization_shape():
    x = CyclotomicNumber(4, (1, 3), 2)
    assert x.to_dict() == {"order": 4, "coeffs": ["1/2", "3/2"]}
    assert CyclotomicNumber.from_dict(x.to_dict()) == x


@given(cyclo())
def test_serialization_round_trip(x):
    wire = json.loads(json.dumps(x.to_dict()))
    assert CyclotomicNumber.from_dict(wire) == x


@pytest.mark.parametrize(
    "data",
    [
        {},
        {"order": 4},
        {"order": 4, "coeffs": ["1"], "extra": 1},
        {"order": 4, "coeffs": ["1"]},
        {"order": 0, "coeffs": []},
        {"order": "4", "coeffs": ["1", "2"]},
        {"order": 4, "coeffs": ["1", "x"]},
    ],
)
def test_deserialization_rejects_malformed(data):
    with pytest.raises(ValueError):
        CyclotomicNumber.from_dict(data)


def test_repr_is_readable():
    assert repr(root_of_unity(1, 6)) == "CyclotomicNumber(6; z)"
    assert repr(CyclotomicNumber.zero(4)) == "CyclotomicNumber(4; 0)"
    assert "1/2" in repr(CyclotomicNumber(4, (1, 2), 2))


def test_to_complex_is_numerically_sane():
    import cmath

    z = root_of_unity(1, 8).to_complex()
    assert abs(z - cmath.exp(2j * cmath.pi / 8)) < 1e-9


@given(cyclo())
def test_reconstruction_from_coefficients(x):
    den = reduce(math.lcm, (q.denominator for q in x.coefficients), 1)
    nums = tuple(q.numerator * (den // q.denominator) for q in x.coefficients)
    assert CyclotomicNumber(x.order, nums, den) == x
