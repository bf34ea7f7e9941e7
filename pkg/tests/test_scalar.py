from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from slp.scalar import (
    QQ,
    FieldMismatchError,
    ScalarError,
    ScalarParseError,
    cosine_minimal_polynomial,
    field_create,
    format_scalar,
    parse_scalar,
    scalar_from_json,
    scalar_to_json,
    sign,
)


def test_cosine_3_is_rational():
    K = field_create("cosine", 3)
    assert K.degree == 1
    assert K is QQ
    # theta = 2cos(pi/3) = 1 shows up as the off-diagonal of the I2(3) Gram matrix
    from slp.rootsystem import build_root_system
    assert build_root_system("I2(3)").gram[0][1] == QQ(-1)


def test_cosine_4_and_5_minimal_polynomials():
    # stored low-to-high, monic
    assert tuple(cosine_minimal_polynomial(4)) == (-2, 0, 1)
    assert tuple(cosine_minimal_polynomial(5)) == (-1, -1, 1)


@pytest.mark.parametrize("m", range(3, 19))
def test_cosine_minimal_polynomial_against_sympy(m):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.minimal_polynomial(2 * sympy.cos(sympy.pi / m), x), x)
    coeffs = [int(c) for c in reversed(expected.all_coeffs())]
    assert list(cosine_minimal_polynomial(m)) == coeffs


def test_bad_parameters():
    with pytest.raises(ScalarError):
        field_create("cosine", 2)
    with pytest.raises(ScalarError):
        field_create("quadratic", 12)
    with pytest.raises(ScalarError):
        field_create("octonion", 3)


def test_golden_ratio_identities():
    K = field_create("quadratic", 5)
    g = K.gen()
    assert (1 + g) / 2 * ((-1 + g) / 2) == K(1)
    L = field_create("cosine", 5)
    t = L.gen()
    assert t * t == t + 1


def test_inverse_and_errors():
    K = field_create("quadratic", 5)
    assert K(2).inverse() == K(Fraction(1, 2))
    assert QQ(2).inverse() == QQ(Fraction(1, 2))
    with pytest.raises(ZeroDivisionError):
        K(0).inverse()
    with pytest.raises(FieldMismatchError):
        K.gen() + field_create("cosine", 7).gen()
    # rationals embed into any field
    assert K.gen() + Fraction(1, 2) == parse_scalar("1/2 + g", K)


def test_sign_examples():
    K = field_create("quadratic", 5)
    g = K.gen()
    assert sign(-Fraction(1, 4) + g / 4) == 1
    assert sign(K(0)) == 0
    assert sign(2 - g) == -1


def test_sign_with_tiny_precision_refines(monkeypatch):
    monkeypatch.setenv("SLP_PRECISION_BITS", "2")
    K = field_create("cosine", 7)
    t = K.gen()
    # 2cos(pi/7) = 1.8019377..., so t - 1.8019 > 0 and t - 1.802 < 0
    assert sign(t - Fraction(18019, 10000)) == 1
    assert sign(t - Fraction(1802, 1000)) == -1


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-30, 30), min_size=2, max_size=2),
       st.lists(st.integers(-30, 30), min_size=2, max_size=2))
def test_quadratic_sign_matches_float(a, b):
    K = field_create("quadratic", 5)
    x = K.from_coeffs(a)
    value = a[0] + a[1] * 5 ** 0.5
    if abs(value) > 1e-9:
        assert sign(x) == (1 if value > 0 else -1)
    y = K.from_coeffs(b)
    assert x * y == y * x
    if y:
        assert (x / y) * y == x


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 12), st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9),
                                    min_size=1, max_size=5))
def test_format_parse_roundtrip(m, coeffs):
    K = field_create("cosine", m)
    x = K.from_coeffs(coeffs[: K.degree])
    assert parse_scalar(format_scalar(x), K) == x
    assert scalar_from_json(scalar_to_json(x)) == x


def test_parse_examples():
    K = field_create("quadratic", 5)
    x = parse_scalar("-1/4 + 1/4*g", K)
    assert x.coeffs == (Fraction(-1, 4), Fraction(1, 4))
    assert parse_scalar("0", K) == K(0)
    assert parse_scalar("0") == QQ(0)
    assert format_scalar(parse_scalar("2/4")) == "1/2"


def test_parse_error_has_position():
    K = field_create("quadratic", 5)
    with pytest.raises(ScalarParseError) as info:
        parse_scalar("1 + $", K)
    assert info.value.position == 4
    with pytest.raises(ScalarParseError):
        parse_scalar("g", QQ)
