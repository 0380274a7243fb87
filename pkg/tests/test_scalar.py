from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermrank.scalar import I, ONE, ZERO, FieldMismatch, Scalar, format_scalar, parse_scalar

from strategies import gaussian_scalars, radical_scalars

any_scalar = st.one_of(gaussian_scalars, radical_scalars)


def test_i_squared_is_minus_one():
    assert I * I == -1


def test_sqrt_squared_is_radicand():
    r = Scalar.sqrt(2)
    assert r * r == 2
    assert (1 + r) * (1 - r) == -1


def test_zero_iff_all_components_zero():
    assert not Scalar(0, 0)
    assert Scalar(0, 0, 1, 0, s=3)
    assert Scalar(0, 0, 0, 1, s=3)
    assert ZERO == 0


def test_conjugate_negates_imaginary_components_only():
    x = Scalar(1, 2, 3, 4, s=2)
    assert x.conjugate().components() == (1, -2, 3, -4)


def test_radical_needs_squarefree_radicand():
    with pytest.raises(ValueError):
        Scalar(0, 0, 1, 0, s=4)
    with pytest.raises(ValueError):
        Scalar(0, 0, 1, 0)


def test_mixed_radicands_rejected():
    with pytest.raises(FieldMismatch):
        Scalar.sqrt(2) + Scalar.sqrt(3)


def test_float_complex_not_accepted():
    with pytest.raises(TypeError):
        Scalar.coerce(1 + 2j)


def test_sign_with_radical():
    r2 = Scalar.sqrt(2)
    assert (r2 - Fraction(7, 5)).sign() == 1   # 1.4142 > 1.4
    assert (r2 - Fraction(3, 2)).sign() == -1
    assert (3 - 2 * r2).sign() == 1
    with pytest.raises(ValueError):
        I.sign()


def test_format_example():
    assert format_scalar(Scalar(Fraction(3, 4), Fraction(1, 2))) == "3/4+1/2i"
    assert format_scalar(ZERO) == "0"
    assert format_scalar(Scalar(1, 0, -1, Fraction(1, 3), s=2)) == "1-1r2+1/3ir2"


def test_complex_embedding():
    x = Scalar(1, -2, 1, 0, s=2)
    assert complex(x) == pytest.approx(complex(1 + math.sqrt(2), -2))


@given(any_scalar, any_scalar, any_scalar)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@given(any_scalar)
def test_inverse(a):
    if a:
        assert a * a.inverse() == ONE
        assert (ONE / a) * a == 1
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


@given(any_scalar, any_scalar)
def test_conjugation_is_involutive_automorphism(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


@given(any_scalar)
def test_format_parse_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


@given(any_scalar)
def test_hash_consistent_with_equality(a):
    b = parse_scalar(format_scalar(a))
    assert hash(a) == hash(b)


@given(radical_scalars)
def test_sign_matches_float(a):
    x = Scalar(a.re, 0, a.rre, 0, s=a.s) if a.rre else Scalar(a.re)
    v = x.re + x.rre * math.sqrt(2)
    if abs(v) > 1e-9:
        assert x.sign() == (1 if v > 0 else -1)
