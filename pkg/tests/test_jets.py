from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermrank.combinatorics import P_monomials
from hermrank.jets import (
    Exp,
    JetError,
    PolyRecipe,
    Product,
    Reciprocal,
    Shifted,
    defined_at,
    is_identically_zero,
    is_polynomial,
    jet_of,
    jet_times_power,
    map_leaves,
    nonzero_at,
    polynomial_denominators,
    rank_lower_bound,
    value_at,
)
from hermrank.parsing import parse_poly
from hermrank.poly import Point, PolarizedPolynomial, norm_squared, poly_mul, poly_pow, translate
from hermrank.randgen import make_rng, random_nonvanishing_poly, random_tail_normal_form
from hermrank.scalar import Scalar

from strategies import polynomial_pairs, polynomials


def P(text: str, n: int = 2) -> PolarizedPolynomial:
    return parse_poly(text, n)


def test_reciprocal_geometric_series():
    jet = jet_of(Reciprocal(PolyRecipe(P("1 + z1*~z1"))), 2)
    assert jet.poly == P("1 - z1*~z1 + z1^2*~z1^2")


def test_exp_series():
    jet = jet_of(Exp(PolyRecipe(P("z1*~z1"))), 2)
    assert jet.poly == P("1 + z1*~z1 + 1/2*z1^2*~z1^2")
    assert jet.unit_exponents == ()


@pytest.mark.parametrize("n,d", [(1, 3), (2, 2), (3, 2)])
def test_reciprocal_of_power(n, d):
    S = poly_pow(norm_squared(n) + 1, d)
    jet = jet_of(Reciprocal(PolyRecipe(S)), d)
    assert poly_mul(jet.poly, S, (d, d)) == PolarizedPolynomial.constant(n, 1)


def test_exp_with_constant_records_unit():
    jet = jet_of(Exp(PolyRecipe(P("3 + w"))), 2)
    assert jet.unit_exponents == (Scalar(3),)
    assert jet.poly == P("1 + w + 1/2*w^2")
    assert not jet.is_polynomial()
    with pytest.raises(JetError):
        jet_of(Exp(Exp(PolyRecipe(P("1 + w")))), 1)


def test_jet_of_undefined_raises():
    with pytest.raises(JetError):
        jet_of(Reciprocal(PolyRecipe(P("w"))), 2)
    with pytest.raises(ValueError):
        jet_of(PolyRecipe(P("w")), -1)


def test_coeff_beyond_order_raises():
    jet = jet_of(PolyRecipe(P("w^3")), 2)
    assert jet.coeff((0, 2), (0, 0)) == 0
    with pytest.raises(JetError):
        jet.coeff((0, 3), (0, 0))


def test_jet_times_power_trivial_q():
    R = P("w + ~w + z1*~z1 + w*~z1")
    for d in range(4):
        got = jet_times_power(jet_of(PolarizedPolynomial.constant(2, 1), d), R, d)
        assert got.poly == poly_pow(R, d).truncate(d, d)


def test_jet_times_power_no_zero_set():
    for d in range(1, 4):
        R = norm_squared(2) + 1
        Q = jet_of(Reciprocal(PolyRecipe(poly_pow(R, d))), d)
        assert jet_times_power(Q, R, d).poly == PolarizedPolynomial.constant(2, 1)
        assert rank_lower_bound(Q, R, d) == 1


def test_jet_times_power_doubles_pivots():
    R = random_tail_normal_form(make_rng("jtp"), 2)
    for d in range(4):
        got = jet_times_power(jet_of(P("2 + z1"), d), R, d).poly
        Rd = poly_pow(R, d)
        for m in P_monomials(2, d):
            assert got.coeff(*m.key()) == 2 * Rd.coeff(*m.key())


def test_jet_times_power_checks():
    with pytest.raises(JetError):
        jet_times_power(jet_of(P("1"), 1), P("w + ~w"), 2)
    with pytest.raises(JetError):
        jet_times_power(jet_of(P("1"), 2), P("w^2"), 1)


def test_rank_lower_bound_normal_form():
    R = P("w + ~w + z1*~z1")
    assert rank_lower_bound(jet_of(P("1"), 2), R, 2) == 6


@pytest.mark.parametrize("n,d", [(n, d) for n in (1, 2, 3) for d in range(4)])
def test_rank_lower_bound_random(n, d):
    rng = make_rng("rlb", n, d)
    R = random_tail_normal_form(rng, n)
    q = random_nonvanishing_poly(rng, n, 2, Point.origin(n))
    Q = Product((PolyRecipe(q), Reciprocal(PolyRecipe(norm_squared(n) + 2)),
                 Exp(PolyRecipe(P("w", n)))))
    bound = rank_lower_bound(jet_of(Q, d), R, d)
    assert bound == math.comb(n + d, d)


def test_rank_lower_bound_monotone_in_order():
    R = P("w + ~w + z1*~z1 + w*~w")
    Q = Reciprocal(PolyRecipe(P("1 + w + z1*~z1")))
    bounds = [rank_lower_bound(jet_of(Q, d), R, d) for d in range(4)]
    assert bounds == sorted(bounds)
    assert all(b <= math.comb(2 + d, d) for d, b in enumerate(bounds))


def test_polynomial_jet_matches_product():
    R = P("w + ~w + z1*~z1")
    q = P("1 + z1 + w*~z1")
    for d in range(4):
        got = jet_times_power(jet_of(q, d), R, d).poly
        assert got == poly_mul(q, poly_pow(R, d)).truncate(d, d)


def test_defined_and_nonzero():
    Q = Product((PolyRecipe(P("z1")), Reciprocal(PolyRecipe(P("1 - w")))))
    assert defined_at(Q) and not nonzero_at(Q)
    assert not defined_at(Q, Point.diagonal([0, 1]))
    assert nonzero_at(Q, Point.diagonal([1, 0]))
    assert nonzero_at(Exp(PolyRecipe(P("w"))))


def test_value_at():
    Q = Product((PolyRecipe(P("2 + z1")), Reciprocal(PolyRecipe(P("1 + w")))))
    assert value_at(Q, Point.diagonal([1, 2])) == 1
    assert value_at(Q, Point.diagonal([0, -1])) is None


def test_identically_zero():
    assert is_identically_zero(PolyRecipe(PolarizedPolynomial.zero(2)))
    assert is_identically_zero(Product((PolyRecipe(P("w")), PolyRecipe(P("0")))))
    assert not is_identically_zero(Exp(PolyRecipe(P("0"))))


def test_polynomial_denominators():
    Q = Product((PolyRecipe(P("w")), Reciprocal(PolyRecipe(P("1 + w"))),
                 Exp(Reciprocal(PolyRecipe(P("2 + z1"))))))
    assert polynomial_denominators(Q) == [P("1 + w"), P("2 + z1")]
    assert is_polynomial(Product((PolyRecipe(P("w")), PolyRecipe(P("z1")))))
    assert not is_polynomial(Q)


def test_shifted_is_resolved_into_leaves():
    pt = Point.diagonal([1, 0])
    Q = Shifted(Reciprocal(PolyRecipe(P("2 - z1"))), pt)
    jet = jet_of(Q, 1)
    assert jet.constant_term() == 1
    direct = map_leaves(Reciprocal(PolyRecipe(P("2 - z1"))), lambda p: translate(p, pt.p, pt.q))
    assert jet_of(direct, 1).poly == jet.poly


@settings(max_examples=60)
@given(polynomials(max_deg=2, max_terms=5), st.integers(0, 3))
def test_reciprocal_times_inverse_is_one(S, d):
    S = S + 1 if not S.constant_term() else S
    jet = jet_of(Reciprocal(PolyRecipe(S)), d)
    assert poly_mul(jet.poly, S, (d, d)) == PolarizedPolynomial.constant(S.n, 1)


@settings(max_examples=40)
@given(polynomial_pairs(max_deg=1, max_terms=4), st.integers(0, 3))
def test_exp_turns_sums_into_products(pair, d):
    a, b = pair
    a = a - a.constant_term()
    b = b - b.constant_term()
    lhs = jet_of(Exp(PolyRecipe(a + b)), d).poly
    rhs = poly_mul(jet_of(Exp(PolyRecipe(a)), d).poly, jet_of(Exp(PolyRecipe(b)), d).poly, (d, d))
    assert lhs == rhs


@pytest.mark.parametrize("n,d", [(1, 4), (2, 3), (3, 2)])
def test_exp_coefficients_are_exponential_series(n, d):
    # exp(t u) for a single monomial u has coefficients t^k / k!
    e1 = (0,) * (n - 1) + (1,)
    u = PolarizedPolynomial.monomial(n, e1, e1, Fraction(1, 3))
    jet = jet_of(Exp(PolyRecipe(u)), d)
    for k in range(d + 1):
        e = (0,) * (n - 1) + (k,)
        assert jet.coeff(e, e) == Fraction(1, 3) ** k / math.factorial(k)
