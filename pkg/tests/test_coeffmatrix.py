from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermrank.coeffmatrix import (
    build_matrix,
    exact_rank,
    matrix_from_rows,
    monomial_order,
    multinomial_bound,
    rank_factorize,
    rank_of,
    signature_decompose,
)
from hermrank.parsing import parse_poly
from hermrank.poly import PolarizedPolynomial, conjugate_swap, norm_squared, poly_mul, poly_pow
from hermrank.randgen import make_rng, random_bidegree_11, random_point, random_tail_normal_form

from oracles import dense_coefficients, gaussian_rank
from strategies import polynomials


def P(text: str, n: int = 2, field=None) -> PolarizedPolynomial:
    return parse_poly(text, n, field)


def test_monomial_order_degree_one_block():
    order = monomial_order(3, 2)
    assert order.monomials[:4] == ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert len(order) == math.comb(3 + 2, 2)
    degs = [sum(m) for m in order.monomials]
    assert degs == sorted(degs)


def test_matrix_of_norm_squared():
    M = build_matrix(norm_squared(2), 1)
    assert [[int(x.re) for x in row] for row in M.entries] == [[0, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert exact_rank(M) == 2


def test_matrix_of_constant():
    for d in range(4):
        M = build_matrix(PolarizedPolynomial.constant(2, 1), d)
        nonzero = [(i, j) for i, row in enumerate(M.entries) for j, x in enumerate(row) if x]
        assert nonzero == [(0, 0)]
        assert M.entries[0][0] == 1


def test_matrix_of_full_rank_normal_form():
    M = build_matrix(P("w + ~w + z1*~z1"), 1)
    # order 1, z1, w: rows are conjugate monomials
    assert [[int(x.re) for x in row] for row in M.entries] == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
    assert exact_rank(M) == 3
    assert M.is_hermitian()


def test_exact_rank_examples():
    assert exact_rank(build_matrix(P("z1^2*~z1^2 - w^2*~w^2"), 2)) == 2
    assert exact_rank(build_matrix(P("z1^2*~z1^2 - r2*z1*~z1*w*~w + w^2*~w^2", 2, 2), 2)) == 3


def test_rank_of_examples():
    assert rank_of(poly_pow(P("w + ~w + z1*~z1"), 2)) == 6 == math.comb(4, 2)
    assert rank_of(PolarizedPolynomial.zero(2)) == 0
    assert rank_of(P("z1*~w")) == 1


def test_rank_factorize_examples():
    fac = rank_factorize(P("z1*~z1 + z2*~z2", 3))
    assert fac.r == 2
    fac = rank_factorize(P("z1^2*~z1^2 - w^2*~w^2"))
    assert fac.r == 2
    assert fac.reconstruct(2) == P("z1^2*~z1^2 - w^2*~w^2")
    fac = rank_factorize(PolarizedPolynomial.constant(2, 5))
    assert fac.r == 1 and fac.reconstruct(2) == PolarizedPolynomial.constant(2, 5)
    assert rank_factorize(PolarizedPolynomial.zero(2)).r == 0


def test_signature_examples():
    R = P("w + ~w + z1*~z1")
    dec = signature_decompose(R)
    assert dec.squares == 3 and dec.signature == (2, 1)
    assert dec.reconstruct(2) == R
    dec = signature_decompose(P("z1*~z1 - z2*~z2", 3))
    assert dec.signature == (1, 1)
    assert [f for _, f in dec.positive] == [P("z1", 3)]
    assert [f for _, f in dec.negative] == [P("z2", 3)]
    assert signature_decompose(norm_squared(3)).signature == (3, 0)
    with pytest.raises(ValueError):
        signature_decompose(P("z1"))


def test_multinomial_bound_examples():
    assert multinomial_bound(3, 2) == 6
    assert all(multinomial_bound(r, 0) == 1 for r in range(5))
    assert all(multinomial_bound(1, d) == 1 for d in range(5))


def test_matrix_from_rows_rank():
    assert exact_rank(matrix_from_rows([[1, 2], [2, 4]])) == 1


@settings(max_examples=120)
@given(polynomials(max_deg=2, max_terms=8))
def test_rank_matches_dense_oracle(R):
    d = 2
    assert rank_of(R) == gaussian_rank(dense_coefficients(R, d))


@settings(max_examples=100)
@given(polynomials(max_deg=2, max_terms=8))
def test_rank_invariant_under_conjugate_swap(R):
    assert rank_of(R) == rank_of(conjugate_swap(R))


@settings(max_examples=100)
@given(polynomials(max_deg=2, max_terms=8), st.data())
def test_removing_monomials_never_increases_rank(R, data):
    keys = list(R.terms)
    keep = data.draw(st.lists(st.sampled_from(keys), unique=True) if keys else st.just([]))
    sub = PolarizedPolynomial(R.n, {k: R.terms[k] for k in keep})
    assert rank_of(sub) <= rank_of(R)


@settings(max_examples=60)
@given(polynomials(max_deg=2, max_terms=8))
def test_rank_factorization_reconstructs(R):
    fac = rank_factorize(R)
    assert fac.reconstruct(R.n) == R
    assert fac.r == len(fac.phi) == rank_of(R)


@settings(max_examples=60)
@given(polynomials(max_deg=2, max_terms=6))
def test_signature_reconstructs(R):
    H = R + conjugate_swap(R)
    dec = signature_decompose(H)
    assert dec.reconstruct(H.n) == H
    assert dec.squares == rank_of(H)
    assert all(w.sign() > 0 for w, _ in dec.positive + dec.negative)


@pytest.mark.parametrize("seed", range(20))
def test_power_rank_below_multinomial_bound(seed):
    rng = make_rng("ub-unit", seed)
    n = 1 + seed % 3
    R = random_bidegree_11(rng, n, random_point(rng, n))
    r = rank_of(R)
    for d in range(4):
        assert rank_of(poly_pow(R, d)) <= multinomial_bound(r, d)


def test_full_normal_form_power_rank():
    for n in (1, 2, 3):
        R = random_tail_normal_form(make_rng("nf", n), n)
        for d in range(4):
            assert rank_of(poly_pow(R, d)) == math.comb(n + d, d)


def test_rank_of_product_counterexample():
    R = poly_mul(P("z1*~z1 + w*~w"), P("z1*~z1 - w*~w"))
    assert R == P("z1^2*~z1^2 - w^2*~w^2")
    assert rank_of(R) == 2
