from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermrank.coeffmatrix import rank_of
from hermrank import linalg
from hermrank.jets import PolyRecipe, Product, Reciprocal
from hermrank.normalform import (
    FORM1,
    FORM2,
    FORM3,
    AffinePairChange,
    BlockSwap,
    NormalFormError,
    certify_no_zeros,
    classify_linear_form,
    divide_exact,
    exact_sqrt,
    factor_out_P,
    find_zero,
    is_full_rank_normal_form,
    iter_zeros,
    max_power_dividing,
    reduce_full_rank,
    sample_polarized_zeros,
)
from hermrank.parsing import parse_poly
from hermrank.poly import Point, PolarizedPolynomial, evaluate, poly_mul, swap_blocks, translate
from hermrank.randgen import make_rng, random_bidegree_11, random_point
from hermrank.scalar import I, Scalar

from strategies import gaussian_scalars


def P(text: str, n: int = 2, field=None) -> PolarizedPolynomial:
    return parse_poly(text, n, field)


ONE2 = PolarizedPolynomial.constant(2, 1)


def _random_P(seed: int, n: int) -> PolarizedPolynomial:
    """Random bidegree-(1,1) polynomial translated so it vanishes at the origin."""
    rng = make_rng("nf-test", seed, n)
    p = random_point(rng, n)
    R = random_bidegree_11(rng, n, p)
    return translate(R, p.p, p.q)


# -- classification ---------------------------------------------------------------

def test_classify_already_normal():
    R = P("w + ~w + z1*~z1")
    rep = classify_linear_form(R)
    assert (rep.form, rep.r) == (FORM1, 1)
    assert rep.P == R
    assert rep.change().apply(R) == R


def test_classify_form3():
    R = P("z1*~z1 + w*~w")
    rep = classify_linear_form(R)
    assert (rep.form, rep.r) == (FORM3, 1)
    assert rank_of(R) == rep.r + 1


def test_classify_scaled_form1():
    R = P("2*w + ~w + z1*~z1 - z2*~z2", 3)
    rep = classify_linear_form(R)
    assert (rep.form, rep.r) == (FORM1, 2)
    assert rep.replay(R) == rep.P
    assert rep.undo(rep.P) == R
    assert rank_of(rep.P) == rank_of(R) == 4


def test_classify_form2():
    R = P("w + z1*~z1")
    rep = classify_linear_form(R)
    assert (rep.form, rep.r) == (FORM2, 1)
    assert rank_of(R) == 2


def test_classify_swaps_blocks_when_only_eta_is_linear():
    R = P("~w + z1*~z1")
    rep = classify_linear_form(R)
    assert rep.form == FORM2 and rep.swapped
    assert isinstance(rep.steps[0], BlockSwap)
    assert rep.change().apply(swap_blocks(R)) == rep.P
    assert rep.undo(rep.P) == R


def test_classify_rejects_bad_input():
    with pytest.raises(NormalFormError):
        classify_linear_form(P("1 + w"))
    with pytest.raises(NormalFormError):
        classify_linear_form(P("w^2"))
    with pytest.raises(NormalFormError):
        classify_linear_form(PolarizedPolynomial.zero(2))


@pytest.mark.parametrize("seed", range(40))
def test_classify_random(seed):
    n = 1 + seed % 4
    R = _random_P(seed, n)
    rep = classify_linear_form(R)
    want = rep.r + 2 if rep.form == FORM1 else rep.r + 1
    assert rank_of(R) == want == rank_of(rep.P)
    assert rep.replay(R) == rep.P
    assert rep.undo(rep.P) == R
    start = swap_blocks(R) if rep.swapped else R
    assert rep.change().apply(start) == rep.P


# -- reduction to full rank ----------------------------------------------------------

def test_reduce_already_full_rank():
    R = P("w + ~w + z1*~z1")
    Pn, Qj, rep = reduce_full_rank(R, ONE2, 2)
    assert Pn == R and rank_of(Pn) == 3
    assert Qj.poly == ONE2
    assert rep.epsilons == ()


def test_reduce_form3_shifts_twice():
    R = P("z1*~z1 + w*~w")
    Pn, Qj, rep = reduce_full_rank(R, ONE2, 1)
    assert rep.trail == (FORM3, FORM2, FORM1)
    assert rep.epsilons == (1, 1)
    assert is_full_rank_normal_form(Pn)
    # rank is preserved, so a rank-2 input lands in one fewer dimension
    assert rank_of(Pn) == rank_of(R) == 2
    assert Pn.n == 1 and rep.restricted
    assert Qj.poly == PolarizedPolynomial.constant(1, 1)


def test_reduce_form2():
    R = P("w + z1*~z1")
    Pn, _, rep = reduce_full_rank(R, ONE2, 1)
    assert rep.trail == (FORM2, FORM1)
    assert is_full_rank_normal_form(Pn)
    assert rank_of(Pn) == rank_of(R) == 2


def test_reduce_keeps_dimension_when_full():
    R = P("z1*~z1 + z2*~z2 + w*~w", 3)
    Pn, _, rep = reduce_full_rank(R, PolarizedPolynomial.constant(3, 1), 1)
    assert rank_of(Pn) == 3 and Pn.n == 2
    R = P("2*w + ~w + z1*~z1 - z2*~z2", 3)
    Pn, _, rep = reduce_full_rank(R, PolarizedPolynomial.constant(3, 1), 1)
    assert Pn.n == 3 and not rep.restricted
    assert rep.replay(R) == Pn and rep.undo(Pn) == R


def test_reduce_skips_shift_where_q_vanishes():
    # Q = 1 - z1 vanishes after the unit shift along z1, so a smaller shift is used
    R = P("w + z1*~z1")
    Q = P("1 - z1")
    Pn, Qj, rep = reduce_full_rank(R, Q, 1)
    assert rep.epsilons[0] != 1
    assert Qj.constant_term()


def test_reduce_transports_jet_recipe():
    R = P("z1*~z1 + w*~w")
    Q = Product((PolyRecipe(P("2 + z1")), Reciprocal(PolyRecipe(P("1 + w*~w")))))
    Pn, Qj, rep = reduce_full_rank(R, Q, 2)
    assert Qj.constant_term()
    assert Qj.d == 2 and not Qj.is_polynomial()


def test_reduce_rejects():
    with pytest.raises(NormalFormError):
        reduce_full_rank(P("w"), ONE2, 1)            # rank 1
    with pytest.raises(NormalFormError):
        reduce_full_rank(P("w + ~w + z1*~z1"), P("z1"), 1)   # Q(0) = 0


@pytest.mark.parametrize("seed", range(30))
def test_reduce_random(seed):
    n = 2 + seed % 3
    R = _random_P(seed, n)
    if rank_of(R) <= 1:
        pytest.skip("rank one input has no normal form")
    Q = P("1 + z1", n) if n > 1 else ONE2
    Pn, Qj, rep = reduce_full_rank(R, Q, 1)
    assert is_full_rank_normal_form(Pn)
    assert rank_of(Pn) == rank_of(R) == Pn.n + 1
    assert rep.replay(R) == Pn
    if not rep.restricted:
        assert rep.undo(Pn) == R


# -- affine changes -------------------------------------------------------------------

@settings(max_examples=50)
@given(st.data())
def test_affine_change_compose_and_inverse(data):
    n = 2
    R = _random_P(data.draw(st.integers(0, 10 ** 6)), n)

    def change():
        mats = []
        for _ in range(2):
            M = [[data.draw(gaussian_scalars) for _ in range(n)] for _ in range(n)]
            mats.append(M if linalg.is_invertible(M) else linalg.identity(n))
        a = [data.draw(gaussian_scalars) for _ in range(n)]
        b = [data.draw(gaussian_scalars) for _ in range(n)]
        return AffinePairChange(mats[0], a, mats[1], b)

    f, g = change(), change()
    assert f.compose(g).apply(R) == g.apply(f.apply(R))
    assert f.inverse().apply(f.apply(R)) == R
    assert rank_of(f.apply(R)) == rank_of(R)


# -- zeros -------------------------------------------------------------------------------

def test_find_zero_examples():
    assert find_zero(P("w + ~w + z1*~z1")) == Point.origin(2)
    assert find_zero(P("1 + z1*~z1 + w*~w")) is None
    assert find_zero(P("-1 + z1*~z1")) == Point.diagonal([1, 0])


def test_find_zero_adjoins_square_root():
    R = P("-3 + z1*~z1")
    pt = find_zero(R)
    assert pt is not None and pt.p[0].s == 3
    assert evaluate(R, pt) == 0
    assert find_zero(R, extend=False) is None


def test_find_zero_with_radicals():
    # |z1|^2 = 2 has zeros only at irrational radius
    pt = find_zero(P("-2 + z1*~z1", 2, 2))
    assert pt is not None
    assert evaluate(P("-2 + z1*~z1", 2, 2), pt) == 0


def test_exact_sqrt():
    assert exact_sqrt(Scalar(Fraction(9, 4))) == Fraction(3, 2)
    assert exact_sqrt(Scalar(-1)) is None
    assert exact_sqrt(Scalar(3)) is None   # outside Q(i) unless extension is allowed
    r = exact_sqrt(Scalar(Fraction(12, 5)), extend=True)
    assert r * r == Fraction(12, 5) and r.s == 15 and r.sign() > 0
    r2 = Scalar.sqrt(2)
    assert exact_sqrt(3 + 2 * r2) == 1 + r2            # (1 + sqrt 2)^2
    assert exact_sqrt(Scalar(0, 0, 2, 0, s=2) * Scalar.sqrt(2)) == 2


@pytest.mark.parametrize("seed", range(30))
def test_iter_zeros_are_zeros(seed):
    n = 1 + seed % 3
    rng = make_rng("zeros", seed)
    p = random_point(rng, n)
    R = random_bidegree_11(rng, n, p)
    pts = list(iter_zeros(R))
    assert pts, "a zero is known to exist"
    for pt in pts:
        assert pt.is_diagonal() and evaluate(R, pt) == 0


def test_certify_no_zeros():
    assert certify_no_zeros(P("1 + z1*~z1 + w*~w"))
    assert certify_no_zeros(P("i + z1*~z1"))      # imaginary part never vanishes
    assert certify_no_zeros(P("3 + w + ~w + w*~w"))   # |w + 1|^2 + 2
    assert not certify_no_zeros(P("w + ~w + z1*~z1"))
    assert not certify_no_zeros(P("-1 + z1*~z1"))
    assert not certify_no_zeros(P("1 + z1*~z1 - w*~w"))


@pytest.mark.parametrize("seed", range(20))
def test_sample_polarized_zeros(seed):
    n = 1 + seed % 3
    R = _random_P(seed, n)
    pts = list(sample_polarized_zeros(R, count=16, seed=seed))
    for pt in pts:
        assert evaluate(R, pt) == 0
    if any(sum(a) for a, _ in R.terms) or any(sum(g) for _, g in R.terms):
        assert pts


# -- division ---------------------------------------------------------------------------

def test_factor_out_examples():
    R = P("w + ~w + z1*~z1")
    assert factor_out_P(poly_mul(R, R), R) == (ONE2, 2)
    Q = poly_mul(P("1 + z1"), R)
    assert factor_out_P(Q, R) == (P("1 + z1"), 1)
    assert factor_out_P(P("2 + z1*~w"), R) == (P("2 + z1*~w"), 0)
    with pytest.raises(NormalFormError):
        factor_out_P(ONE2, P("2*w + ~w"))
    with pytest.raises(NormalFormError):
        factor_out_P(PolarizedPolynomial.zero(2), R)


@pytest.mark.parametrize("seed", range(20))
def test_division_identity(seed):
    rng = make_rng("div", seed)
    n = 1 + seed % 3
    R = random_bidegree_11(rng, n, random_point(rng, n))
    S = random_bidegree_11(rng, n, random_point(rng, n)) + 1
    k = seed % 3
    Q = S
    for _ in range(k):
        Q = poly_mul(Q, R)
    q, rem = divide_exact(Q, R)
    assert poly_mul(q, R) + rem == Q
    cof, j = max_power_dividing(Q, R)
    assert j >= k
    acc = cof
    for _ in range(j):
        acc = poly_mul(acc, R)
    assert acc == Q


def test_divide_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        divide_exact(ONE2, PolarizedPolynomial.zero(2))


def test_irrational_direction_imaginary_unit():
    R = P("w + ~w + z1*~z1")
    pt = Point.diagonal([I, Scalar(0, 0)])
    assert evaluate(R, pt) == 1
