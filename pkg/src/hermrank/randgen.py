"""Seeded random instances for the property suites."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from hermrank.jets import Exp, PolyRecipe, Product, Reciprocal, Recipe
from hermrank.poly import Point, PolarizedPolynomial, evaluate, norm_squared
from hermrank.combinatorics import exponent_vectors

SHAPES = ("full-normal-form-with-tail", "general-bidegree-11", "with-polynomial-Q", "with-jet-Q")


@dataclass(frozen=True)
class Instance:
    P: PolarizedPolynomial
    Q: Recipe
    point: Point | None
    seed: int
    n: int
    d: int
    shape: str


def make_rng(*parts) -> random.Random:
    return random.Random(":".join(str(p) for p in parts))


def gaussian_rational(rng: random.Random, allow_zero: bool = True):
    """``(a + b i) / q`` with ``a, b`` in -2..2 and ``q`` in {1, 2}."""
    from hermrank.scalar import Scalar

    while True:
        q = rng.choice((1, 2))
        x = Scalar(Fraction(rng.randint(-2, 2), q), Fraction(rng.randint(-2, 2), q))
        if x or allow_zero:
            return x


def random_point(rng: random.Random, n: int) -> Point:
    return Point.diagonal([gaussian_rational(rng) for _ in range(n)])


def random_poly(rng: random.Random, n: int, max_hol: int, max_anti: int,
                density: float = 0.5, max_total: int | None = None) -> PolarizedPolynomial:
    terms = {}
    for alpha in exponent_vectors(n, max_hol):
        for gamma in exponent_vectors(n, max_anti):
            if max_total is not None and sum(alpha) + sum(gamma) > max_total:
                continue
            if rng.random() < density:
                terms[(alpha, gamma)] = gaussian_rational(rng)
    return PolarizedPolynomial(n, terms)


def random_tail_normal_form(rng: random.Random, n: int) -> PolarizedPolynomial:
    """``w + eta + |z|^2`` plus random (1,1) terms involving w or eta."""
    P = norm_squared(n, range(n - 1)) + PolarizedPolynomial.hol(n, n - 1) \
        + PolarizedPolynomial.anti(n, n - 1)
    e = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    tail = {}
    for i in range(n):
        for j in range(n):
            if (i == n - 1 or j == n - 1) and rng.random() < 0.6:
                tail[(e[i], e[j])] = gaussian_rational(rng)
    return P + PolarizedPolynomial(n, tail)


def random_bidegree_11(rng: random.Random, n: int, point: Point) -> PolarizedPolynomial:
    """Random non-constant bidegree-(1,1) polynomial vanishing at ``point``."""
    while True:
        P = random_poly(rng, n, 1, 1, density=0.6)
        P = P - P.constant_term()
        if not P:
            continue
        return P - evaluate(P, point)


def random_nonvanishing_poly(rng: random.Random, n: int, degree: int, point: Point) -> PolarizedPolynomial:
    """Random polynomial of total degree <= ``degree`` with ``Q(point) != 0``."""
    while True:
        Q = random_poly(rng, n, degree, degree, density=0.4, max_total=degree)
        if Q and evaluate(Q, point):
            return Q


def random_instance(seed: int, n: int, d: int, shape: str) -> Instance:
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}; choose from {', '.join(SHAPES)}")
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    rng = make_rng(seed, n, d, shape)
    if shape == "full-normal-form-with-tail":
        origin = Point.origin(n)
        P = random_tail_normal_form(rng, n)
        return Instance(P, PolyRecipe(random_nonvanishing_poly(rng, n, 2, origin)), origin,
                        seed, n, d, shape)
    p = random_point(rng, n)
    P = random_bidegree_11(rng, n, p)
    if shape == "general-bidegree-11":
        Q: Recipe = PolyRecipe(PolarizedPolynomial.constant(n, 1))
    elif shape == "with-polynomial-Q":
        Q = PolyRecipe(random_nonvanishing_poly(rng, n, 2, p))
    else:
        num = random_nonvanishing_poly(rng, n, 2, p)
        den = random_nonvanishing_poly(rng, n, 1, p)
        ex = random_poly(rng, n, 1, 1, density=0.5)
        Q = Product((PolyRecipe(num), Reciprocal(PolyRecipe(den)), Exp(PolyRecipe(ex - ex.constant_term()))))
    return Instance(P, Q, p, seed, n, d, shape)
