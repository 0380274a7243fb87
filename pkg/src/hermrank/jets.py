"""Exact truncated power series of real-analytic functions built from recipes.

A recipe is a small expression tree over polynomial leaves: reciprocals,
exponentials, products and translations.  Expanding a recipe to order ``d``
gives every coefficient of bidegree at most ``(d, d)`` exactly.  Because the
recipe is kept, a jet can be moved through coordinate changes by rewriting
its polynomial leaves and expanding again.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

from hermrank.coeffmatrix import build_matrix, exact_rank
from hermrank.poly import (
    Point,
    PolarizedPolynomial,
    bidegree,
    evaluate,
    poly_mul,
    poly_pow,
    translate,
)
from hermrank.scalar import Scalar


class JetError(ValueError):
    pass


@dataclass(frozen=True)
class PolyRecipe:
    poly: PolarizedPolynomial

    @property
    def n(self) -> int:
        return self.poly.n


@dataclass(frozen=True)
class Reciprocal:
    inner: "Recipe"

    @property
    def n(self) -> int:
        return self.inner.n


@dataclass(frozen=True)
class Exp:
    inner: "Recipe"

    @property
    def n(self) -> int:
        return self.inner.n


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise JetError("a product needs at least one factor")
        if len({f.n for f in self.factors}) != 1:
            raise JetError("product factors live in different dimensions")

    @property
    def n(self) -> int:
        return self.factors[0].n


@dataclass(frozen=True)
class Shifted:
    """``inner`` re-centred: its leaves are translated by ``point``."""

    inner: "Recipe"
    point: Point

    @property
    def n(self) -> int:
        return self.inner.n


Recipe = Union[PolyRecipe, Reciprocal, Exp, Product, Shifted]


def as_recipe(x) -> Recipe:
    if isinstance(x, (PolyRecipe, Reciprocal, Exp, Product, Shifted)):
        return x
    if isinstance(x, PolarizedPolynomial):
        return PolyRecipe(x)
    if isinstance(x, AnalyticJet):
        return x.recipe
    raise TypeError(f"cannot build a recipe from {type(x).__name__}")


def map_leaves(recipe: Recipe, f: Callable[[PolarizedPolynomial], PolarizedPolynomial]) -> Recipe:
    """Apply ``f`` to every polynomial leaf; translations are pushed into the leaves."""
    if isinstance(recipe, PolyRecipe):
        return PolyRecipe(f(recipe.poly))
    if isinstance(recipe, Reciprocal):
        return Reciprocal(map_leaves(recipe.inner, f))
    if isinstance(recipe, Exp):
        return Exp(map_leaves(recipe.inner, f))
    if isinstance(recipe, Product):
        return Product(tuple(map_leaves(g, f) for g in recipe.factors))
    if isinstance(recipe, Shifted):
        pt = recipe.point
        return map_leaves(recipe.inner, lambda p: f(translate(p, pt.p, pt.q)))
    raise TypeError(f"not a recipe: {recipe!r}")


def resolve(recipe: Recipe) -> Recipe:
    """Equivalent recipe without ``Shifted`` nodes."""
    return map_leaves(recipe, lambda p: p)


def is_polynomial(recipe: Recipe) -> bool:
    recipe = resolve(recipe)
    if isinstance(recipe, PolyRecipe):
        return True
    if isinstance(recipe, Product):
        return all(is_polynomial(f) for f in recipe.factors)
    return False


def as_polynomial(recipe: Recipe) -> PolarizedPolynomial:
    """The polynomial a polynomial-valued recipe denotes."""
    recipe = resolve(recipe)
    if isinstance(recipe, PolyRecipe):
        return recipe.poly
    if isinstance(recipe, Product) and is_polynomial(recipe):
        acc = PolarizedPolynomial.constant(recipe.n, 1)
        for f in recipe.factors:
            acc = poly_mul(acc, as_polynomial(f))
        return acc
    raise JetError("recipe is not polynomial")


def polynomial_denominators(recipe: Recipe) -> list[PolarizedPolynomial]:
    """Polynomials ``S`` that occur as ``1/S`` anywhere in the recipe."""
    recipe = resolve(recipe)
    if isinstance(recipe, PolyRecipe):
        return []
    if isinstance(recipe, Reciprocal):
        inner = recipe.inner
        own = [as_polynomial(inner)] if is_polynomial(inner) else []
        return own + polynomial_denominators(inner)
    if isinstance(recipe, Exp):
        return polynomial_denominators(recipe.inner)
    return [s for f in recipe.factors for s in polynomial_denominators(f)]


def _value_at_origin(recipe: Recipe) -> Scalar | None:
    """Value at the origin for recipes without ``Exp``; ``None`` when undefined."""
    if isinstance(recipe, PolyRecipe):
        return recipe.poly.constant_term()
    if isinstance(recipe, Reciprocal):
        v = _value_at_origin(recipe.inner)
        return None if v is None or not v else v.inverse()
    if isinstance(recipe, Product):
        acc = Scalar.coerce(1)
        for f in recipe.factors:
            v = _value_at_origin(f)
            if v is None:
                return None
            acc = acc * v
        return acc
    raise JetError("exact values of exponentials are not representable")


def _defined(recipe: Recipe) -> bool:
    if isinstance(recipe, PolyRecipe):
        return True
    if isinstance(recipe, Reciprocal):
        return _defined(recipe.inner) and _nonzero(recipe.inner)
    if isinstance(recipe, Exp):
        return _defined(recipe.inner)
    if isinstance(recipe, Product):
        return all(_defined(f) for f in recipe.factors)
    raise TypeError


def _nonzero(recipe: Recipe) -> bool:
    """Nonzero at the origin, assuming it is defined there."""
    if isinstance(recipe, PolyRecipe):
        return bool(recipe.poly.constant_term())
    if isinstance(recipe, (Reciprocal, Exp)):
        return True
    if isinstance(recipe, Product):
        return all(_nonzero(f) for f in recipe.factors)
    raise TypeError


def _centered(recipe: Recipe, point: Point | None) -> Recipe:
    recipe = resolve(recipe)
    if point is None or point.is_origin():
        return recipe
    return map_leaves(recipe, lambda p: translate(p, point.p, point.q))


def defined_at(recipe, point: Point | None = None) -> bool:
    """Whether the function has a convergent expansion around ``point``."""
    return _defined(_centered(as_recipe(recipe), point))


def nonzero_at(recipe, point: Point | None = None) -> bool:
    """Defined and nonzero at ``point``."""
    r = _centered(as_recipe(recipe), point)
    return _defined(r) and _nonzero(r)


def is_identically_zero(recipe) -> bool:
    recipe = resolve(as_recipe(recipe))
    if isinstance(recipe, PolyRecipe):
        return not recipe.poly
    if isinstance(recipe, Product):
        return any(is_identically_zero(f) for f in recipe.factors)
    return False


# -- expansion ---------------------------------------------------------------

def _unit(n: int) -> PolarizedPolynomial:
    return PolarizedPolynomial.constant(n, 1)


def _expand(recipe: Recipe, d: int) -> tuple[PolarizedPolynomial, tuple[Scalar, ...]]:
    """Truncated expansion plus the constants ``c`` of dropped factors ``exp(c)``."""
    n = recipe.n
    tr = (d, d)
    if isinstance(recipe, PolyRecipe):
        return recipe.poly.truncate(d, d), ()
    if isinstance(recipe, Product):
        acc, units = _unit(n), ()
        for f in recipe.factors:
            e, u = _expand(f, d)
            acc = poly_mul(acc, e, tr)
            units += u
        return acc, units
    if isinstance(recipe, Reciprocal):
        s, units = _expand(recipe.inner, d)
        c = s.constant_term()
        if not c:
            raise JetError("reciprocal of a function vanishing at the expansion point")
        cinv = c.inverse()
        u = (s.scale(cinv) - 1)  # no constant term
        neg_u = -u
        acc, term = _unit(n), _unit(n)
        # every power of u raises the total degree, so 2d steps reach bidegree (d, d)
        for _ in range(2 * d):
            term = poly_mul(term, neg_u, tr)
            if not term:
                break
            acc = acc + term
        return acc.scale(cinv), tuple(-x for x in units)
    if isinstance(recipe, Exp):
        s, units = _expand(recipe.inner, d)
        if units:
            raise JetError("exponential of a function with a transcendental factor")
        c = s.constant_term()
        u = s - c
        acc, term = _unit(n), _unit(n)
        for k in range(1, 2 * d + 1):
            term = poly_mul(term, u, tr).scale(Scalar.coerce(1) / k)
            if not term:
                break
            acc = acc + term
        return acc, ((c,) if c else ())
    raise TypeError(f"not a recipe: {recipe!r}")


@dataclass(frozen=True)
class AnalyticJet:
    """Exact expansion of bidegree at most ``(d, d)`` around the origin.

    When ``unit_exponents`` is non-empty the represented function equals
    ``exp(sum(unit_exponents)) * poly`` near the origin; the omitted factor
    is a nonzero constant and does not affect any rank.
    """

    n: int
    d: int
    poly: PolarizedPolynomial
    recipe: Recipe
    unit_exponents: tuple[Scalar, ...] = ()

    def coeff(self, alpha, gamma) -> Scalar:
        if sum(alpha) > self.d or sum(gamma) > self.d:
            raise JetError(f"coefficient beyond truncation order {self.d}")
        return self.poly.coeff(alpha, gamma)

    def constant_term(self) -> Scalar:
        return self.poly.constant_term()

    def is_polynomial(self) -> bool:
        return not self.unit_exponents and is_polynomial(self.recipe)

    def transport(self, f: Callable[[PolarizedPolynomial], PolarizedPolynomial],
                  d: int | None = None) -> AnalyticJet:
        """Rewrite the leaves with ``f`` and expand again around the new origin."""
        return jet_of(map_leaves(self.recipe, f), self.d if d is None else d)


def jet_of(recipe, d: int) -> AnalyticJet:
    if d < 0:
        raise ValueError("truncation order must be nonnegative")
    recipe = resolve(as_recipe(recipe))
    if not _defined(recipe):
        raise JetError("recipe is not defined at the expansion point")
    poly, units = _expand(recipe, d)
    return AnalyticJet(recipe.n, d, poly, recipe, tuple(units))


def jet_times_power(Q: AnalyticJet, P: PolarizedPolynomial, d: int) -> AnalyticJet:
    """Truncation of ``Q * P**d`` to bidegree ``(d, d)``.

    Valid because ``P**d`` has no negative powers, so the truncated product only
    needs coefficients of ``Q`` up to the same bidegree.
    """
    if Q.n != P.n:
        raise JetError("jet and polynomial live in different dimensions")
    if Q.d < d:
        raise JetError(f"jet truncated at order {Q.d}, need {d}")
    bd = bidegree(P)
    if bd is not None and max(bd) > 1:
        raise JetError("P must have bidegree at most (1, 1)")
    Pd = poly_pow(P, d, (d, d))
    prod = poly_mul(Q.poly.truncate(d, d), Pd, (d, d))
    return AnalyticJet(Q.n, d, prod, Product((Q.recipe, PolyRecipe(P ** d))), Q.unit_exponents)


def rank_lower_bound(Q: AnalyticJet, P: PolarizedPolynomial, d: int) -> int:
    """Rank of the degree-``d`` corner of the coefficient matrix of ``Q * P**d``.

    The corner is a submatrix of the full matrix, so this never exceeds the rank.
    """
    return exact_rank(build_matrix(jet_times_power(Q, P, d).poly, d))


def value_at(recipe, point: Point) -> Scalar | None:
    """Exact value for recipes built without ``exp``; ``None`` if undefined there."""
    r = resolve(as_recipe(recipe))
    if isinstance(r, PolyRecipe):
        return evaluate(r.poly, point)
    return _value_at_origin(_centered(r, point))
