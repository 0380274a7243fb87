"""Worked examples showing that each hypothesis of the rank inequality is needed."""

from __future__ import annotations

from dataclasses import dataclass, field

from hermrank.coeffmatrix import multinomial_bound, rank_of
from hermrank.jets import PolyRecipe, Product, Reciprocal, jet_of, rank_lower_bound
from hermrank.parsing import parse_poly
from hermrank.poly import Point, PolarizedPolynomial, norm_squared, poly_mul
from hermrank.randgen import make_rng, random_nonvanishing_poly
from hermrank.verify import VIOLATED, truncated_rank, verify_theorem


@dataclass
class GalleryCase:
    case_id: str
    construction: str
    basis: str  # why the expected numbers are what they are
    expected: dict
    observed: dict = field(default_factory=dict)
    passed: bool = False
    reports: list = field(default_factory=list, repr=False)  # verification runs behind the numbers


def _check(case: GalleryCase, **observed) -> GalleryCase:
    case.observed.update(observed)
    case.passed = all(_matches(case.expected[k], case.observed.get(k)) for k in case.expected)
    return case


def _matches(want, got) -> bool:
    if isinstance(want, str) and want.startswith(">="):
        return got is not None and got >= int(want[2:])
    return want == got


def case_constant_q(n: int = 2, d: int = 2) -> GalleryCase:
    P = norm_squared(n, range(n - 1)) + PolarizedPolynomial.hol(n, n - 1) \
        + PolarizedPolynomial.anti(n, n - 1)
    Q = PolarizedPolynomial.constant(n, 3)
    rP = rank_of(P)
    case = GalleryCase("a", f"P = {P}, Q = 3, n = {n}, d = {d}",
                       "a nonzero constant multiple has the same rank as P^d",
                       {"rank_Pd": multinomial_bound(rP, d), "rank_QPd": multinomial_bound(rP, d),
                        "verdict": "holds"})
    rep = verify_theorem(P, Q, d)
    case.reports.append(rep)
    return _check(case, rank_Pd=rank_of(P ** d), rank_QPd=rank_of(poly_mul(Q, P ** d)),
                  lower_bound=rep.lower_bound, verdict=rep.verdict)


def _reciprocal_power(P: PolarizedPolynomial, d: int):
    return Reciprocal(PolyRecipe(P ** d))


def case_no_zero_set(n: int = 2, d: int = 2) -> GalleryCase:
    P = norm_squared(n) + 1
    Q = _reciprocal_power(P, d)
    case = GalleryCase("b", f"P = {P}, Q = 1/P^{d}, n = {n}, d = {d}",
                       "Q P^d is the constant 1; P^d has one independent square per monomial",
                       {"rank_Pd": multinomial_bound(n + 1, d), "rank_QPd": 1,
                        "verdict": VIOLATED})
    rep = verify_theorem(P, Q, d)
    case.reports.append(rep)
    # the product is identically one, so every corner of its matrix has rank one
    corners = {truncated_rank(Q, P, d, k) for k in (d, d + 1, d + 2)}
    return _check(case, rank_Pd=rank_of(P ** d), rank_QPd=rank_lower_bound(jet_of(Q, d), P, d),
                  corner_ranks=sorted(corners), verdict=rep.verdict, reason=rep.reason)


def case_q_undefined(n: int = 2, d: int = 2) -> GalleryCase:
    P = 1 - norm_squared(n)
    Q = _reciprocal_power(P, d)
    case = GalleryCase("c", f"P = {P}, Q = 1/P^{d}, n = {n}, d = {d}",
                       "Q is singular on the whole zero set; Q P^d is the constant 1",
                       {"rank_Pd": multinomial_bound(n + 1, d), "lower_bound": 1,
                        "verdict": VIOLATED})
    rep = verify_theorem(P, Q, d)
    case.reports.append(rep)
    return _check(case, rank_Pd=rank_of(P ** d), lower_bound=rank_lower_bound(jet_of(Q, d), P, d),
                  verdict=rep.verdict, reason=rep.reason)


def case_high_bidegree() -> GalleryCase:
    P = parse_poly("z1^2*~z1^2 - r2*z1*~z1*w*~w + w^2*~w^2", 2, 2)
    Q = parse_poly("z1^2*~z1^2 + r2*z1*~z1*w*~w + w^2*~w^2", 2, 2)
    QP = poly_mul(Q, P)
    case = GalleryCase("d", f"P = {P}, Q = {Q}, n = 2, d = 1, field qi-sqrt2",
                       "Q P = |z1|^8 + |w|^8 has two monomials; P has three",
                       {"rank_Pd": 3, "rank_QPd": 2, "product": "w^4*~w^4 + z1^4*~z1^4"})
    return _check(case, rank_Pd=rank_of(P), rank_QPd=rank_of(QP), product=QP.to_text())


def case_equality_n2() -> GalleryCase:
    P = parse_poly("z1*~z1 - w*~w", 2)
    Q = parse_poly("z1*~z1 + w*~w", 2)
    QP = poly_mul(Q, P)
    case = GalleryCase("e", f"P = {P}, Q = {Q}, n = 2, d = 1",
                       "|z1|^4 - |w|^4 has two monomials, so equality holds with rank Q = 2",
                       {"rank_P": 2, "rank_Q": 2, "rank_QPd": 2})
    return _check(case, rank_P=rank_of(P), rank_Q=rank_of(Q), rank_QPd=rank_of(QP),
                  product=QP.to_text())


def case_sphere_bound(n: int = 3, trials: int = 5, seed: int = 7) -> GalleryCase:
    P = norm_squared(n)
    case = GalleryCase("f", f"P = {P}, n = {n}, d = 1, {trials} random Q with Q(0) != 0",
                       "rank of Q |z|^2 is at least rank |z|^2 = n",
                       {"min_lower_bound": f">={n}", "all_hold": True})
    origin = Point.origin(n)
    rng = make_rng("gallery-f", seed, n)
    bounds, verdicts = [], []
    for t in range(trials):
        q = random_nonvanishing_poly(rng, n, 2, origin)
        Q = PolyRecipe(q) if t % 2 == 0 else Product(
            (PolyRecipe(q), Reciprocal(PolyRecipe(norm_squared(n) + 1))))
        rep = verify_theorem(P, Q, 1, origin)
        case.reports.append(rep)
        bounds.append(rep.lower_bound)
        verdicts.append(rep.verdict)
    return _check(case, lower_bounds=bounds, min_lower_bound=min(b or 0 for b in bounds),
                  all_hold=all(v == "holds" for v in verdicts))


def run_gallery() -> list[GalleryCase]:
    return [case_constant_q(), case_no_zero_set(), case_q_undefined(), case_high_bidegree(),
            case_equality_n2(), case_sphere_bound()]
