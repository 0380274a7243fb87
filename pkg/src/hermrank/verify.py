"""End-to-end check of the rank inequality for ``Q * P**d``.

Given a bidegree-(1, 1) polynomial ``P`` whose zero set meets the domain of a
real-analytic ``Q``, the rank of ``Q * P**d`` is at least
``C(rank P + d - 1, d)``.  :func:`verify_theorem` checks the hypotheses,
moves to a normal form and certifies the bound by an exact rank computation
on a finite corner of the coefficient matrix.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from hermrank.coeffmatrix import build_matrix, exact_rank, multinomial_bound, rank_of
from hermrank.combinatorics import PivotReport, StructureReport, pivot_verify, structure_check
from hermrank.jets import (
    PolyRecipe,
    as_polynomial,
    as_recipe,
    defined_at,
    is_identically_zero,
    is_polynomial,
    jet_of,
    jet_times_power,
    map_leaves,
    nonzero_at,
    polynomial_denominators,
)
from hermrank.normalform import (
    FORM1,
    FORM2,
    NormalFormReport,
    certify_no_zeros,
    classify_linear_form,
    factor_out_P,
    iter_zeros,
    max_power_dividing,
    reduce_full_rank,
    sample_polarized_zeros,
)
from hermrank.poly import Point, PolarizedPolynomial, bidegree, evaluate, poly_mul, poly_pow, translate
from hermrank.scalar import FieldMismatch

HOLDS = "holds"
VIOLATED = "hypothesis-violated"
INDETERMINATE = "indeterminate"

# how far the truncation order is raised when the order-d corner is too small
EXTRA_ORDERS = 6


class InternalCheckFailed(AssertionError):
    pass


@dataclass
class VerificationReport:
    n: int
    d: int
    P: PolarizedPolynomial
    Q_text: str
    verdict: str = INDETERMINATE
    reason: str = ""
    base_point: Point | None = None
    normalization: NormalFormReport | None = None
    rank_P: int | None = None
    rank_Pd: int | None = None
    expected: int | None = None
    lower_bound: int | None = None
    lower_bound_order: int | None = None
    effective_d: int | None = None
    exact_rank_QPd: int | None = None
    structure: list[StructureReport] = field(default_factory=list)
    pivots: list[PivotReport] = field(default_factory=list)
    checks_passed: bool = True
    failure: str | None = None
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS


class _Clock:
    def __init__(self, report: VerificationReport):
        self.report = report
        self.t = time.perf_counter()

    def lap(self, name: str) -> None:
        now = time.perf_counter()
        self.report.timings[name] = self.report.timings.get(name, 0.0) + now - self.t
        self.t = now


def _recipe_text(recipe) -> str:
    from hermrank.parsing import recipe_to_text

    return recipe_to_text(recipe)


def _translate_to(point: Point):
    return lambda r: translate(r, point.p, point.q)


def truncated_rank(recipe, P: PolarizedPolynomial, d: int, order: int) -> int:
    """Rank of the order-``order`` corner of the coefficient matrix of ``Q * P**d``."""
    jet = jet_of(recipe, order)
    prod = poly_mul(jet.poly, poly_pow(P, d, (order, order)), (order, order))
    return exact_rank(build_matrix(prod, order))


def verify_theorem(P: PolarizedPolynomial, Q, d: int, point: Point | None = None) -> VerificationReport:
    """Run every stage and return a report; hypothesis failures become verdicts."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    recipe = as_recipe(Q)
    if recipe.n != P.n:
        raise ValueError("P and Q live in different dimensions")
    rep = VerificationReport(P.n, d, P, _recipe_text(recipe))
    clock = _Clock(rep)
    try:
        _run(rep, P, recipe, d, point, clock)
    except InternalCheckFailed as exc:
        rep.checks_passed = False
        rep.failure = str(exc)
        rep.verdict = INDETERMINATE
        rep.reason = "an internal consistency check failed"
    return rep


def _violated(rep: VerificationReport, reason: str) -> None:
    rep.verdict, rep.reason = VIOLATED, reason


def _run(rep: VerificationReport, P, recipe, d: int, point: Point | None, clock: _Clock) -> None:
    bd = bidegree(P)
    if bd is not None and (bd[0] > 1 or bd[1] > 1):
        rep.rank_P = rank_of(P)
        rep.rank_Pd = rank_of(P ** d)
        rep.expected = multinomial_bound(rep.rank_P, d)
        if is_polynomial(recipe):
            rep.exact_rank_QPd = rank_of(poly_mul(as_polynomial(recipe), P ** d))
        return _violated(rep, "P has bidegree greater than (1, 1)")
    if is_identically_zero(recipe):
        return _violated(rep, "Q is identically zero")
    if bd is None:
        return _violated(rep, "P is identically zero")
    if bd == (0, 0):
        return _violated(rep, "no zero set: P is a nonzero constant")

    # base point
    if point is not None:
        if point.n != P.n:
            raise ValueError("base point dimension differs from P")
        if evaluate(P, point):
            return _violated(rep, "base point is not on the zero set of P")
        if not defined_at(recipe, point):
            return _violated(rep, "Q is not defined at the base point")
        base = point
    else:
        base = None
        found_any = False
        for z in iter_zeros(P):
            try:
                ok = defined_at(recipe, z)
            except FieldMismatch:
                continue   # the zero needs a square root that clashes with Q's field
            found_any = True
            if ok:
                base = z
                break
        if base is None:
            clock.lap("zero search")
            if found_any:
                if any(max_power_dividing(S, P)[1] for S in polynomial_denominators(recipe)):
                    return _violated(rep, "Q is undefined on the zero set: P divides a denominator")
                rep.reason = "Q is not defined at any zero of P that was found"
                return
            if certify_no_zeros(P):
                return _violated(rep, "no zero set")
            rep.reason = "no zero of P was found and emptiness could not be certified"
            return
    rep.base_point = base
    clock.lap("zero search")

    P0 = translate(P, base.p, base.q)
    Q0 = map_leaves(recipe, _translate_to(base))
    rep.rank_P = rank_of(P0)
    rep.expected = multinomial_bound(rep.rank_P, d)
    rep.rank_Pd = rank_of(poly_pow(P0, d))
    if rank_of(P) != rep.rank_P:
        raise InternalCheckFailed("rank of P changed under translation")
    poly_Q = as_polynomial(recipe) if is_polynomial(recipe) else None
    if poly_Q is not None:
        rep.exact_rank_QPd = rank_of(poly_mul(poly_Q, poly_pow(P, d)))
    clock.lap("ranks")

    if rep.rank_P <= 1:
        _low_rank_branch(rep, P0, Q0, d)
        clock.lap("low rank")
        return _finish(rep)

    # make Q nonzero at the base point
    P1, Q1, d_eff = P0, Q0, d
    if not nonzero_at(Q1):
        moved = _move_off_zeros_of_Q(P1, Q1)
        if moved is None and poly_Q is not None:
            cls = classify_linear_form(P1)
            Pc, Qc = cls.P, cls.replay(as_polynomial(Q1))
            if cls.form in (FORM1, FORM2):
                Qc, extra = factor_out_P(Qc, Pc)
            else:
                Qc, extra = max_power_dividing(Qc, Pc)
            P1, Q1, d_eff = Pc, PolyRecipe(Qc), d + extra
            moved = (P1, Q1) if nonzero_at(Q1) else _move_off_zeros_of_Q(P1, Q1)
        if moved is None:
            rep.reason = "Q vanishes at every sampled point of the zero set near the base point"
            return
        P1, Q1 = moved
    rep.effective_d = d_eff
    clock.lap("arrange Q")

    Pn, Qjet, nf = reduce_full_rank(P1, Q1, d_eff)
    rep.normalization = nf
    clock.lap("normal form")

    Pd = poly_pow(Pn, d_eff)
    M_P = build_matrix(Pd, d_eff)
    trunc = jet_times_power(Qjet, Pn, d_eff).poly
    M_QP = build_matrix(trunc, d_eff)
    rep.structure = [structure_check(Pd, d_eff),
                     structure_check(trunc, d_eff, "with_q", Qjet.constant_term())]
    rep.pivots = [pivot_verify(M_P, d_eff), pivot_verify(M_QP, d_eff)]
    clock.lap("structure")
    lower = exact_rank(M_QP)
    rep.lower_bound, rep.lower_bound_order = lower, d_eff
    clock.lap("lower bound")

    target = multinomial_bound(rep.rank_P, d_eff)
    for s in rep.structure:
        if not s.ok:
            raise InternalCheckFailed(f"structure check failed ({s.mode}): {s.violations[:3]}")
    for pv in rep.pivots:
        if not pv.ok:
            raise InternalCheckFailed(f"pivot certification failed: {pv.failure}")
    if rep.pivots[1].rank != lower or lower != target:
        raise InternalCheckFailed(
            f"pivot rank {rep.pivots[1].rank}, exact rank {lower}, expected {target}")
    if exact_rank(M_P) != target:
        raise InternalCheckFailed("rank of the normalized power is not the binomial value")
    _finish(rep)


def _finish(rep: VerificationReport) -> None:
    if rep.exact_rank_QPd is not None and rep.lower_bound is not None \
            and rep.exact_rank_QPd < rep.lower_bound:
        raise InternalCheckFailed("exact rank is smaller than the certified lower bound")
    if rep.lower_bound is not None and rep.lower_bound >= rep.expected:
        rep.verdict, rep.reason = HOLDS, "certified lower bound reaches the binomial bound"
    else:
        rep.verdict = INDETERMINATE
        rep.reason = rep.reason or "the certified lower bound is below the binomial bound"


def _low_rank_branch(rep: VerificationReport, P0, Q0, d: int) -> None:
    """Rank of P at most one: the bound is 1, so a single nonzero coefficient suffices."""
    for order in range(d, d + EXTRA_ORDERS + 1):
        if not defined_at(Q0):
            break
        r = truncated_rank(Q0, P0, d, order)
        rep.lower_bound, rep.lower_bound_order = r, order
        if r >= rep.expected:
            return


def _move_off_zeros_of_Q(P, Q):
    """Translate to a nearby polarized zero of ``P`` where ``Q`` is nonzero."""
    for pt in sample_polarized_zeros(P):
        moved = map_leaves(Q, _translate_to(pt))
        if nonzero_at(moved):
            return translate(P, pt.p, pt.q), moved
    return None
