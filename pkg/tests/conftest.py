"""Shared fixtures for the acceptance suite and its per-criterion summary."""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field

import pytest

CRITERIA = {
    1: "rank of normal-form powers equals C(n+d, d)",
    2: "main inequality holds on 500 seeded instances",
    3: "gallery values match exactly",
    4: "zero pattern on N_d and positivity on P_d",
    5: "staged pivot certification on every instance of 1-4",
    6: "rank factorization and signature round-trip",
    7: "exact rank agrees with a floating SVD rank",
    8: "rank invariant under affine pair changes and translations",
    9: "rank of P^d bounded by the multinomial count",
}

_outcomes: dict[int, str] = {}
_notes: dict[int, str] = {}
_CRITERION_TEST = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_runtest_logreport(report):
    m = _CRITERION_TEST.search(report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.failed:
        _outcomes[k] = "FAIL"
    elif report.skipped:
        _outcomes.setdefault(k, "SKIP")
    elif report.when == "call":
        _outcomes.setdefault(k, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for k, title in CRITERIA.items():
        status = _outcomes.get(k, "NOT RUN")
        note = f"  [{_notes[k]}]" if k in _notes else ""
        terminalreporter.write_line(f"criterion {k}: {status:<7} {title}{note}")


@pytest.fixture(scope="session")
def acceptance_notes() -> dict[int, str]:
    """Tests write a one-line summary per criterion here."""
    return _notes


@dataclass
class RankFormulaRun:
    records: list = field(default_factory=list)  # (n, d, P^d, rank)
    seconds: float = 0.0


@dataclass
class TheoremRun:
    instances: list = field(default_factory=list)
    reports: list = field(default_factory=list)
    seconds: float = 0.0


@dataclass
class StructureRun:
    records: list = field(default_factory=list)  # (n, d, P^d, truncated Q P^d, Q(0))
    seconds: float = 0.0


@pytest.fixture(scope="session")
def rank_formula_run() -> RankFormulaRun:
    from hermrank.coeffmatrix import rank_of
    from hermrank.poly import poly_pow
    from hermrank.randgen import make_rng, random_tail_normal_form

    run = RankFormulaRun()
    start = time.perf_counter()
    for n in range(1, 5):
        for d in range(6):
            for k in range(20):
                R = random_tail_normal_form(make_rng("criterion-1", n, d, k), n)
                Pd = poly_pow(R, d)
                run.records.append((n, d, Pd, rank_of(Pd)))
    run.seconds = time.perf_counter() - start
    return run


@pytest.fixture(scope="session")
def theorem_run() -> TheoremRun:
    from hermrank.randgen import random_instance
    from hermrank.verify import verify_theorem

    run = TheoremRun()
    start = time.perf_counter()
    for seed in range(500):
        n, d = 1 + seed % 3, (seed // 3) % 5
        inst = random_instance(seed, n, d, "with-polynomial-Q")
        run.instances.append(inst)
        run.reports.append(verify_theorem(inst.P, inst.Q, d, inst.point))
    run.seconds = time.perf_counter() - start
    return run


@pytest.fixture(scope="session")
def gallery_run():
    from hermrank.gallery import run_gallery

    return run_gallery()


@pytest.fixture(scope="session")
def structure_run() -> StructureRun:
    from hermrank.jets import Exp, PolyRecipe, Product, Reciprocal, jet_of, jet_times_power
    from hermrank.poly import Point, norm_squared, poly_pow
    from hermrank.randgen import make_rng, random_nonvanishing_poly, random_tail_normal_form

    run = StructureRun()
    start = time.perf_counter()
    for n in range(1, 4):
        origin = Point.origin(n)
        for d in range(5):
            for k in range(50):
                rng = make_rng("criterion-4", n, d, k)
                R = random_tail_normal_form(rng, n)
                q = random_nonvanishing_poly(rng, n, 2, origin)
                if k % 2:
                    # a genuinely non-polynomial Q, handled through its jet
                    den = random_nonvanishing_poly(rng, n, 1, origin)
                    Q = Product((PolyRecipe(q), Reciprocal(PolyRecipe(den + norm_squared(n))),
                                 Exp(PolyRecipe(R - R.constant_term()))))
                else:
                    Q = PolyRecipe(q)
                jet = jet_of(Q, d)
                trunc = jet_times_power(jet, R, d).poly
                run.records.append((n, d, poly_pow(R, d), trunc, jet.constant_term()))
    run.seconds = time.perf_counter() - start
    return run
