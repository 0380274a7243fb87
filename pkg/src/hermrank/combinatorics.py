"""Index sets of monomials z^a w^b zbar^c wbar^delta and the pivot structure.

For a degree ``d`` the classes are

* ``A_d``: ``|a| + b <= d`` and ``|c| + delta <= d`` (every matrix position);
* ``B_d``: ``|a| + b + delta <= d`` and ``|c| + b + delta <= d``;
* ``P_d``: ``|a| + b + delta = d`` and ``a = c`` (the pivots);
* ``N_d = B_d minus P_d`` (the guaranteed zeros).

Stage ``t`` pivots are ``z^a w^((2d-|a|-t)/2) zbar^a wbar^((t-|a|)/2)`` with
``0 <= |a| <= t`` and ``t = |a| mod 2``, together with their conjugates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import product
from typing import NamedTuple

from hermrank.coeffmatrix import CoefficientMatrix
from hermrank.poly import PolarizedPolynomial
from hermrank.scalar import Scalar


class PolarizedMonomial(NamedTuple):
    a: tuple[int, ...]
    b: int
    c: tuple[int, ...]
    delta: int

    @classmethod
    def from_key(cls, key) -> PolarizedMonomial:
        alpha, gamma = key
        return cls(tuple(alpha[:-1]), alpha[-1], tuple(gamma[:-1]), gamma[-1])

    def key(self):
        return (self.a + (self.b,), self.c + (self.delta,))

    def conjugate(self) -> PolarizedMonomial:
        return PolarizedMonomial(self.c, self.delta, self.a, self.b)

    def __sub__(self, other: PolarizedMonomial) -> PolarizedMonomial:
        return PolarizedMonomial(tuple(x - y for x, y in zip(self.a, other.a)), self.b - other.b,
                                 tuple(x - y for x, y in zip(self.c, other.c)),
                                 self.delta - other.delta)

    def bidegree(self) -> tuple[int, int]:
        return sum(self.a) + self.b, sum(self.c) + self.delta


class MonomialClass(str, enum.Enum):
    IN_P = "InP_d"
    IN_N = "InN_d"
    IN_A_NOT_B = "InA_notB"
    OUTSIDE = "Outside"


def in_A(m: PolarizedMonomial, d: int) -> bool:
    return sum(m.a) + m.b <= d and sum(m.c) + m.delta <= d


def in_B(m: PolarizedMonomial, d: int) -> bool:
    return sum(m.a) + m.b + m.delta <= d and sum(m.c) + m.b + m.delta <= d


def in_P(m: PolarizedMonomial, d: int) -> bool:
    return sum(m.a) + m.b + m.delta == d and m.a == m.c


def in_N(m: PolarizedMonomial, d: int) -> bool:
    return in_B(m, d) and not in_P(m, d)


def classify_monomial(m: PolarizedMonomial, d: int) -> MonomialClass:
    if min(m.a + m.c + (m.b, m.delta), default=0) < 0 or d < 0 or not in_A(m, d):
        return MonomialClass.OUTSIDE
    if in_B(m, d):
        return MonomialClass.IN_P if in_P(m, d) else MonomialClass.IN_N
    return MonomialClass.IN_A_NOT_B


def order_leq(m1: PolarizedMonomial, m2: PolarizedMonomial) -> bool:
    return (all(x <= y for x, y in zip(m1.a, m2.a)) and m1.b <= m2.b
            and all(x <= y for x, y in zip(m1.c, m2.c)) and m1.delta <= m2.delta)


def order_lt(m1: PolarizedMonomial, m2: PolarizedMonomial) -> bool:
    return m1 != m2 and order_leq(m1, m2)


@dataclass(frozen=True)
class ImplicationCheck:
    which: int
    applies: bool
    holds: bool


def order_implications(m_small: PolarizedMonomial, m_big: PolarizedMonomial,
                       d: int) -> list[ImplicationCheck]:
    """Evaluate the four implications relating a monomial, a smaller one and their quotient."""
    if not order_leq(m_small, m_big):
        raise ValueError("m_small must divide m_big")
    diff = m_big - m_small
    diff_in_P1 = classify_monomial(diff, 1) is MonomialClass.IN_P
    diff_in_AnotB = classify_monomial(diff, 1) is MonomialClass.IN_A_NOT_B
    big = classify_monomial(m_big, d)
    big_in_B = big in (MonomialClass.IN_P, MonomialClass.IN_N)
    checks = []

    app = m_small != m_big and big_in_B
    checks.append(ImplicationCheck(1, app, not app or in_N(m_small, d)))
    app = diff_in_AnotB and big_in_B
    checks.append(ImplicationCheck(2, app, not app or in_N(m_small, d - 1)))
    app = diff_in_P1 and big is MonomialClass.IN_N
    checks.append(ImplicationCheck(3, app, not app or in_N(m_small, d - 1)))
    app = diff_in_P1 and big is MonomialClass.IN_P
    checks.append(ImplicationCheck(4, app, not app or in_P(m_small, d - 1)))
    return checks


# -- enumeration ------------------------------------------------------------

def exponent_vectors(k: int, max_total: int):
    """All exponent vectors of length k with entry sum <= max_total."""
    if k == 0:
        yield ()
        return
    for first in range(max_total + 1):
        for rest in exponent_vectors(k - 1, max_total - first):
            yield (first,) + rest


def all_monomials(n: int, d: int):
    """Every monomial of bidegree <= (d, d), i.e. the set A_d."""
    for a in exponent_vectors(n - 1, d):
        for b in range(d - sum(a) + 1):
            for c in exponent_vectors(n - 1, d):
                for delta in range(d - sum(c) + 1):
                    yield PolarizedMonomial(a, b, c, delta)


def B_monomials(n: int, d: int):
    for b, delta in product(range(d + 1), repeat=2):
        rem = d - b - delta
        if rem < 0:
            continue
        for a in exponent_vectors(n - 1, rem):
            for c in exponent_vectors(n - 1, rem):
                yield PolarizedMonomial(a, b, c, delta)


def P_monomials(n: int, d: int):
    for a in exponent_vectors(n - 1, d):
        for b in range(d - sum(a) + 1):
            yield PolarizedMonomial(a, b, a, d - sum(a) - b)


def N_monomials(n: int, d: int):
    return (m for m in B_monomials(n, d) if not in_P(m, d))


def pivot_count(n: int, d: int) -> int:
    """Size of P_d by enumeration."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    return sum(1 for _ in P_monomials(n, d))


@dataclass(frozen=True)
class PivotIndex:
    t: int
    alpha: tuple[int, ...]
    conj: bool = False


def pivot_monomial(idx: PivotIndex, d: int) -> PolarizedMonomial:
    s = sum(idx.alpha)
    if not 0 <= idx.t <= d:
        raise ValueError(f"stage t={idx.t} outside 0..{d}")
    if s > idx.t or (idx.t - s) % 2:
        raise ValueError(f"pivot index needs |alpha| <= t and t = |alpha| mod 2, got {idx}")
    m = PolarizedMonomial(tuple(idx.alpha), (2 * d - s - idx.t) // 2, tuple(idx.alpha),
                          (idx.t - s) // 2)
    return m.conjugate() if idx.conj else m


def stage_indices(n: int, d: int, t: int, conj: bool = False) -> list[PivotIndex]:
    return [PivotIndex(t, a, conj) for a in exponent_vectors(n - 1, t) if (t - sum(a)) % 2 == 0]


# -- structure checks ---------------------------------------------------------

@dataclass
class StructureReport:
    d: int
    mode: str
    checked_N: int = 0
    checked_P: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _positive_rational(x: Scalar) -> bool:
    return x.is_rational() and x.re > 0


def structure_check(R: PolarizedPolynomial, d: int, mode: str = "power",
                    q0: Scalar | None = None) -> StructureReport:
    """Check the zero pattern on N_d and the sign pattern on P_d.

    ``mode="power"``: each P_d coefficient is a positive rational.
    ``mode="with_q"``: each P_d coefficient is ``q0`` times a positive rational.
    """
    if mode not in ("power", "with_q"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "with_q":
        if q0 is None or not Scalar.coerce(q0):
            raise ValueError("with_q mode needs a nonzero q0")
        q_inv = Scalar.coerce(q0).inverse()
    rep = StructureReport(d, mode)
    n = R.n
    for m in N_monomials(n, d):
        c = R.terms.get(m.key())
        rep.checked_N += 1
        if c is not None and c:
            rep.violations.append(("nonzero on N_d", m, c))
    for m in P_monomials(n, d):
        c = R.terms.get(m.key())
        rep.checked_P += 1
        if c is None:
            rep.violations.append(("zero on P_d", m, None))
            continue
        v = c if mode == "power" else c * q_inv
        if not _positive_rational(v):
            rep.violations.append(("not a positive rational multiple on P_d", m, c))
    return rep


# -- staged reduction ---------------------------------------------------------

@dataclass
class PivotReport:
    n: int
    d: int
    ok: bool = False
    rank: int | None = None
    pivots: list = field(default_factory=list)
    stage_sizes: list = field(default_factory=list)
    failure: str | None = None
    witness: PolarizedMonomial | None = None


def pivot_verify(M: CoefficientMatrix, d: int) -> PivotReport:
    """Run the staged reduction and certify that P_d are exactly the pivots.

    At stage ``t`` the rows of the stage-``t`` pivots must already be zero off
    the pivot, so each row operation only clears the pivot's column; then the
    conjugate pivots' columns must be zero off the pivot and each column
    operation clears the pivot's row.  The input is never modified.
    """
    order = M.order
    n = order.n
    rep = PivotReport(n, d)
    if order.d != d:
        rep.failure = f"matrix truncated at degree {order.d}, expected {d}"
        return rep
    idx = order.index
    W = [list(r) for r in M.entries]

    def entry(m: PolarizedMonomial) -> Scalar:
        alpha, gamma = m.key()
        return W[idx[gamma]][idx[alpha]]

    for m in N_monomials(n, d):
        if entry(m):
            rep.failure = "precondition: nonzero entry on N_d"
            rep.witness = m
            return rep
    for m in P_monomials(n, d):
        if not entry(m):
            rep.failure = "precondition: zero entry on P_d"
            rep.witness = m
            return rep

    side = len(order)
    mons = order.monomials
    seen_rows: set[int] = set()
    seen_cols: set[int] = set()
    for t in range(d + 1):
        stage = stage_indices(n, d, t)
        for pidx in stage:
            Z = pivot_monomial(pidx, d)
            alpha, gamma = Z.key()
            r, c = idx[gamma], idx[alpha]
            row = W[r]
            bad = next((j for j in range(side) if j != c and row[j]), None)
            if bad is not None:
                rep.failure = f"stage {t}: row of pivot has a nonzero off-pivot entry"
                rep.witness = PolarizedMonomial.from_key((mons[bad], gamma))
                return rep
            piv = row[c]
            support = [j for j in range(side) if row[j]]
            for i in range(side):
                if i != r and W[i][c]:
                    f = W[i][c] / piv
                    Wi = W[i]
                    for j in support:
                        Wi[j] = Wi[j] - f * row[j]
            rep.pivots.append((r, c))
            seen_rows.add(r)
            seen_cols.add(c)
        for pidx in stage:
            Zb = pivot_monomial(PivotIndex(pidx.t, pidx.alpha, True), d)
            alpha, gamma = Zb.key()
            r, c = idx[gamma], idx[alpha]
            bad = next((i for i in range(side) if i != r and W[i][c]), None)
            if bad is not None:
                rep.failure = f"stage {t}: column of conjugate pivot has a nonzero off-pivot entry"
                rep.witness = PolarizedMonomial.from_key((alpha, mons[bad]))
                return rep
            piv = W[r][c]
            col_support = [i for i in range(side) if W[i][c]]
            for j in range(side):
                if j != c and W[r][j]:
                    f = W[r][j] / piv
                    for i in col_support:
                        W[i][j] = W[i][j] - f * W[i][c]
            if (r, c) not in rep.pivots:
                rep.pivots.append((r, c))
            seen_rows.add(r)
            seen_cols.add(c)
        rep.stage_sizes.append(len(stage) if t == d else 2 * len(stage))

    expected = {(idx[m.key()[1]], idx[m.key()[0]]) for m in P_monomials(n, d)}
    if set(rep.pivots) != expected or len(rep.pivots) != len(expected):
        rep.failure = "pivot set differs from P_d"
        return rep
    if len(seen_rows) != len(rep.pivots) or len(seen_cols) != len(rep.pivots):
        rep.failure = "pivots share a row or a column"
        return rep
    pivset = set(rep.pivots)
    for i in range(side):
        for j in range(side):
            if W[i][j] and (i, j) not in pivset:
                rep.failure = "reduced matrix has a nonzero entry off the pivots"
                rep.witness = PolarizedMonomial.from_key((mons[j], mons[i]))
                return rep
    rep.rank = len(rep.pivots)
    rep.ok = True
    return rep
