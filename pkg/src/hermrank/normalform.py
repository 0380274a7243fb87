"""Canonical forms of bidegree-(1, 1) polynomials vanishing at the origin.

Write ``P = l.x + m.y + x^T C y`` with ``x = (z, w)`` and ``y = (zeta, eta)``.
Independent linear changes of the two blocks, and possibly exchanging the
blocks, bring ``P`` to one of

* ``FORM1``: ``w + eta + sum_{k<=r} z_k zeta_k`` plus terms involving w or eta;
* ``FORM2``: ``w + sum_{k<=r} z_k zeta_k`` plus terms involving w;
* ``FORM3``: ``sum_{k<=r} z_k zeta_k + w eta``.

:func:`reduce_full_rank` then shifts the base point and drops unused
coordinates until ``P`` is of the first kind with ``r = n - 1``.
"""

from __future__ import annotations

import random
from math import isqrt
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

from hermrank import linalg
from hermrank.coeffmatrix import rank_of
from hermrank.jets import AnalyticJet, as_recipe, jet_of, map_leaves, nonzero_at
from hermrank.poly import (
    Point,
    PolarizedPolynomial,
    bidegree,
    conjugate_swap,
    evaluate,
    restrict,
    substitute,
    swap_blocks,
)
from hermrank.scalar import ONE, ZERO, Scalar

FORM1, FORM2, FORM3 = "Form1", "Form2", "Form3"

EPSILONS = tuple(Fraction(1, 2 ** k) for k in range(21))
RANDOM_DIRECTIONS = 32
DIRECTION_SEED = 20240611


class NormalFormError(ValueError):
    pass


# -- coordinate changes ---------------------------------------------------------

def _vec(v) -> tuple[Scalar, ...]:
    return tuple(Scalar.coerce(x) for x in v)


def _mat(M) -> tuple[tuple[Scalar, ...], ...]:
    return tuple(_vec(row) for row in M)


@dataclass(frozen=True)
class AffinePairChange:
    """``x_old = A x_new + a`` on (z, w) and ``y_old = B y_new + b`` on (zeta, eta)."""

    A: tuple
    a: tuple
    B: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", _mat(self.A))
        object.__setattr__(self, "B", _mat(self.B))
        object.__setattr__(self, "a", _vec(self.a))
        object.__setattr__(self, "b", _vec(self.b))
        n = len(self.A)
        if len(self.B) != n or len(self.a) != n or len(self.b) != n:
            raise ValueError("inconsistent sizes in affine change")
        if not (linalg.is_invertible(self.A) and linalg.is_invertible(self.B)):
            raise ValueError("affine change needs invertible linear parts")

    @property
    def n(self) -> int:
        return len(self.A)

    @classmethod
    def identity(cls, n: int) -> AffinePairChange:
        I = linalg.identity(n)
        return cls(I, (ZERO,) * n, I, (ZERO,) * n)

    @classmethod
    def linear(cls, A, B) -> AffinePairChange:
        n = len(A)
        return cls(A, (ZERO,) * n, B, (ZERO,) * n)

    @classmethod
    def translation(cls, a, b) -> AffinePairChange:
        I = linalg.identity(len(a))
        return cls(I, a, I, b)

    def apply(self, r: PolarizedPolynomial) -> PolarizedPolynomial:
        n = self.n
        if r.n != n:
            raise ValueError("dimension mismatch")
        hol = [_affine_image(n, self.A[i], self.a[i], PolarizedPolynomial.hol) for i in range(n)]
        anti = [_affine_image(n, self.B[i], self.b[i], PolarizedPolynomial.anti) for i in range(n)]
        return substitute(r, hol, anti)

    def compose(self, then: AffinePairChange) -> AffinePairChange:
        """The change equal to applying ``self`` and afterwards ``then``."""
        A = linalg.matmul(self.A, then.A)
        B = linalg.matmul(self.B, then.B)
        a = [x + y for x, y in zip(linalg.matvec(self.A, then.a), self.a)]
        b = [x + y for x, y in zip(linalg.matvec(self.B, then.b), self.b)]
        return AffinePairChange(A, a, B, b)

    def inverse(self) -> AffinePairChange:
        Ai = linalg.inverse(self.A)
        Bi = linalg.inverse(self.B)
        return AffinePairChange(Ai, [-x for x in linalg.matvec(Ai, self.a)],
                                Bi, [-x for x in linalg.matvec(Bi, self.b)])

    def exchanged(self) -> AffinePairChange:
        return AffinePairChange(self.B, self.b, self.A, self.a)


def _affine_image(n, row, shift, make) -> PolarizedPolynomial:
    img = PolarizedPolynomial.constant(n, shift)
    for j, c in enumerate(row):
        if c:
            img = img + make(n, j).scale(c)
    return img


@dataclass(frozen=True)
class BlockSwap:
    """``R(x, y) -> R(y, x)``; not an affine change of either block."""

    def apply(self, r: PolarizedPolynomial) -> PolarizedPolynomial:
        return swap_blocks(r)

    def inverse(self) -> BlockSwap:
        return self


@dataclass(frozen=True)
class Restriction:
    """Set the coordinates outside ``keep`` to zero in both blocks."""

    keep: tuple[int, ...]

    def apply(self, r: PolarizedPolynomial) -> PolarizedPolynomial:
        return restrict(r, self.keep)

    def inverse(self):
        raise NormalFormError("a restriction cannot be undone")


Step = Union[AffinePairChange, BlockSwap, Restriction]


def replay_steps(steps, r: PolarizedPolynomial) -> PolarizedPolynomial:
    for st in steps:
        r = st.apply(r)
    return r


@dataclass(frozen=True)
class NormalFormReport:
    form: str
    r: int
    P: PolarizedPolynomial
    steps: tuple = ()
    epsilons: tuple[Fraction, ...] = ()
    trail: tuple[str, ...] = field(default=())

    def replay(self, r: PolarizedPolynomial) -> PolarizedPolynomial:
        return replay_steps(self.steps, r)

    def undo(self, r: PolarizedPolynomial) -> PolarizedPolynomial:
        for st in reversed(self.steps):
            r = st.inverse().apply(r)
        return r

    @property
    def swapped(self) -> bool:
        return sum(isinstance(s, BlockSwap) for s in self.steps) % 2 == 1

    @property
    def restricted(self) -> bool:
        return any(isinstance(s, Restriction) for s in self.steps)

    def change(self) -> AffinePairChange:
        """All affine steps folded into one change applied after the net block swap."""
        if self.restricted:
            raise NormalFormError("report contains a restriction")
        acc = AffinePairChange.identity(self.P.n)
        for st in self.steps:
            acc = acc.exchanged() if isinstance(st, BlockSwap) else acc.compose(st)
        return acc


# -- classification -------------------------------------------------------------

def linear_parts(P: PolarizedPolynomial):
    """``(l, m, C)`` with ``P = l.x + m.y + x^T C y`` plus the constant term."""
    n = P.n
    e = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    z = (0,) * n
    ell = [P.coeff(e[j], z) for j in range(n)]
    m = [P.coeff(z, e[j]) for j in range(n)]
    C = [[P.coeff(e[i], e[j]) for j in range(n)] for i in range(n)]
    return ell, m, C


def _check_bidegree_11(P: PolarizedPolynomial) -> None:
    bd = bidegree(P)
    if bd is None:
        raise NormalFormError("P is identically zero")
    if bd[0] > 1 or bd[1] > 1:
        raise NormalFormError(f"P has bidegree {bd}, need at most (1, 1)")


def _with_last_column(M, v) -> list[list[Scalar]]:
    return [list(row) + [x] for row, x in zip(M, v)]


def _section(ell) -> list[Scalar]:
    """A vector ``a`` with ``l . a = 1``."""
    j = next(k for k, x in enumerate(ell) if x)
    a = [ZERO] * len(ell)
    a[j] = ell[j].inverse()
    return a


def _kernel_columns(ell) -> list[list[Scalar]]:
    """Matrix whose columns form a basis of ``ker l`` (n x (n-1))."""
    basis = linalg.hyperplane_basis(ell)
    n = len(ell)
    if not basis:
        return [[] for _ in range(n)]
    return linalg.transpose(basis)


def _mul(A, B):
    if not A or not A[0] or not B:
        return [[ZERO] * (len(B[0]) if B else 0) for _ in range(len(A))]
    return linalg.matmul(A, B)


def classify_linear_form(P: PolarizedPolynomial) -> NormalFormReport:
    _check_bidegree_11(P)
    if P.constant_term():
        raise NormalFormError("P must vanish at the origin")
    n = P.n
    ell, m, C = linear_parts(P)
    steps: list = []
    if not any(ell) and any(m):
        steps.append(BlockSwap())
        P_work = swap_blocks(P)
        ell, m, C = linear_parts(P_work)
    else:
        P_work = P

    if any(ell) and any(m):
        form = FORM1
        U = _kernel_columns(ell)
        V = _kernel_columns(m)
        G = _mul(_mul(linalg.transpose(U), C), V)
        S, T, r = _bnf(G, n - 1, n - 1)
        A = _with_last_column(_mul(U, S), _section(ell))
        B = _with_last_column(_mul(V, T), _section(m))
    elif any(ell):
        form = FORM2
        U = _kernel_columns(ell)
        G = _mul(linalg.transpose(U), C)
        S, T, r = _bnf(G, n - 1, n)
        A = _with_last_column(_mul(U, S), _section(ell))
        B = T
    else:
        form = FORM3
        S, T, rho = linalg.bilinear_normal_form(C)
        r = rho - 1
        # the last diagonal pair goes to (w, eta)
        order = list(range(r)) + list(range(rho, n)) + [r]
        A = [[row[k] for k in order] for row in S]
        B = [[row[k] for k in order] for row in T]
    change = AffinePairChange.linear(A, B)
    steps.append(change)
    out = change.apply(P_work)
    rep = NormalFormReport(form, r, out, tuple(steps), trail=(form,))
    _check_form(rep)
    expected = r + 2 if form == FORM1 else r + 1
    if rank_of(P) != expected or rank_of(out) != expected:
        raise AssertionError("rank bookkeeping failed during classification")
    return rep


def _bnf(G, p: int, q: int):
    if p == 0:
        return [], linalg.identity(q), 0
    return linalg.bilinear_normal_form(G)


def _check_form(rep: NormalFormReport) -> None:
    P, r, n = rep.P, rep.r, rep.P.n
    ell, m, C = linear_parts(P)
    w = n - 1
    want_ell = [ONE if (j == w and rep.form != FORM3) else ZERO for j in range(n)]
    want_m = [ONE if (j == w and rep.form == FORM1) else ZERO for j in range(n)]
    ok = ell == want_ell and m == want_m and not P.constant_term()
    for i in range(n):
        for j in range(n):
            pair = ONE if (i == j and i < r) else ZERO
            if rep.form == FORM3 and i == w and j == w:
                pair = ONE
            tail_ok = (i == w) or (j == w and rep.form == FORM1)
            if rep.form == FORM3 or not tail_ok:
                ok = ok and C[i][j] == pair
    if not ok:
        raise AssertionError(f"classification produced a polynomial not in {rep.form}: {P}")


def is_full_rank_normal_form(P: PolarizedPolynomial) -> bool:
    """``w + eta + |z|^2`` plus (1,1) terms involving w or eta."""
    bd = bidegree(P)
    if bd is None or bd[0] > 1 or bd[1] > 1 or P.constant_term():
        return False
    ell, m, C = linear_parts(P)
    n = P.n
    w = n - 1
    if ell != [ONE if j == w else ZERO for j in range(n)]:
        return False
    if m != [ONE if j == w else ZERO for j in range(n)]:
        return False
    return all(C[i][j] == (ONE if i == j else ZERO) for i in range(w) for j in range(w))


# -- reduction to the full-rank normal form ----------------------------------

def _transport(recipe, step):
    return map_leaves(recipe, step.apply)


def reduce_full_rank(P: PolarizedPolynomial, Q, d: int):
    """Bring ``P`` to the full-rank normal form, moving ``Q`` along.

    Returns ``(P', Q', report)`` where ``Q'`` is an :class:`AnalyticJet` of
    order ``d`` centred at the new base point.
    """
    _check_bidegree_11(P)
    rank = rank_of(P)
    if rank <= 1:
        raise NormalFormError("rank of P is at most 1; no normal form needed")
    recipe = as_recipe(Q)
    if recipe.n != P.n:
        raise NormalFormError("P and Q live in different dimensions")
    if not nonzero_at(recipe):
        raise NormalFormError("Q must be defined and nonzero at the base point")
    steps: list = []
    eps_used: list[Fraction] = []
    trail: list[str] = []
    cur = P
    for _ in range(4):
        rep = classify_linear_form(cur)
        trail.append(rep.form)
        for st in rep.steps:
            steps.append(st)
            recipe = _transport(recipe, st)
        cur = rep.P
        if rep.form == FORM1:
            break
        n, r = cur.n, rep.r
        shift = [ZERO] * n
        shift[r - 1] = ONE
        if rep.form == FORM3:
            shift[n - 1] = ONE
        for eps in EPSILONS:
            st = AffinePairChange.translation([x * eps for x in shift], [ZERO] * n)
            moved = _transport(recipe, st)
            if nonzero_at(moved):
                break
        else:
            raise NormalFormError("no admissible shift keeps Q defined and nonzero")
        steps.append(st)
        eps_used.append(eps)
        recipe = moved
        cur = st.apply(cur)
        if cur.constant_term():
            raise AssertionError("shift left the zero set of P")
    else:
        raise AssertionError("normalization did not reach Form1")

    n, r = cur.n, rep.r
    if r < n - 1:
        st = Restriction(tuple(range(r)) + (n - 1,))
        steps.append(st)
        recipe = _transport(recipe, st)
        cur = st.apply(cur)
    if not is_full_rank_normal_form(cur):
        raise AssertionError(f"not in full-rank normal form: {cur}")
    if rank_of(cur) != rank or cur.n + 1 != rank:
        raise AssertionError("rank changed during normalization")
    if not nonzero_at(recipe):
        raise AssertionError("Q vanishes at the normalized base point")
    report = NormalFormReport(FORM1, cur.n - 1, cur, tuple(steps), tuple(eps_used), tuple(trail))
    return cur, jet_of(recipe, d), report


# -- zeros on the diagonal ------------------------------------------------------

def _re(x: Scalar) -> Scalar:
    return Scalar._raw(x.re, Fraction(0), x.rre, Fraction(0), x.s if x.rre else None)


def _im(x: Scalar) -> Scalar:
    return Scalar._raw(x.im, Fraction(0), x.rim, Fraction(0), x.s if x.rim else None)


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = isqrt(q.numerator), isqrt(q.denominator)
    return Fraction(a, b) if a * a == q.numerator and b * b == q.denominator else None


SQUAREFREE_TRIAL_LIMIT = 10 ** 5


def _squarefree_split(N: int) -> tuple[int, int] | None:
    """``(k, s)`` with ``N = k^2 s`` and ``s`` square-free, or None if factoring stalls."""
    k, s, p = 1, 1, 2
    while p * p <= N and p <= SQUAREFREE_TRIAL_LIMIT:
        e = 0
        while N % p == 0:
            N //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1 if p == 2 else 2
    if N > 1:
        r = isqrt(N)
        if r * r == N:
            k *= r
        elif N < SQUAREFREE_TRIAL_LIMIT ** 2:
            s *= N   # no factor below its square root, so prime
        else:
            return None
    return k, s


def exact_sqrt(x: Scalar, extend: bool = False) -> Scalar | None:
    """Nonnegative square root of a real scalar inside the current field, if any.

    With ``extend=True`` a positive rational that is not a square gets the
    root ``k sqrt(s)`` in the extension by its square-free part ``s``.
    """
    if x.sign() < 0:
        return None
    if not x:
        return ZERO
    X, Y, s = x.re, x.rre, x.s
    if not Y:
        r = _rational_sqrt(X)
        if r is not None:
            return Scalar.coerce(r)
        if s is not None:
            r = _rational_sqrt(X / s)
            if r is not None:
                return Scalar(0, 0, r, 0, s)
            return None
        if extend:
            split = _squarefree_split(X.numerator * X.denominator)
            if split is not None:
                k, sf = split
                return Scalar(0, 0, Fraction(k, X.denominator), 0, sf)
        return None
    # (a + b sqrt s)^2 = X + Y sqrt s  =>  a^2 = (X +- sqrt(X^2 - s Y^2)) / 2
    delta = _rational_sqrt(X * X - s * Y * Y)
    if delta is None:
        return None
    for a2 in ((X + delta) / 2, (X - delta) / 2):
        a = _rational_sqrt(a2)
        if a:
            root = Scalar(a, 0, Y / (2 * a), 0, s)
            if root.sign() < 0:
                root = -root
            if root * root == x:
                return root
    return None


def _solve_linear(e1, e2):
    (a1, b1, c1), (a2, b2, c2) = e1, e2
    det = b1 * c2 - b2 * c1
    if det:
        return [((-a1 * c2 + a2 * c1) / det, (-b1 * a2 + b2 * a1) / det)]
    out = []
    for a, b, c in (e1, e2):
        if b:
            out.append((-a / b, ZERO))
        elif c:
            out.append((ZERO, -a / c))
    if not b1 and not c1 and not b2 and not c2 and not a1 and not a2:
        out.append((ONE, ZERO))
    return out


def _circle_points(a, b, c, d, extend: bool):
    """Points of ``d(u^2+s^2) + b u + c s + a = 0`` with coordinates in the field."""
    cu, cs = -b / (2 * d), -c / (2 * d)
    R2 = (b * b + c * c) / (4 * d * d) - a / d
    sgn = R2.sign()
    if sgn < 0:
        return []
    if sgn == 0:
        return [(cu, cs)]
    out = []
    R = exact_sqrt(R2, extend)
    if R is not None:
        out += [(cu + R, cs), (cu, cs + R)]
    for den in range(1, 9):
        for num in range(1, 4 * den):
            x = Scalar.coerce(Fraction(num, den))
            y = exact_sqrt(R2 - x * x)
            if y is None:
                continue
            out.append((cu + x, cs + y))
            if len(out) >= 4:
                return out
    return out


def _solve_line_system(e1, e2, extend: bool):
    """Real solutions of ``a + b u + c s + d(u^2 + s^2) = 0`` for two equations."""
    if not e1[3] and not e2[3]:
        return _solve_linear(e1[:3], e2[:3])
    if not e1[3]:
        e1, e2 = e2, e1
    a1, b1, c1, d1 = e1
    a2, b2, c2, d2 = e2
    la, lb, lc = d2 * a1 - d1 * a2, d2 * b1 - d1 * b2, d2 * c1 - d1 * c2
    if not lb and not lc:
        return [] if la else _circle_points(a1, b1, c1, d1, extend)
    u0, s0 = ((-la / lb, ZERO) if lb else (ZERO, -la / lc))
    # (u, s) = (u0, s0) + t (-lc, lb)
    q2 = d1 * (lc * lc + lb * lb)
    q1 = d1 * 2 * (-u0 * lc + s0 * lb) - b1 * lc + c1 * lb
    q0 = d1 * (u0 * u0 + s0 * s0) + b1 * u0 + c1 * s0 + a1
    root = exact_sqrt(q1 * q1 - 4 * q2 * q0, extend)
    if root is None:
        return []
    ts = {(-q1 + root) / (2 * q2), (-q1 - root) / (2 * q2)}
    return [(u0 - t * lc, s0 + t * lb) for t in ts]


def _directions(n: int) -> list[list[Scalar]]:
    dirs = []
    for j in range(n):
        v = [ZERO] * n
        v[j] = ONE
        dirs.append(v)
    for j in range(n):
        v = [ZERO] * n
        v[j] = ONE
        v[(j + 1) % n] = v[(j + 1) % n] + ONE
        dirs.append(v)
    rng = random.Random(DIRECTION_SEED)
    for _ in range(RANDOM_DIRECTIONS):
        v = [Scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
                    Fraction(rng.randint(-3, 3), rng.randint(1, 3))) for _ in range(n)]
        if any(v):
            dirs.append(v)
    return dirs


def iter_zeros(P: PolarizedPolynomial, extend: bool = True) -> Iterator[Point]:
    """Diagonal zeros of ``P`` found on complex lines through the origin.

    When ``P`` has Gaussian rational coefficients and ``extend`` is set, a
    zero may use one square root ``sqrt(s)``; otherwise zeros stay in the
    field of ``P``.
    """
    _check_bidegree_11(P)
    extend = extend and P.radicand() is None
    n = P.n
    ell, m, C = linear_parts(P)
    A = P.constant_term()
    origin = Point.origin(n)
    seen: set = set()
    if not A:
        seen.add(origin)
        yield origin
    for v in _directions(n):
        vb = [x.conjugate() for x in v]
        B = sum((ell[j] * v[j] for j in range(n)), ZERO)
        Cc = sum((m[j] * vb[j] for j in range(n)), ZERO)
        D = sum((C[i][j] * v[i] * vb[j] for i in range(n) for j in range(n)), ZERO)
        Ar, Ai, Br, Bi = _re(A), _im(A), _re(B), _im(B)
        Cr, Ci, Dr, Di = _re(Cc), _im(Cc), _re(D), _im(D)
        e_re = (Ar, Br + Cr, Ci - Bi, Dr)
        e_im = (Ai, Bi + Ci, Br - Cr, Di)
        for u, s in _solve_line_system(e_re, e_im, extend):
            t = u + s * Scalar.i()
            pt = Point.diagonal([t * x for x in v])
            if pt in seen:
                continue
            if not evaluate(P, pt):
                seen.add(pt)
                yield pt


def find_zero(P: PolarizedPolynomial, extend: bool = True) -> Point | None:
    """First diagonal zero found, or ``None`` when the search finds nothing."""
    return next(iter_zeros(P, extend), None)


def _real_part(P: PolarizedPolynomial) -> PolarizedPolynomial:
    return (P + conjugate_swap(P)).scale(Fraction(1, 2))


def _imag_part(P: PolarizedPolynomial) -> PolarizedPolynomial:
    return (P - conjugate_swap(P)).scale(Scalar(0, Fraction(-1, 2)))


def _real_form_has_no_zeros(R: PolarizedPolynomial) -> bool:
    # coordinates R does not depend on would make the quadratic part degenerate
    used = [j for j in range(R.n) if any(a[j] or g[j] for a, g in R.terms)]
    if used and len(used) < R.n:
        R = restrict(R, used)
    n = R.n
    ell, m, C = linear_parts(R)
    c = R.constant_term()
    if not any(any(row) for row in C):
        return not any(ell) and not any(m) and bool(c)
    for sign in (1, -1):
        H = [[C[j][i] * sign for j in range(n)] for i in range(n)]
        if linalg.is_positive_definite(H):
            zmin = [-x for x in linalg.matvec(linalg.inverse(H), [x * sign for x in m])]
            if (evaluate(R, Point.diagonal(zmin)) * sign).sign() > 0:
                return True
    return False


def certify_no_zeros(P: PolarizedPolynomial) -> bool:
    """True only when ``P(z, conj z)`` provably never vanishes.

    Uses the real and imaginary parts: a definite quadratic part lets the
    extreme value be computed exactly by completing the square.
    """
    _check_bidegree_11(P)
    return any(_real_form_has_no_zeros(R) for R in (_real_part(P), _imag_part(P)) if R)


def sample_polarized_zeros(P: PolarizedPolynomial, count: int = 64,
                           seed: int = DIRECTION_SEED) -> Iterator[Point]:
    """Points ``(x, y)`` near the origin with ``P(x, y) = 0``, blocks independent.

    ``P`` is affine in each holomorphic coordinate, so one coordinate is solved
    for after choosing small rational values for the others.
    """
    _check_bidegree_11(P)
    n = P.n
    original = P
    swap = False
    j = next((k for k in reversed(range(n)) if any(a[k] for a, _ in P.terms)), None)
    if j is None:
        P, swap = swap_blocks(P), True
        j = next((k for k in reversed(range(n)) if any(a[k] for a, _ in P.terms)), None)
        if j is None:
            return
    rng = random.Random(seed)
    e = tuple(1 if k == j else 0 for k in range(n))
    L = {(tuple(0 for _ in a), g): c for (a, g), c in P.terms.items() if a == e}
    Lpoly = PolarizedPolynomial(n, L)
    Mpoly = PolarizedPolynomial(n, {k: c for k, c in P.terms.items() if k[0][j] == 0})
    for _ in range(count):
        def small():
            return Scalar(Fraction(rng.randint(-3, 3), 8), Fraction(rng.randint(-3, 3), 8))
        x = [small() for _ in range(n)]
        y = [small() for _ in range(n)]
        x[j] = ZERO
        pt = Point(tuple(x), tuple(y))
        lv = evaluate(Lpoly, pt)
        if not lv:
            continue
        x[j] = -evaluate(Mpoly, pt) / lv
        pt = Point(tuple(y), tuple(x)) if swap else Point(tuple(x), tuple(y))
        if not evaluate(original, pt):
            yield pt


# -- dividing out powers of P ----------------------------------------------------

def _order_key(key):
    alpha, gamma = key
    return (sum(alpha) + sum(gamma), alpha[::-1] + gamma[::-1])


def divide_exact(Q: PolarizedPolynomial, P: PolarizedPolynomial):
    """Multivariate division ``Q = quotient * P + remainder``.

    With a single divisor the remainder is zero exactly when ``P`` divides ``Q``.
    """
    if not P:
        raise ZeroDivisionError("division by the zero polynomial")
    n = P.n
    lead = max(P.terms, key=_order_key)
    lc_inv = P.terms[lead].inverse()
    la, lg = lead
    work = dict(Q.terms)
    quotient: dict = {}
    remainder: dict = {}
    while work:
        key = max(work, key=_order_key)
        c = work[key]
        alpha, gamma = key
        da = tuple(x - y for x, y in zip(alpha, la))
        dg = tuple(x - y for x, y in zip(gamma, lg))
        if min(da + dg) < 0:
            remainder[key] = c
            del work[key]
            continue
        f = c * lc_inv
        quotient[(da, dg)] = quotient.get((da, dg), ZERO) + f
        for (pa, pg), pc in P.terms.items():
            k = (tuple(x + y for x, y in zip(pa, da)), tuple(x + y for x, y in zip(pg, dg)))
            v = work.get(k, ZERO) - f * pc
            if v:
                work[k] = v
            else:
                work.pop(k, None)
    return PolarizedPolynomial(n, quotient), PolarizedPolynomial(n, remainder)


def _supports_division(P: PolarizedPolynomial) -> bool:
    bd = bidegree(P)
    if bd is None or bd[0] > 1 or bd[1] > 1 or P.constant_term():
        return False
    n = P.n
    w = tuple(1 if k == n - 1 else 0 for k in range(n))
    return P.coeff(w, (0,) * n) == ONE


def factor_out_P(Q: PolarizedPolynomial, P: PolarizedPolynomial) -> tuple[PolarizedPolynomial, int]:
    """Largest ``k`` with ``P**k`` dividing ``Q``, and the cofactor."""
    if not _supports_division(P):
        raise NormalFormError("P must have bidegree (1,1), vanish at 0 and contain w with coefficient 1")
    if not Q:
        raise NormalFormError("Q is identically zero")
    return max_power_dividing(Q, P)


def max_power_dividing(Q: PolarizedPolynomial, P: PolarizedPolynomial) -> tuple[PolarizedPolynomial, int]:
    """``(Q', k)`` with ``Q = Q' * P**k`` and ``P`` not dividing ``Q'``."""
    if not Q:
        raise NormalFormError("Q is identically zero")
    if bidegree(P) in (None, (0, 0)):
        raise NormalFormError("P must be a non-constant polynomial")
    k = 0
    while True:
        q, rem = divide_exact(Q, P)
        if rem:
            return Q, k
        Q, k = q, k + 1


__all__ = [
    "AffinePairChange", "AnalyticJet", "BlockSwap", "FORM1", "FORM2", "FORM3",
    "NormalFormError", "NormalFormReport", "Restriction", "classify_linear_form",
    "divide_exact", "exact_sqrt", "factor_out_P", "find_zero", "is_full_rank_normal_form",
    "iter_zeros", "linear_parts", "reduce_full_rank", "replay_steps",
    "certify_no_zeros", "max_power_dividing", "sample_polarized_zeros",
]
