"""Truncated matrices of coefficients, exact rank and decompositions.

The matrix of ``R = sum R_{alpha gamma} z^alpha zeta^gamma`` has rows indexed
by conjugate monomials ``zeta^gamma`` and columns by holomorphic monomials
``z^alpha``; both use the same graded reverse lexicographic order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement

from hermrank import kernels, linalg
from hermrank.poly import PolarizedPolynomial, bidegree, conjugate_swap, is_real_valued, poly_mul
from hermrank.scalar import ONE, ZERO, Scalar, _join


class MonomialOrder:
    """Holomorphic monomials of degree <= d in n variables, graded revlex.

    Within a degree, ``z_1 < z_2 < ... < w`` as tie-break variables, so the
    degree-one monomials appear as ``z_1, ..., z_{n-1}, w``.
    """

    def __init__(self, n: int, d: int):
        if n < 1 or d < 0:
            raise ValueError("need n >= 1 and d >= 0")
        self.n = n
        self.d = d
        mons = []
        for deg in range(d + 1):
            block = []
            for combo in combinations_with_replacement(range(n), deg):
                e = [0] * n
                for j in combo:
                    e[j] += 1
                block.append(tuple(e))
            block.sort(key=lambda a: a[::-1])
            mons.extend(block)
        self.monomials: tuple[tuple[int, ...], ...] = tuple(mons)
        self.index: dict[tuple[int, ...], int] = {m: i for i, m in enumerate(mons)}

    def __len__(self) -> int:
        return len(self.monomials)

    def __eq__(self, other) -> bool:
        return isinstance(other, MonomialOrder) and (self.n, self.d) == (other.n, other.d)

    def __hash__(self) -> int:
        return hash((self.n, self.d))


@lru_cache(maxsize=None)
def monomial_order(n: int, d: int) -> MonomialOrder:
    return MonomialOrder(n, d)


@dataclass(frozen=True)
class CoefficientMatrix:
    order: MonomialOrder
    entries: tuple  # rows (conjugate monomials) of columns (holomorphic monomials)

    @property
    def side(self) -> int:
        return len(self.order)

    def entry(self, gamma, alpha) -> Scalar:
        idx = self.order.index
        return self.entries[idx[tuple(gamma)]][idx[tuple(alpha)]]

    def rows(self) -> list[list[Scalar]]:
        return [list(r) for r in self.entries]

    def radicand(self) -> int | None:
        s = None
        for row in self.entries:
            for x in row:
                if x.s is not None:
                    s = _join(s, x.s)
        return s

    def is_hermitian(self) -> bool:
        m = self.side
        E = self.entries
        return all(E[i][j] == E[j][i].conjugate() for i in range(m) for j in range(i, m))


def build_matrix(R: PolarizedPolynomial, d: int) -> CoefficientMatrix:
    """The matrix of coefficients restricted to monomials of degree <= d."""
    order = monomial_order(R.n, d)
    m = len(order)
    idx = order.index
    rows = [[ZERO] * m for _ in range(m)]
    for (alpha, gamma), c in R.terms.items():
        i = idx.get(gamma)
        j = idx.get(alpha)
        if i is not None and j is not None:
            rows[i][j] = c
    return CoefficientMatrix(order, tuple(tuple(r) for r in rows))


def matrix_from_rows(rows, n: int | None = None) -> CoefficientMatrix:
    """Wrap an arbitrary square matrix; the order is only used for labels."""
    rows = linalg.as_matrix(rows)
    order = _DummyOrder(len(rows))
    return CoefficientMatrix(order, tuple(tuple(r) for r in rows))


class _DummyOrder(MonomialOrder):
    def __init__(self, m: int):
        self.n = 0
        self.d = -1
        self.monomials = tuple((i,) for i in range(m))
        self.index = {mon: i for i, mon in enumerate(self.monomials)}


def _row_ints(row, wide: bool):
    den = 1
    for x in row:
        if x:
            cd = x.denominator()
            den = den * cd // math.gcd(den, cd)

    def conv(q):
        return q.numerator * (den // q.denominator)

    if wide:
        return [(conv(x.re), conv(x.im), conv(x.rre), conv(x.rim)) if x else (0, 0, 0, 0)
                for x in row]
    return [conv(x.re) if x else 0 for x in row], [conv(x.im) if x else 0 for x in row]


def rank_of_rows(rows) -> int:
    """Exact rank of a matrix of scalars via fraction-free elimination."""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    s = None
    for row in rows:
        for x in row:
            if x.s is not None:
                s = _join(s, x.s)
    # drop zero rows up front; scaling a row by its denominator keeps the rank
    rows = [r for r in rows if any(r)]
    if not rows:
        return 0
    if s is None:
        re, im = [], []
        for row in rows:
            a, b = _row_ints(row, False)
            re.append(a)
            im.append(b)
        return kernels.bareiss_rank2(re, im)
    return kernels.bareiss_rank4([_row_ints(row, True) for row in rows], s)


def exact_rank(M: CoefficientMatrix) -> int:
    return rank_of_rows(M.entries)


def rank_of(R: PolarizedPolynomial) -> int:
    """Hermitian rank of a polynomial: rank of its full matrix of coefficients."""
    bd = bidegree(R)
    if bd is None:
        return 0
    return exact_rank(build_matrix(R, max(bd)))


def multinomial_bound(r: int, d: int) -> int:
    """``C(r + d - 1, d)``: the rank bound for the d-th power of a rank-r form."""
    if r < 0 or d < 0:
        raise ValueError("r and d must be nonnegative")
    if d == 0:
        return 1
    if r == 0:
        return 0
    return math.comb(r + d - 1, d)


def _hol_from_vector(n: int, order: MonomialOrder, vec) -> PolarizedPolynomial:
    z = (0,) * n
    return PolarizedPolynomial(n, {(alpha, z): c for alpha, c in zip(order.monomials, vec) if c})


@dataclass(frozen=True)
class RankFactorization:
    r: int
    phi: tuple[PolarizedPolynomial, ...]
    psi: tuple[PolarizedPolynomial, ...]

    def reconstruct(self, n: int) -> PolarizedPolynomial:
        acc = PolarizedPolynomial.zero(n)
        for f, g in zip(self.phi, self.psi):
            acc = acc + poly_mul(f, conjugate_swap(g))
        return acc


def rank_factorize(R: PolarizedPolynomial) -> RankFactorization:
    """``R(z, zeta) = sum_k phi_k(z) * conj(psi_k)(zeta)`` with ``rank_of(R)`` terms."""
    n = R.n
    bd = bidegree(R)
    if bd is None:
        return RankFactorization(0, (), ())
    M = build_matrix(R, max(bd))
    order = M.order
    F, piv = linalg.rref(M.entries)
    r = len(piv)
    phi, psi = [], []
    for k, col in enumerate(piv):
        phi.append(_hol_from_vector(n, order, F[k]))
        psi.append(_hol_from_vector(n, order, [M.entries[g][col].conjugate()
                                               for g in range(len(order))]))
    fac = RankFactorization(r, tuple(phi), tuple(psi))
    if fac.reconstruct(n) != R:
        raise AssertionError("rank factorization failed to reconstruct its input")
    return fac


@dataclass(frozen=True)
class SignatureDecomposition:
    """``R = sum w|f|^2 - sum v|g|^2`` on the diagonal, all weights positive."""

    positive: tuple[tuple[Scalar, PolarizedPolynomial], ...]
    negative: tuple[tuple[Scalar, PolarizedPolynomial], ...]

    @property
    def squares(self) -> int:
        return len(self.positive) + len(self.negative)

    @property
    def signature(self) -> tuple[int, int]:
        return len(self.positive), len(self.negative)

    def reconstruct(self, n: int) -> PolarizedPolynomial:
        acc = PolarizedPolynomial.zero(n)
        for w, f in self.positive:
            acc = acc + poly_mul(f, conjugate_swap(f)).scale(w)
        for v, g in self.negative:
            acc = acc - poly_mul(g, conjugate_swap(g)).scale(v)
        return acc


def signature_decompose(R: PolarizedPolynomial) -> SignatureDecomposition:
    """Hermitian congruence diagonalization of a real-valued polynomial."""
    if not is_real_valued(R):
        raise ValueError("signature decomposition needs a real-valued polynomial")
    n = R.n
    bd = bidegree(R)
    if bd is None:
        return SignatureDecomposition((), ())
    M = build_matrix(R, max(bd))
    order = M.order
    H = [list(row) for row in M.entries]
    m = len(H)
    half = ONE / 2
    pos, neg = [], []
    while True:
        k = next((i for i in range(m) if H[i][i]), None)
        if k is not None:
            dkk = H[k][k]
            w = dkk.inverse()
            # scale so the pivot coefficient is 1; the weight becomes dkk
            f = _hol_from_vector(n, order, H[k]).scale(w)
            (pos if dkk.sign() > 0 else neg).append((dkk if dkk.sign() > 0 else -dkk, f))
            colk = [H[i][k] for i in range(m)]
            rowk = list(H[k])
            for i in range(m):
                if colk[i]:
                    t = colk[i] * w
                    Hi = H[i]
                    for j in range(m):
                        if rowk[j]:
                            Hi[j] = Hi[j] - t * rowk[j]
            continue
        pair = next(((j, k) for j in range(m) for k in range(j + 1, m) if H[j][k]), None)
        if pair is None:
            break
        j, k = pair
        c = H[j][k]
        X = _hol_from_vector(n, order, H[k])
        Y = _hol_from_vector(n, order, H[j]).scale(c.inverse())
        pos.append((half, X + Y))
        neg.append((half, X - Y))
        colj = [H[i][j] for i in range(m)]
        colk = [H[i][k] for i in range(m)]
        rowj, rowk = list(H[j]), list(H[k])
        inv_kj = H[k][j].inverse()
        inv_jk = c.inverse()
        for i in range(m):
            a = colj[i] * inv_kj if colj[i] else None
            b = colk[i] * inv_jk if colk[i] else None
            if a is None and b is None:
                continue
            Hi = H[i]
            for t in range(m):
                delta = ZERO
                if a is not None and rowk[t]:
                    delta = delta + a * rowk[t]
                if b is not None and rowj[t]:
                    delta = delta + b * rowj[t]
                if delta:
                    Hi[t] = Hi[t] - delta
    dec = SignatureDecomposition(tuple(pos), tuple(neg))
    if dec.reconstruct(n) != R:
        raise AssertionError("signature decomposition failed to reconstruct its input")
    return dec
