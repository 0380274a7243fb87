"""Polarized polynomials R(z, w, zeta, eta) with exact coefficients.

A monomial is keyed by ``(alpha, gamma)``: exponent tuples of length ``n`` for
the holomorphic block ``(z_1, ..., z_{n-1}, w)`` and for the conjugate block
``(zeta_1, ..., zeta_{n-1}, eta)``.  The last coordinate of each block is
``w`` (resp. ``eta``).  On the diagonal ``zeta = conj(z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from hermrank import kernels
from hermrank.scalar import ONE, ZERO, FieldMismatch, Scalar, _join

Key = tuple[tuple[int, ...], tuple[int, ...]]

FIELD_BITS = 16
_FIELD_MAX = (1 << (FIELD_BITS - 1)) - 1


class DimensionMismatch(ValueError):
    pass


def hol_names(n: int) -> list[str]:
    return [f"z{k + 1}" for k in range(n - 1)] + ["w"]


def pack(n: int, alpha: Sequence[int], gamma: Sequence[int]) -> int:
    """Pack a monomial into one integer: exponents, then the two block degrees."""
    da, dg = sum(alpha), sum(gamma)
    if da > _FIELD_MAX or dg > _FIELD_MAX:
        raise OverflowError("degree too large for packed monomial keys")
    key = 0
    shift = 0
    for e in alpha:
        key |= e << shift
        shift += FIELD_BITS
    for e in gamma:
        key |= e << shift
        shift += FIELD_BITS
    key |= da << shift
    key |= dg << (shift + FIELD_BITS)
    return key


def unpack(n: int, key: int) -> Key:
    mask = (1 << FIELD_BITS) - 1
    ex = [(key >> (FIELD_BITS * j)) & mask for j in range(2 * n)]
    return tuple(ex[:n]), tuple(ex[n:])


def trunc_spec(n: int, max_hol: int, max_anti: int) -> tuple[int, int, int, int]:
    return (FIELD_BITS * 2 * n, FIELD_BITS * (2 * n + 1), max_hol, max_anti)


def _to_int(q: Fraction, den: int) -> int:
    return q.numerator * (den // q.denominator)


class PolarizedPolynomial:
    """Finitely supported map ``(alpha, gamma) -> Scalar``; immutable."""

    __slots__ = ("n", "terms", "_cache", "_hash")

    def __init__(self, n: int, terms: Mapping[Key, object] | None = None):
        if n < 1:
            raise ValueError("dimension must be at least 1")
        self.n = n
        clean: dict[Key, Scalar] = {}
        for (alpha, gamma), c in (terms or {}).items():
            alpha, gamma = tuple(alpha), tuple(gamma)
            if len(alpha) != n or len(gamma) != n:
                raise DimensionMismatch(f"monomial {alpha},{gamma} does not have dimension {n}")
            if min(alpha + gamma, default=0) < 0:
                raise ValueError("negative exponent")
            c = Scalar.coerce(c)
            if c:
                key = (alpha, gamma)
                if key in clean:
                    c = clean[key] + c
                    if not c:
                        del clean[key]
                        continue
                clean[key] = c
        self.terms = clean
        self._cache = {}
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, terms: dict) -> PolarizedPolynomial:
        p = object.__new__(cls)
        p.n = n
        p.terms = terms
        p._cache = {}
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> PolarizedPolynomial:
        return cls._trusted(n, {})

    @classmethod
    def constant(cls, n: int, c=1) -> PolarizedPolynomial:
        c = Scalar.coerce(c)
        z = (0,) * n
        return cls._trusted(n, {(z, z): c} if c else {})

    @classmethod
    def hol(cls, n: int, k: int) -> PolarizedPolynomial:
        """The holomorphic coordinate ``k`` (0-based; ``k = n-1`` is ``w``)."""
        e = tuple(int(j == k) for j in range(n))
        return cls._trusted(n, {(e, (0,) * n): ONE})

    @classmethod
    def anti(cls, n: int, k: int) -> PolarizedPolynomial:
        """The conjugate coordinate ``k`` (``k = n-1`` is ``eta``)."""
        e = tuple(int(j == k) for j in range(n))
        return cls._trusted(n, {((0,) * n, e): ONE})

    @classmethod
    def monomial(cls, n: int, alpha, gamma, c=1) -> PolarizedPolynomial:
        return cls(n, {(tuple(alpha), tuple(gamma)): c})

    # -- basic queries ----------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return self.terms.items()

    def coeff(self, alpha, gamma) -> Scalar:
        return self.terms.get((tuple(alpha), tuple(gamma)), ZERO)

    def constant_term(self) -> Scalar:
        z = (0,) * self.n
        return self.terms.get((z, z), ZERO)

    def radicand(self) -> int | None:
        s = None
        for c in self.terms.values():
            s = _join(s, c.s)
        return s

    def is_holomorphic(self) -> bool:
        return all(not any(g) for _, g in self.terms)

    def sorted_keys(self) -> list[Key]:
        return sorted(self.terms, key=lambda k: (sum(k[0]) + sum(k[1]), k))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolarizedPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> PolarizedPolynomial:
        other = _as_poly(other, self.n)
        _check_dim(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return PolarizedPolynomial._trusted(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> PolarizedPolynomial:
        return PolarizedPolynomial._trusted(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> PolarizedPolynomial:
        return self + (-_as_poly(other, self.n))

    def __rsub__(self, other) -> PolarizedPolynomial:
        return _as_poly(other, self.n) + (-self)

    def scale(self, c) -> PolarizedPolynomial:
        c = Scalar.coerce(c)
        if not c:
            return PolarizedPolynomial.zero(self.n)
        return PolarizedPolynomial._trusted(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other) -> PolarizedPolynomial:
        if isinstance(other, PolarizedPolynomial):
            return poly_mul(self, other)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other) -> PolarizedPolynomial:
        return self.scale(other)

    def __truediv__(self, other) -> PolarizedPolynomial:
        return self.scale(Scalar.coerce(other).inverse())

    def __pow__(self, d: int) -> PolarizedPolynomial:
        return poly_pow(self, d)

    def truncate(self, max_hol: int, max_anti: int) -> PolarizedPolynomial:
        return PolarizedPolynomial._trusted(self.n, {
            k: c for k, c in self.terms.items()
            if sum(k[0]) <= max_hol and sum(k[1]) <= max_anti})

    # -- packed integer form used by the kernels --------------------------
    def _int_form(self, wide: bool):
        """``(den, {packed_key: int components})`` with ``self = terms / den``."""
        tag = "w" if wide else "g"
        cached = self._cache.get(tag)
        if cached is not None:
            return cached
        den = 1
        for c in self.terms.values():
            cd = c.denominator()
            den = den * cd // math.gcd(den, cd)
        n = self.n
        out = {}
        for (alpha, gamma), c in self.terms.items():
            key = pack(n, alpha, gamma)
            if wide:
                out[key] = (_to_int(c.re, den), _to_int(c.im, den),
                            _to_int(c.rre, den), _to_int(c.rim, den))
            else:
                if c.s is not None:
                    raise FieldMismatch("radical coefficient in Gaussian kernel")
                out[key] = (_to_int(c.re, den), _to_int(c.im, den))
        self._cache[tag] = (den, out)
        return den, out

    @classmethod
    def _from_int(cls, n: int, den: int, terms: dict, s: int | None) -> PolarizedPolynomial:
        out = {}
        for key, comps in terms.items():
            if len(comps) == 2:
                c = Scalar._raw(Fraction(comps[0], den), Fraction(comps[1], den),
                                Fraction(0), Fraction(0), None)
            else:
                c = Scalar._raw(Fraction(comps[0], den), Fraction(comps[1], den),
                                Fraction(comps[2], den), Fraction(comps[3], den), s)
            out[unpack(n, key)] = c
        return cls._trusted(n, out)

    # -- display ----------------------------------------------------------
    def to_text(self) -> str:
        """Render in the expression grammar accepted by ``hermrank.parsing``."""
        if not self.terms:
            return "0"
        names = hol_names(self.n)
        pieces = []
        for key in self.sorted_keys():
            alpha, gamma = key
            factors = []
            for name, e in zip(names, alpha):
                if e:
                    factors.append(name if e == 1 else f"{name}^{e}")
            for name, e in zip(names, gamma):
                if e:
                    factors.append(f"~{name}" if e == 1 else f"~{name}^{e}")
            c = self.terms[key]
            sign, body = _scalar_expr(c)
            if factors:
                mon = "*".join(factors)
                text = mon if body == "1" else f"{body}*{mon}"
            else:
                text = body
            if pieces:
                pieces.append(f" {sign} {text}")
            else:
                pieces.append(text if sign == "+" else f"-{text}")
        return "".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"PolarizedPolynomial(n={self.n}, {self.to_text()})"


def _scalar_expr(c: Scalar) -> tuple[str, str]:
    """Sign and unsigned grammar text for a coefficient."""
    comps = [(c.re, ""), (c.im, "i"), (c.rre, f"r{c.s}"), (c.rim, f"i*r{c.s}")]
    nz = [(q, t) for q, t in comps if q]
    if len(nz) == 1:
        q, t = nz[0]
        sign = "-" if q < 0 else "+"
        q = abs(q)
        qs = str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
        if not t:
            return sign, qs
        return sign, t if q == 1 else f"{qs}*{t}"
    parts = []
    for q, t in nz:
        qs = str(abs(q).numerator) if q.denominator == 1 else f"{abs(q).numerator}/{q.denominator}"
        body = qs if not t else (t if abs(q) == 1 else f"{qs}*{t}")
        if parts:
            parts.append(f" {'-' if q < 0 else '+'} {body}")
        else:
            parts.append(body if q > 0 else f"-{body}")
    return "+", "(" + "".join(parts) + ")"


def _as_poly(x, n: int) -> PolarizedPolynomial:
    if isinstance(x, PolarizedPolynomial):
        return x
    return PolarizedPolynomial.constant(n, x)


def _check_dim(a: PolarizedPolynomial, b: PolarizedPolynomial) -> None:
    if a.n != b.n:
        raise DimensionMismatch(f"dimensions differ: {a.n} vs {b.n}")


def poly_mul(r1: PolarizedPolynomial, r2: PolarizedPolynomial,
             trunc: tuple[int, int] | None = None) -> PolarizedPolynomial:
    """Exact product; ``trunc=(j, k)`` keeps only bidegrees <= (j, k)."""
    _check_dim(r1, r2)
    n = r1.n
    if not r1.terms or not r2.terms:
        return PolarizedPolynomial.zero(n)
    s = _join(r1.radicand(), r2.radicand())
    tspec = trunc_spec(n, *trunc) if trunc is not None else None
    if s is None:
        d1, t1 = r1._int_form(False)
        d2, t2 = r2._int_form(False)
        prod = kernels.conv2(t1, t2, tspec)
    else:
        d1, t1 = r1._int_form(True)
        d2, t2 = r2._int_form(True)
        prod = kernels.conv4(t1, t2, s, tspec)
    return PolarizedPolynomial._from_int(n, d1 * d2, prod, s)


def poly_pow(r: PolarizedPolynomial, d: int,
             trunc: tuple[int, int] | None = None) -> PolarizedPolynomial:
    if d < 0:
        raise ValueError("negative power")
    n = r.n
    one = PolarizedPolynomial.constant(n, 1)
    if d == 0:
        return one
    if not r.terms:
        return PolarizedPolynomial.zero(n)
    s = r.radicand()
    tspec = trunc_spec(n, *trunc) if trunc is not None else None
    base_den, base = r._int_form(s is not None)
    z = pack(n, (0,) * n, (0,) * n)
    acc = {z: (1, 0) if s is None else (1, 0, 0, 0)}
    den = 1
    for _ in range(d):
        acc = kernels.conv2(acc, base, tspec) if s is None else kernels.conv4(acc, base, s, tspec)
        den *= base_den
    return PolarizedPolynomial._from_int(n, den, acc, s)


def swap_blocks(r: PolarizedPolynomial) -> PolarizedPolynomial:
    """R(x, y) -> R(y, x) without conjugating coefficients."""
    return PolarizedPolynomial._trusted(r.n, {(g, a): c for (a, g), c in r.terms.items()})


def conjugate_swap(r: PolarizedPolynomial) -> PolarizedPolynomial:
    """R* with coefficient at (a, g) equal to conj of R's coefficient at (g, a)."""
    return PolarizedPolynomial._trusted(
        r.n, {(g, a): c.conjugate() for (a, g), c in r.terms.items()})


def is_real_valued(r: PolarizedPolynomial) -> bool:
    return conjugate_swap(r) == r


def bidegree(r: PolarizedPolynomial) -> tuple[int, int] | None:
    """``(max hol degree, max anti degree)``; ``None`` for the zero polynomial."""
    if not r.terms:
        return None
    return (max(sum(a) for a, _ in r.terms), max(sum(g) for _, g in r.terms))


def total_degree(r: PolarizedPolynomial) -> int:
    return max((sum(a) + sum(g) for a, g in r.terms), default=0)


@dataclass(frozen=True)
class Point:
    """Point of the polarized space: ``p`` for (z, w), ``q`` for (zeta, eta)."""

    p: tuple[Scalar, ...]
    q: tuple[Scalar, ...]

    def __post_init__(self):
        if len(self.p) != len(self.q):
            raise DimensionMismatch("point blocks differ in length")
        object.__setattr__(self, "p", tuple(Scalar.coerce(x) for x in self.p))
        object.__setattr__(self, "q", tuple(Scalar.coerce(x) for x in self.q))

    @property
    def n(self) -> int:
        return len(self.p)

    @classmethod
    def diagonal(cls, p: Iterable) -> Point:
        p = tuple(Scalar.coerce(x) for x in p)
        return cls(p, tuple(x.conjugate() for x in p))

    @classmethod
    def origin(cls, n: int) -> Point:
        return cls((ZERO,) * n, (ZERO,) * n)

    def is_diagonal(self) -> bool:
        return all(b == a.conjugate() for a, b in zip(self.p, self.q))

    def is_origin(self) -> bool:
        return not any(self.p) and not any(self.q)


def evaluate(r: PolarizedPolynomial, pt: Point) -> Scalar:
    if pt.n != r.n:
        raise DimensionMismatch("point dimension differs from polynomial dimension")
    total = ZERO
    powcache: dict = {}

    def pw(x: Scalar, e: int, tag) -> Scalar:
        key = (tag, e)
        v = powcache.get(key)
        if v is None:
            v = x ** e
            powcache[key] = v
        return v

    for (alpha, gamma), c in r.terms.items():
        v = c
        for j, e in enumerate(alpha):
            if e:
                v = v * pw(pt.p[j], e, ("p", j))
        for j, e in enumerate(gamma):
            if e:
                v = v * pw(pt.q[j], e, ("q", j))
        total = total + v
    return total


def substitute(r: PolarizedPolynomial, hol_images: Sequence[PolarizedPolynomial],
               anti_images: Sequence[PolarizedPolynomial]) -> PolarizedPolynomial:
    """Replace each holomorphic / conjugate coordinate by a polynomial."""
    if len(hol_images) != r.n or len(anti_images) != r.n:
        raise DimensionMismatch("need one image per coordinate")
    m = hol_images[0].n if hol_images else anti_images[0].n
    one = PolarizedPolynomial.constant(m, 1)
    cache: dict = {}

    def pw(block: int, j: int, e: int) -> PolarizedPolynomial:
        key = (block, j, e)
        v = cache.get(key)
        if v is None:
            img = hol_images[j] if block == 0 else anti_images[j]
            v = one if e == 0 else (img if e == 1 else poly_mul(pw(block, j, e - 1), img))
            cache[key] = v
        return v

    acc = PolarizedPolynomial.zero(m)
    for (alpha, gamma), c in r.terms.items():
        term = PolarizedPolynomial.constant(m, c)
        for j, e in enumerate(alpha):
            if e:
                term = poly_mul(term, pw(0, j, e))
        for j, e in enumerate(gamma):
            if e:
                term = poly_mul(term, pw(1, j, e))
        acc = acc + term
    return acc


def translate(r: PolarizedPolynomial, p0: Sequence, q0: Sequence) -> PolarizedPolynomial:
    """Substitute (z, w) -> (z, w) + p0 and (zeta, eta) -> (zeta, eta) + q0."""
    n = r.n
    if len(p0) != n or len(q0) != n:
        raise DimensionMismatch("shift dimension differs from polynomial dimension")
    hol = [PolarizedPolynomial.hol(n, j) + Scalar.coerce(p0[j]) for j in range(n)]
    anti = [PolarizedPolynomial.anti(n, j) + Scalar.coerce(q0[j]) for j in range(n)]
    return substitute(r, hol, anti)


def _linear_images(n: int, A, block: int) -> list[PolarizedPolynomial]:
    make = PolarizedPolynomial.hol if block == 0 else PolarizedPolynomial.anti
    out = []
    for i in range(n):
        img = PolarizedPolynomial.zero(n)
        for j in range(n):
            a = Scalar.coerce(A[i][j])
            if a:
                img = img + make(n, j).scale(a)
        out.append(img)
    return out


def linear_change(r: PolarizedPolynomial, A, B) -> PolarizedPolynomial:
    """Substitute x -> A x on (z, w) and y -> B y on (zeta, eta).

    Both matrices must be invertible; row ``i`` gives the image of old
    coordinate ``i`` in terms of the new ones.
    """
    from hermrank.linalg import is_invertible

    n = r.n
    for M, name in ((A, "A"), (B, "B")):
        if len(M) != n or any(len(row) != n for row in M):
            raise DimensionMismatch(f"matrix {name} must be {n}x{n}")
        if not is_invertible(M):
            raise ValueError(f"matrix {name} is singular")
    return substitute(r, _linear_images(n, A, 0), _linear_images(n, B, 1))


def restrict(r: PolarizedPolynomial, keep: Sequence[int]) -> PolarizedPolynomial:
    """Set every coordinate not in ``keep`` to zero in both blocks and drop it."""
    keep = list(keep)
    m = len(keep)
    if m < 1:
        raise ValueError("must keep at least one coordinate")
    dropped = [j for j in range(r.n) if j not in keep]
    out = {}
    for (alpha, gamma), c in r.terms.items():
        if any(alpha[j] or gamma[j] for j in dropped):
            continue
        out[(tuple(alpha[j] for j in keep), tuple(gamma[j] for j in keep))] = c
    return PolarizedPolynomial._trusted(m, out)


def hol_poly(n: int, coeffs: Mapping[tuple[int, ...], object]) -> PolarizedPolynomial:
    """A holomorphic polynomial from ``{alpha: coefficient}``."""
    z = (0,) * n
    return PolarizedPolynomial(n, {(tuple(a), z): c for a, c in coeffs.items()})


def norm_squared(n: int, coords: Iterable[int] | None = None) -> PolarizedPolynomial:
    """Polarized sum of ``z_k * zeta_k`` over the given coordinates (all by default)."""
    coords = range(n) if coords is None else coords
    acc = PolarizedPolynomial.zero(n)
    for k in coords:
        acc = acc + poly_mul(PolarizedPolynomial.hol(n, k), PolarizedPolynomial.anti(n, k))
    return acc
