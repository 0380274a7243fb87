"""Exact scalars in Q(i), optionally extended by one real square root.

A :class:`Scalar` is ``a + b*i + (c + d*i)*sqrt(s)`` with rational ``a, b, c, d``
and a square-free integer ``s >= 2``.  Values whose radical part vanishes carry
``s = None`` and mix freely with every extension; two values carrying
different radicals cannot be combined.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction, "Scalar"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class FieldMismatch(ValueError):
    """Raised when scalars from two different radical extensions meet."""


def is_squarefree(s: int) -> bool:
    if s < 2:
        return False
    k = 2
    while k * k <= s:
        if s % (k * k) == 0:
            return False
        k += 1
    return True


def _join(s1, s2):
    if s1 is None:
        return s2
    if s2 is None or s1 == s2:
        return s1
    raise FieldMismatch(f"cannot combine sqrt({s1}) with sqrt({s2})")


class Scalar:
    __slots__ = ("re", "im", "rre", "rim", "s", "_hash")

    def __init__(self, re=0, im=0, rre=0, rim=0, s: int | None = None):
        self.re = Fraction(re)
        self.im = Fraction(im)
        self.rre = Fraction(rre)
        self.rim = Fraction(rim)
        if self.rre or self.rim:
            if s is None:
                raise ValueError("radical part given without a radicand")
            if not is_squarefree(s):
                raise ValueError(f"radicand {s} is not square-free and >= 2")
            self.s = s
        else:
            self.s = None
        self._hash = None

    @classmethod
    def _raw(cls, re, im, rre, rim, s):
        # trusted constructor: components are already Fractions
        x = object.__new__(cls)
        x.re, x.im, x.rre, x.rim = re, im, rre, rim
        x.s = s if (rre or rim) else None
        x._hash = None
        return x

    @classmethod
    def coerce(cls, x: Number) -> Scalar:
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls._raw(Fraction(x), _ZERO, _ZERO, _ZERO, None)
        if isinstance(x, complex):
            raise TypeError("floating complex values are not exact")
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    @classmethod
    def i(cls) -> Scalar:
        return cls._raw(_ZERO, _ONE, _ZERO, _ZERO, None)

    @classmethod
    def sqrt(cls, s: int) -> Scalar:
        return cls(0, 0, 1, 0, s)

    # -- predicates -------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.re or self.im or self.rre or self.rim)

    def is_zero(self) -> bool:
        return not self

    def is_real(self) -> bool:
        return not self.im and not self.rim

    def is_rational(self) -> bool:
        return not self.im and not self.rre and not self.rim

    def has_radical(self) -> bool:
        return self.s is not None

    def sign(self) -> int:
        """Sign of a real scalar, decided exactly."""
        if not self.is_real():
            raise ValueError(f"sign of non-real scalar {self}")
        a, c = self.re, self.rre
        if c == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return 1 if c > 0 else -1
        if (a > 0) == (c > 0):
            return 1 if a > 0 else -1
        # a and c*sqrt(s) have opposite signs; the larger magnitude wins
        lhs, rhs = a * a, c * c * self.s
        if lhs == rhs:  # impossible for square-free s, kept for safety
            return 0
        return (1 if a > 0 else -1) if lhs > rhs else (1 if c > 0 else -1)

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> Scalar:
        return Scalar._raw(-self.re, -self.im, -self.rre, -self.rim, self.s)

    def __pos__(self) -> Scalar:
        return self

    def __add__(self, other: Number) -> Scalar:
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar._raw(self.re + o.re, self.im + o.im, self.rre + o.rre,
                           self.rim + o.rim, _join(self.s, o.s))

    __radd__ = __add__

    def __sub__(self, other: Number) -> Scalar:
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar._raw(self.re - o.re, self.im - o.im, self.rre - o.rre,
                           self.rim - o.rim, _join(self.s, o.s))

    def __rsub__(self, other: Number) -> Scalar:
        return Scalar.coerce(other) - self

    def __mul__(self, other: Number) -> Scalar:
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, self.rre, self.rim
        e, f, g, h = o.re, o.im, o.rre, o.rim
        re = a * e - b * f
        im = a * f + b * e
        if self.s is None and o.s is None:
            return Scalar._raw(re, im, _ZERO, _ZERO, None)
        s = _join(self.s, o.s)
        # (c+di)(g+hi) * s lands in the rational part
        re += s * (c * g - d * h)
        im += s * (c * h + d * g)
        rre = a * g - b * h + c * e - d * f
        rim = a * h + b * g + c * f + d * e
        return Scalar._raw(re, im, rre, rim, s)

    __rmul__ = __mul__

    def conjugate(self) -> Scalar:
        return Scalar._raw(self.re, -self.im, self.rre, -self.rim, self.s)

    def radical_conjugate(self) -> Scalar:
        """Image under sqrt(s) -> -sqrt(s)."""
        return Scalar._raw(self.re, self.im, -self.rre, -self.rim, self.s)

    def inverse(self) -> Scalar:
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        if self.s is None:
            n = self.re * self.re + self.im * self.im
            return Scalar._raw(self.re / n, -self.im / n, _ZERO, _ZERO, None)
        tilde = self.radical_conjugate()
        norm1 = self * tilde  # lies in Q(i)
        return tilde * norm1.inverse()

    def __truediv__(self, other: Number) -> Scalar:
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Number) -> Scalar:
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> Scalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.re == other and not self.im and not self.rre and not self.rim
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.re == other.re and self.im == other.im and self.rre == other.rre
                and self.rim == other.rim)

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.re)
            else:
                self._hash = hash((self.re, self.im, self.rre, self.rim, self.s))
        return self._hash

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self.re, self.im, self.rre, self.rim

    def denominator(self) -> int:
        """Least common denominator of the four rational components."""
        den = 1
        for q in (self.re, self.im, self.rre, self.rim):
            den = den * q.denominator // math.gcd(den, q.denominator)
        return den

    def __complex__(self) -> complex:
        r = math.sqrt(self.s) if self.s else 0.0
        return complex(float(self.re) + float(self.rre) * r,
                       float(self.im) + float(self.rim) * r)

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        return format_scalar(self)


ZERO = Scalar._raw(_ZERO, _ZERO, _ZERO, _ZERO, None)
ONE = Scalar._raw(_ONE, _ZERO, _ZERO, _ZERO, None)
I = Scalar._raw(_ZERO, _ONE, _ZERO, _ZERO, None)


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x: Scalar) -> str:
    """Fixed-order text encoding, e.g. ``3/4+1/2i`` or ``1-1r2+1/3ir2``."""
    parts = []
    rad = f"r{x.s}" if x.s is not None else ""
    for q, suffix in ((x.re, ""), (x.im, "i"), (x.rre, rad), (x.rim, "i" + rad)):
        if not q:
            continue
        text = _fmt_q(q) + suffix
        if parts and not text.startswith("-"):
            text = "+" + text
        parts.append(text)
    return "".join(parts) if parts else "0"


_TERM = re.compile(r"([+-]?\d+(?:/\d+)?)(i?)(?:r(\d+))?")


def parse_scalar(text: str) -> Scalar:
    """Inverse of :func:`format_scalar`."""
    text = text.strip()
    if text == "0":
        return ZERO
    pos = 0
    comps = [_ZERO] * 4
    s = None
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad scalar encoding {text!r} at {pos}")
        q = Fraction(m.group(1))
        slot = (1 if m.group(2) else 0) + (2 if m.group(3) else 0)
        if m.group(3):
            rs = int(m.group(3))
            if s is not None and s != rs:
                raise FieldMismatch(text)
            s = rs
        comps[slot] += q
        pos = m.end()
    return Scalar(*comps, s=s)


def gaussian(re, im=0) -> Scalar:
    return Scalar(re, im)
