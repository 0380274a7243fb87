"""Expression grammar for polarized polynomials and analytic recipes.

::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "i" | "r<s>" | var | "~" var | "(" expr ")"
            | ("recip" | "exp") "(" expr ")"
    var    := "z1" ... "z<n-1>" | "w"        ("z<n>" is accepted for w)

Division is only allowed by a nonzero constant.  ``recip`` and ``exp`` build
non-polynomial functions; these may be multiplied and raised to powers but
not added.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from hermrank.jets import Exp, PolyRecipe, Product, Reciprocal, Recipe
from hermrank.poly import PolarizedPolynomial
from hermrank.scalar import Scalar, is_squarefree


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.message = message
        self.position = position
        super().__init__(message if position is None else f"{message} at position {position}")


def parse_field(text: str | None) -> int | None:
    """``"qi"`` gives ``None``; ``"qi-sqrt<s>"`` gives the square-free radicand ``s``."""
    if text is None or text == "qi":
        return None
    m = re.fullmatch(r"qi-sqrt(\d+)", text)
    if not m:
        raise ParseError(f"unknown field {text!r}; use 'qi' or 'qi-sqrt<s>'")
    s = int(m.group(1))
    if s < 2 or not is_squarefree(s):
        raise ParseError(f"radicand {s} must be a square-free integer >= 2")
    return s


def field_name(s: int | None) -> str:
    return "qi" if s is None else f"qi-sqrt{s}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(1):
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()~":
                raise ParseError(f"unexpected character {ch!r}", start)
            toks.append(_Tok("op", ch, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, n: int, radicand: int | None):
        if n < 1:
            raise ParseError("dimension must be at least 1")
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n
        self.s = radicand

    # token helpers
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.take()
        if t.text != text or t.kind != "op":
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)
        return t

    def const(self, c) -> PolarizedPolynomial:
        return PolarizedPolynomial.constant(self.n, c)

    # grammar
    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        v = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.text!r}", t.pos)
        return v

    def expr(self):
        v = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take()
            rhs = self.term()
            if not (isinstance(v, PolarizedPolynomial) and isinstance(rhs, PolarizedPolynomial)):
                raise ParseError("sums of non-polynomial functions are not supported", op.pos)
            v = v + rhs if op.text == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take()
            rhs = self.unary()
            if op.text == "/":
                if not isinstance(rhs, PolarizedPolynomial) or any(
                        sum(a) + sum(g) for a, g in rhs.terms):
                    raise ParseError("division is only allowed by a constant", op.pos)
                c = rhs.constant_term()
                if not c:
                    raise ParseError("division by zero", op.pos)
                rhs = self.const(c.inverse())
            v = _times(v, rhs)
        return v

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            v = self.unary()
            return v if t.text == "+" else _times(self.const(-1), v)
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            t = self.take()
            if t.kind != "int":
                raise ParseError("exponent must be a nonnegative integer", t.pos)
            k = int(t.text)
            if isinstance(base, PolarizedPolynomial):
                return base ** k
            return Product((base,) * k) if k else self.const(1)
        return base

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return self.const(int(t.text))
        if t.kind == "op" and t.text == "(":
            v = self.expr()
            self.expect(")")
            return v
        if t.kind == "op" and t.text == "~":
            v = self.take()
            if v.kind != "name":
                raise ParseError("'~' must be followed by a variable", v.pos)
            return PolarizedPolynomial.anti(self.n, self.variable(v))
        if t.kind == "name":
            name = t.text
            if name == "i":
                return self.const(Scalar.i())
            if name in ("recip", "exp"):
                self.expect("(")
                inner = self.expr()
                self.expect(")")
                rec = inner if not isinstance(inner, PolarizedPolynomial) else PolyRecipe(inner)
                if name == "recip":
                    if isinstance(inner, PolarizedPolynomial) and not inner:
                        raise ParseError("reciprocal of zero", t.pos)
                    return Reciprocal(rec)
                return Exp(rec)
            m = re.fullmatch(r"r(\d+)", name)
            if m:
                s = int(m.group(1))
                if self.s is None:
                    raise ParseError(f"radical {name} needs --field qi-sqrt{s}", t.pos)
                if s != self.s:
                    raise ParseError(f"radical {name} does not belong to field qi-sqrt{self.s}", t.pos)
                return self.const(Scalar.sqrt(s))
            return PolarizedPolynomial.hol(self.n, self.variable(t))
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)

    def variable(self, t: _Tok) -> int:
        name = t.text
        if name == "w":
            return self.n - 1
        m = re.fullmatch(r"z(\d+)", name)
        if m:
            k = int(m.group(1))
            if 1 <= k <= self.n - 1:
                return k - 1
            if k == self.n:
                return self.n - 1
        raise ParseError(f"unknown variable {name!r} for n={self.n}", t.pos)


def _times(a, b):
    if isinstance(a, PolarizedPolynomial) and isinstance(b, PolarizedPolynomial):
        return a * b
    fa = a.factors if isinstance(a, Product) else (a if not isinstance(a, PolarizedPolynomial) else PolyRecipe(a),)
    fb = b.factors if isinstance(b, Product) else (b if not isinstance(b, PolarizedPolynomial) else PolyRecipe(b),)
    return Product(tuple(fa) + tuple(fb))


def parse_poly(text: str, n: int, field: str | int | None = None) -> PolarizedPolynomial:
    s = field if isinstance(field, int) or field is None else parse_field(field)
    v = _Parser(text, n, s).parse()
    if not isinstance(v, PolarizedPolynomial):
        raise ParseError("expected a polynomial, found recip/exp")
    return v


def parse_recipe(text: str, n: int, field: str | int | None = None) -> Recipe:
    """Like :func:`parse_poly` but also accepts ``recip(...)`` and ``exp(...)``."""
    s = field if isinstance(field, int) or field is None else parse_field(field)
    v = _Parser(text, n, s).parse()
    return PolyRecipe(v) if isinstance(v, PolarizedPolynomial) else v


def recipe_to_text(recipe: Recipe) -> str:
    from hermrank.jets import Shifted, resolve

    if isinstance(recipe, Shifted):
        recipe = resolve(recipe)
    if isinstance(recipe, PolyRecipe):
        return recipe.poly.to_text()
    if isinstance(recipe, Reciprocal):
        return f"recip({recipe_to_text(recipe.inner)})"
    if isinstance(recipe, Exp):
        return f"exp({recipe_to_text(recipe.inner)})"
    if isinstance(recipe, Product):
        return "*".join(f"({recipe_to_text(f)})" for f in recipe.factors)
    raise TypeError(f"not a recipe: {recipe!r}")
