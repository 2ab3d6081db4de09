"""Exact arithmetic over Q(i, sqrt2), the field holding every state amplitude.

A value is stored as ``a + b*sqrt(2)`` with Gaussian-rational components
``a`` and ``b``.  Since sqrt(2) is irrational over Q(i), the pair (a, b) is
a unique representation and comparison against zero is exact, which is what
makes Gaussian elimination over these scalars decisive.

The text grammar used by state files and the command line writes sqrt(2) as
``s2``: for example ``1/2``, ``-2i``, ``i*s2``, ``-1/3+2i+(1+i)*s2``.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "GaussRational",
    "Scalar",
    "ParseError",
    "as_scalar",
    "scalar_parse",
    "scalar_format",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
]

_SQRT2_FLOAT = math.sqrt(2.0)


class ParseError(ValueError):
    """Malformed scalar text; ``position`` is the offset of the bad character."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


def _frac(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


class GaussRational:
    """A complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0) -> None:
        self.re = _frac(re)
        self.im = _frac(im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self) -> GaussRational:
        return GaussRational(-self.re, -self.im)

    def __add__(self, other) -> GaussRational:
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other) -> GaussRational:
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return GaussRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> GaussRational:
        return (-self) + other

    def __mul__(self, other) -> GaussRational:
        other = _as_gauss(other)
        if other is None:
            return NotImplemented
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> GaussRational:
        return GaussRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> GaussRational:
        n = self.norm_sq()
        if not n:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        return GaussRational(self.re / n, -self.im / n)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"GaussRational({self.re!r}, {self.im!r})"


def _as_gauss(value):
    if isinstance(value, GaussRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussRational(value)
    return None


class Scalar:
    """Element ``a + b*sqrt(2)`` of Q(i, sqrt2) with Gaussian-rational a, b.

    Values are immutable and all operations are pure, so scalars can be
    shared freely across threads.  Division is multiplication by the exact
    inverse; there is no floored or partial division anywhere.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0) -> None:
        ga = _as_gauss(a)
        gb = _as_gauss(b)
        if ga is None or gb is None:
            raise TypeError("Scalar components must be GaussRational, Fraction or int")
        self.a = ga
        self.b = gb

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __neg__(self) -> Scalar:
        return Scalar(-self.a, -self.b)

    def __add__(self, other) -> Scalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other) -> Scalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return Scalar(self.a - other.a, self.b - other.b)

    def __rsub__(self, other) -> Scalar:
        return (-self) + other

    def __mul__(self, other) -> Scalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        # (a1 + b1*s2)(a2 + b2*s2) = (a1*a2 + 2*b1*b2) + (a1*b2 + a2*b1)*s2
        return Scalar(
            self.a * other.a + self.b * other.b * 2,
            self.a * other.b + other.a * self.b,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> Scalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other) -> Scalar:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int) -> Scalar:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> Scalar:
        """Exact reciprocal: rationalize by (a - b*s2), then invert in Q(i)."""
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        # a^2 - 2 b^2 vanishes only at zero, since sqrt(2) is not in Q(i).
        denom = (self.a * self.a - self.b * self.b * 2).inverse()
        return Scalar(self.a * denom, -(self.b * denom))

    def __complex__(self) -> complex:
        return complex(self.a) + _SQRT2_FLOAT * complex(self.b)

    def __str__(self) -> str:
        return scalar_format(self)

    def __repr__(self) -> str:
        return f"Scalar({scalar_format(self)!r})"


def _coerce(value):
    if isinstance(value, Scalar):
        return value
    g = _as_gauss(value)
    if g is None:
        return None
    return Scalar(g)


def as_scalar(value) -> Scalar:
    """Coerce an int, Fraction, GaussRational or Scalar to a Scalar."""
    s = _coerce(value)
    if s is None:
        raise TypeError(f"cannot interpret {type(value).__name__} as a scalar")
    return s


class _Parser:
    """Recursive-descent parser for the scalar text grammar."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def fail(self, message: str):
        raise ParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, literal: str) -> None:
        self.skip_ws()
        if not self.text.startswith(literal, self.pos):
            self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def parse(self) -> Scalar:
        a = GaussRational()
        b = GaussRational()
        self.skip_ws()
        if not self.peek():
            self.fail("empty scalar")
        sign = self.read_sign(optional=True)
        while True:
            part, is_sqrt2 = self.read_atom()
            if sign < 0:
                part = -part
            if is_sqrt2:
                b = b + part
            else:
                a = a + part
            self.skip_ws()
            if not self.peek():
                break
            if self.peek() not in "+-":
                self.fail("expected '+' or '-'")
            sign = self.read_sign(optional=False)
        return Scalar(a, b)

    def read_sign(self, optional: bool) -> int:
        self.skip_ws()
        ch = self.peek()
        if ch == "+":
            self.pos += 1
            return 1
        if ch == "-":
            self.pos += 1
            return -1
        if optional:
            return 1
        self.fail("expected sign")

    def read_atom(self):
        """One summand: a Gaussian term, optionally tagged with ``*s2``."""
        self.skip_ws()
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            coeff = self.read_gauss()
            self.expect(")")
            self.expect("*")
            self.expect("s2")
            return coeff, True
        if ch == "s":
            self.expect("s2")
            return GaussRational(1), True
        term = self.read_term()
        self.skip_ws()
        if self.peek() == "*":
            self.pos += 1
            self.expect("s2")
            return term, True
        return term, False

    def read_gauss(self) -> GaussRational:
        total = GaussRational()
        sign = self.read_sign(optional=True)
        while True:
            term = self.read_term()
            total = total + (term if sign > 0 else -term)
            self.skip_ws()
            if self.peek() not in "+-":
                return total
            sign = self.read_sign(optional=False)

    def read_term(self) -> GaussRational:
        self.skip_ws()
        if self.peek() == "i":
            self.pos += 1
            return GaussRational(0, 1)
        num = self.read_int()
        value = Fraction(num)
        self.skip_ws()
        if self.peek() == "/":
            self.pos += 1
            den_pos = self.pos
            den = self.read_int()
            if den <= 0:
                self.pos = den_pos
                self.fail("denominator must be positive")
            value = Fraction(num, den)
        self.skip_ws()
        if self.peek() == "i":
            self.pos += 1
            return GaussRational(0, value)
        return GaussRational(value)

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.fail("expected a number")
        return int(self.text[start : self.pos])


def scalar_parse(text: str) -> Scalar:
    """Parse scalar text: sums of Gaussian terms, ``*s2`` marking sqrt(2) parts."""
    return _Parser(text).parse()


def _format_gauss(g: GaussRational) -> str:
    if not g:
        return "0"
    parts = []
    if g.re:
        parts.append(str(g.re))
    if g.im:
        if g.im == 1:
            imag = "i"
        elif g.im == -1:
            imag = "-i"
        else:
            imag = f"{g.im}i"
        if parts and not imag.startswith("-"):
            parts.append("+" + imag)
        else:
            parts.append(imag)
    return "".join(parts)


def scalar_format(value: Scalar) -> str:
    """Render a scalar in the text grammar; inverse of :func:`scalar_parse`."""
    if not value.b:
        return _format_gauss(value.a)
    single_term = not (value.b.re and value.b.im)
    if single_term:
        sqrt2_part = f"{_format_gauss(value.b)}*s2"
    else:
        sqrt2_part = f"({_format_gauss(value.b)})*s2"
    if not value.a:
        return sqrt2_part
    rational_part = _format_gauss(value.a)
    if sqrt2_part.startswith("-"):
        return rational_part + sqrt2_part
    return rational_part + "+" + sqrt2_part


ZERO = Scalar()
ONE = Scalar(1)
I = Scalar(GaussRational(0, 1))
SQRT2 = Scalar(0, 1)
