"""Exact scalar arithmetic over the Gaussian rationals Q(i).

All engine computations happen over Q or Q(i); there is no floating point
anywhere. Rational numbers are stdlib fractions (always reduced, positive
denominator); Gaussian rationals are implemented here.
"""

from __future__ import annotations

import re
from fractions import Fraction

Rational = Fraction


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational value: {x!r}")


class GaussianRational:
    """a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- helpers -----------------------------------------------------------

    @staticmethod
    def coerce(x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        raise TypeError(f"cannot interpret {x!r} as a Gaussian rational")

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_rational(self) -> bool:
        return not self.im

    def rational(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} has a nonzero imaginary part")
        return self.re

    # -- field operations --------------------------------------------------

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other):
        return GaussianRational.coerce(other) + (-self)

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussianRational":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * GaussianRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- parse / print round trip -------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.re:
            parts.append(str(self.re))
        if self.im:
            if self.im == 1:
                imag = "i"
            elif self.im == -1:
                imag = "-i"
            else:
                imag = f"{self.im}i"
            if parts and not imag.startswith("-"):
                parts.append("+" + imag)
            else:
                parts.append(imag)
        return "".join(parts)

    def __repr__(self):
        return f"GaussianRational({self})"


_TERM = re.compile(r"([+-]?)(\d+(?:/\d+)?)?(i)?")


def parse_gaussian(text: str) -> GaussianRational:
    """Inverse of str(): accepts e.g. '0', '-3/2', 'i', '1/2-1/2i'."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar literal")
    re_part = Fraction(0)
    im_part = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"bad scalar literal {text!r} at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            im_part += sign * mag
        else:
            re_part += sign * mag
        pos = m.end()
    return GaussianRational(re_part, im_part)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def half(x=1) -> GaussianRational:
    return GaussianRational(Fraction(x, 2))
