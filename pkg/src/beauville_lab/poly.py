"""Sparse multivariate polynomials over the Gaussian rationals.

A fixed global variable tuple keeps every polynomial in one flat
exponent-dict representation:

    cst : undetermined structure constant carried through operator identities
    N   : multiplication weight on an abelian fibration
    d   : edge decoration variable of boundary-term polynomials
    a   : ansatz coefficient of a kappa-class term
    b   : ansatz coefficient of a boundary-class term

Keys are exponent tuples, values are nonzero GaussianRational coefficients.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from .scalars import GaussianRational, Rational

VARS: Tuple[str, ...] = ("cst", "N", "d", "a", "b")
_NVARS = len(VARS)
_VAR_INDEX = {v: k for k, v in enumerate(VARS)}
_ZERO_EXP = (0,) * _NVARS

Monomial = Tuple[int, ...]


class Poly:
    """Polynomial in VARS with GaussianRational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, GaussianRational] | None = None):
        clean: Dict[Monomial, GaussianRational] = {}
        if terms:
            for exp, coeff in terms.items():
                c = GaussianRational.coerce(coeff)
                if len(exp) != _NVARS or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent tuple {exp!r}")
                if not c.is_zero():
                    clean[tuple(exp)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return Poly.const(x)

    @staticmethod
    def const(c) -> "Poly":
        c = GaussianRational.coerce(c)
        return Poly({_ZERO_EXP: c}) if not c.is_zero() else Poly()

    @staticmethod
    def var(name: str, power: int = 1) -> "Poly":
        exp = [0] * _NVARS
        exp[_VAR_INDEX[name]] = power
        return Poly({tuple(exp): GaussianRational(1)})

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self) -> GaussianRational:
        if self.is_zero():
            return GaussianRational(0)
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms[_ZERO_EXP]

    def degree(self, name: str | None = None) -> int:
        # degree -1 for the zero polynomial
        if not self.terms:
            return -1
        if name is None:
            return max(sum(exp) for exp in self.terms)
        idx = _VAR_INDEX[name]
        return max(exp[idx] for exp in self.terms)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        o = Poly.coerce(other)
        terms = dict(self.terms)
        for exp, coeff in o.terms.items():
            s = terms.get(exp, GaussianRational(0)) + coeff
            if s.is_zero():
                terms.pop(exp, None)
            else:
                terms[exp] = s
        return Poly(terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly({exp: -c for exp, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Poly.coerce(other))

    def __rsub__(self, other):
        return Poly.coerce(other) + (-self)

    def __mul__(self, other):
        o = Poly.coerce(other)
        terms: Dict[Monomial, GaussianRational] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(exp, GaussianRational(0)) + c1 * c2
                if s.is_zero():
                    terms.pop(exp, None)
                else:
                    terms[exp] = s
        return Poly(terms)

    __rmul__ = __mul__

    def scale(self, factor) -> "Poly":
        return self * Poly.coerce(factor)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            o = Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- coefficient access ----------------------------------------------------

    def coefficient(self, name: str, power: int) -> "Poly":
        """Coefficient of name**power, a polynomial in the other variables."""
        idx = _VAR_INDEX[name]
        terms = {}
        for exp, coeff in self.terms.items():
            if exp[idx] == power:
                reduced = list(exp)
                reduced[idx] = 0
                terms[tuple(reduced)] = coeff
        return Poly(terms)

    def substitute(self, name: str, value: "Poly") -> "Poly":
        """Replace a variable by a polynomial value."""
        idx = _VAR_INDEX[name]
        value = Poly.coerce(value)
        out = Poly()
        for exp, coeff in self.terms.items():
            reduced = list(exp)
            power = reduced[idx]
            reduced[idx] = 0
            term = Poly({tuple(reduced): coeff})
            if power:
                term = term * value**power
            out = out + term
        return out

    def evaluate(self, assignment: Dict[str, object]) -> "Poly":
        out = self
        for name, value in assignment.items():
            out = out.substitute(name, Poly.coerce(value))
        return out

    # -- printing ---------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exp in sorted(self.terms, reverse=True):
            coeff = self.terms[exp]
            mono = "*".join(
                f"{VARS[i]}^{e}" if e > 1 else VARS[i]
                for i, e in enumerate(exp)
                if e
            )
            cs = str(coeff)
            if ("+" in cs[1:]) or ("-" in cs[1:]):
                cs = f"({cs})"
            pieces.append(f"{cs}*{mono}" if mono and cs not in ("1", "-1")
                          else (mono if cs == "1" and mono
                                else (f"-{mono}" if cs == "-1" and mono else cs)))
        out = pieces[0]
        for p in pieces[1:]:
            out += ("+" + p) if not p.startswith("-") else p
        return out

    def __repr__(self):
        return f"Poly({self})"


def _fraction_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rational_roots(poly: Poly, name: str = "b") -> list[Rational]:
    """Exact rational roots of a univariate polynomial of degree <= 2.

    Certification for the quadratic case: a reduced discriminant n/d has a
    rational square root iff n >= 0 and n*d is a perfect integer square
    (gcd(n, d) = 1 forces n and d individually square).
    """
    for var in VARS:
        if var != name and poly.degree(var) > 0:
            raise ValueError(f"polynomial involves {var}, not univariate in {name}")
    coeffs = []
    for k in range(3):
        c = poly.coefficient(name, k).constant_value()
        if not c.is_rational():
            raise ValueError("coefficients must be rational")
        coeffs.append(c.rational())
    if poly.degree(name) > 2:
        raise ValueError("degree > 2 not supported")
    c0, c1, c2 = coeffs
    if c2 == 0:
        if c1 == 0:
            if c0 == 0:
                raise ValueError("zero polynomial has every rational as a root")
            return []
        return [-c0 / c1]
    disc = c1 * c1 - 4 * c2 * c0
    root = _fraction_sqrt(disc)
    if root is None:
        return []
    lo = (-c1 - root) / (2 * c2)
    hi = (-c1 + root) / (2 * c2)
    return sorted({lo, hi})


def discriminant_is_square(poly: Poly, name: str = "b") -> tuple[Fraction, bool]:
    """(discriminant, has rational square root) for a quadratic in name."""
    c0 = poly.coefficient(name, 0).constant_value().rational()
    c1 = poly.coefficient(name, 1).constant_value().rational()
    c2 = poly.coefficient(name, 2).constant_value().rational()
    if c2 == 0:
        raise ValueError("not a quadratic")
    disc = c1 * c1 - 4 * c2 * c0
    return disc, _fraction_sqrt(disc) is not None
