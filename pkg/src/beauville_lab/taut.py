"""Tautological expressions on compactified Jacobian families.

Monomials in theta, psi1, psi2, xi2, kappa1, delta with polynomial
coefficients in the formal variables a, b.  Each expression carries a locus
tag recording which space it lives on:

  total          the compactified family over the base
  open           restriction over smooth curves (delta = 0)
  boundary       pullback to the boundary family (theta and delta rewritten)
  base           pushforward to the base of the family
  boundary-base  pushforward to the boundary divisor of the base

theta has multiplication-by-N weight 2 and xi2 weight 1; all other
generators have weight 0.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Tuple

from .errors import OutsideModelError
from .poly import Poly
from .scalars import GaussianRational

GENS = ("theta", "psi1", "psi2", "xi2", "kappa1", "delta")
WEIGHTS = {"theta": 2, "xi2": 1}
LOCI = ("total", "open", "boundary", "base", "boundary-base")

Monomial = Tuple[int, int, int, int, int, int]


class TautExpr:
    """Sparse polynomial in the tautological generators with a locus tag."""

    __slots__ = ("terms", "locus")

    def __init__(self, terms: Dict[Monomial, Poly] | None = None,
                 locus: str = "total"):
        if locus not in LOCI:
            raise ValueError(f"unknown locus {locus!r}")
        clean: Dict[Monomial, Poly] = {}
        for mono, coeff in (terms or {}).items():
            if len(mono) != len(GENS) or any(e < 0 for e in mono):
                raise ValueError(f"bad monomial {mono!r}")
            coeff = Poly.coerce(coeff)
            if not coeff.is_zero():
                clean[tuple(mono)] = coeff
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "locus", locus)

    def __setattr__(self, name, value):
        raise AttributeError("TautExpr is immutable")

    @staticmethod
    def generator(name: str, power: int = 1, locus: str = "total") -> "TautExpr":
        if name not in GENS:
            raise ValueError(f"unknown generator {name!r}")
        mono = [0] * len(GENS)
        mono[GENS.index(name)] = power
        return TautExpr({tuple(mono): Poly.const(1)}, locus)

    @staticmethod
    def const(value, locus: str = "total") -> "TautExpr":
        return TautExpr({(0,) * len(GENS): Poly.coerce(value)}, locus)

    @staticmethod
    def zero(locus: str = "total") -> "TautExpr":
        return TautExpr({}, locus)

    def is_zero(self) -> bool:
        return not self.terms

    def _check_locus(self, other: "TautExpr") -> None:
        if self.locus != other.locus:
            raise ValueError(
                f"locus mismatch: {self.locus} vs {other.locus}")

    def __add__(self, other: "TautExpr") -> "TautExpr":
        self._check_locus(other)
        terms = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = terms.get(mono, Poly.const(0)) + coeff
            if acc.is_zero():
                terms.pop(mono, None)
            else:
                terms[mono] = acc
        return TautExpr(terms, self.locus)

    def __neg__(self) -> "TautExpr":
        return TautExpr({m: -c for m, c in self.terms.items()}, self.locus)

    def __sub__(self, other: "TautExpr") -> "TautExpr":
        return self + (-other)

    def __mul__(self, other) -> "TautExpr":
        if not isinstance(other, TautExpr):
            other = TautExpr.const(other, self.locus)
        self._check_locus(other)
        terms: Dict[Monomial, Poly] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                acc = terms.get(mono, Poly.const(0)) + c1 * c2
                if acc.is_zero():
                    terms.pop(mono, None)
                else:
                    terms[mono] = acc
        return TautExpr(terms, self.locus)

    def __rmul__(self, other) -> "TautExpr":
        return self * other

    def __pow__(self, exponent: int) -> "TautExpr":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = TautExpr.const(1, self.locus)
        base = self
        n = exponent
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, value) -> "TautExpr":
        return TautExpr({m: c * Poly.coerce(value) for m, c in self.terms.items()},
                        self.locus)

    def with_locus(self, locus: str) -> "TautExpr":
        return TautExpr(dict(self.terms), locus)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TautExpr) and self.locus == other.locus
                and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.locus, frozenset(self.terms.items())))

    def coefficient_of(self, **powers: int) -> Poly:
        mono = tuple(powers.get(name, 0) for name in GENS)
        unknown = set(powers) - set(GENS)
        if unknown:
            raise ValueError(f"unknown generators {sorted(unknown)}")
        return self.terms.get(mono, Poly.const(0))

    def __str__(self) -> str:
        if not self.terms:
            return f"0 [{self.locus}]"
        parts = []
        for mono in sorted(self.terms):
            factors = []
            for name, e in zip(GENS, mono):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors) if factors else "1"
            parts.append(f"({self.terms[mono]})*{body}")
        return " + ".join(parts) + f" [{self.locus}]"

    def __repr__(self) -> str:
        return f"TautExpr({self})"


def gen(name: str, power: int = 1, locus: str = "total") -> TautExpr:
    return TautExpr.generator(name, power, locus)


def monomial_weight(mono: Monomial) -> int:
    return sum(WEIGHTS.get(name, 0) * e for name, e in zip(GENS, mono))


def n_weight(expr: TautExpr) -> TautExpr:
    """Scale each monomial by N to its multiplication-by-N weight."""
    n_var = Poly.var("N")
    terms = {}
    for mono, coeff in expr.terms.items():
        terms[mono] = coeff * n_var ** monomial_weight(mono)
    return TautExpr(terms, expr.locus)


def weight_part(expr: TautExpr, weight: int) -> TautExpr:
    return TautExpr({m: c for m, c in expr.terms.items()
                     if monomial_weight(m) == weight}, expr.locus)


def open_restrict(expr: TautExpr) -> TautExpr:
    """Restrict over the smooth locus: delta pulls back to zero."""
    if expr.locus != "total":
        raise ValueError("open restriction starts from the total family")
    idx = GENS.index("delta")
    terms = {m: c for m, c in expr.terms.items() if m[idx] == 0}
    return TautExpr(terms, "open")


def boundary_pull(expr: TautExpr) -> TautExpr:
    """Pull back to the boundary family: theta becomes theta plus half the
    psi sum and delta becomes minus the psi sum (self-intersection)."""
    if expr.locus != "total":
        raise ValueError("boundary pullback starts from the total family")
    psi_sum = gen("psi1", locus="boundary") + gen("psi2", locus="boundary")
    theta_b = gen("theta", locus="boundary") + psi_sum.scale(Fraction(1, 2))
    delta_b = -psi_sum
    images = {
        "theta": theta_b,
        "psi1": gen("psi1", locus="boundary"),
        "psi2": gen("psi2", locus="boundary"),
        "xi2": gen("xi2", locus="boundary"),
        "kappa1": gen("kappa1", locus="boundary"),
        "delta": delta_b,
    }
    out = TautExpr.zero("boundary")
    for mono, coeff in expr.terms.items():
        part = TautExpr.const(coeff, "boundary")
        for name, e in zip(GENS, mono):
            for _ in range(e):
                part = part * images[name]
        out = out + part
    return out


def abelian_push(expr: TautExpr, n: int) -> TautExpr:
    """Pushforward along an n-dimensional abelian fibration.

    Only the monomials of multiplication-by-N weight exactly 2n survive.
    Surviving pairs of xi2 factors trade for theta times the psi sum with a
    factor -1/2; a terminal theta^n pushes to n! times the weight-zero
    remainder.  Excess xi2 factors that cannot pair against theta leave the
    model.
    """
    if n < 0:
        raise ValueError("fiber dimension must be nonnegative")
    if expr.locus not in ("total", "open", "boundary"):
        raise ValueError(f"cannot push forward from locus {expr.locus!r}")
    target = "boundary-base" if expr.locus == "boundary" else "base"
    i_theta = GENS.index("theta")
    i_psi1 = GENS.index("psi1")
    i_psi2 = GENS.index("psi2")
    i_xi = GENS.index("xi2")

    out: Dict[Monomial, Poly] = {}
    stack = [(mono, coeff) for mono, coeff in expr.terms.items()]
    while stack:
        mono, coeff = stack.pop()
        if monomial_weight(mono) != 2 * n:
            continue
        k, e = mono[i_theta], mono[i_xi]
        if e >= 2:
            if k == 0:
                raise OutsideModelError(
                    "xi2 power with no theta to trade against")
            for psi_idx in (i_psi1, i_psi2):
                new = list(mono)
                new[i_xi] -= 2
                new[i_theta] += 1
                new[psi_idx] += 1
                stack.append((tuple(new), coeff * Poly.coerce(Fraction(-1, 2))))
            continue
        if e == 1:
            raise OutsideModelError(
                "odd xi2 power at even weight leaves the model")
        if k != n:
            raise OutsideModelError(
                f"weight bookkeeping failed for monomial {mono}")
        new = list(mono)
        new[i_theta] = 0
        key = tuple(new)
        acc = out.get(key, Poly.const(0)) + coeff * Poly.const(factorial(n))
        if acc.is_zero():
            out.pop(key, None)
        else:
            out[key] = acc
    return TautExpr(out, target)
