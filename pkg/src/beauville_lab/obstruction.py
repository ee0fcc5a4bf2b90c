"""Obstructions to generalized theta divisors on nodal Jacobian families.

A candidate extension Theta = theta + b*delta of the theta divisor across
the boundary is fed through exact pushforward pipelines.  Powers theta^k
with k <= g push directly along the g-dimensional fibration; powers with
k >= g+1 are first rewritten through the top-weight boundary relation and
pushed along the (g-1)-dimensional boundary fibration.  Each pipeline
reports the named geometric inputs it consumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, List, Optional, Tuple

from .dr import BoundaryRelation, alpha_terms, boundary_substitution, \
    top_weight_boundary_relation
from .errors import OutsideModelError
from .poly import Poly, discriminant_is_square, rational_roots
from .taut import GENS, TautExpr, abelian_push, boundary_pull, gen, \
    monomial_weight, open_restrict, weight_part

AXIOMS: Dict[str, str] = {
    "unit-relation": (
        "the g-fold self-intersection of theta pushes forward to g! times "
        "the fundamental class of the base"),
    "theta-power-vanishing": (
        "powers theta^k with k < g push forward to zero along the "
        "g-dimensional fibration"),
    "theta-xi-relation": (
        "a pair of xi2 factors trades against theta for -1/2 times the sum "
        "of the two marked-point psi classes"),
    "alpha2-input": (
        "the decorated boundary contribution in genus 3 is "
        "theta*(psi1+psi2)/480 - xi2^2/8960 in its surviving weight"),
    "alpha0-input": (
        "the decorated boundary contribution in genus 2 is (psi1+psi2)/480 "
        "in its surviving weight"),
    "boundary-self-intersection": (
        "on a family with at most one node the boundary divisor restricts "
        "to itself as minus the sum of the two branch psi classes"),
    "delta3-vanishing-g3": (
        "the third power of the boundary divisor class vanishes on the "
        "genus-3 base"),
    "delta2-mumford-g2": (
        "on the integral genus-2 base the square of the boundary divisor "
        "is -1/6 times the pushed stratum class R"),
    "psi-boundary-descent-g2": (
        "on the integral genus-2 base the boundary pushforward of psi1+psi2 "
        "is 1/12 times the pushed stratum class R"),
    "psi-sum-nonvanishing-M22": (
        "the boundary pushforward of psi1+psi2 is nonzero on the genus-3 "
        "base"),
    "bsz-psi-square-nonvanishing": (
        "the boundary pushforward of (psi1+psi2)^2 is nonzero on the base "
        "for genus at least 4"),
    "h3-M3-vanishing": (
        "the genus-3 base has no odd cohomology in degree 3, so the "
        "obstruction class is controlled by its boundary part"),
    "h2-span-theta-kappa": (
        "over smooth curves every divisor class on the family is a "
        "combination of theta, kappa1 and classes pulled back from the "
        "base"),
    "boundary-irreducibility": (
        "the boundary of the moduli of curves with at most one node is "
        "irreducible, so a single coefficient b governs the extension"),
    "kappa1-nonzero": (
        "kappa1 is nonzero on the base of the smooth-curve family"),
    "delta-nonzero": (
        "the boundary divisor class is nonzero on the base"),
    "r-int-nonzero": (
        "the pushed stratum class R is nonzero on the integral genus-2 "
        "base"),
    "z-identification": (
        "the two mixed point-times-section cycles on the fiber square are "
        "identified"),
    "relbv-axiom": (
        "the relative Beauville-Voisin expression on the fiber triple "
        "product vanishes"),
    "bv-absolute-relation": (
        "the absolute Beauville-Voisin relation: the small diagonal equals "
        "the sum of its distinguished-point corrections on the triple "
        "product"),
}


class AssumptionLedger:
    """Records which named geometric inputs a pipeline consumed."""

    def __init__(self):
        self._used: Dict[str, str] = {}

    def use(self, name: str) -> None:
        if name not in AXIOMS:
            raise KeyError(f"unknown assumption {name!r}")
        self._used[name] = AXIOMS[name]

    def names(self) -> List[str]:
        return sorted(self._used)

    def items(self) -> List[Tuple[str, str]]:
        return sorted(self._used.items())


@dataclass
class ObstructionResult:
    name: str
    conclusion: str
    assumptions: List[str]
    constant: Optional[Poly] = None
    base_class: Optional[str] = None
    discriminant: Optional[Fraction] = None
    discriminant_is_square: Optional[bool] = None
    rational_roots: List[Fraction] = field(default_factory=list)
    contradiction: Optional[Tuple[Fraction, Fraction]] = None
    theta_class: Optional[str] = None
    checks: List[Tuple[str, bool, str]] = field(default_factory=list)


def theta_delta_push(g: int, k: int, j: int, ledger: AssumptionLedger,
                     relation: Optional[BoundaryRelation] = None,
                     include_alpha: bool = True) -> TautExpr:
    """Pushforward of theta^k delta^j along the g-dimensional fibration.

    For k <= g the power pushes directly: g! delta^j at k = g and zero
    below.  For k >= g+1 the relation theta^(g+1) = (g+1)! times the pushed
    boundary substitution applies; the leftover theta^e delta^j pulls back
    to the boundary family as (theta + psi/2)^e (-psi1-psi2)^j and the
    result lives on the boundary base.
    """
    if g < 2 or k < 0 or j < 0:
        raise ValueError("need g >= 2 and nonnegative exponents")
    if k <= g:
        if k == g:
            ledger.use("unit-relation")
            out = TautExpr.const(factorial(g), "base")
        else:
            ledger.use("theta-power-vanishing")
            return TautExpr.zero("base")
        for _ in range(j):
            out = out * gen("delta", locus="base")
        return out
    e = k - g - 1
    inner = boundary_substitution(g, relation, include_alpha=include_alpha)
    if include_alpha and alpha_terms(g) is not None:
        ledger.use("alpha2-input" if g == 3 else "alpha0-input")
    psi_sum = gen("psi1", locus="boundary") + gen("psi2", locus="boundary")
    theta_b = gen("theta", locus="boundary") + psi_sum.scale(Fraction(1, 2))
    expr = inner * theta_b ** e * (-psi_sum) ** j
    xi_idx = GENS.index("xi2")
    if any(m[xi_idx] >= 2 and monomial_weight(m) == 2 * (g - 1)
           for m in expr.terms):
        ledger.use("theta-xi-relation")
    pushed = abelian_push(expr, g - 1)
    return pushed.scale(factorial(g + 1))


def _theta_candidate(b: Poly | None = None) -> TautExpr:
    coeff = Poly.var("b") if b is None else b
    return gen("theta") + gen("delta").scale(coeff)


def _push_theta_mixed_power(g: int, power: int, extra_theta: int,
                            ledger: AssumptionLedger) -> Tuple[TautExpr, TautExpr]:
    """Push theta^extra * (theta + b delta)^power, split by target locus.

    Returns (base part, boundary-base part); the boundary-base part still
    needs the genus-specific boundary descent applied by the caller.
    """
    integrand = gen("theta") ** extra_theta * _theta_candidate() ** power
    base_total = TautExpr.zero("base")
    boundary_total = TautExpr.zero("boundary-base")
    i_theta = GENS.index("theta")
    i_delta = GENS.index("delta")
    for mono, coeff in sorted(integrand.terms.items()):
        k, j = mono[i_theta], mono[i_delta]
        pushed = theta_delta_push(g, k, j, ledger)
        if pushed.locus == "base":
            base_total = base_total + pushed.scale(coeff)
        else:
            boundary_total = boundary_total + pushed.scale(coeff)
    return base_total, boundary_total


def _split_unit_and_psi(expr: TautExpr) -> Tuple[Poly, TautExpr]:
    """Split a boundary-base expression into its unit coefficient and rest."""
    unit_mono = (0,) * len(GENS)
    unit = expr.terms.get(unit_mono, Poly.const(0))
    rest = TautExpr({m: c for m, c in expr.terms.items() if m != unit_mono},
                    expr.locus)
    return unit, rest


def _psi_sum_multiple(expr: TautExpr) -> Poly:
    """The coefficient P with expr = P * (psi1 + psi2) on the boundary base."""
    if expr.is_zero():
        return Poly.const(0)
    p1 = tuple(1 if name == "psi1" else 0 for name in GENS)
    p2 = tuple(1 if name == "psi2" else 0 for name in GENS)
    if set(expr.terms) != {p1, p2} or expr.terms[p1] != expr.terms[p2]:
        raise OutsideModelError("expression is not a multiple of psi1 + psi2")
    return expr.terms[p1]


def genus3_obstruction() -> ObstructionResult:
    """Obstruction constant for extending the theta divisor in genus 3.

    Pushes theta * (theta + b delta)^4 along the 3-dimensional fibration;
    the result is a multiple of the pushed psi sum, and the multiple has no
    rational root in b.
    """
    g = 3
    ledger = AssumptionLedger()
    base_part, boundary_part = _push_theta_mixed_power(g, g + 1, 1, ledger)

    # base part: delta^2 restricts through the boundary as -(psi1 + psi2)
    i_delta = GENS.index("delta")
    converted = TautExpr.zero("boundary-base")
    psi_sum = (gen("psi1", locus="boundary-base")
               + gen("psi2", locus="boundary-base"))
    for mono, coeff in base_part.terms.items():
        j = mono[i_delta]
        if sum(mono) != j:
            raise OutsideModelError("unexpected base-class monomial")
        if j == 0:
            continue
        ledger.use("boundary-self-intersection")
        if j == 1:
            raise OutsideModelError("a bare delta cannot cancel in this pipeline")
        if j == 2:
            converted = converted + (-psi_sum).scale(coeff)
        else:
            ledger.use("delta3-vanishing-g3")
    total = boundary_part + converted
    constant = _psi_sum_multiple(total)
    ledger.use("psi-sum-nonvanishing-M22")
    ledger.use("h3-M3-vanishing")
    ledger.use("boundary-irreducibility")
    disc, is_sq = discriminant_is_square(constant, "b")
    roots = rational_roots(constant, "b")
    checks = [
        ("constant", constant == _expected_genus3_constant(),
         str(constant)),
        ("no-rational-root", not roots and not is_sq, f"disc={disc}"),
    ]
    return ObstructionResult(
        name="genus3-obstruction",
        conclusion=("no rational b extends the theta divisor: the pushed "
                    "obstruction class is a nonzero multiple of the psi sum "
                    "for every rational b"),
        assumptions=ledger.names(),
        constant=constant,
        base_class="iota_*(psi1 + psi2)",
        discriminant=disc,
        discriminant_is_square=is_sq,
        rational_roots=roots,
        checks=checks,
    )


def _expected_genus3_constant() -> Poly:
    b = Poly.var("b")
    return (Poly.const(Fraction(191, 224)) - b.scale(2)
            - (b * b).scale(36))


def _expected_genus2_constant() -> Poly:
    b = Poly.var("b")
    return (Poly.const(Fraction(11, 960)) - b.scale(Fraction(1, 32))
            - (b * b))


def genus2_obstruction() -> ObstructionResult:
    """Obstruction constant on the integral genus-2 locus.

    Pushes theta * (theta + b delta)^3; boundary-base psi terms descend to
    the stratum class R with factor 1/12 and the base delta^2 converts by
    the Mumford relation; the resulting multiple of R has no rational root.
    """
    g = 2
    ledger = AssumptionLedger()
    base_part, boundary_part = _push_theta_mixed_power(g, g + 1, 1, ledger)

    unit, rest = _split_unit_and_psi(boundary_part)
    if not unit.is_zero():
        raise OutsideModelError("unexpected unit term in the genus-2 pipeline")
    psi_mult = _psi_sum_multiple(rest)
    ledger.use("psi-boundary-descent-g2")
    r_coeff = psi_mult.scale(Fraction(1, 12))

    i_delta = GENS.index("delta")
    for mono, coeff in base_part.terms.items():
        j = mono[i_delta]
        if sum(mono) != j:
            raise OutsideModelError("unexpected base-class monomial")
        if j == 0:
            continue
        if j != 2:
            raise OutsideModelError("only delta^2 converts on this locus")
        ledger.use("delta2-mumford-g2")
        r_coeff = r_coeff + coeff.scale(Fraction(-1, 6))
    ledger.use("r-int-nonzero")
    ledger.use("boundary-irreducibility")
    disc, is_sq = discriminant_is_square(r_coeff, "b")
    roots = rational_roots(r_coeff, "b")
    checks = [
        ("constant", r_coeff == _expected_genus2_constant(), str(r_coeff)),
        ("no-rational-root", not roots and not is_sq, f"disc={disc}"),
    ]
    return ObstructionResult(
        name="genus2-obstruction",
        conclusion=("no rational b extends the theta divisor over integral "
                    "curves: the pushed obstruction class is a nonzero "
                    "multiple of the stratum class R for every rational b"),
        assumptions=ledger.names(),
        constant=r_coeff,
        base_class="R",
        discriminant=disc,
        discriminant_is_square=is_sq,
        rational_roots=roots,
        checks=checks,
    )


def single_node_theta() -> ObstructionResult:
    """Genus 2 with at most one node: the extension exists and is pinned.

    Pushing (theta + b delta)^3 gives (1/8 + 6b) times the boundary
    divisor, forcing b = -1/48.
    """
    g = 2
    ledger = AssumptionLedger()
    base_part, boundary_part = _push_theta_mixed_power(g, g + 1, 0, ledger)

    unit, rest = _split_unit_and_psi(boundary_part)
    if not rest.is_zero():
        raise OutsideModelError("unexpected boundary-base remainder")
    # iota_* of the unit is the boundary divisor class on the base
    delta_coeff = unit
    i_delta = GENS.index("delta")
    for mono, coeff in base_part.terms.items():
        j = mono[i_delta]
        if sum(mono) != j or j != 1:
            raise OutsideModelError("unexpected base-class monomial")
        delta_coeff = delta_coeff + coeff
    ledger.use("delta-nonzero")
    ledger.use("boundary-irreducibility")
    roots = rational_roots(delta_coeff, "b")
    solved = roots[0] if len(roots) == 1 else None
    checks = [
        ("delta-coefficient",
         delta_coeff == Poly.const(Fraction(1, 8)) + Poly.var("b").scale(6),
         str(delta_coeff)),
        ("unique-solution", solved == Fraction(-1, 48), f"b={solved}"),
    ]
    theta_class = "theta - (1/48)*delta" if solved == Fraction(-1, 48) else None
    return ObstructionResult(
        name="single-node-theta",
        conclusion=("a unique extension exists over curves with at most one "
                    "node"),
        assumptions=ledger.names(),
        constant=delta_coeff,
        base_class="delta",
        rational_roots=roots,
        theta_class=theta_class,
        checks=checks,
    )


def high_genus_obstruction(g: int) -> ObstructionResult:
    """Contradictory constraints on the extension coefficient for g >= 4.

    The boundary pullback of (theta + b delta)^(g+1) pushes to a nonzero
    multiple of (1/2 - b)^2, forcing b = 1/2; the direct pushforward of the
    same power forces 1/48 + b = 0.  The two values disagree.
    """
    if g < 4:
        raise ValueError("this obstruction needs genus at least 4")
    ledger = AssumptionLedger()

    # boundary constraint: weight-2(g-1) part of the pulled-back power
    pulled = boundary_pull(_theta_candidate() ** (g + 1))
    part = weight_part(pulled, 2 * (g - 1))
    pushed = abelian_push(part, g - 1)
    psi1 = tuple(2 if name == "psi1" else 0 for name in GENS)
    psi2 = tuple(2 if name == "psi2" else 0 for name in GENS)
    cross = tuple(1 if name in ("psi1", "psi2") else 0 for name in GENS)
    if set(pushed.terms) != {psi1, psi2, cross}:
        raise OutsideModelError("unexpected boundary pushforward support")
    square_coeff = pushed.terms[psi1]
    if (pushed.terms[psi2] != square_coeff
            or pushed.terms[cross] != square_coeff.scale(2)):
        raise OutsideModelError("pushforward is not a multiple of the psi-sum square")
    ledger.use("bsz-psi-square-nonvanishing")
    boundary_roots = rational_roots(square_coeff, "b")
    b_boundary = boundary_roots[0] if len(boundary_roots) == 1 else None

    # direct constraint: push (theta + b delta)^(g+1)/(g+1)!
    base_part, boundary_part = _push_theta_mixed_power(g, g + 1, 0, ledger)
    unit, rest = _split_unit_and_psi(boundary_part)
    if not rest.is_zero():
        raise OutsideModelError("unexpected boundary-base remainder")
    delta_coeff = unit.scale(Fraction(1, factorial(g + 1)))
    i_delta = GENS.index("delta")
    for mono, coeff in base_part.terms.items():
        j = mono[i_delta]
        if sum(mono) != j or j != 1:
            raise OutsideModelError("unexpected base-class monomial")
        delta_coeff = delta_coeff + coeff.scale(Fraction(1, factorial(g + 1)))
    ledger.use("delta-nonzero")
    ledger.use("boundary-irreducibility")
    direct_roots = rational_roots(delta_coeff, "b")
    b_direct = direct_roots[0] if len(direct_roots) == 1 else None

    contradiction = None
    if b_boundary is not None and b_direct is not None and b_boundary != b_direct:
        contradiction = (b_boundary, b_direct)
    checks = [
        ("boundary-value", b_boundary == Fraction(1, 2), f"b={b_boundary}"),
        ("direct-value", b_direct == Fraction(-1, 48), f"b={b_direct}"),
        ("contradiction", contradiction is not None,
         f"{b_boundary} vs {b_direct}"),
    ]
    return ObstructionResult(
        name=f"high-genus-obstruction-g{g}",
        conclusion=("no extension exists: the boundary constraint and the "
                    "direct pushforward pin incompatible values of b"),
        assumptions=ledger.names(),
        constant=delta_coeff,
        base_class="delta",
        contradiction=contradiction,
        checks=checks,
    )


def kappa_exclusion_check(g: int) -> ObstructionResult:
    """Over smooth curves no kappa1 correction is allowed.

    Pushing (theta + a kappa1)^(g+1) along the g-dimensional fibration
    leaves (g+1)! a kappa1, which must vanish.
    """
    if g < 2:
        raise ValueError("genus must be at least 2")
    ledger = AssumptionLedger()
    candidate = gen("theta") + gen("kappa1").scale(Poly.var("a"))
    expr = open_restrict(candidate ** (g + 1))
    part = weight_part(expr, 2 * g)
    pushed = abelian_push(part, g)
    kappa_mono = tuple(1 if name == "kappa1" else 0 for name in GENS)
    if set(pushed.terms) - {kappa_mono}:
        raise OutsideModelError("unexpected smooth-locus pushforward support")
    coeff = pushed.terms.get(kappa_mono, Poly.const(0))
    ledger.use("unit-relation")
    ledger.use("h2-span-theta-kappa")
    ledger.use("kappa1-nonzero")
    ledger.use("boundary-irreducibility")
    roots = rational_roots(coeff, "a")
    solved = roots[0] if len(roots) == 1 else None
    checks = [
        ("kappa-coefficient",
         coeff == Poly.var("a").scale(factorial(g + 1)), str(coeff)),
        ("forced-value", solved == Fraction(0), f"a={solved}"),
    ]
    return ObstructionResult(
        name=f"kappa-exclusion-g{g}",
        conclusion="over smooth curves the candidate divisor carries no "
                   "kappa1 correction",
        assumptions=ledger.names(),
        constant=coeff,
        base_class="kappa1",
        rational_roots=roots,
        checks=checks,
    )
