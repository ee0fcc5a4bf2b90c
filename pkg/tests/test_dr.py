"""Weight-deficit certificates and the boundary coefficient extraction."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from beauville_lab.dr import (AffineInt, ExclusionCertificate,
                              alpha_terms, boundary_substitution,
                              corollary_theta_push, default_twist_polynomial,
                              top_weight_boundary_relation)
from beauville_lab.poly import Poly
from beauville_lab.scalars import GaussianRational
from beauville_lab.taut import gen


small_fractions = st.fractions(min_value=Fraction(-20), max_value=Fraction(20),
                               max_denominator=4)


def test_affine_int_basics():
    aff = AffineInt(Fraction(1, 2), -1)
    assert aff.value_at(4) == Fraction(1)
    assert (aff + AffineInt(0, 1)).q == Fraction(0)
    assert (aff - AffineInt(Fraction(1, 2), 0)).p == Fraction(0)
    assert str(aff) == "1/2*g + -1"


@given(small_fractions, small_fractions)
def test_affine_positivity_matches_brute_force(p, q):
    # for |p| >= 1/4 and |q| <= 20 any sign change happens before g = 400
    aff = AffineInt(p, q)
    brute = all(aff.value_at(g) > 0 for g in range(2, 401))
    assert aff.is_positive_for_all_genus() == brute


def test_exclusion_certificate():
    assert ExclusionCertificate("x", AffineInt(0, 2), "").holds()
    assert not ExclusionCertificate("x", AffineInt(0, 0), "").holds()
    # positive at small genus but eventually negative does not certify
    assert not ExclusionCertificate("x", AffineInt(-1, 100), "").holds()


def test_default_twist_polynomial_frozen():
    f = default_twist_polynomial()
    assert f.coefficient("d", 4) == Poly.const(Fraction(-1, 48))
    assert f.coefficient("d", 2) == Poly.const(Fraction(1, 24))
    assert f.coefficient("d", 0) == Poly.const(Fraction(-1, 240))
    assert f.substitute("d", Poly.const(1)) == Poly.const(Fraction(1, 60))


def test_top_weight_relation_default():
    relation = top_weight_boundary_relation()
    assert relation.coefficient == Fraction(1, 48)
    assert relation.twist_quartic_coefficient == Fraction(-1, 48)
    assert relation.all_exclusions_hold()
    assert tuple(cert.family for cert in relation.certificates) == (
        "product-type", "binomial-subleading", "psi-decorated-boundary")


def test_top_weight_relation_custom_twist():
    d = Poly.var("d")
    relation = top_weight_boundary_relation(d ** 4)
    assert relation.coefficient == Fraction(-1)
    assert relation.twist_quartic_coefficient == Fraction(1)


def test_top_weight_relation_rejects_bad_twists():
    d, b = Poly.var("d"), Poly.var("b")
    with pytest.raises(ValueError, match="only d"):
        top_weight_boundary_relation(b * d ** 4)
    with pytest.raises(ValueError, match="rational"):
        top_weight_boundary_relation(d ** 4 * Poly.const(GaussianRational(0, 1)))


def test_alpha_terms():
    psi_sum = gen("psi1", locus="boundary") + gen("psi2", locus="boundary")
    assert alpha_terms(2) == psi_sum.scale(Fraction(1, 480))
    expected3 = (gen("theta", locus="boundary") * psi_sum).scale(Fraction(1, 480)) \
        - gen("xi2", 2, locus="boundary").scale(Fraction(1, 8960))
    assert alpha_terms(3) == expected3
    assert alpha_terms(4) is None
    assert alpha_terms(12) is None


def test_boundary_substitution_genus2_frozen():
    expr = boundary_substitution(2)
    assert expr.locus == "boundary"
    assert expr.coefficient_of(theta=1) == Poly.const(Fraction(1, 48))
    # psi coefficient: (1/48)*(1/2) from the shift plus 1/480 recorded
    assert expr.coefficient_of(psi1=1) == Poly.const(Fraction(1, 80))
    lead_only = boundary_substitution(2, include_alpha=False)
    assert lead_only.coefficient_of(psi1=1) == Poly.const(Fraction(1, 96))
    with pytest.raises(ValueError, match="at least 2"):
        boundary_substitution(1)


def test_corollary_theta_push():
    cor = corollary_theta_push()
    assert cor.coefficient == Fraction(1, 48)
    assert all(cert.holds() for cert in cor.certificates)
    assert cor.concrete_checks == ((2, True), (3, True), (4, True), (5, True))


def test_corollary_theta_push_custom_genera():
    cor = corollary_theta_push(concrete_genera=(2, 7, 9))
    assert [g for g, ok in cor.concrete_checks if ok] == [2, 7, 9]
