"""Tautological expressions, locus tags, and the abelian pushforward."""

from fractions import Fraction

import pytest

from beauville_lab.errors import OutsideModelError
from beauville_lab.poly import Poly
from beauville_lab.taut import (GENS, TautExpr, abelian_push, boundary_pull,
                                gen, monomial_weight, n_weight, open_restrict,
                                weight_part)


def test_construction_and_validation():
    with pytest.raises(ValueError, match="unknown locus"):
        TautExpr({}, "projective")
    with pytest.raises(ValueError, match="bad monomial"):
        TautExpr({(1, 0): Poly.const(1)})
    with pytest.raises(ValueError, match="bad monomial"):
        TautExpr({(-1, 0, 0, 0, 0, 0): Poly.const(1)})
    with pytest.raises(ValueError, match="unknown generator"):
        gen("lambda1")
    assert TautExpr({(1, 0, 0, 0, 0, 0): Poly.const(0)}).is_zero()
    assert TautExpr.zero("open").locus == "open"
    assert TautExpr.const(Fraction(1, 2)).coefficient_of() == Poly.const(Fraction(1, 2))


def test_immutability():
    expr = gen("theta")
    with pytest.raises(AttributeError):
        expr.locus = "open"


def test_ring_operations():
    theta, delta = gen("theta"), gen("delta")
    assert (theta + delta) - delta == theta
    assert (theta - theta).is_zero()
    assert theta * delta == delta * theta
    assert (theta + delta) ** 2 == theta ** 2 + 2 * theta * delta + delta ** 2
    assert theta.scale(Fraction(3, 2)) == Fraction(3, 2) * theta
    b = Poly.var("b")
    assert theta.scale(b).coefficient_of(theta=1) == b
    with pytest.raises(ValueError, match="exponent"):
        theta ** -1


def test_locus_mismatch_rejected():
    theta = gen("theta")
    other = gen("theta", locus="open")
    with pytest.raises(ValueError, match="locus mismatch"):
        theta + other
    with pytest.raises(ValueError, match="locus mismatch"):
        theta * other
    assert theta.with_locus("open") == other


def test_coefficient_of():
    expr = gen("theta", 2) + gen("psi1") * gen("xi2", 3)
    assert expr.coefficient_of(theta=2) == Poly.const(1)
    assert expr.coefficient_of(psi1=1, xi2=3) == Poly.const(1)
    assert expr.coefficient_of(delta=1).is_zero()
    with pytest.raises(ValueError, match="unknown generators"):
        expr.coefficient_of(tau=1)


def test_str_frozen():
    expr = gen("theta", 2) + gen("delta")
    assert str(expr) == "(1)*delta + (1)*theta^2 [total]"
    assert str(TautExpr.zero("base")) == "0 [base]"


def test_weights():
    mono = tuple(2 if name == "theta" else (1 if name == "xi2" else 0)
                 for name in GENS)
    assert monomial_weight(mono) == 5
    expr = gen("theta", 2) + gen("xi2", 2) + gen("kappa1")
    assert weight_part(expr, 4) == gen("theta", 2)
    assert weight_part(expr, 2) == gen("xi2", 2)
    assert weight_part(expr, 0) == gen("kappa1")
    weighted = n_weight(gen("theta") * gen("xi2"))
    assert weighted.coefficient_of(theta=1, xi2=1) == Poly.var("N") ** 3


def test_open_restrict():
    expr = gen("theta", 2) + gen("theta") * gen("delta")
    restricted = open_restrict(expr)
    assert restricted == gen("theta", 2).with_locus("open")
    with pytest.raises(ValueError, match="total family"):
        open_restrict(restricted)


def test_boundary_pull_frozen():
    psi_sum = gen("psi1", locus="boundary") + gen("psi2", locus="boundary")
    assert boundary_pull(gen("theta")) == \
        gen("theta", locus="boundary") + psi_sum.scale(Fraction(1, 2))
    assert boundary_pull(gen("delta")) == -psi_sum
    assert boundary_pull(gen("delta", 2)) == psi_sum ** 2
    assert boundary_pull(gen("kappa1")) == gen("kappa1", locus="boundary")
    with pytest.raises(ValueError, match="total family"):
        boundary_pull(gen("theta", locus="open"))


def test_boundary_pull_is_a_ring_map():
    x = gen("theta") + gen("delta").scale(Fraction(-1, 3))
    y = gen("theta") * gen("delta")
    assert boundary_pull(x * y) == boundary_pull(x) * boundary_pull(y)
    assert boundary_pull(x + y) == boundary_pull(x) + boundary_pull(y)


# -- abelian pushforward -----------------------------------------------------------


def test_push_of_the_top_theta_power():
    for n in (1, 2, 3, 5):
        pushed = abelian_push(gen("theta", n), n)
        assert pushed == TautExpr.const(Fraction(1) * _factorial(n), "base")


def _factorial(n):
    out = 1
    for k in range(2, n + 1):
        out *= k
    return out


def test_push_drops_off_weight_powers():
    assert abelian_push(gen("theta", 2), 3).is_zero()
    assert abelian_push(gen("theta", 4), 3).is_zero()
    assert abelian_push(gen("kappa1"), 2).is_zero()


def test_push_carries_weight_zero_remainders():
    expr = gen("theta", 2) * gen("delta", 3)
    pushed = abelian_push(expr, 2)
    assert pushed == gen("delta", 3, locus="base").scale(2)
    b = Poly.var("b")
    pushed_b = abelian_push(gen("theta", 3).scale(b), 3)
    assert pushed_b == TautExpr.const(b * Poly.const(6), "base")


def test_push_trades_xi_pairs_for_theta_psi():
    pushed = abelian_push(gen("theta") * gen("xi2", 2), 2)
    assert pushed == -(gen("psi1", locus="base") + gen("psi2", locus="base"))


def test_push_xi_without_theta_leaves_model():
    with pytest.raises(OutsideModelError, match="no theta"):
        abelian_push(gen("xi2", 2), 1)


def test_push_locus_routing():
    boundary_expr = gen("theta", 2, locus="boundary")
    assert abelian_push(boundary_expr, 2).locus == "boundary-base"
    with pytest.raises(ValueError, match="cannot push"):
        abelian_push(TautExpr.const(1, "base"), 2)
    with pytest.raises(ValueError, match="nonnegative"):
        abelian_push(gen("theta"), -1)
