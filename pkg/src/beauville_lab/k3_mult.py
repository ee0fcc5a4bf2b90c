"""Relative triple squares: multiplicativity of the decomposition and the
absolute pushforward of the relative Beauville-Voisin expression.

Triple cycles on S x_P1 S x_P1 S are spanned by
  - point monomials (x1, x2, x3) in {one, s, c}^3 times an optional common
    fiber class F3 (all three slot pullbacks of f agree),
  - partial diagonals dg(j,k) decorated on the remaining slot,
  - the small diagonal sm.

Normal-form identifications: F3^2 = 0; c and F3 in one slot vanish; s_i * F3
folds to c_i; two c slots vanish (pulled back from the pair model); the mixed
forms c_i s_j and s_i c_j are identified (z-identification, flagged).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Set, Tuple

from .errors import OutsideModelError
from .k3 import (REP, RelCycle, _bv_mul_labels, _diag_push_internal, bv,
                 bv_theta, pair_to_rel, rel, rel_mul, sl2_cycles)

TriKey = Tuple
TriCycle = Dict[TriKey, Fraction]
AbsKey = Tuple
AbsCycle = Dict[AbsKey, Fraction]

PAIRS = ((1, 2), (1, 3), (2, 3))


def _other_slot(j: int, k: int) -> int:
    return 6 - j - k


def _add(acc: Dict, key, coeff: Fraction) -> None:
    s = acc.get(key, Fraction(0)) + coeff
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


def _norm_pt(slots: List[str], fdeg: int, flags: Set[str]) -> Tuple[TriKey, Fraction] | None:
    out = []
    for x in slots:
        if x == "f":
            fdeg += 1
            out.append("one")
        else:
            out.append(x)
    if fdeg >= 2:
        return None
    if fdeg == 1:
        if "c" in out:
            return None
        s_slots = [i for i, x in enumerate(out) if x == "s"]
        if s_slots:
            if len(s_slots) > 1:
                flags.add("z-identification")
            out[s_slots[0]] = "c"
            fdeg = 0
    if sum(1 for x in out if x == "c") >= 2:
        return None
    # z-identification canonical form: c before s among mixed slots
    cs = [i for i, x in enumerate(out) if x in ("s", "c")]
    if len(cs) == 2 and out[cs[0]] == "s" and out[cs[1]] == "c":
        flags.add("z-identification")
        out[cs[0]], out[cs[1]] = "c", "s"
    return ("pt", tuple(out), fdeg), Fraction(1)


def tri_pt(x1: str = "one", x2: str = "one", x3: str = "one",
           fdeg: int = 0, coeff=1, flags: Set[str] | None = None) -> TriCycle:
    flags = set() if flags is None else flags
    normed = _norm_pt([x1, x2, x3], fdeg, flags)
    if normed is None:
        return {}
    key, scale = normed
    return {key: Fraction(coeff) * scale}


def tri_dg(j: int, k: int, dec: str = "one", coeff=1) -> TriCycle:
    if (j, k) not in PAIRS:
        raise ValueError("slots must be one of (1,2), (1,3), (2,3)")
    if dec not in ("one", "s", "c"):
        raise ValueError(f"unsupported diagonal decoration {dec}")
    return {("dg", (j, k), dec): Fraction(coeff)}


def tri_sm(coeff=1) -> TriCycle:
    return {("sm",): Fraction(coeff)}


def tri_add(x: TriCycle, y: TriCycle, scale=1) -> TriCycle:
    out = dict(x)
    for key, c in y.items():
        _add(out, key, Fraction(scale) * c)
    return out


def tri_scale(x: TriCycle, scale) -> TriCycle:
    return {k: Fraction(scale) * c for k, c in x.items() if Fraction(scale) * c}


def tri_from_pair(pair: RelCycle, slots: Tuple[int, int],
                  flags: Set[str]) -> TriCycle:
    """Pullback of a pair cycle through the projection onto two slots."""
    j, k = slots
    if (j, k) not in PAIRS:
        raise ValueError("slots must be increasing and within 1..3")
    out: TriCycle = {}
    place = {1: None, 2: None, 3: None}
    for label, coeff in pair.items():
        if label == "delta":
            for key, c in tri_dg(j, k).items():
                _add(out, key, coeff * c)
            continue
        a, b = REP[label]
        assign = dict.fromkeys((1, 2, 3), "one")
        assign[j], assign[k] = a, b
        for key, c in tri_pt(assign[1], assign[2], assign[3], flags=flags).items():
            _add(out, key, coeff * c)
    return out


def _mul_pt_pt(k1: TriKey, k2: TriKey, flags: Set[str]) -> TriCycle:
    (_, s1, f1), (_, s2, f2) = k1, k2
    out: TriCycle = {}
    combos: List[Tuple[List[str], Fraction]] = [([], Fraction(1))]
    for a, b in zip(s1, s2):
        new_combos = []
        for slots, coeff in combos:
            prod = _bv_mul_labels(a, b)
            for lab, cl in prod.items():
                new_combos.append((slots + [lab], coeff * cl))
        combos = new_combos
    for slots, coeff in combos:
        for key, c in tri_pt(*slots, fdeg=f1 + f2, flags=flags).items():
            _add(out, key, coeff * c)
    return out


def _mul_pt_dg(pt_key: TriKey, dg_key: TriKey, flags: Set[str]) -> TriCycle:
    _, slots, fdeg = pt_key
    _, (j, k), dec = dg_key
    i = _other_slot(j, k)
    # slot-i parts multiply the diagonal decoration
    dec_prod = _bv_mul_labels(dec, slots[i - 1])
    if not dec_prod:
        return {}
    # slots j, k (and the common fiber power) pull through the pair diagonal
    pair_part: RelCycle = rel("delta")
    if slots[j - 1] != "one":
        pair_part = rel_mul(pair_part, pair_to_rel(bv(slots[j - 1]), bv("one")))
    if slots[k - 1] != "one":
        pair_part = rel_mul(pair_part, pair_to_rel(bv("one"), bv(slots[k - 1])))
    for _ in range(fdeg):
        pair_part = rel_mul(pair_part, rel("F"))
    out: TriCycle = {}
    for dec_lab, dec_coeff in dec_prod.items():
        base = tri_from_pair(pair_part, (j, k), flags)
        for key, c in base.items():
            if key[0] == "dg":
                new_key = ("dg", key[1], None)
                merged = _bv_mul_labels(key[2], dec_lab)
                for lab2, c2 in merged.items():
                    if lab2 == "f":
                        raise OutsideModelError("fiber decoration left on a diagonal")
                    _add(out, ("dg", key[1], lab2), dec_coeff * c * c2)
            else:
                _, pslots, pf = key
                new_slots = list(pslots)
                extra = _bv_mul_labels(new_slots[i - 1], dec_lab)
                for lab2, c2 in extra.items():
                    replaced = list(new_slots)
                    replaced[i - 1] = lab2
                    for key2, c3 in tri_pt(*replaced, fdeg=pf, flags=flags).items():
                        _add(out, key2, dec_coeff * c * c2 * c3)
    return out


def tri_mul(x: TriCycle, y: TriCycle, flags: Set[str]) -> TriCycle:
    out: TriCycle = {}
    for k1, c1 in x.items():
        for k2, c2 in y.items():
            coeff = c1 * c2
            kinds = (k1[0], k2[0])
            if kinds == ("pt", "pt"):
                part = _mul_pt_pt(k1, k2, flags)
            elif kinds == ("pt", "dg"):
                part = _mul_pt_dg(k1, k2, flags)
            elif kinds == ("dg", "pt"):
                part = _mul_pt_dg(k2, k1, flags)
            elif kinds == ("dg", "dg"):
                if k1[1] == k2[1]:
                    raise OutsideModelError("square of a partial diagonal leaves the model")
                if k1[2] != "one" or k2[2] != "one":
                    raise OutsideModelError("product of decorated partial diagonals")
                part = tri_sm()
            else:
                raise OutsideModelError(f"product {kinds} leaves the model")
            for key, c in part.items():
                _add(out, key, coeff * c)
    return out


# -- the multiplicativity identity -------------------------------------------------------


def small_diagonal_compose_product(u: RelCycle, v: RelCycle,
                                   flags: Set[str]) -> TriCycle:
    """[small diagonal] o (u x v) = q13-pull of u times q23-pull of v."""
    return tri_mul(tri_from_pair(u, (1, 3), flags), tri_from_pair(v, (2, 3), flags), flags)


def weight_compose_small_diagonal(h_pair: RelCycle, flags: Set[str]) -> TriCycle:
    """h o [small diagonal]: a tensor term a (x) b becomes
    q12-pull of the pair-diagonal pushforward of a, times b in slot 3."""
    out: TriCycle = {}
    for label, coeff in h_pair.items():
        if label == "delta":
            for key, c in tri_sm().items():
                _add(out, key, coeff * c)
            continue
        a, b = REP[label]
        diag = tri_from_pair(_diag_push_internal(bv(a)), (1, 2), flags)
        part = tri_mul(diag, tri_pt("one", "one", b, flags=flags), flags)
        for key, c in part.items():
            _add(out, key, coeff * c)
    return out


def relbv_expression(flags: Set[str] | None = None) -> TriCycle:
    """[sm] - sum_i q_i(s).q_jk(diag) + sum_{i<j} q_i(s).q_j(s)."""
    flags = set() if flags is None else flags
    out = tri_sm()
    for (j, k) in PAIRS:
        i = _other_slot(j, k)
        dec = tri_mul(tri_pt(**{f"x{i}": "s"}, flags=flags), tri_dg(j, k), flags)
        out = tri_add(out, dec, -1)
    for (i, j) in PAIRS:
        slots = {f"x{i}": "s", f"x{j}": "s"}
        out = tri_add(out, tri_pt(**slots, flags=flags))
    return out


def multiplicativity_difference() -> Tuple[TriCycle, Fraction, TriCycle, List[str]]:
    """LHS - RHS of the multiplicativity identity for the weight operator.

    Returns (difference, lam, residual, flags): the difference of
    [sm] o (h x delta + delta x h + delta x delta) and h o [sm], the multiple
    lam of the relative Beauville-Voisin expression it equals, and the
    residual after subtracting lam times that expression (zero on success).
    """
    flags: Set[str] = set()
    _, _, h0 = sl2_cycles()
    delta = rel("delta")
    lhs = small_diagonal_compose_product(h0, delta, flags)
    lhs = tri_add(lhs, small_diagonal_compose_product(delta, h0, flags))
    lhs = tri_add(lhs, small_diagonal_compose_product(delta, delta, flags))

    # h0 as difference of slot pullbacks of Theta; also check the s-only route
    theta = bv_theta()
    h_theta: RelCycle = {}
    for lab, c in pair_to_rel(bv("one"), theta).items():
        _add(h_theta, lab, c)
    for lab, c in pair_to_rel(theta, bv("one")).items():
        _add(h_theta, lab, -c)
    rhs = weight_compose_small_diagonal(h_theta, flags)
    rhs_plain = weight_compose_small_diagonal(h0, flags)
    if rhs != rhs_plain:
        raise AssertionError("weight-operator route dependence in h o [sm]")

    diff = tri_add(lhs, rhs, -1)
    relbv = relbv_expression(flags)
    lam = diff.get(("sm",), Fraction(0))
    residual = tri_add(diff, relbv, -lam)
    return diff, lam, residual, sorted(flags)


# -- absolute pushforward -----------------------------------------------------------------


def abs_pair_push(pair: RelCycle) -> AbsCycle:
    """Pushforward of a pair cycle to the absolute product.

    The fundamental class pushes to f (x) one + one (x) f; a point monomial
    with presentation (a, b) pushes to (a.f) (x) b + a (x) (b.f); the relative
    diagonal pushes to the absolute diagonal symbol.
    """
    out: AbsCycle = {}
    for label, coeff in pair.items():
        if label == "delta":
            _add(out, ("D",), coeff)
            continue
        a, b = REP[label]
        for af, ca in _bv_mul_labels(a, "f").items():
            _add(out, ("t", (af, b)), coeff * ca)
        for bf, cb in _bv_mul_labels(b, "f").items():
            _add(out, ("t", (a, bf)), coeff * cb)
    return out


def _abs_pt_push(slots: Tuple[str, str, str], fdeg: int) -> AbsCycle:
    out: AbsCycle = {}
    if fdeg == 0:
        inserts = [(1, 2), (1, 3), (2, 3)]
    else:
        inserts = [(1, 2, 3)]
    for where in inserts:
        combos: List[Tuple[List[str], Fraction]] = [([], Fraction(1))]
        for pos, x in enumerate(slots, start=1):
            new_combos = []
            for built, coeff in combos:
                prod = _bv_mul_labels(x, "f") if pos in where else {x: Fraction(1)}
                for lab, cl in prod.items():
                    new_combos.append((built + [lab], coeff * cl))
            combos = new_combos
        for built, coeff in combos:
            _add(out, ("t", tuple(built)), coeff)
    return out


def abs_tri_push(tri: TriCycle) -> AbsCycle:
    """Pushforward of a triple cycle to the absolute triple product.

    The fundamental class pushes to the sum of the three fiber-square
    conditions; a partial diagonal dg(j,k) pushes to f_i times the absolute
    diagonal in slots (j,k) plus the diagonal pushforward of f spread over
    slots (j,k); the small diagonal pushes to the absolute small-diagonal
    symbol.
    """
    out: AbsCycle = {}
    for key, coeff in tri.items():
        if key[0] == "pt":
            for k2, c2 in _abs_pt_push(key[1], key[2]).items():
                _add(out, k2, coeff * c2)
        elif key[0] == "dg":
            _, (j, k), dec = key
            i = _other_slot(j, k)
            for lab, cl in _bv_mul_labels(dec, "f").items():
                _add(out, ("D", (j, k), lab), coeff * cl)
            for cpos, fpos in ((j, k), (k, j)):
                slots = dict.fromkeys((1, 2, 3), "one")
                slots[cpos], slots[fpos], slots[i] = "c", "f", dec
                assembled = (slots[1], slots[2], slots[3])
                _add(out, ("t", assembled), coeff)
        elif key[0] == "sm":
            _add(out, ("SM",), coeff)
        else:
            raise OutsideModelError(f"cannot push {key}")
    return out


def bv_absolute_expression() -> AbsCycle:
    """[absolute small diagonal] - sum_i c_i . D_jk + sum_{i<j} c_i c_j."""
    out: AbsCycle = {("SM",): Fraction(1)}
    for (j, k) in PAIRS:
        _add(out, ("D", (j, k), "c"), Fraction(-1))
    for (i, j) in PAIRS:
        slots = dict.fromkeys((1, 2, 3), "one")
        slots[i] = slots[j] = "c"
        _add(out, ("t", (slots[1], slots[2], slots[3])), Fraction(1))
    return out
