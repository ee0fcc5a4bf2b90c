"""Cycle model for an elliptic K3 surface and its relative square.

Absolute classes live in the span of
    one = [S], s (a section), f (a fiber), c (the distinguished point class),
with s*s = -2c, s*f = c, f*f = 0 and c annihilating positive-codimension
classes; Theta := s + f is isotropic.

Relative cycles on S x_P1 S are spanned by
    one, p1s, p2s, F, delta, s12, p1c, p2c, z
of relative dimensions 3,2,2,2,2,1,1,1,0, where F is the common fiber-square
class (p1 and p2 pullbacks of f agree), s12 = p1s.p2s, p1c = p1-pullback of c
(equal to p1s.F), and z = p1c.p2s (identified with p1s.p2c).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from .errors import OutsideModelError

BvClass = Dict[str, Fraction]
RelCycle = Dict[str, Fraction]

BV_LABELS = ("one", "s", "f", "c")
BV_CODIM = {"one": 0, "s": 1, "f": 1, "c": 2}

REL_LABELS = ("one", "p1s", "p2s", "F", "delta", "s12", "p1c", "p2c", "z")
REL_DIM = {"one": 3, "p1s": 2, "p2s": 2, "F": 2, "delta": 2,
           "s12": 1, "p1c": 1, "p2c": 1, "z": 0}


def _clean(d: Dict[str, Fraction]) -> Dict[str, Fraction]:
    return {k: v for k, v in d.items() if v}


def _add_into(acc: Dict[str, Fraction], label: str, coeff: Fraction) -> None:
    s = acc.get(label, Fraction(0)) + coeff
    if s:
        acc[label] = s
    else:
        acc.pop(label, None)


def bv(label: str, coeff=1) -> BvClass:
    if label not in BV_LABELS:
        raise KeyError(label)
    return {label: Fraction(coeff)}


def bv_theta() -> BvClass:
    return {"s": Fraction(1), "f": Fraction(1)}


_BV_MUL: Dict[Tuple[str, str], Dict[str, Fraction]] = {
    ("s", "s"): {"c": Fraction(-2)},
    ("s", "f"): {"c": Fraction(1)},
    ("s", "c"): {},
    ("f", "f"): {},
    ("f", "c"): {},
    ("c", "c"): {},
}


def _bv_mul_labels(a: str, b: str) -> Dict[str, Fraction]:
    if a == "one":
        return {b: Fraction(1)}
    if b == "one":
        return {a: Fraction(1)}
    key = (a, b) if (a, b) in _BV_MUL else (b, a)
    return dict(_BV_MUL[key])


def bv_mul(x: BvClass, y: BvClass) -> BvClass:
    out: Dict[str, Fraction] = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for lab, cl in _bv_mul_labels(a, b).items():
                _add_into(out, lab, ca * cb * cl)
    return out


_BV_FOURIER_FWD = {
    "one": {"s": Fraction(-1), "f": Fraction(-1), "c": Fraction(1)},
    "s": {"one": Fraction(1), "f": Fraction(-1), "c": Fraction(1)},
    "f": {"c": Fraction(-1)},
    "c": {"f": Fraction(1)},
}

_BV_FOURIER_INV = {
    "one": {"s": Fraction(1), "f": Fraction(1), "c": Fraction(1)},
    "s": {"one": Fraction(-1), "f": Fraction(-1), "c": Fraction(-1)},
    "f": {"c": Fraction(1)},
    "c": {"f": Fraction(-1)},
}


def bv_fourier(x: BvClass, inverse: bool = False) -> BvClass:
    table = _BV_FOURIER_INV if inverse else _BV_FOURIER_FWD
    out: Dict[str, Fraction] = {}
    for a, ca in x.items():
        for lab, cl in table[a].items():
            _add_into(out, lab, ca * cl)
    return out


def pi_star(x: BvClass) -> Dict[str, Fraction]:
    """Pushforward to the base: values on ('unit', 'pt')."""
    out: Dict[str, Fraction] = {}
    for a, ca in x.items():
        if a == "s":
            _add_into(out, "unit", ca)
        elif a == "c":
            _add_into(out, "pt", ca)
    return out


def pi_pull(u: Dict[str, Fraction]) -> BvClass:
    out: BvClass = {}
    for lab, c in u.items():
        if lab == "unit":
            _add_into(out, "one", c)
        elif lab == "pt":
            _add_into(out, "f", c)
        else:
            raise KeyError(lab)
    return out


# -- relative cycles -------------------------------------------------------------

_PAIR_TABLE: Dict[Tuple[str, str], Dict[str, Fraction]] = {
    ("one", "one"): {"one": Fraction(1)},
    ("s", "one"): {"p1s": Fraction(1)},
    ("f", "one"): {"F": Fraction(1)},
    ("c", "one"): {"p1c": Fraction(1)},
    ("one", "s"): {"p2s": Fraction(1)},
    ("s", "s"): {"s12": Fraction(1)},
    ("f", "s"): {"p2c": Fraction(1)},
    ("c", "s"): {"z": Fraction(1)},
    ("one", "f"): {"F": Fraction(1)},
    ("s", "f"): {"p1c": Fraction(1)},
    ("f", "f"): {},
    ("c", "f"): {},
    ("one", "c"): {"p2c": Fraction(1)},
    ("s", "c"): {"z": Fraction(1)},
    ("f", "c"): {},
    ("c", "c"): {},
}

# canonical presentation of each point-monomial label as a slot pair
REP: Dict[str, Tuple[str, str]] = {
    "one": ("one", "one"),
    "p1s": ("s", "one"),
    "p2s": ("one", "s"),
    "F": ("f", "one"),
    "s12": ("s", "s"),
    "p1c": ("c", "one"),
    "p2c": ("one", "c"),
    "z": ("c", "s"),
}

# alternative presentations of the identified labels (route-independence)
ALT_REP: Dict[str, Tuple[str, str]] = {
    "F": ("one", "f"),
    "p1c": ("s", "f"),
    "p2c": ("f", "s"),
    "z": ("s", "c"),
}

_DIAG_PUSH = {
    "one": {"delta": Fraction(1)},
    "s": {"s12": Fraction(1)},
    "f": {"p1c": Fraction(1), "p2c": Fraction(1)},
    "c": {"z": Fraction(1)},
}


def pair_to_rel(x: BvClass, y: BvClass) -> RelCycle:
    """p1-pullback of x times p2-pullback of y."""
    out: RelCycle = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for lab, cl in _PAIR_TABLE[(a, b)].items():
                _add_into(out, lab, ca * cb * cl)
    return out


def rel(label: str, coeff=1) -> RelCycle:
    if label not in REL_LABELS:
        raise KeyError(label)
    return {label: Fraction(coeff)}


def _diag_push_internal(x: BvClass) -> RelCycle:
    out: RelCycle = {}
    for a, ca in x.items():
        for lab, cl in _DIAG_PUSH[a].items():
            _add_into(out, lab, ca * cl)
    return out


def diag_push(x: BvClass) -> RelCycle:
    """Relative diagonal pushforward; the point class is outside the public model."""
    if x.get("c"):
        raise OutsideModelError("diag_push of the point class is not modeled")
    return _diag_push_internal(x)


def _rel_mul_labels(lx: str, ly: str, rep: Dict[str, Tuple[str, str]]) -> RelCycle:
    if lx == "delta" and ly == "delta":
        raise OutsideModelError("delta * delta leaves the cycle model")
    if lx == "delta" or ly == "delta":
        other = ly if lx == "delta" else lx
        a, b = rep[other]
        pulled = bv_mul({a: Fraction(1)}, {b: Fraction(1)})
        return _diag_push_internal(pulled)
    ax, bx = rep[lx]
    ay, by = rep[ly]
    out: RelCycle = {}
    for a, ca in bv_mul({ax: Fraction(1)}, {ay: Fraction(1)}).items():
        for b, cb in bv_mul({bx: Fraction(1)}, {by: Fraction(1)}).items():
            for lab, cl in _PAIR_TABLE[(a, b)].items():
                _add_into(out, lab, ca * cb * cl)
    return out


def rel_mul(x: RelCycle, y: RelCycle, rep: Dict[str, Tuple[str, str]] | None = None) -> RelCycle:
    table = dict(REP)
    if rep:
        table.update(rep)
    out: RelCycle = {}
    for lx, cx in x.items():
        for ly, cy in y.items():
            for lab, cl in _rel_mul_labels(lx, ly, table).items():
                _add_into(out, lab, cx * cy * cl)
    return out


def rel_compose(x: RelCycle, y: RelCycle) -> RelCycle:
    """Correspondence composition x o y (y acts first)."""
    out: RelCycle = {}
    f_cycle = rel("F")
    for lx, cx in x.items():
        for ly, cy in y.items():
            coeff = cx * cy
            if lx == "delta":
                _add_into(out, ly, coeff)
                continue
            if ly == "delta":
                _add_into(out, lx, coeff)
                continue
            ax, bx = REP[lx]
            ay, by = REP[ly]
            mid = pi_star(bv_mul({by: Fraction(1)}, {ax: Fraction(1)}))
            if not mid:
                continue
            base = pair_to_rel({ay: Fraction(1)}, {bx: Fraction(1)})
            if mid.get("unit"):
                for lab, cl in base.items():
                    _add_into(out, lab, coeff * mid["unit"] * cl)
            if mid.get("pt"):
                for lab, cl in rel_mul(base, f_cycle).items():
                    _add_into(out, lab, coeff * mid["pt"] * cl)
    return out


def rel_bracket(x: RelCycle, y: RelCycle) -> RelCycle:
    out = dict(rel_compose(x, y))
    for lab, c in rel_compose(y, x).items():
        _add_into(out, lab, -c)
    return out


# -- Fourier correspondence ------------------------------------------------------------


def _fourier_slot1(x: RelCycle) -> RelCycle:
    """x o F for a pure cycle: forward transform through the first slot."""
    out: RelCycle = {}
    for lab, c in x.items():
        if lab == "delta":
            raise OutsideModelError("compose the diagonal with F at the Corr level")
        a, b = REP[lab]
        for lab2, c2 in pair_to_rel(dict(_BV_FOURIER_FWD[a]), {b: Fraction(1)}).items():
            _add_into(out, lab2, c * c2)
    return out


def _fourier_slot2(x: RelCycle) -> RelCycle:
    """Finv o x for a pure cycle: inverse transform through the second slot."""
    out: RelCycle = {}
    for lab, c in x.items():
        if lab == "delta":
            raise OutsideModelError("compose the diagonal with Finv at the Corr level")
        a, b = REP[lab]
        for lab2, c2 in pair_to_rel({a: Fraction(1)}, dict(_BV_FOURIER_INV[b])).items():
            _add_into(out, lab2, c * c2)
    return out


@dataclass(frozen=True)
class Corr:
    """Correspondence: a relative cycle, or the Fourier kernel F / its inverse."""

    kind: str  # 'cycle', 'F', 'Finv'
    cycle: Tuple[Tuple[str, Fraction], ...] | None = None

    @staticmethod
    def of(x: RelCycle) -> "Corr":
        return Corr("cycle", tuple(sorted(_clean(dict(x)).items())))

    @staticmethod
    def fourier() -> "Corr":
        return Corr("F")

    @staticmethod
    def fourier_inverse() -> "Corr":
        return Corr("Finv")

    def as_cycle(self) -> RelCycle:
        if self.kind != "cycle":
            raise OutsideModelError(f"{self.kind} has no cycle expansion in the model")
        return dict(self.cycle or ())

    def _is_delta(self) -> bool:
        return self.kind == "cycle" and dict(self.cycle or ()) == {"delta": Fraction(1)}

    def compose(self, other: "Corr") -> "Corr":
        if self.kind == "cycle" and other.kind == "cycle":
            return Corr.of(rel_compose(self.as_cycle(), other.as_cycle()))
        if self.kind == "F" and other.kind == "Finv":
            return Corr.of(rel("delta"))
        if self.kind == "Finv" and other.kind == "F":
            return Corr.of(rel("delta"))
        if self.kind == "cycle" and other.kind == "F":
            if self._is_delta():
                return Corr.fourier()
            cyc = self.as_cycle()
            if cyc.get("delta"):
                raise OutsideModelError("cycle with a diagonal part composed with F")
            return Corr.of(_fourier_slot1(cyc))
        if self.kind == "Finv" and other.kind == "cycle":
            if other._is_delta():
                return Corr.fourier_inverse()
            cyc = other.as_cycle()
            if cyc.get("delta"):
                raise OutsideModelError("diagonal part composed with Finv")
            return Corr.of(_fourier_slot2(cyc))
        if self.kind == "F" and other.kind == "cycle" and other._is_delta():
            return Corr.fourier()
        if self.kind == "cycle" and other.kind == "Finv" and self._is_delta():
            return Corr.fourier_inverse()
        raise OutsideModelError(f"composition {self.kind} o {other.kind} leaves the model")


def fourier_conjugate(x: RelCycle) -> RelCycle:
    """Finv o x o F for a cycle without diagonal part."""
    step = Corr.of(x).compose(Corr.fourier())
    return Corr.fourier_inverse().compose(step).as_cycle()


# -- motivic decomposition ---------------------------------------------------------------


def projectors() -> Tuple[RelCycle, RelCycle, RelCycle]:
    theta = bv_theta()
    p0 = pair_to_rel(theta, bv("one"))
    p2 = pair_to_rel(bv("one"), theta)
    p1: RelCycle = dict(rel("delta"))
    for lab, c in p0.items():
        _add_into(p1, lab, -c)
    for lab, c in p2.items():
        _add_into(p1, lab, -c)
    return p0, p1, p2


def sl2_cycles() -> Tuple[RelCycle, RelCycle, RelCycle]:
    """(e0, f0, h0) = (diagonal theta, fundamental class, weight operator)."""
    e0 = diag_push(bv_theta())
    f0 = rel("one")
    p0, _, p2 = projectors()
    h0: RelCycle = {}
    for lab, c in p2.items():
        _add_into(h0, lab, c)
    for lab, c in p0.items():
        _add_into(h0, lab, -c)
    return e0, f0, h0
