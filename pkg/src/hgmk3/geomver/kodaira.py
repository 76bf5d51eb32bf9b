"""Kodaira-type diagnostics for the elliptic fibrations and the j-invariant pair.

For a fixed rational parameter each model's c4, c6, discriminant are exact
univariate polynomials over Q; vanishing orders at the named places (with the
degree-weighted flip at infinity: c4, c6, delta are sections of degree 8, 12,
24 on a K3) feed the standard order table.  Orders are reduced by (4, 6, 12)
whenever the local model is non-minimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy as sp
from sympy import Rational as R

_s = sp.symbols("s")


class FibrationError(ValueError):
    """Unknown model, unsupported parameter, or an unexpected discriminant factor."""


@dataclass(frozen=True)
class PlaceOrders:
    place: str
    degree: int  # residue degree of the place over Q
    ord_c4: int
    ord_c6: int
    ord_delta: int
    kodaira: str
    expected: str | None = None

    @property
    def matches(self):
        return self.expected is None or self.kodaira == self.expected


@dataclass(frozen=True)
class FibrationProfile:
    model: str
    t: Fraction
    places: tuple
    euler_total: int

    @property
    def passed(self):
        return self.euler_total == 24 and all(p.matches for p in self.places)


def _weierstrass_polys(a2, a4, a6):
    b2 = 4 * a2
    b4 = 2 * a4
    b6 = 4 * a6
    b8 = 4 * a2 * a6 - a4**2
    c4 = b2**2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    delta = -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6
    return (sp.Poly(sp.expand(c4), _s), sp.Poly(sp.expand(c6), _s), sp.Poly(sp.expand(delta), _s))


def _model_family19(t):
    return R(1, 4) * (_s**2 - 1) ** 2, _s**2 * (_s**2 - 1) ** 3 / (64 * t), sp.Integer(0)


def _model_family19alt(t):
    return 4 * _s**2, -(_s**3) * (_s - 1) ** 2 / t, sp.Integer(0)


def _model_weier1(t):
    return 2 * (32 * _s**4 - 64 * _s**3 + 32 * _s**2 - t), sp.Rational(t) ** 2 + 0 * _s, sp.Integer(0)


def _model_inose(t):
    # u-line model cleared of 1/u: X -> X/u^2, Y -> Y/u^3
    a4 = -R(16, 3) * t**3 * (16 * t + 9) * _s**4
    a6 = 512 * t**5 * _s**7 + R(8, 27) * (1024 * t**2 - 2592 * t) * t**4 * _s**6 + 8 * t**4 * _s**5
    return sp.Integer(0), a4, a6


def _model_xslice(t):
    # the surface sliced by its first affine coordinate: a genus-1 quartic in the
    # remaining variables; profile its Jacobian via the classical I, J invariants
    a = R(1, 256) / t
    sig = sp.symbols("_sig")
    quartic = _s**2 * (1 - sig) ** 2 * (sig - _s) ** 2 - 4 * a * _s * (sig - _s)
    qp = sp.Poly(sp.expand(quartic), sig)
    e4, e3, e2, e1, e0 = qp.all_coeffs()
    I = 12 * e4 * e0 - 3 * e3 * e1 + e2**2
    J = 72 * e4 * e2 * e0 - 27 * e4 * e1**2 - 27 * e3**2 * e0 + 9 * e3 * e2 * e1 - 2 * e2**3
    return sp.Integer(0), sp.expand(-27 * I), sp.expand(-27 * J)


MODELS = {
    "family19": _model_family19,
    "family19alt": _model_family19alt,
    "weier1": _model_weier1,
    "inose": _model_inose,
    "xslice": _model_xslice,
}

# weight of the fundamental line bundle for an elliptic K3: deg c4 <= 8,
# deg c6 <= 12, deg delta <= 24
_K3_DEGREES = (8, 12, 24)


def _ord_at_linear(poly, x0):
    n = 0
    while not poly.is_zero and poly.eval(x0) == 0:
        poly = sp.Poly(sp.div(poly.as_expr(), _s - x0, _s)[0], _s)
        n += 1
    return n


def _ord_at_poly(poly, place):
    n = 0
    while not poly.is_zero:
        q, r = sp.div(poly, place)
        if not r.is_zero:
            break
        poly = q
        n += 1
    return n


def kodaira_from_orders(oc4, oc6, od):
    """Standard vanishing-order table for minimal models."""
    if od == 0:
        return "I0"
    if oc4 == 0 and oc6 == 0:
        return f"I{od}"
    if od == 2 and oc6 == 1:
        return "II"
    if od == 3 and oc4 == 1:
        return "III"
    if od == 4 and oc6 == 2:
        return "IV"
    if od == 6 and oc4 >= 2 and oc6 >= 3:
        return "I0*"
    if od > 6 and oc4 == 2 and oc6 == 3:
        return f"I{od - 6}*"
    if od == 8 and oc6 == 4:
        return "IV*"
    if od == 9 and oc4 == 3:
        return "III*"
    if od == 10 and oc6 == 5:
        return "II*"
    raise FibrationError(f"order triple ({oc4}, {oc6}, {od}) matches no Kodaira type")


def _minimalize(oc4, oc6, od):
    while oc4 >= 4 and oc6 >= 6 and od >= 12:
        oc4, oc6, od = oc4 - 4, oc6 - 6, od - 12
    return oc4, oc6, od


def _expected_types(model, t):
    """Named places with expected types, plus the expected type of residual places."""
    t = Fraction(t)
    if model == "family19":
        named = {"s=0": "I4", "s=1": "III*", "s=-1": "III*"}
        if t == 1:
            named["s=inf"] = "I2"
        return named, "I1"
    if model == "family19alt":
        named = {"s=0": "III*", "s=inf": "III*", "s=1": "I4"}
        if t == 1:
            named["s=-1"] = "I2"
        return named, "I1"
    if model == "weier1":
        named = {"s=0": "I2", "s=1": "I2", "s=inf": "I16"}
        if t == 1:
            named["s=1/2"] = "I2"
        return named, "I1"
    if model == "inose":
        named = {"s=0": "II*", "s=inf": "II*"}
        rest = "I1"
        if t == 1:
            named["s=-1/8"] = "I2"
        elif t == Fraction(81, 256):
            named["s=2/9"] = "I2"
        elif t == Fraction(-9, 16):
            rest = "II"
        return named, rest
    if model == "xslice":
        named = {"s=0": "IV*", "s=inf": "I12"}
        rest = "I1"
        if t == 1:
            named["s=1/4"] = "I2"
        return named, rest
    raise FibrationError(f"unknown model {model!r}")


def kodaira_profile(model, t):
    """Vanishing orders and inferred types at every place of bad reduction."""
    t = Fraction(t)
    if model not in MODELS:
        raise FibrationError(f"unknown model {model!r}; have {sorted(MODELS)}")
    if t == 0:
        raise FibrationError("parameter t = 0 is outside every family")
    a2, a4, a6 = MODELS[model](sp.Rational(t))
    c4, c6, delta = _weierstrass_polys(a2, a4, a6)
    named, rest_type = _expected_types(model, t)
    places = []
    total = 0
    _, factors = sp.factor_list(delta.as_expr(), _s)
    for fexpr, _mult in sorted(factors, key=lambda fm: str(fm[0])):
        fpoly = sp.Poly(fexpr, _s)
        if fpoly.degree() == 0:
            continue
        fpoly = fpoly.monic()
        if fpoly.degree() == 1:
            x0 = -fpoly.all_coeffs()[1]
            label = f"s={sp.nsimplify(x0)}"
            orders = (_ord_at_linear(c4, x0), _ord_at_linear(c6, x0), _ord_at_linear(delta, x0))
        else:
            label = f"s^{fpoly.degree()}[{fpoly.as_expr()}]"
            orders = (_ord_at_poly(c4, fpoly), _ord_at_poly(c6, fpoly), _ord_at_poly(delta, fpoly))
        oc4, oc6, od = _minimalize(*orders)
        if od == 0:
            continue
        ktype = kodaira_from_orders(oc4, oc6, od)
        expected = named.get(label, rest_type)
        places.append(PlaceOrders(label, fpoly.degree(), oc4, oc6, od, ktype, expected))
        total += od * fpoly.degree()
    # place at infinity via the degree-weighted flip
    oc4 = _K3_DEGREES[0] - (c4.degree() if not c4.is_zero else -10**6)
    oc6 = _K3_DEGREES[1] - (c6.degree() if not c6.is_zero else -10**6)
    od = _K3_DEGREES[2] - delta.degree()
    oc4, oc6, od = _minimalize(oc4, oc6, od)
    if od > 0:
        ktype = kodaira_from_orders(oc4, oc6, od)
        places.append(PlaceOrders("s=inf", 1, oc4, oc6, od, ktype, named.get("s=inf", rest_type)))
        total += od
    missing = set(named) - {p.place for p in places}
    if missing:
        raise FibrationError(f"expected places {sorted(missing)} not found in the discriminant")
    return FibrationProfile(model, t, tuple(places), total)


# ---------------------------------------------------------------------------
# j-invariants of the curve pair
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JPair:
    """The unordered pair A +- B sqrt(radicand) with radicand = t(t-1)."""

    rational_part: Fraction
    radical_coeff: Fraction
    radicand: Fraction

    def rational_values(self):
        """Both values as exact rationals, or None if genuinely quadratic."""
        if self.radical_coeff == 0 or self.radicand == 0:
            return (self.rational_part, self.rational_part)
        num, den = self.radicand.numerator, self.radicand.denominator
        if num < 0:
            return None
        import math

        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn != num or rd * rd != den:
            return None
        root = Fraction(rn, rd)
        return (
            self.rational_part + self.radical_coeff * root,
            self.rational_part - self.radical_coeff * root,
        )

    def is_rational(self):
        return self.rational_values() is not None


def j_invariants_pair(t):
    """{64(512 t^2 - 414 t + 27 +- 2 sqrt(t(t-1)) (256 t - 81))} exactly."""
    t = Fraction(t)
    if t == 0:
        raise ValueError("t = 0")
    return JPair(
        rational_part=64 * (512 * t * t - 414 * t + 27),
        radical_coeff=128 * (256 * t - 81),
        radicand=t * (t - 1),
    )


def j_match_check(field, t, S):
    """The mod-q j-invariants of the curve pair match the exact pair formula.

    t is an exact rational, S an element with S^2 = (t-1)/t; the radical
    sqrt(t(t-1)) is realised as t*S.
    """
    from ..ecount import e1_e2

    t = Fraction(t)
    t_mod = field.from_rational(t)
    e1, e2 = e1_e2(t_mod, S, field)
    pair = j_invariants_pair(t)
    base = field.from_rational(pair.rational_part)
    coeff = field.from_rational(pair.radical_coeff)
    radical = t_mod * S
    expected = {(base + coeff * radical).code, (base - coeff * radical).code}
    got = {e1.j_invariant().code, e2.j_invariant().code}
    return got == expected
