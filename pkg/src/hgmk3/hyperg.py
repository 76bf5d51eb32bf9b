"""Hypergeometric data (alpha, beta) and the finite sum H_q(alpha, beta | t).

A datum is compiled from two Galois-stable multisets of rationals into integer
tuples (p_1..p_r), (q_1..q_s) with

    prod_i (x - e^{2 pi i alpha_i}) / prod (x - e^{2 pi i beta_i})
        = prod_j (x^{p_j} - 1) / prod_k (x^{q_k} - 1),

plus the scale M = prod p_j^{p_j} / prod q_k^{q_k}, the sign epsilon
(+1 iff sum q_k is even) and the root multiplicities s(m) of
D(x) = gcd(prod (x^{p_j}-1), prod (x^{q_k}-1)).  The sum itself is

    H_q = (-1)^{r+s}/(1-q) * sum_m q^{-s(0)+s(m)}
          prod_j g(p_j m) prod_k g(-q_k m) * omega(eps M^{-1} t)^m.

Values are certified by rounding: q^{s(0)-1} H_q is asserted to be an integer
within an absolute threshold, escalating precision once before failing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .charsum import get_character_system
from .ffield import DomainError, FqElem

ROUNDING_THRESHOLD = 1e-3  # absolute, at default precision


class DatumError(ValueError):
    """Raised for inputs that do not define a hypergeometric datum."""


class IntegrityError(ArithmeticError):
    """Raised when a certified value violates its trace bound (bug or bad reduction)."""


@dataclass(frozen=True)
class HGDatum:
    """Compiled hypergeometric datum."""

    alpha: tuple
    beta: tuple
    p_list: tuple
    q_list: tuple
    M: Fraction
    epsilon: int
    d_multiplicities: dict  # d -> multiplicity of primitive d-th roots in D(x)

    @property
    def degree(self):
        return len(self.alpha)

    @property
    def denominator_lcm(self):
        out = 1
        for a in self.alpha + self.beta:
            out = math.lcm(out, a.denominator)
        return out

    def s0(self):
        return min(len(self.p_list), len(self.q_list))

    def key(self):
        return (self.p_list, self.q_list)


def _cyclotomic_multiset(entries):
    """Multiplicity of each Phi_d in prod (x - e^{2 pi i a}) for Galois-stable input."""
    from collections import Counter

    per_residue = {}
    for a in entries:
        per_residue.setdefault(a.denominator, Counter())[a.numerator] += 1
    mult = {}
    for b, residues in per_residue.items():
        units = [r for r in range(b) if math.gcd(r, b) == 1] if b > 1 else [0]
        counts = {residues.get(r, 0) for r in units}
        if len(counts) != 1:
            bad = min(r for r in units if residues.get(r, 0) != max(counts))
            raise DatumError(
                f"parameters are not Galois-stable: residue {bad}/{b} has unequal multiplicity"
            )
        mult[b] = counts.pop()
    return {d: m for d, m in mult.items() if m}


def _divisor_closure(ds):
    out = set()
    for d in ds:
        for k in range(1, d + 1):
            if d % k == 0:
                out.add(k)
    return out


def datum_from_parameters(alpha, beta):
    """Compile (alpha, beta) into the integer datum; raises DatumError when invalid."""
    alpha = tuple(sorted(Fraction(a) for a in alpha))
    beta = tuple(sorted(Fraction(b) for b in beta))
    if len(alpha) != len(beta):
        raise DatumError("alpha and beta must have equal length")
    for a in alpha + beta:
        if not 0 <= a < 1:
            raise DatumError(f"parameter {a} outside [0, 1)")
    overlap = set(alpha) & set(beta)
    if overlap:
        raise DatumError(f"alpha and beta overlap at {min(overlap)}")
    num = _cyclotomic_multiset(alpha)
    den = _cyclotomic_multiset(beta)
    exps = {d: num.get(d, 0) - den.get(d, 0) for d in set(num) | set(den)}
    support = _divisor_closure({d for d, e in exps.items() if e})
    # e_d = sum_{d | k} gamma_k, solved downward over the divisor-closed support
    gamma = {}
    for d in sorted(support, reverse=True):
        gamma[d] = exps.get(d, 0) - sum(gamma[k] for k in support if k > d and k % d == 0)
    p_list = tuple(sorted((d for d, g in gamma.items() for _ in range(g) if g > 0), reverse=True))
    q_list = tuple(sorted((d for d, g in gamma.items() for _ in range(-g) if g < 0), reverse=True))
    # reconstruction check: prod (x^{p}-1)/prod (x^{q}-1) == prod Phi_d^{e_d}
    recon = {}
    for p in p_list:
        for d in range(1, p + 1):
            if p % d == 0:
                recon[d] = recon.get(d, 0) + 1
    for q in q_list:
        for d in range(1, q + 1):
            if q % d == 0:
                recon[d] = recon.get(d, 0) - 1
    if {d: e for d, e in recon.items() if e} != {d: e for d, e in exps.items() if e}:
        raise DatumError("cyclotomic decomposition does not reproduce the parameters")
    if sum(p_list) != sum(q_list):
        raise DatumError("sum of p_i must equal sum of q_j")
    M = Fraction(1)
    for p in p_list:
        M *= Fraction(p) ** p
    for q in q_list:
        M /= Fraction(q) ** q
    epsilon = 1 if sum(q_list) % 2 == 0 else -1
    d_mult = {}
    for d in _divisor_closure(set(p_list) | set(q_list)):
        m = min(
            sum(1 for p in p_list if p % d == 0),
            sum(1 for q in q_list if q % d == 0),
        )
        if m:
            d_mult[d] = m
    return HGDatum(alpha, beta, p_list, q_list, M, epsilon, d_mult)


def s_multiplicity(datum, q, m):
    """Multiplicity s(m) of e^{2 pi i m/(q-1)} in D(x)."""
    d = (q - 1) // math.gcd(m, q - 1) if m % (q - 1) else 1
    return datum.d_multiplicities.get(d, 0)


@dataclass
class HGValue:
    """One evaluated sum: raw complex value, certified rounding, residual."""

    value: complex
    rounded: Fraction
    residual: float
    precision: int


def _s_of_m_array(datum, q):
    ms = np.arange(q - 1, dtype=np.int64)
    d = (q - 1) // np.gcd(ms, q - 1)
    d[0] = 1
    out = np.zeros(q - 1, dtype=np.int64)
    for dv, mult in datum.d_multiplicities.items():
        out[d == dv] = mult
    return out


def _weights(datum, cs):
    """Cached per-(datum, system) array W[m] = q^{-s0+s(m)} prod g(p m) prod g(-q m)."""
    key = datum.key()
    cached = cs._hg_cache.get(key)
    if cached is not None:
        return cached
    q = cs.field.q
    N = q - 1
    sm = _s_of_m_array(datum, q)
    ms = np.arange(N, dtype=np.int64)
    w = np.float_power(float(q), sm - datum.s0()).astype(complex)
    for p in datum.p_list:
        w *= cs.gauss[(p * ms) % N]
    for qq in datum.q_list:
        w *= cs.gauss[(-qq * ms) % N]
    cs._hg_cache[key] = w
    return w


def _reduce_argument(datum, field, t):
    """eps * M^{-1} * t as a nonzero field element."""
    if isinstance(t, FqElem):
        telt = t
    elif isinstance(t, (int, Fraction)):
        telt = field.from_rational(Fraction(t))
    else:
        raise TypeError(f"cannot interpret argument {t!r}")
    if telt.is_zero:
        raise DomainError("hypergeometric argument t = 0")
    scale = field.from_rational(Fraction(datum.epsilon) / datum.M)
    return scale * telt


def hg_sum(datum, field, t, cs=None, precision=None, _escalated=False):
    """Evaluate H_q(alpha, beta | t); certify q^(s0-1) * H as an integer."""
    if math.gcd(field.q, datum.denominator_lcm) != 1:
        raise DomainError(
            f"q = {field.q} shares a factor with the parameter denominators"
        )
    if cs is None:
        cs = get_character_system(field, precision)
    z = _reduce_argument(datum, field, t)
    q = field.q
    if cs.gauss_mp is not None:
        value = _hg_sum_mp(datum, cs, z)
    else:
        w = _weights(datum, cs)
        value = complex(np.dot(w, cs.omega_vector(z, np.arange(q - 1)))) * (
            (-1) ** (len(datum.p_list) + len(datum.q_list)) / (1 - q)
        )
    denom = q ** (datum.s0() - 1)
    scaled = value * denom
    nearest = round(scaled.real)
    residual = abs(scaled - nearest)
    if residual > ROUNDING_THRESHOLD:
        if not _escalated:
            hi = get_character_system(field, 128)
            return hg_sum(datum, field, t, cs=hi, _escalated=True)
        raise PrecisionEscalationError(
            f"rounding residual {residual:.3g} above {ROUNDING_THRESHOLD} even at high precision"
        )
    return HGValue(value, Fraction(nearest, denom), residual, cs.precision)


def _hg_sum_mp(datum, cs, z):
    import mpmath as mp

    field = cs.field
    q = field.q
    N = q - 1
    sm = _s_of_m_array(datum, q)
    k = z.e
    with mp.workprec(cs.precision):
        zq = [mp.expjpi(mp.mpf(2 * i) / N) for i in range(N)]
        acc = mp.mpc(0)
        for m in range(N):
            term = mp.mpf(q) ** int(sm[m] - datum.s0())
            for p in datum.p_list:
                term = term * cs.gauss_mp[(p * m) % N]
            for qq in datum.q_list:
                term = term * cs.gauss_mp[(-qq * m) % N]
            acc += term * zq[(m * k) % N]
        pref = mp.mpf((-1) ** (len(datum.p_list) + len(datum.q_list))) / (1 - q)
        return complex(acc * pref)


class PrecisionEscalationError(ArithmeticError):
    """Rounding failed even after escalating precision."""


_MAIN = None
_CURVE = None


def main_datum():
    """alpha = (1/4, 1/2, 3/4), beta = (0, 0, 0): the degree-3 weight-2 datum."""
    global _MAIN
    if _MAIN is None:
        _MAIN = datum_from_parameters(
            (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)),
            (0, 0, 0),
        )
    return _MAIN


def curve_datum():
    """alpha = (1/6, 5/6), beta = (1/4, 3/4): the elliptic-curve trace datum."""
    global _CURVE
    if _CURVE is None:
        _CURVE = datum_from_parameters(
            (Fraction(1, 6), Fraction(5, 6)),
            (Fraction(1, 4), Fraction(3, 4)),
        )
    return _CURVE


def hg_H3(field, t, cs=None):
    """Integer value of H_q(1/4,1/2,3/4; 0,0,0 | t); |value| <= 3q."""
    out = hg_sum(main_datum(), field, t, cs=cs)
    value = int(out.rounded)
    if out.rounded.denominator != 1:
        raise IntegrityError(f"H3 did not round to an integer: {out.rounded}")
    if abs(value) > 3 * field.q:
        raise IntegrityError(f"|H3| = {abs(value)} violates the 3q trace bound")
    return value


def hg_H2(field, t, cs=None):
    """Rational H_q(1/6,5/6; 1/4,3/4 | t) with q*value an integer, |q*value| <= 2 sqrt(q)."""
    if math.gcd(field.q, 6) != 1:
        raise DomainError("H2 requires gcd(q, 6) = 1")
    out = hg_sum(curve_datum(), field, t, cs=cs)
    a = out.rounded * field.q
    if a.denominator != 1:
        raise IntegrityError(f"q*H2 did not round to an integer: {out.rounded}")
    if int(a) ** 2 > 4 * field.q:
        raise IntegrityError(f"|q H2| = {abs(int(a))} violates the Hasse bound")
    return out.rounded
