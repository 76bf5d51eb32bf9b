"""Static fixtures and verifiers for the rank-20 classification.

The finite parameter sets S1 (rational j) and S2 (quadratic j), the j and
character columns, and the rank-20 lattice rows are shipped as a versioned
data file; everything verifiable from the exact j-pair formula is recomputed
and cross-checked here, the rest (class polynomials, order discriminants) is
out of scope and taken as fixture.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from importlib import resources

from sympy import factorint, isprime, jacobi_symbol

from .geomver import j_invariants_pair

FACTOR_LIMIT = 10**6


class FactoringError(ArithmeticError):
    """Raised when the squarefree part cannot be certified by trial division."""


_DATA = None


def _data():
    global _DATA
    if _DATA is None:
        with resources.files("hgmk3.data").joinpath("cm_tables.json").open() as fh:
            _DATA = json.load(fh)
    return _DATA


def fixture_version():
    return _data()["version"]


def s1_values():
    return tuple(Fraction(x) for x in _data()["s1"])


def s2_values():
    return tuple(Fraction(x) for x in _data()["s2"])


def rational_cm_rows():
    return {Fraction(k): v for k, v in _data()["rational_cm"].items()}


def quadratic_cm_rows():
    return {Fraction(k): v for k, v in _data()["quadratic_cm"].items()}


def rational_cm_j_list():
    return tuple(int(x) for x in _data()["rational_cm_j_list"])


def ns_lattice_rows():
    return {Fraction(k): tuple(v) for k, v in _data()["ns_lattice_rows"].items()}


def chi_discriminant(t):
    """The fixture D of the quadratic character attached to a rank-20 parameter."""
    t = Fraction(t)
    for rows in (rational_cm_rows(), quadratic_cm_rows()):
        if t in rows:
            return rows[t]["chi_D"]
    raise KeyError(f"t = {t} is not a rank-20 parameter")


def squarefree_part(r):
    """Exact squarefree part of a nonzero rational (num*den modulo squares).

    Trial division up to 10^6 with an exactness guard: an unfactored composite
    cofactor raises instead of silently returning a wrong field.
    """
    r = Fraction(r)
    if r == 0:
        raise ValueError("squarefree part of 0")
    n = abs(r.numerator * r.denominator)
    sign = -1 if r < 0 else 1
    out = 1
    fac = factorint(n, limit=FACTOR_LIMIT)
    for base, exp in fac.items():
        if base > FACTOR_LIMIT and not isprime(base):
            root = math.isqrt(base)
            if root * root == base:  # unfactored square cofactor is still exact
                continue
            raise FactoringError(f"cofactor {base} not certified prime")
        if exp % 2:
            out *= base
    return sign * out


def classify_t(t):
    """'cm_rational_j' on S1, 'cm_quadratic_j' on S2, else 'generic'."""
    t = Fraction(t)
    if t == 0:
        raise ValueError("t = 0")
    if t in s1_values():
        return "cm_rational_j"
    if t in s2_values():
        return "cm_quadratic_j"
    return "generic"


@dataclass
class CMCheck:
    t: Fraction
    passed: bool
    detail: dict = dc_field(default_factory=dict)


def verify_rational_cm():
    """Every S1 row: the j-pair is rational, contains the stored j, and lies in
    the thirteen-element rational CM list."""
    j13 = set(rational_cm_j_list())
    out = []
    for t, row in rational_cm_rows().items():
        pair = j_invariants_pair(t)
        values = pair.rational_values()
        expected = Fraction(row["j"])
        detail = {"pair": values, "table_j": expected}
        passed = (
            values is not None
            and expected in values
            and all(v.denominator == 1 and int(v) in j13 for v in values)
        )
        out.append(CMCheck(t, passed, detail))
    return out


def verify_quadratic_cm():
    """Every S2 row: the j-pair is a genuine conjugate pair a +- b sqrt(m) with
    the stored squarefree m, and m is the squarefree part of t(t-1)."""
    out = []
    for t, row in quadratic_cm_rows().items():
        pair = j_invariants_pair(t)
        m = row["field_sqrt"]
        detail = {"field_sqrt": m}
        sf = squarefree_part(t * (t - 1))
        detail["squarefree_t(t-1)"] = sf
        passed = (
            pair.rational_values() is None  # b != 0 and t(t-1) not a square
            and pair.radical_coeff != 0
            and sf == m
        )
        out.append(CMCheck(t, passed, detail))
    return out


def verify_classification_consistency(samples=50, seed=20259):
    """Generic t never lands on the thirteen rational CM j values."""
    import random

    rng = random.Random(f"{seed}:cm_classify")
    j13 = set(rational_cm_j_list())
    special = set(s1_values()) | set(s2_values())
    checked = 0
    while checked < samples:
        t = Fraction(rng.randrange(-300, 300), rng.randrange(1, 300))
        if t == 0 or t in special:
            continue
        pair = j_invariants_pair(t)
        values = pair.rational_values()
        if values is not None and any(v.denominator == 1 and int(v) in j13 for v in values):
            return CMCheck(t, False, {"pair": values})
        checked += 1
    return CMCheck(Fraction(0), True, {"samples": samples})


@dataclass
class SurveyRow:
    p: int
    T: int
    a_sq: int
    kronecker_D: int


def cm_trace_survey(t, p_max, p_min=3):
    """Empirical (T, a(E1)^2, (D/p)) rows for good primes with S in F_p.

    T comes from the affine count via T = |V_t| + 3p - 3 - p^2, which also
    serves the cells with t = 1 mod p where the fibered counter is excluded.
    Data product only: no assertion on the d(n) split is made.
    """
    from .ecount import e1_e2, trace
    from .ffield import field_new, sqrt
    from .k3count import count_affine

    t = Fraction(t)
    if classify_t(t) == "generic":
        raise ValueError(f"t = {t} is not a rank-20 parameter")
    D = chi_discriminant(t)
    rows = []
    for p in range(max(3, p_min), p_max + 1):
        if not isprime(p):
            continue
        if t.numerator % p == 0 or t.denominator % p == 0:
            continue
        field = field_new(p)
        tm = field.from_rational(t)
        S = sqrt(field, (tm - field.one()) / tm)
        if S is None:
            continue
        e1, _ = e1_e2(tm, S, field)
        rows.append(SurveyRow(
            p=p,
            T=count_affine(field, t) + 3 * p - 3 - p * p,
            a_sq=trace(e1) ** 2,
            kronecker_D=int(jacobi_symbol(D % p, p)),
        ))
    return rows
