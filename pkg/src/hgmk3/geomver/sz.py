"""Probabilistic verification of the map catalog and the exact-parameter checks.

verify_map samples a fresh prime and point per trial, solves the entry's
constraints with modular square roots, pushes through the map and requires all
target equations to vanish.  A wrong map of cleared total degree D slips past
one trial with probability at most D / 2^(bits-1); the per-run bound reported
is that value to the power of the completed trials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy as sp

from .maps import CATALOG, PSI_CHAIN, RationalMap
from .modeval import SampleDegenerateError, eval_mod, random_prime, solve_step

DEFAULT_TRIALS = 100
DEFAULT_BITS = 62
DEFAULT_SEED = 20259


class CatalogError(KeyError):
    """Unknown catalog entry or an entry without a solvable variable."""


@dataclass
class MapReport:
    name: str
    trials: int
    passed: bool
    failures: int = 0
    resamples: int = 0
    attempts: int = 0
    per_trial_bound: float = 0.0
    miss_probability_bound: float = 0.0
    witness: dict = None  # free-variable values of the first failing trial


def _run_entry(entry: RationalMap, trials, bits, rng):
    steps = entry.compiled_steps()
    done = 0
    failures = 0
    attempts = 0
    witness = None
    while done < trials:
        attempts += 1
        if attempts > 10 * trials and done < attempts // 10:
            raise SampleDegenerateError(
                f"{entry.name}: more than 90% of samples degenerate"
            )
        p = random_prime(rng, bits)
        values = {sym: rng.randrange(1, p) for sym in entry.free}
        try:
            for sym, expr in entry.derived:
                values[sym] = eval_mod(expr, values, p)
            for coeffs, var in steps:
                values[var] = solve_step(coeffs, values, p, rng)
            out = dict(values)
            for sym, expr in entry.outputs:
                out[sym] = eval_mod(expr, values, p)
            for eq in entry.target_eqs:
                if eval_mod(eq, out, p) != 0:
                    failures += 1
                    if witness is None:
                        witness = {str(k): v for k, v in values.items()} | {"prime": p}
                    break
            done += 1
        except SampleDegenerateError:
            continue
    per_trial = entry.degree_bound() / 2.0 ** (bits - 1)
    return MapReport(
        name=entry.name,
        trials=done,
        passed=failures == 0,
        failures=failures,
        resamples=attempts - done,
        attempts=attempts,
        per_trial_bound=per_trial,
        miss_probability_bound=min(1.0, per_trial) ** max(done, 1),
        witness=witness,
    )


def verify_map(name, trials=DEFAULT_TRIALS, prime_bits=DEFAULT_BITS, seed=DEFAULT_SEED):
    """Schwartz-Zippel check of one catalog entry."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if prime_bits < 40:
        raise ValueError("prime_bits must be >= 40")
    entry = CATALOG.get(name)
    if entry is None:
        raise CatalogError(f"no catalog entry named {name!r}")
    rng = random.Random(f"{seed}:{name}")
    return _run_entry(entry, trials, prime_bits, rng)


def verify_all_maps(trials=DEFAULT_TRIALS, prime_bits=DEFAULT_BITS, seed=DEFAULT_SEED, only=None):
    names = [only] if only else sorted(CATALOG)
    return [verify_map(n, trials, prime_bits, seed) for n in names]


def verify_chain_psi(trials=DEFAULT_TRIALS, prime_bits=DEFAULT_BITS, seed=DEFAULT_SEED):
    """Per-link reports for psi8..psi2 plus the end-to-end composition."""
    reports = [verify_map(n, trials, prime_bits, seed) for n in PSI_CHAIN]
    rng = random.Random(f"{seed}:psi_chain")
    first = CATALOG["psi8"]
    links = [CATALOG[n] for n in PSI_CHAIN]
    done = 0
    failures = 0
    attempts = 0
    witness = None
    from .maps import inose_eq, u1, x, y

    target = inose_eq(x, y, u1)
    while done < trials:
        attempts += 1
        if attempts > 10 * trials and done < attempts // 10:
            raise SampleDegenerateError("psi chain: more than 90% of samples degenerate")
        p = random_prime(rng, prime_bits)
        values = {sym: rng.randrange(1, p) for sym in first.free}
        try:
            for coeffs, var in first.compiled_steps():
                values[var] = solve_step(coeffs, values, p, rng)
            for link in links:
                out = dict(values)
                for sym, expr in link.outputs:
                    out[sym] = eval_mod(expr, values, p)
                values = out
            if eval_mod(target, values, p) != 0:
                failures += 1
                if witness is None:
                    witness = {"prime": p}
            done += 1
        except SampleDegenerateError:
            continue
    deg = max(link.degree_bound() for link in links)
    per_trial = deg / 2.0 ** (prime_bits - 1)
    reports.append(MapReport(
        name="psi_chain",
        trials=done,
        passed=failures == 0,
        failures=failures,
        resamples=attempts - done,
        attempts=attempts,
        per_trial_bound=per_trial,
        miss_probability_bound=min(1.0, per_trial) ** max(done, 1),
        witness=witness,
    ))
    return reports


def verify_Qt_on_curve(trials=DEFAULT_TRIALS, prime_bits=DEFAULT_BITS, seed=DEFAULT_SEED):
    """The explicit section lies on the two-II* model, generically and at t = 1."""
    return [
        verify_map("qt_section", trials, prime_bits, seed),
        verify_map("qt_section_t1", trials, prime_bits, seed),
    ]


# ---------------------------------------------------------------------------
# exact checks: the five-variable parameter system and the modular curve
# ---------------------------------------------------------------------------

@dataclass
class ExactCheckReport:
    name: str
    passed: bool
    detail: dict = dc_field(default_factory=dict)


def _si_sym():
    h, g, a, b, c, d, t = sp.symbols("h g a b c d t")
    param = {
        a: 8 * (3 * h**6 - 8) / (3 * h**14 * (h**6 - 2) ** 2),
        b: 64 * (9 * h**6 - 16) / (27 * h**21 * (h**6 - 2) ** 3),
        c: -2 * (3 * h**6 + 2) / (3 * h**10 * (h**6 - 2) ** 2),
        d: 8 * (9 * h**6 - 2) / (27 * h**15 * (h**6 - 2) ** 3),
        t: -1 / (h**6 * (h**6 - 2)),
    }
    system = (
        9 * a * c - 256 * t**4 - 144 * t**3,
        -729 * b * d + 16384 * t**6 - 41472 * t**5,
        -4 * c**3 - 27 * d**2 - 32 * t**4,
        -4 * a**3 - 27 * b**2 - 2048 * t**5,
    )
    gform = {
        a: 8 * (3 * g**3 - 8) / (3 * g**7 * (g**3 - 2) ** 2),
        c: -2 * (3 * g**3 + 2) / (3 * g**5 * (g**3 - 2) ** 2),
        t: -1 / (g**3 * (g**3 - 2)),
    }
    d2_g = 64 * (2 - 9 * g**3) ** 2 / (729 * g**15 * (g**3 - 2) ** 6)
    b_g = 512 * (81 * (g**3 - 2) * g**3 + 32) / (729 * d * g**18 * (g**3 - 2) ** 6)
    return h, g, a, b, c, d, t, param, system, gform, d2_g, b_g


def verify_si_parameters(n_random=100, seed=DEFAULT_SEED):
    """The h-parametrization satisfies the four-equation system identically.

    Checked at h = 1 exactly, at n_random random rationals, together with the
    g-form consistency and the A, B <-> j-pair identities.
    """
    h, g, a, b, c, d, t, param, system, gform, d2_g, b_g = _si_sym()
    rng = random.Random(f"{seed}:si_params")
    detail = {}
    # exact h = 1 hand-verified quintuple
    at1 = {sym: sp.nsimplify(expr.subs(h, 1)) for sym, expr in param.items()}
    expected = {a: sp.Rational(-40, 3), b: sp.Rational(448, 27),
                c: sp.Rational(-10, 3), d: sp.Rational(-56, 27), t: 1}
    detail["h=1"] = {str(k): str(v) for k, v in at1.items()}
    ok = at1 == expected
    ok &= all(eq.subs(at1) == 0 for eq in system)
    # random rational evaluations
    for _ in range(n_random):
        hv = Fraction(rng.randrange(1, 60), rng.randrange(1, 60))
        if hv in (1, 0) or (Fraction(hv) ** 6 == 2):
            continue
        vals = {sym: expr.subs(h, sp.Rational(hv)) for sym, expr in param.items()}
        if any(eq.subs(vals) != 0 for eq in system):
            ok = False
            detail["failed_at_h"] = str(hv)
            break
    # g-form consistency at random rationals (g = h^2)
    for _ in range(10):
        hv = sp.Rational(Fraction(rng.randrange(2, 30), rng.randrange(1, 30)))
        sub_h = {sym: expr.subs(h, hv) for sym, expr in param.items()}
        gv = hv**2
        if gform[a].subs(g, gv) != sub_h[a] or gform[c].subs(g, gv) != sub_h[c]:
            ok = False
            detail["gform_mismatch"] = str(hv)
            break
        if gform[t].subs(g, gv) != sub_h[t]:
            ok = False
            detail["gform_mismatch"] = str(hv)
            break
        if d2_g.subs(g, gv) != sub_h[d] ** 2:
            ok = False
            detail["d_squared_mismatch"] = str(hv)
            break
        if b_g.subs({g: gv, d: sub_h[d]}) != sub_h[b]:
            ok = False
            detail["b_mismatch"] = str(hv)
            break
    # A, B solve the j-pair system: A^3 = j1 j2 / 12^6, B^2 = (1-j1/12^3)(1-j2/12^3)
    A = (16 * t + 9) / 9
    B2 = sp.Rational(4, 729) * t * (81 - 32 * t) ** 2
    j_sum = 128 * (512 * t**2 - 414 * t + 27)
    j_prod = 4096 * ((512 * t**2 - 414 * t + 27) ** 2 - 4 * (t - 1) * t * (256 * t - 81) ** 2)
    ok &= sp.simplify(A**3 - j_prod / 12**6) == 0
    ok &= sp.simplify(B2 - (1 - j_sum / 12**3 + j_prod / 12**6)) == 0
    return ExactCheckReport("si_parameters", bool(ok), detail)


def x0_2_checks(n_random=60, seed=DEFAULT_SEED):
    """Modular-curve identities: j(u) = (u+256)^3/u^2 recovers both curve j's.

    u = -64(1+s)/(s-1) lands on the x^3+4x^2+2(1+s)x model and
    u = -64(s-1)/(s+1) on the x^3-2x^2+(1-s)x/2 model; on y^2 = x^3+ax^2+bx
    the parameter is u = 256b/(a^2-4b), with s = (8b-a^2)/a^2 and
    t = a^4/(16(a^2-4b)b) satisfying s^2 = (t-1)/t exactly.
    """
    rng = random.Random(f"{seed}:x0_2")
    s, aa, bb = sp.symbols("s aa bb")

    def j_model(a2, a4):
        c4 = (4 * a2) ** 2 - 24 * (2 * a4)
        delta = -((4 * a2) ** 2) * (-(a4**2)) - 8 * (2 * a4) ** 3
        return c4**3 / delta

    j_of_u = lambda uu: (uu + 256) ** 3 / uu**2
    jE1 = j_model(-2, sp.Rational(1, 2) * (1 - s))
    jE2 = j_model(4, 2 * (1 + s))
    u_plus = -64 * (1 + s) / (-1 + s)
    u_minus = -64 * (-1 + s) / (1 + s)
    checks = {
        "j(u+) = j(E2 model)": j_of_u(u_plus) - jE2,
        "j(u-) = j(E1 model)": j_of_u(u_minus) - jE1,
    }
    detail = {}
    ok = True
    p = random_prime(rng, DEFAULT_BITS)
    for name, eq in checks.items():
        num, _ = sp.fraction(sp.together(eq))
        num = sp.expand(num)
        good = all(
            eval_mod(num, {s: rng.randrange(2, p)}, p) == 0 for _ in range(n_random)
        )
        detail[name] = good
        ok &= good
    # u, s, t in terms of (a, b) on y^2 = x^3 + a x^2 + b x
    u_ab = 256 * bb / (aa**2 - 4 * bb)
    j_ab = j_model(aa, bb)
    num, _ = sp.fraction(sp.together(j_of_u(u_ab) - j_ab))
    detail["j(u(a,b)) = j(curve)"] = all(
        eval_mod(sp.expand(num), {aa: rng.randrange(2, p), bb: rng.randrange(2, p)}, p) == 0
        for _ in range(n_random)
    )
    ok &= detail["j(u(a,b)) = j(curve)"]
    s_ab = (-(aa**2) + 8 * bb) / aa**2
    t_ab = aa**4 / (16 * (aa**2 - 4 * bb) * bb)
    num, _ = sp.fraction(sp.together(s_ab**2 - (t_ab - 1) / t_ab))
    detail["s(a,b)^2 = (t-1)/t"] = sp.expand(num) == 0
    ok &= detail["s(a,b)^2 = (t-1)/t"]
    # exact rational spot check; (a, b) = (2, 1) degenerates (a^2 = 4b), use (3, 1)
    av, bv = 3, 1
    sv = Fraction(-av**2 + 8 * bv, av**2)
    tv = Fraction(av**4, 16 * (av**2 - 4 * bv) * bv)
    detail["exact (a,b)=(3,1)"] = sv * sv == (tv - 1) / tv
    ok &= detail["exact (a,b)=(3,1)"]
    return ExactCheckReport("x0_2", bool(ok), detail)
