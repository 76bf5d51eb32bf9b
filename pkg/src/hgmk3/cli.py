"""Command-line frontend: sweeps over (q, t) grids, map verification, lattice
and CM table checks, with JSON-lines or CSV reports.

Records are sorted by (check, q, t, name) and carry first-class skip reasons,
so grid coverage is auditable and reruns under a fixed seed are byte-identical.
Exit codes: 0 all pass, 1 any failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

from sympy import factorint

SCHEMA_VERSION = "hgmk3/1"
DEFAULT_SEED = 20259

RECORD_FIELDS = (
    "check", "q", "t", "name", "pass", "skipped", "reason",
    "lhs", "rhs", "residual", "time_ms",
)

CHECK_CHOICES = ("bcm", "lemma", "trace", "main")


@dataclass
class VerificationRecord:
    check: str
    q: int = None
    t: Fraction = None
    name: str = None
    passed: bool = True
    skipped: bool = False
    reason: str = None
    lhs: object = None
    rhs: object = None
    residual: float = None
    time_ms: float = None

    def sort_key(self):
        tkey = Fraction(0) if self.t is None else self.t
        return (self.check, self.q or 0, tkey, self.name or "")

    def as_dict(self):
        def enc(v):
            if isinstance(v, Fraction):
                return f"{v.numerator}/{v.denominator}" if v.denominator != 1 else str(v.numerator)
            return v

        return {
            "check": self.check,
            "q": self.q,
            "t": enc(self.t),
            "name": self.name,
            "pass": self.passed,
            "skipped": self.skipped,
            "reason": self.reason,
            "lhs": enc(self.lhs),
            "rhs": enc(self.rhs),
            "residual": self.residual,
            "time_ms": self.time_ms,
        }

    def as_json(self):
        return json.dumps(self.as_dict(), separators=(", ", ": "), sort_keys=False)

    def as_csv_row(self):
        d = self.as_dict()
        return ",".join("" if d[k] is None else str(d[k]) for k in RECORD_FIELDS)


@dataclass
class SweepConfig:
    checks: tuple
    q_list: tuple  # explicit odd prime powers
    t_list: tuple  # exact rationals
    seed: int = DEFAULT_SEED
    precision: int = None
    fmt: str = "json-lines"
    jobs: int = 1
    timings: bool = False

    def __post_init__(self):
        if not self.t_list:
            raise UsageError("empty t list")
        for q in self.q_list:
            if q % 2 == 0:
                raise UsageError(f"q = {q} is even")
        for t in self.t_list:
            if t == 0:
                raise UsageError("t = 0 is not allowed")


class UsageError(ValueError):
    pass


def report_schema():
    """Stable record schema; the CSV header is the JSON field order."""
    return {
        "schema": SCHEMA_VERSION,
        "fields": list(RECORD_FIELDS),
        "csv_header": ",".join(RECORD_FIELDS),
        "encodings": {
            "t": "num/den string",
            "field elements": "int for prime fields, [c0,c1,...] for extensions",
        },
    }


def odd_prime_powers(lo, hi):
    out = []
    for q in range(max(3, lo), hi + 1):
        if q % 2 == 0:
            continue
        fac = factorint(q)
        if len(fac) == 1:
            out.append(q)
    return tuple(out)


def parse_rational_list(text):
    try:
        return tuple(Fraction(part) for part in text.split(",") if part.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"bad rational list {text!r}: {e}") from None


def _field_for(q, seen={}):
    from .ffield import field_new

    if q not in seen:
        p, n = next(iter(factorint(q).items()))
        seen[q] = field_new(p, n)
    return seen[q]


def _records_for_q(args):
    """All records of one field of the grid (worker unit for parallel runs)."""
    q, t_list, checks, precision, timings = args
    from .charsum import get_character_system
    from .k3count import (
        verify_bcm_identity,
        verify_main_identity,
        verify_point_count_lemma,
        verify_trace_corollary,
    )

    runners = {
        "bcm": lambda f, t, cs: verify_bcm_identity(f, t, cs),
        "lemma": lambda f, t, cs: verify_point_count_lemma(f, t),
        "trace": lambda f, t, cs: verify_trace_corollary(f, t, cs),
        "main": lambda f, t, cs: verify_main_identity(f, t, cs),
    }
    field = _field_for(q)
    cs = get_character_system(field, precision)
    out = []
    for check in checks:
        for t in t_list:
            start = time.perf_counter()
            rep = runners[check](field, t, cs)
            elapsed = (time.perf_counter() - start) * 1000.0
            out.append(VerificationRecord(
                check=check, q=q, t=t,
                passed=bool(rep.passed) or rep.skipped,
                skipped=rep.skipped, reason=rep.reason,
                lhs=rep.lhs, rhs=rep.rhs,
                residual=rep.residual if not rep.skipped else None,
                time_ms=round(elapsed, 3) if timings else None,
            ))
    return out


def run_sweep(config, out=sys.stdout):
    """Execute the configured checks over the grid; returns the exit code."""
    work = [
        (q, config.t_list, config.checks, config.precision, config.timings)
        for q in sorted(config.q_list)
    ]
    if config.jobs > 1:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=config.jobs) as pool:
            chunks = list(pool.map(_records_for_q, work))
    else:
        chunks = [_records_for_q(w) for w in work]
    records = sorted((r for chunk in chunks for r in chunk), key=VerificationRecord.sort_key)
    emit_records(records, config.fmt, out)
    return 0 if all(r.passed or r.skipped for r in records) else 1


def emit_records(records, fmt, out):
    if fmt == "csv":
        print(",".join(RECORD_FIELDS), file=out)
        for r in records:
            print(r.as_csv_row(), file=out)
    else:
        for r in records:
            print(r.as_json(), file=out)


# ---------------------------------------------------------------------------
# verbs
# ---------------------------------------------------------------------------

def _env_precision(args):
    if getattr(args, "precision", None):
        return args.precision
    env = os.environ.get("HGMK3_PRECISION")
    return int(env) if env else None


def _env_seed(args):
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("HGMK3_SEED")
    return int(env) if env else DEFAULT_SEED


def _jdump(obj, out):
    print(json.dumps(obj, separators=(", ", ": ")), file=out)


def cmd_field_info(args, out):
    f = _field_for(args.p**args.n)
    _jdump({
        "p": f.p, "n": f.n, "q": f.q,
        "modulus": f.modulus,
        "generator": f.format_element(f.from_code(f.generator)),
    }, out)
    return 0


def cmd_gauss_check(args, out):
    from .charsum import get_character_system

    f = _field_for(args.p**args.n)
    cs = get_character_system(f, _env_precision(args))
    import numpy as np

    mods = np.abs(cs.gauss[1:]) ** 2
    _jdump({
        "q": f.q,
        "precision": cs.precision,
        "residual": cs.residual,
        "max_relative_deviation": float(np.max(np.abs(mods - f.q)) / f.q),
        "tolerance_ok": True,
    }, out)
    return 0


def cmd_hgsum(args, out):
    from .charsum import get_character_system
    from .hyperg import datum_from_parameters, hg_sum

    datum = datum_from_parameters(parse_rational_list(args.alpha), parse_rational_list(args.beta))
    f = _field_for(args.p**args.n)
    cs = get_character_system(f, _env_precision(args))
    t = f.parse_element(args.t)
    got = hg_sum(datum, f, t, cs=cs)
    _jdump({
        "q": f.q,
        "t": args.t,
        "complex": [got.value.real, got.value.imag],
        "rounded": f"{got.rounded.numerator}/{got.rounded.denominator}",
        "residual": got.residual,
    }, out)
    return 0


def cmd_curve_count(args, out):
    from .ecount import WeierstrassCurve, count_points, trace

    f = _field_for(args.p**args.n)
    curve = WeierstrassCurve(
        f.parse_element(args.a2), f.parse_element(args.a4), f.parse_element(args.a6), f
    )
    n = count_points(curve)
    _jdump({"q": f.q, "count": n, "trace": f.q + 1 - n}, out)
    return 0


def cmd_count_surface(args, out):
    from .k3count import surface_count_report

    f = _field_for(args.p**args.n)
    rep = surface_count_report(f, Fraction(args.t))
    _jdump({
        "q": rep.q,
        "t": args.t,
        "affine": rep.affine[args.mode],
        "affine_by_method": rep.affine,
        "elliptic_surface": rep.surface,
        "transcendental_trace": rep.transcendental,
        "fibers": rep.breakdown,
        "methods_agree": rep.methods_agree,
    }, out)
    return 0 if rep.methods_agree else 1


def _sweep_config_from_args(args, checks):
    if args.q:
        q_list = tuple(int(x) for x in args.q.split(","))
        for q in q_list:
            if len(factorint(q)) != 1 or q % 2 == 0:
                raise UsageError(f"q = {q} is not an odd prime power")
    else:
        q_list = odd_prime_powers(args.pmin, args.pmax)
    return SweepConfig(
        checks=checks,
        q_list=q_list,
        t_list=parse_rational_list(args.t),
        seed=_env_seed(args),
        precision=_env_precision(args),
        fmt=args.format,
        jobs=args.jobs,
        timings=args.timings,
    )


def cmd_verify_counts(args, out):
    checks = tuple(CHECK_CHOICES) if args.which == "all" else (args.which,)
    return run_sweep(_sweep_config_from_args(args, checks), out)


def cmd_verify_curve_theorem(args, out):
    from .charsum import get_character_system
    from .ecount import verify_curve_trace_theorem

    records = []
    for q in (int(x) for x in args.q.split(",")):
        field = _field_for(q)
        cs = get_character_system(field, _env_precision(args))
        for a in range(1, q):
            for b in range(1, q):
                rep = verify_curve_trace_theorem(field, field.from_code(a), field.from_code(b), cs)
                records.append(VerificationRecord(
                    check="curve-theorem", q=q, name=f"a={a},b={b}",
                    passed=rep.passed, skipped=rep.skipped, reason=rep.reason,
                    lhs=rep.count, rhs=rep.rhs,
                ))
    records.sort(key=VerificationRecord.sort_key)
    emit_records(records, args.format, out)
    return 0 if all(r.passed for r in records) else 1


def cmd_verify_maps(args, out):
    from .geomver import verify_all_maps, verify_chain_psi

    reports = verify_all_maps(args.trials, args.bits, _env_seed(args), only=args.only)
    if not args.only:
        reports += [r for r in verify_chain_psi(args.trials, args.bits, _env_seed(args))
                    if r.name == "psi_chain"]
    records = [
        VerificationRecord(
            check="maps", name=r.name, passed=r.passed,
            lhs=r.trials, rhs=r.failures, residual=r.miss_probability_bound,
        )
        for r in reports
    ]
    records.sort(key=VerificationRecord.sort_key)
    emit_records(records, args.format, out)
    return 0 if all(r.passed for r in records) else 1


def cmd_verify_si_params(args, out):
    from .geomver import verify_si_parameters

    rep = verify_si_parameters(seed=_env_seed(args))
    _jdump({"check": rep.name, "pass": rep.passed, "h=1": rep.detail.get("h=1")}, out)
    return 0 if rep.passed else 1


def cmd_verify_qt(args, out):
    from .geomver import verify_Qt_on_curve

    reports = verify_Qt_on_curve(args.trials, args.bits, _env_seed(args))
    for r in reports:
        _jdump({"check": "qt", "name": r.name, "pass": r.passed, "trials": r.trials}, out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_verify_x0_2(args, out):
    from .geomver import x0_2_checks

    rep = x0_2_checks(seed=_env_seed(args))
    _jdump({"check": rep.name, "pass": rep.passed,
            "identities": {k: bool(v) for k, v in rep.detail.items()}}, out)
    return 0 if rep.passed else 1


def cmd_fibration_profile(args, out):
    from .geomver import kodaira_profile

    prof = kodaira_profile(args.model, Fraction(args.t))
    for place in prof.places:
        _jdump({
            "model": prof.model, "t": args.t, "place": place.place,
            "degree": place.degree,
            "ord_c4": place.ord_c4, "ord_c6": place.ord_c6, "ord_delta": place.ord_delta,
            "kodaira": place.kodaira, "expected": place.expected,
            "pass": place.matches,
        }, out)
    _jdump({"model": prof.model, "t": args.t, "euler_total": prof.euler_total,
            "pass": prof.passed}, out)
    return 0 if prof.passed else 1


def cmd_lattice(args, out):
    from .nslat import SectionProfile, ns_cm_gram, ns_gram_generic, verify_table5

    if args.which == "ns-generic":
        lat = ns_gram_generic()
        _jdump({
            "rank": lat.rank, "det": lat.det(), "signature": list(lat.signature()),
            "gram": [list(r) for r in lat.entries],
        }, out)
        return 0
    if args.which == "cm":
        lat = ns_cm_gram(SectionProfile(
            p_O=args.po, p_e7=args.pe7, p_g2=args.pg2, p_g3=args.pg3,
        ))
        _jdump({
            "rank": lat.rank, "det": lat.det(), "signature": list(lat.signature()),
            "tail_block": [list(r)[18:] for r in lat.entries[18:]],
        }, out)
        return 0
    rows = verify_table5()
    ok = True
    for row in rows:
        ok &= row.passed
        _jdump({
            "t": f"{row.t.numerator}/{row.t.denominator}" if row.t.denominator != 1 else str(row.t.numerator),
            "abc": [row.a, row.b, row.c],
            "class": row.class_name, "P.O": row.p_O,
            "pass": row.passed, "reason": row.reason,
        }, out)
    return 0 if ok else 1


def cmd_cm(args, out):
    from .cmdata import (
        classify_t,
        cm_trace_survey,
        verify_classification_consistency,
        verify_quadratic_cm,
        verify_rational_cm,
    )

    if args.which == "classify":
        _jdump({"t": args.t, "class": classify_t(Fraction(args.t))}, out)
        return 0
    if args.which == "verify":
        ok = True
        for check in verify_rational_cm():
            ok &= check.passed
            _jdump({"check": "cm-rational", "t": str(check.t), "pass": check.passed}, out)
        for check in verify_quadratic_cm():
            ok &= check.passed
            _jdump({"check": "cm-quadratic", "t": str(check.t), "pass": check.passed}, out)
        spot = verify_classification_consistency(seed=_env_seed(args))
        ok &= spot.passed
        _jdump({"check": "cm-consistency", "pass": spot.passed}, out)
        return 0 if ok else 1
    rows = cm_trace_survey(Fraction(args.t), args.pmax)
    for row in rows:
        _jdump({"t": args.t, "p": row.p, "T": row.T, "a_squared": row.a_sq,
                "kronecker_D": row.kronecker_D}, out)
    return 0


def cmd_report_schema(args, out):
    _jdump(report_schema(), out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_field_args(p):
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, default=1)


def _add_sweep_args(p):
    p.add_argument("--pmin", type=int, default=3)
    p.add_argument("--pmax", type=int, default=50)
    p.add_argument("--q", type=str, default=None, help="explicit comma-separated q list")
    p.add_argument("--t", "--t-list", dest="t", type=str, required=True,
                   help="comma-separated rationals")
    p.add_argument("--format", choices=("json-lines", "csv"), default="json-lines")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--precision", type=int, default=None)
    p.add_argument("--timings", action="store_true")


def build_parser():
    top = argparse.ArgumentParser(prog="hgmk3", description=__doc__)
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("field-info")
    _add_field_args(p)
    p.set_defaults(func=cmd_field_info)

    p = sub.add_parser("gauss-check")
    _add_field_args(p)
    p.add_argument("--precision", type=int, default=None)
    p.set_defaults(func=cmd_gauss_check)

    p = sub.add_parser("hgsum")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    _add_field_args(p)
    p.add_argument("--t", required=True)
    p.add_argument("--precision", type=int, default=None)
    p.set_defaults(func=cmd_hgsum)

    p = sub.add_parser("curve")
    csub = p.add_subparsers(dest="which", required=True)
    c = csub.add_parser("count")
    _add_field_args(c)
    c.add_argument("--a2", required=True)
    c.add_argument("--a4", required=True)
    c.add_argument("--a6", required=True)
    c.set_defaults(func=cmd_curve_count)

    p = sub.add_parser("count")
    csub = p.add_subparsers(dest="which", required=True)
    c = csub.add_parser("surface")
    _add_field_args(c)
    c.add_argument("--t", required=True)
    c.add_argument("--mode", choices=("solved-z", "naive"), default="solved-z")
    c.set_defaults(func=cmd_count_surface)

    p = sub.add_parser("verify")
    vsub = p.add_subparsers(dest="which", required=True)
    for which in CHECK_CHOICES + ("all",):
        v = vsub.add_parser(which)
        _add_sweep_args(v)
        v.set_defaults(func=cmd_verify_counts)
    v = vsub.add_parser("curve-theorem")
    v.add_argument("--q", required=True, help="comma-separated q list, exhaustive (a,b)")
    v.add_argument("--format", choices=("json-lines", "csv"), default="json-lines")
    v.add_argument("--precision", type=int, default=None)
    v.set_defaults(func=cmd_verify_curve_theorem)
    v = vsub.add_parser("maps")
    v.add_argument("--only", default=None)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--bits", type=int, default=62)
    v.add_argument("--seed", type=int, default=None)
    v.add_argument("--format", choices=("json-lines", "csv"), default="json-lines")
    v.set_defaults(func=cmd_verify_maps)
    v = vsub.add_parser("si-params")
    v.add_argument("--seed", type=int, default=None)
    v.set_defaults(func=cmd_verify_si_params)
    v = vsub.add_parser("qt")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--bits", type=int, default=62)
    v.add_argument("--seed", type=int, default=None)
    v.set_defaults(func=cmd_verify_qt)
    v = vsub.add_parser("x0-2")
    v.add_argument("--seed", type=int, default=None)
    v.set_defaults(func=cmd_verify_x0_2)

    p = sub.add_parser("fibration")
    fsub = p.add_subparsers(dest="which", required=True)
    f = fsub.add_parser("profile")
    f.add_argument("--model", required=True,
                   choices=("family19", "family19alt", "weier1", "inose", "xslice"))
    f.add_argument("--t", required=True)
    f.set_defaults(func=cmd_fibration_profile)

    p = sub.add_parser("lattice")
    lsub = p.add_subparsers(dest="which", required=True)
    l = lsub.add_parser("ns-generic")
    l.set_defaults(func=cmd_lattice)
    l = lsub.add_parser("cm")
    l.add_argument("--pe7", type=int, default=0)
    l.add_argument("--pg2", type=int, default=0)
    l.add_argument("--pg3", type=int, default=0)
    l.add_argument("--po", type=int, default=0)
    l.set_defaults(func=cmd_lattice)
    l = lsub.add_parser("table5")
    l.set_defaults(func=cmd_lattice)

    p = sub.add_parser("cm")
    msub = p.add_subparsers(dest="which", required=True)
    m = msub.add_parser("classify")
    m.add_argument("--t", required=True)
    m.set_defaults(func=cmd_cm)
    m = msub.add_parser("verify")
    m.add_argument("--seed", type=int, default=None)
    m.set_defaults(func=cmd_cm)
    m = msub.add_parser("survey")
    m.add_argument("--t", required=True)
    m.add_argument("--pmax", type=int, default=50)
    m.set_defaults(func=cmd_cm)

    p = sub.add_parser("report-schema")
    p.set_defaults(func=cmd_report_schema)
    return top


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
