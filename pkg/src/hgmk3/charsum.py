"""Multiplicative/additive characters on F_q and the Gauss-sum table g(m).

Fixes omega(x) = zeta_{q-1}^dlog(x) for the field's chosen generator and
psi_q(x) = zeta_p^Tr(x), and tabulates

    g(m) = sum_{x != 0} omega^m(x) psi_q(x),   m in [0, q-2],

which is a length-(q-1) DFT of the sequence zeta_p^Tr(g^k).  g(0) is stored as
the exact value -1.  Sums are floating point with explicit residual tracking;
exactness downstream is recovered by integer rounding plus independent
point-count oracles.
"""

from __future__ import annotations

import math

import numpy as np

from .ffield import DomainError, FieldSpec, FqElem

AUTO_HIGHPREC_Q = 10**4  # beyond this, 53-bit accumulation is not trusted


class PrecisionError(ArithmeticError):
    """Raised when the Gauss table misses its |g(m)|^2 = q certification."""


def tolerance(q, precision):
    """Permitted max deviation of |g(m)|^2 from q."""
    if precision <= 53:
        return 1e-6 * math.sqrt(q)
    return math.sqrt(q) * 2.0 ** (24 - precision)


class CharacterSystem:
    """Gauss-sum table plus root-of-unity lookup tables for one field.

    Attributes:
        field: the underlying FieldSpec.
        precision: working precision in bits (53 = numpy double).
        gauss: complex array of g(m), m in [0, q-2]; gauss[0] == -1 exactly.
        residual: max over m != 0 of | |g(m)|^2 - q |.
        twist: code of the element a defining psi(x) = psi_q(a x) (1 = canonical).
    """

    def __init__(self, field: FieldSpec, precision=None, twist=1):
        if precision is None:
            precision = 53 if field.q <= AUTO_HIGHPREC_Q else 128
        if precision < 53:
            raise ValueError("precision must be >= 53 bits")
        self.field = field
        self.precision = precision
        self.twist = int(twist)
        if not 1 <= self.twist < field.q:
            raise DomainError("additive-character twist must be a nonzero element code")
        q = field.q
        self.gauss_mp = None
        if precision == 53:
            self._zeta = np.exp(2j * np.pi * np.arange(q - 1) / (q - 1))
            self.gauss = self._build_double()
            dev = np.abs(np.abs(self.gauss) ** 2 - q)
            dev[0] = 0.0
            self.residual = float(dev.max())
        else:
            self._zeta = None
            self.gauss_mp = self._build_mp()
            import mpmath as mp

            with mp.workprec(precision):
                self.residual = float(
                    max(abs(abs(g) ** 2 - q) for g in self.gauss_mp[1:]) if q > 2 else 0.0
                )
            self.gauss = np.array([complex(g) for g in self.gauss_mp])
        tol = tolerance(q, precision)
        if self.residual > tol:
            raise PrecisionError(
                f"gauss table residual {self.residual:.3g} exceeds {tol:.3g};"
                " retry with a higher-precision CharacterSystem"
            )
        self.gauss[0] = -1.0  # exact: full additive sum is 0, minus the x=0 term
        if self.gauss_mp is not None:
            self.gauss_mp[0] = -1
        self._hg_cache = {}

    def _trace_sequence(self):
        f = self.field
        codes = f.exp
        if self.twist != 1:
            codes = f.mul_codes(codes, np.int32(self.twist))
        return f.trace[codes]

    def _build_double(self):
        f = self.field
        c = np.exp(2j * np.pi * self._trace_sequence() / f.p)
        # G[m] = sum_k c_k zeta_{q-1}^{km}
        return np.fft.ifft(c) * (f.q - 1)

    def _build_mp(self):
        import mpmath as mp

        f = self.field
        q = f.q
        with mp.workprec(self.precision):
            zq = [mp.expjpi(mp.mpf(2 * k) / (q - 1)) for k in range(q - 1)]
            zp = [mp.expjpi(mp.mpf(2 * r) / f.p) for r in range(f.p)]
            tr = self._trace_sequence()
            out = []
            for m in range(q - 1):
                acc = mp.mpc(0)
                for k in range(q - 1):
                    acc += zq[(m * k) % (q - 1)] * zp[int(tr[k])]
                out.append(acc)
        return out

    # -- operations -----------------------------------------------------------

    def gauss_at(self, m):
        """g(m mod (q-1))."""
        return complex(self.gauss[m % (self.field.q - 1)])

    def omega_power(self, x, m):
        """omega(x)^m = zeta_{q-1}^{m dlog x}; x must be nonzero."""
        if isinstance(x, FqElem):
            if x.is_zero:
                raise DomainError("omega of zero")
            k = x.e
        else:
            k = int(self.field.dlog[int(x)])
            if k < 0:
                raise DomainError("omega of zero")
        q1 = self.field.q - 1
        idx = (m * k) % q1
        if self._zeta is not None:
            return complex(self._zeta[idx])
        return complex(np.exp(2j * np.pi * idx / q1))

    def omega_vector(self, x, ms):
        """omega(x)^m over an integer array of m values."""
        if isinstance(x, FqElem):
            if x.is_zero:
                raise DomainError("omega of zero")
            k = x.e
        else:
            k = int(self.field.dlog[int(x)])
            if k < 0:
                raise DomainError("omega of zero")
        q1 = self.field.q - 1
        idx = (np.asarray(ms, dtype=np.int64) * k) % q1
        if self._zeta is not None:
            return self._zeta[idx]
        return np.exp(2j * np.pi * idx / q1)


def gauss_table(field, precision=None, twist=1):
    """Build a CharacterSystem; fails with PrecisionError if residual too large."""
    return CharacterSystem(field, precision, twist)


_SYSTEMS = {}


def get_character_system(field, precision=None, twist=1):
    """Cached per-(field, precision, twist) CharacterSystem."""
    key = (field.p, field.n, field.generator, precision, twist)
    cs = _SYSTEMS.get(key)
    if cs is None:
        cs = CharacterSystem(field, precision, twist)
        _SYSTEMS[key] = cs
    return cs
