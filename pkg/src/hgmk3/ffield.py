"""Exact arithmetic in odd-characteristic finite fields F_q with q = p^n <= 2^24.

Elements are held Zech-style: a nonzero element is the exponent k of the fixed
generator (value = generator^k), zero is a separate marker.  Multiplication is
then addition mod q-1 and discrete logs are free; addition goes through a
precomputed successor table of size q.  Everything is chosen deterministically
(lexicographically least modulus, least generator) so downstream character sums
are reproducible bit for bit.

For bulk counting loops the module also exposes a vectorised "code" view:
an element is the integer c0 + c1*p + ... + c_{n-1}*p^(n-1) of its polynomial
coordinates, and numpy arrays of codes are combined through the exp/dlog
tables.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sympy import factorint, isprime

Q_MAX = 2**24  # table-resident bound


class FieldConstructionError(ValueError):
    """Raised when (p, n) violates a construction precondition."""


class DomainError(ValueError):
    """Raised when an operation is applied outside its domain (e.g. dlog of 0)."""


class ReductionError(ZeroDivisionError):
    """Raised when a rational cannot be reduced into F_q (p divides a denominator)."""


# ---------------------------------------------------------------------------
# dense polynomial helpers over F_p (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul_mod(a, b, modulus, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(out, modulus, p)


def _poly_rem(a, modulus, p):
    a = list(a)
    n = len(modulus) - 1
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(n):
                a[i - n + j] = (a[i - n + j] - c * modulus[j]) % p
    return _poly_trim(a[:n] if len(a) > n else a)


def _poly_pow_mod(a, e, modulus, p):
    result = [1]
    base = _poly_rem(a, modulus, p)
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, modulus, p)
        base = _poly_mul_mod(base, base, modulus, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # a mod b with b made monic
        inv = pow(b[-1], -1, p)
        bm = [(c * inv) % p for c in b]
        r = _poly_rem(a, bm, p)
        a, b = b, r
    return a


def _poly_sub(a, b, p):
    m = max(len(a), len(b))
    return _poly_trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(m)])


def _is_irreducible(coeffs, p):
    """Rabin test for a monic polynomial given as a low-first coefficient list."""
    n = len(coeffs) - 1
    if n == 1:
        return True
    x = [0, 1]
    xq = x
    for _ in range(n):
        xq = _poly_pow_mod(xq, p, coeffs, p)
    if _poly_sub(xq, x, p):  # need x^(p^n) == x (mod f)
        return False
    for r in factorint(n):
        xq = x
        for _ in range(n // r):
            xq = _poly_pow_mod(xq, p, coeffs, p)
        g = _poly_gcd(coeffs, _poly_sub(xq, x, p), p)
        if len(g) != 1:
            return False
    return True


def _least_irreducible(p, n):
    """Lexicographically least monic irreducible of degree n over F_p.

    Coefficient lists (c0, ..., c_{n-1}) are compared low-to-high as integers.
    """
    if n == 1:
        return [0, 1]  # x, i.e. the identity quotient F_p[x]/(x) ~ F_p
    from itertools import product

    for tail in product(range(p), repeat=n):
        coeffs = list(tail) + [1]
        if _is_irreducible(coeffs, p):
            return coeffs
    raise FieldConstructionError(f"no irreducible of degree {n} over F_{p}")  # unreachable


# ---------------------------------------------------------------------------
# FieldSpec
# ---------------------------------------------------------------------------

class FieldSpec:
    """An odd-characteristic finite field with fixed generator and full dlog table.

    Attributes:
        p, n, q: characteristic, extension degree, order.
        modulus: monic irreducible coefficient list (low degree first), length n+1.
        generator: code of the chosen multiplicative generator.
        exp: int32 array, exp[k] = code of generator^k, k in [0, q-2].
        dlog: int32 array over codes, dlog[0] = -1.
        zech: int32 array, zech[k] = dlog(1 + generator^k), -1 when 1+g^k = 0.
        trace: int32 array over codes, absolute trace to F_p.

    Construction is single-threaded; instances are never mutated afterwards and
    are safe for concurrent read-only sharing.
    """

    def __init__(self, p, n=1, generator=None):
        if not isinstance(p, int) or not isprime(p):
            raise FieldConstructionError(f"p = {p} is not prime")
        if p == 2:
            raise FieldConstructionError("p = 2 is excluded (all sums require odd q)")
        if n < 1:
            raise FieldConstructionError(f"extension degree n = {n} must be >= 1")
        q = p**n
        if q > Q_MAX:
            raise FieldConstructionError(f"q = {q} exceeds the table-resident bound 2^24")
        self.p = p
        self.n = n
        self.q = q
        self.modulus = _least_irreducible(p, n)
        self._q1_factors = tuple(factorint(q - 1))
        if generator is None:
            self.generator = self._find_generator()
        else:
            if not self._generates(int(generator)):
                raise FieldConstructionError(f"code {generator} does not generate F_{q}^x")
            self.generator = int(generator)
        self._build_tables()

    def next_generator(self):
        """Field rebuilt with the next-larger generator (for independence checks)."""
        for code in range(self.generator + 1, self.q):
            if self._generates(code):
                return FieldSpec(self.p, self.n, generator=code)
        raise FieldConstructionError("no larger generator exists")

    # -- construction -------------------------------------------------------

    def _code_to_poly(self, code):
        out = []
        for _ in range(self.n):
            code, c = divmod(code, self.p)
            out.append(c)
        return _poly_trim(out)

    def _poly_to_code(self, poly):
        code = 0
        for c in reversed(poly):
            code = code * self.p + c
        return code

    def _generates(self, code):
        if not 1 <= code < self.q:
            return False
        q1 = self.q - 1
        poly = self._code_to_poly(code)
        return all(
            _poly_pow_mod(poly, q1 // r, self.modulus, self.p) != [1]
            for r in self._q1_factors
        )

    def _find_generator(self):
        for code in range(1, self.q):
            if self._generates(code):
                return code
        raise FieldConstructionError("no generator found")  # unreachable

    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        exp = np.empty(q - 1, dtype=np.int32)
        gpoly = self._code_to_poly(self.generator)
        cur = [1]
        for k in range(q - 1):
            exp[k] = self._poly_to_code(cur)
            cur = _poly_mul_mod(cur, gpoly, self.modulus, p)
        dlog = np.full(q, -1, dtype=np.int32)
        dlog[exp] = np.arange(q - 1, dtype=np.int32)
        self.exp = exp
        self.dlog = dlog
        # zech successor table: zech[k] = dlog(g^k + 1)
        succ = self.add_codes(exp, np.int32(1))
        self.zech = dlog[succ]
        # absolute trace via F_p-linearity on the power basis
        basis_traces = []
        for j in range(n):
            acc = [0] * n
            cur = _poly_rem([0] * j + [1], self.modulus, p)
            for _ in range(n):
                for i, c in enumerate(cur):
                    acc[i] = (acc[i] + c) % p
                cur = _poly_pow_mod(cur, p, self.modulus, p)
            if any(acc[1:]):
                raise FieldConstructionError("trace of basis element not in F_p")
            basis_traces.append(acc[0])
        codes = np.arange(q, dtype=np.int64)
        tr = np.zeros(q, dtype=np.int64)
        for j in range(n):
            digit = (codes // p**j) % p
            tr += digit * basis_traces[j]
        self.trace = (tr % p).astype(np.int32)

    # -- vectorised code arithmetic ------------------------------------------

    def add_codes(self, a, b):
        if self.n == 1:
            return ((np.asarray(a, dtype=np.int64) + np.asarray(b, dtype=np.int64)) % self.p).astype(np.int32)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for j in range(self.n):
            pj = self.p**j
            dj = ((a // pj) + (b // pj)) % self.p
            out += dj * pj
        return out.astype(np.int32)

    def neg_codes(self, a):
        if self.n == 1:
            return ((-np.asarray(a, dtype=np.int64)) % self.p).astype(np.int32)
        a = np.asarray(a, dtype=np.int64)
        out = np.zeros(a.shape, dtype=np.int64)
        for j in range(self.n):
            pj = self.p**j
            dj = (-(a // pj)) % self.p
            out += dj * pj
        return out.astype(np.int32)

    def sub_codes(self, a, b):
        return self.add_codes(a, self.neg_codes(np.asarray(b, dtype=np.int32)))

    def mul_codes(self, a, b):
        a = np.asarray(a, dtype=np.int32)
        b = np.asarray(b, dtype=np.int32)
        ka = self.dlog[a].astype(np.int64)
        kb = self.dlog[b].astype(np.int64)
        out = self.exp[(ka + kb) % (self.q - 1)].astype(np.int32)
        zero = (a == 0) | (b == 0)
        if np.ndim(out) == 0:
            return np.int32(0) if zero else out
        out[zero] = 0
        return out

    def inv_codes(self, a):
        a = np.asarray(a, dtype=np.int32)
        if np.any(a == 0):
            raise DomainError("inverse of zero")
        return self.exp[(-self.dlog[a].astype(np.int64)) % (self.q - 1)].astype(np.int32)

    def pow_codes(self, a, e):
        a = np.asarray(a, dtype=np.int32)
        zero = a == 0
        if e <= 0 and np.any(zero):
            raise DomainError("0^e with e <= 0")
        k = self.dlog[a].astype(np.int64)
        out = self.exp[(k * e) % (self.q - 1)].astype(np.int32)
        if np.ndim(out) == 0:
            return np.int32(0) if zero else out
        out[zero] = 0
        return out

    def chi_codes(self, a):
        """Quadratic character on codes: 0 at 0, else (-1)^dlog."""
        a = np.asarray(a, dtype=np.int32)
        k = self.dlog[a]
        out = 1 - 2 * (k & 1)
        return np.where(a == 0, 0, out).astype(np.int64)

    # -- scalar element plumbing ---------------------------------------------

    def zero(self):
        return FqElem(self, None)

    def one(self):
        return FqElem(self, 0)

    def gen(self):
        return FqElem(self, 1)

    def from_code(self, code):
        code = int(code)
        if not 0 <= code < self.q:
            raise DomainError(f"code {code} out of range for q = {self.q}")
        if code == 0:
            return FqElem(self, None)
        return FqElem(self, int(self.dlog[code]))

    def from_int(self, value):
        return self.from_code(value % self.p)

    def from_coeffs(self, coeffs):
        if len(coeffs) > self.n:
            raise DomainError("coefficient list longer than the extension degree")
        return self.from_code(self._poly_to_code([c % self.p for c in coeffs]))

    def from_rational(self, r):
        r = Fraction(r)
        if r.denominator % self.p == 0:
            raise ReductionError(f"denominator of {r} is divisible by p = {self.p}")
        num = r.numerator % self.p
        den_inv = pow(r.denominator % self.p, -1, self.p)
        return self.from_code((num * den_inv) % self.p)

    def elements(self):
        """All q elements, zero first then generator powers."""
        yield self.zero()
        for k in range(self.q - 1):
            yield FqElem(self, k)

    def parse_element(self, text):
        """CLI/JSON encoding: an integer for prime fields, "[c0,c1,...]" otherwise."""
        text = text.strip()
        if text.startswith("["):
            coeffs = [int(c) for c in text.strip("[]").split(",") if c.strip()]
            return self.from_coeffs(coeffs)
        return self.from_int(int(text))

    def format_element(self, x):
        if self.n == 1:
            return str(x.code)
        return "[" + ",".join(str(c) for c in x.coeffs()) + "]"

    def __repr__(self):
        if self.n == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.n}"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.p, self.n, self.generator) == (other.p, other.n, other.generator)
        )

    def __hash__(self):
        return hash((self.p, self.n, self.generator))


class FqElem:
    """A field element: the zero marker or an exponent of the fixed generator."""

    __slots__ = ("field", "e")

    def __init__(self, field, e):
        self.field = field
        self.e = None if e is None else e % (field.q - 1)

    @property
    def is_zero(self):
        return self.e is None

    @property
    def code(self):
        return 0 if self.e is None else int(self.field.exp[self.e])

    def coeffs(self):
        poly = self.field._code_to_poly(self.code)
        return poly + [0] * (self.field.n - len(poly))

    def __add__(self, other):
        other = _coerce(self.field, other)
        if self.e is None:
            return other
        if other.e is None:
            return self
        f = self.field
        d = f.zech[(other.e - self.e) % (f.q - 1)]
        if d < 0:
            return FqElem(f, None)
        return FqElem(f, self.e + int(d))

    __radd__ = __add__

    def __neg__(self):
        if self.e is None:
            return self
        f = self.field
        if f.p == 2:  # pragma: no cover - p=2 excluded at construction
            return self
        return FqElem(f, self.e + (f.q - 1) // 2)

    def __sub__(self, other):
        return self + (-_coerce(self.field, other))

    def __rsub__(self, other):
        return _coerce(self.field, other) - self

    def __mul__(self, other):
        other = _coerce(self.field, other)
        if self.e is None or other.e is None:
            return FqElem(self.field, None)
        return FqElem(self.field, self.e + other.e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(self.field, other)
        if other.e is None:
            raise DomainError("division by zero")
        if self.e is None:
            return self
        return FqElem(self.field, self.e - other.e)

    def __rtruediv__(self, other):
        return _coerce(self.field, other) / self

    def __pow__(self, k):
        if self.e is None:
            if k <= 0:
                raise DomainError("0^k with k <= 0")
            return self
        return FqElem(self.field, self.e * k)

    def __eq__(self, other):
        try:
            other = _coerce(self.field, other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.field == other.field and self.e == other.e

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.e))

    def __repr__(self):
        return f"{self.field!r}({self.field.format_element(self)})"


def _coerce(field, value):
    if isinstance(value, FqElem):
        if value.field != field:
            raise ValueError("elements of different fields")
        return value
    if isinstance(value, int):
        return field.from_int(value)
    if isinstance(value, Fraction):
        return field.from_rational(value)
    raise TypeError(f"cannot coerce {value!r} into {field!r}")


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------

def field_new(p, n=1):
    """Deterministic field construction (least modulus, least generator)."""
    return FieldSpec(p, n)


def dlog(field, x):
    """Exponent k with generator^k = x; x must be nonzero."""
    x = _coerce(field, x)
    if x.e is None:
        raise DomainError("dlog of zero")
    return x.e


def is_square(field, x):
    x = _coerce(field, x)
    if x.e is None:
        return True
    return x.e % 2 == 0


def sqrt(field, x):
    """A square root, choosing the root with the smaller exponent; None if no root."""
    x = _coerce(field, x)
    if x.e is None:
        return field.zero()
    if x.e % 2:
        return None
    return FqElem(field, x.e // 2)


def trace_to_prime(field, x):
    """Absolute trace x + x^p + ... + x^(p^(n-1)) as an integer in [0, p)."""
    x = _coerce(field, x)
    return int(field.trace[x.code])


def quadratic_character(field, x):
    """chi(x) in {-1, 0, 1} with chi(0) = 0."""
    x = _coerce(field, x)
    if x.e is None:
        return 0
    return -1 if x.e % 2 else 1
