"""Exact arithmetic in GF(p^e).

Elements are canonical integer indices 0..q-1.  The index encodes the
residue polynomial's coefficient vector constant-first in base p:
index = sum(coeffs[i] * p**i), so 0 and 1 are the field's zero and one
for every p, e.  A `GF` context carries the modulus and all operations;
structured types built on top (polynomials, plane objects) enforce that
their operands share one context.

The modulus is a monic irreducible polynomial of degree e over GF(p),
stored constant-first.  When none is given, the default is the first
irreducible monic polynomial of degree e in ascending index order
(same base-p encoding as elements), e.g. x^3 + x + 1 for GF(8).
"""

import functools
import re

from .errors import (
    DegreeMismatch,
    DivisionByZero,
    FieldMismatch,
    InputError,
    NotPrime,
    ParseError,
    ReducibleModulus,
)

_TABLE_LIMIT = 64  # precompute mul/inv tables for extension fields this small


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# -- digit-vector helpers over GF(p), constant-first, trailing zeros trimmed


def _trim(v):
    while v and v[-1] == 0:
        v.pop()
    return v


def _psub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
           for i in range(n)]
    return _trim(out)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _pdivmod(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db:
        da = len(a) - 1
        c = a[-1] * inv_lead % p
        quo[da - db] = c
        for j in range(db + 1):
            a[da - db + j] = (a[da - db + j] - c * b[j]) % p
        _trim(a)
    return _trim(quo), a


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pinvmod(a, mod, p):
    """Inverse of a modulo mod in GF(p)[x], by the extended Euclid."""
    r0, r1 = list(mod), _trim(list(a))
    t0, t1 = [], [1]
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, _psub(t0, _pmul(q, t1, p), p)
    # r0 is the gcd, a nonzero constant whenever a is a unit
    c = pow(r0[0], p - 2, p)
    return _trim([x * c % p for x in t0])


def _irreducible(mod, p):
    """Trial division by every monic polynomial of degree 1..e//2."""
    e = len(mod) - 1
    if mod[-1] != 1:
        return False
    for d in range(1, e // 2 + 1):
        for idx in range(p ** d):
            div, k = [0] * d + [1], idx
            for i in range(d):
                div[i] = k % p
                k //= p
            if not _pmod(mod, div, p):
                return False
    return True


class GF:
    """Context for GF(p^e); all element operations live here."""

    __slots__ = ("p", "e", "q", "modulus", "_mul_table", "_inv_table",
                 "_add_table", "_digit_cache")

    def __init__(self, p, e=1, modulus=None):
        if not isinstance(p, int) or not _is_prime(p):
            raise NotPrime(f"{p!r} is not prime")
        if not isinstance(e, int) or e < 1:
            raise InputError(f"extension degree must be a positive integer, got {e!r}")
        self.p = p
        self.e = e
        self.q = p ** e
        if modulus is None:
            self.modulus = self._default_modulus()
        else:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != e + 1:
                raise DegreeMismatch(
                    f"modulus has degree {len(modulus) - 1}, expected {e}")
            if any(not 0 <= c < p for c in modulus):
                raise InputError("modulus coefficients must lie in 0..p-1")
            if modulus[-1] != 1:
                raise InputError("modulus must be monic")
            if e > 1 and not _irreducible(list(modulus), p):
                raise ReducibleModulus(f"modulus {list(modulus)} is reducible over GF({p})")
            self.modulus = modulus
        self._digit_cache = None
        self._mul_table = self._inv_table = self._add_table = None
        if e > 1 and self.q <= _TABLE_LIMIT:
            self._build_tables()

    def _default_modulus(self):
        if self.e == 1:
            return (0, 1)
        for idx in range(self.q):
            mod, k = [0] * self.e + [1], idx
            for i in range(self.e):
                mod[i] = k % self.p
                k //= self.p
            if _irreducible(mod, self.p):
                return tuple(mod)
        raise RuntimeError("unreachable: irreducible polynomials exist for every degree")

    def _build_tables(self):
        q = self.q
        self._digit_cache = [self.coeffs(a) for a in range(q)]
        self._mul_table = [[self._mul_raw(a, b) for b in range(q)] for a in range(q)]
        self._inv_table = [0] * q
        for a in range(1, q):
            self._inv_table[a] = self._inv_raw(a)
        if self.p != 2:
            self._add_table = [[self._add_raw(a, b) for b in range(q)] for a in range(q)]

    # -- element <-> coefficient vector ---------------------------------

    def check(self, a):
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise FieldMismatch(f"{a!r} is not an element index of {self!r}")
        return a

    def coeffs(self, a):
        """Length-e coefficient vector of element a, constant term first."""
        self.check(a)
        out = []
        for _ in range(self.e):
            out.append(a % self.p)
            a //= self.p
        return out

    def from_coeffs(self, v):
        v = list(v)
        if len(v) > self.e:
            if any(v[self.e:]):
                raise DegreeMismatch(f"coefficient vector longer than e={self.e}")
            v = v[: self.e]
        idx = 0
        for c in reversed(v):
            idx = idx * self.p + c % self.p
        return idx

    def elements(self):
        """All elements in ascending index order (0 first, then 1)."""
        return range(self.q)

    # -- arithmetic ------------------------------------------------------

    def add(self, a, b):
        self.check(a), self.check(b)
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._add_raw(a, b)

    def _add_raw(self, a, b):
        if self.p == 2:
            return a ^ b
        p = self.p
        return self.from_coeffs([(x + y) % p
                                 for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a):
        self.check(a)
        if self.e == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_coeffs([(-c) % self.p for c in self.coeffs(a)])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        self.check(a), self.check(b)
        if self.e == 1:
            return a * b % self.p
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._mul_raw(a, b)

    def _mul_raw(self, a, b):
        prod = _pmul(_trim(self.coeffs(a)), _trim(self.coeffs(b)), self.p)
        return self.from_coeffs(_pmod(prod, list(self.modulus), self.p))

    def inv(self, a):
        self.check(a)
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        if self._inv_table is not None:
            return self._inv_table[a]
        return self._inv_raw(a)

    def _inv_raw(self, a):
        return self.from_coeffs(_pinvmod(_trim(self.coeffs(a)), list(self.modulus), self.p))

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero(f"division by zero in {self!r}")
        return self.mul(a, self.inv(b))

    def pow(self, a, k):
        """a**k by square-and-multiply; k must be a non-negative integer."""
        self.check(a)
        if not isinstance(k, int) or k < 0:
            raise InputError(f"exponent must be a non-negative integer, got {k!r}")
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def from_int(self, n):
        """The prime-subfield element n mod p (image of the integer n)."""
        return n % self.p

    def trace(self, a):
        """Absolute trace to GF(p): a + a^p + ... + a^(p^(e-1))."""
        acc, x = 0, self.check(a)
        for _ in range(self.e):
            acc = self.add(acc, x)
            x = self.pow(x, self.p)
        return acc

    # -- identity --------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, GF)
                and (self.p, self.e, self.modulus) == (other.p, other.e, other.modulus))

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    def __repr__(self):
        return f"GF({self.p})" if self.e == 1 else f"GF({self.p}^{self.e})"


@functools.lru_cache(maxsize=None)
def _cached_field(p, e, modulus):
    return GF(p, e, modulus)


def field_create(p, e=1, modulus=None):
    """Build (or fetch the cached) GF(p^e) with the given or default modulus."""
    if modulus is not None:
        modulus = tuple(int(c) for c in modulus)
    return _cached_field(p, e, modulus)


_SPEC_RE = re.compile(r"^(\d+)(?:\^(\d+))?(?::m=([\d,]+))?$")


def parse_field_spec(spec):
    """Parse "p", "p^e" or "p^e:m=c0,c1,...,ce" into a field context."""
    m = _SPEC_RE.match(spec.strip())
    if not m:
        raise ParseError(f"bad field spec {spec!r} (want p, p^e or p^e:m=c0,c1,...)")
    p = int(m.group(1))
    e = int(m.group(2)) if m.group(2) else 1
    modulus = tuple(int(c) for c in m.group(3).split(",")) if m.group(3) else None
    return field_create(p, e, modulus)
