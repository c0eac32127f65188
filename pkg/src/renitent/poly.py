"""Polynomials over a GF context: univariate, bivariate, homogeneous trivariate.

UniPoly stores a dense low-degree-first coefficient vector with trailing
zeros trimmed; the zero polynomial is the empty vector and reports
degree -1 (a sentinel below every true degree).  BiPoly and TriHomPoly
store sparse {exponents: coefficient} maps with no zero entries, which
keeps representations canonical.  All binary operations require both
operands to share one field context.
"""

from .errors import (
    BothZero,
    DegreeTooSmall,
    FieldMismatch,
    InputError,
    ZeroPolynomial,
)


def _same_field(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"mixed contexts {a.field!r} and {b.field!r}")


class UniPoly:
    """Univariate polynomial; coeffs[i] is the coefficient of x^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        coeffs = [field.check(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.field = field
        self.coeffs = tuple(coeffs)

    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def constant(cls, field, c):
        return cls(field, (c,))

    @classmethod
    def x(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def x_minus(cls, field, gamma):
        return cls(field, (field.neg(gamma), 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        _same_field(self, other)
        K = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = K.add(out[i], c)
        return UniPoly(K, out)

    def __neg__(self):
        K = self.field
        return UniPoly(K, [K.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        _same_field(self, other)
        K = self.field
        if not self.coeffs or not other.coeffs:
            return UniPoly.zero(K)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = K.add(out[i + j], K.mul(a, b))
        return UniPoly(K, out)

    def scale(self, c):
        K = self.field
        return UniPoly(K, [K.mul(c, x) for x in self.coeffs])

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError(f"exponent must be a non-negative integer, got {k!r}")
        result = UniPoly.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        _same_field(self, other)
        if other.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        K = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = K.inv(other.leading())
        quo = [0] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db:
            da = len(rem) - 1
            c = K.mul(rem[-1], inv_lead)
            quo[da - db] = c
            for j, bc in enumerate(other.coeffs):
                rem[da - db + j] = K.sub(rem[da - db + j], K.mul(c, bc))
            while rem and rem[-1] == 0:
                rem.pop()
        return UniPoly(K, quo), UniPoly(K, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        lead = self.leading()
        return self if lead == 1 else self.scale(self.field.inv(lead))

    def eval(self, x):
        """Horner evaluation at the element x."""
        K = self.field
        K.check(x)
        acc = 0
        for c in reversed(self.coeffs):
            acc = K.add(K.mul(acc, x), c)
        return acc

    __call__ = eval

    def __eq__(self, other):
        return (isinstance(other, UniPoly)
                and self.field == other.field and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def render(self, var="x"):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                x = var if i == 1 else f"{var}^{i}"
                parts.append(x if c == 1 else f"{c}*{x}")
        return " + ".join(parts)

    def __repr__(self):
        return f"UniPoly({self.render()})"


def uni_gcd(f, g):
    """Monic gcd by the Euclidean algorithm; gcd(f, 0) is monic f."""
    if not isinstance(f, UniPoly) or not isinstance(g, UniPoly):
        raise InputError("uni_gcd expects two UniPoly operands")
    _same_field(f, g)
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd of two zero polynomials is undefined")
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def roots_with_multiplicity(f):
    """All (root, multiplicity) pairs in ascending element order."""
    if not isinstance(f, UniPoly):
        raise InputError("roots_with_multiplicity expects a UniPoly")
    if f.is_zero():
        raise ZeroPolynomial("every element is a root of the zero polynomial")
    K = f.field
    out = []
    for gamma in K.elements():
        m = 0
        while f.degree >= 1 and f(gamma) == 0:
            f = f // UniPoly.x_minus(K, gamma)
            m += 1
        if m:
            out.append((gamma, m))
        if f.degree < 1:
            break
    return out


class BiPoly:
    """Bivariate polynomial as a sparse {(i, j): coeff} map, U^i V^j."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=()):
        clean = {}
        for (i, j), c in (terms.items() if isinstance(terms, dict) else terms):
            if i < 0 or j < 0:
                raise InputError("exponents must be non-negative")
            field.check(c)
            if c:
                clean[(int(i), int(j))] = c
        self.field = field
        self.terms = clean

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def constant(cls, field, c):
        return cls(field, {(0, 0): c})

    @classmethod
    def from_uni(cls, f, var=0):
        """Embed a UniPoly as a BiPoly in variable 0 (U) or 1 (V)."""
        terms = {}
        for i, c in enumerate(f.coeffs):
            if c:
                terms[(i, 0) if var == 0 else (0, i)] = c
        return cls(f.field, terms)

    def is_zero(self):
        return not self.terms

    @property
    def total_degree(self):
        return max((i + j for i, j in self.terms), default=-1)

    @property
    def deg_u(self):
        return max((i for i, _ in self.terms), default=-1)

    @property
    def deg_v(self):
        return max((j for _, j in self.terms), default=-1)

    def __add__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        _same_field(self, other)
        K = self.field
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = K.add(out.get(key, 0), c)
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return BiPoly(K, out)

    def __neg__(self):
        K = self.field
        return BiPoly(K, {k: K.neg(c) for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        _same_field(self, other)
        K = self.field
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                s = K.add(out.get(key, 0), K.mul(c1, c2))
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return BiPoly(K, out)

    def scale(self, c):
        K = self.field
        return BiPoly(K, {k: K.mul(c, x) for k, x in self.terms.items()})

    def __pow__(self, k):
        """Repeated squaring; k must be a non-negative integer."""
        if not isinstance(k, int) or k < 0:
            raise InputError(f"exponent must be a non-negative integer, got {k!r}")
        result = BiPoly.constant(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def eval_v(self, d):
        """Substitute the second variable, leaving a UniPoly in the first."""
        K = self.field
        K.check(d)
        powers = {0: 1}
        out = [0] * (self.deg_u + 1) if self.terms else []
        for (i, j), c in self.terms.items():
            if j not in powers:
                powers[j] = K.pow(d, j)
            out[i] = K.add(out[i], K.mul(c, powers[j]))
        return UniPoly(K, out)

    def eval(self, u, v):
        K = self.field
        K.check(u), K.check(v)
        acc = 0
        for (i, j), c in self.terms.items():
            acc = K.add(acc, K.mul(c, K.mul(K.pow(u, i), K.pow(v, j))))
        return acc

    def __eq__(self, other):
        return (isinstance(other, BiPoly)
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, tuple(sorted(self.terms.items()))))

    def render(self, names=("U", "V")):
        return _render_sparse(self.terms, names)

    def __repr__(self):
        return f"BiPoly({self.render()})"


class TriHomPoly:
    """Homogeneous trivariate polynomial of a fixed degree, U^i V^j W^k."""

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field, degree, terms=()):
        if degree < 0:
            raise InputError("degree must be non-negative")
        clean = {}
        for (i, j, k), c in (terms.items() if isinstance(terms, dict) else terms):
            if i + j + k != degree or min(i, j, k) < 0:
                raise InputError(
                    f"monomial {(i, j, k)} is not homogeneous of degree {degree}")
            field.check(c)
            if c:
                clean[(int(i), int(j), int(k))] = c
        self.field = field
        self.degree = degree
        self.terms = clean

    @classmethod
    def linear(cls, field, cu, cv, cw):
        return cls(field, 1, {(1, 0, 0): cu, (0, 1, 0): cv, (0, 0, 1): cw})

    def is_zero(self):
        return not self.terms

    @property
    def affine_degree(self):
        """Total degree of the W=1 dehomogenization."""
        return max((i + j for i, j, _ in self.terms), default=-1)

    def dehomogenize(self):
        K = self.field
        out = {}
        for (i, j, _), c in self.terms.items():
            out[(i, j)] = K.add(out.get((i, j), 0), c)
        return BiPoly(K, out)

    def __add__(self, other):
        if not isinstance(other, TriHomPoly):
            return NotImplemented
        _same_field(self, other)
        if self.degree != other.degree:
            raise DegreeMismatch("cannot add homogeneous parts of different degrees")
        K = self.field
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = K.add(out.get(key, 0), c)
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return TriHomPoly(K, self.degree, out)

    def __mul__(self, other):
        if not isinstance(other, TriHomPoly):
            return NotImplemented
        _same_field(self, other)
        K = self.field
        out = {}
        for (i1, j1, k1), c1 in self.terms.items():
            for (i2, j2, k2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2, k1 + k2)
                s = K.add(out.get(key, 0), K.mul(c1, c2))
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        return TriHomPoly(K, self.degree + other.degree, out)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise InputError(f"exponent must be a non-negative integer, got {k!r}")
        result = TriHomPoly(self.field, 0, {(0, 0, 0): 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        K = self.field
        return TriHomPoly(K, self.degree, {k: K.mul(c, x) for k, x in self.terms.items()})

    def eval(self, u, v, w):
        K = self.field
        K.check(u), K.check(v), K.check(w)
        acc = 0
        for (i, j, k), c in self.terms.items():
            t = K.mul(K.mul(K.pow(u, i), K.pow(v, j)), K.pow(w, k))
            acc = K.add(acc, K.mul(c, t))
        return acc

    def at_vw(self, v, w):
        """Substitute the last two variables, leaving a UniPoly in the first."""
        K = self.field
        K.check(v), K.check(w)
        out = [0] * (max((i for i, _, _ in self.terms), default=-1) + 1)
        for (i, j, k), c in self.terms.items():
            out[i] = K.add(out[i], K.mul(c, K.mul(K.pow(v, j), K.pow(w, k))))
        return UniPoly(K, out)

    def proportional_to(self, other):
        """True when the two curves agree up to a nonzero scalar."""
        if not isinstance(other, TriHomPoly):
            raise InputError("proportional_to expects a TriHomPoly")
        _same_field(self, other)
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        if set(self.terms) != set(other.terms):
            return False
        K = self.field
        key = next(iter(self.terms))
        ratio = K.div(other.terms[key], self.terms[key])
        return all(K.mul(ratio, c) == other.terms[k] for k, c in self.terms.items())

    def monomials(self):
        """Sorted (i, j, k, coeff) rows, highest U then V power first."""
        return [(i, j, k, c) for (i, j, k), c in
                sorted(self.terms.items(), reverse=True)]

    def __eq__(self, other):
        return (isinstance(other, TriHomPoly) and self.field == other.field
                and self.degree == other.degree and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.degree, tuple(sorted(self.terms.items()))))

    def render(self, names=("U", "V", "W")):
        return _render_sparse(self.terms, names)

    def __repr__(self):
        return f"TriHomPoly({self.render()})"


def _render_sparse(terms, names):
    if not terms:
        return "0"
    parts = []
    for key in sorted(terms, reverse=True):
        c = terms[key]
        factors = []
        for n, exp in zip(names, key):
            if exp == 1:
                factors.append(n)
            elif exp > 1:
                factors.append(f"{n}^{exp}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


def homogenize(f, n):
    """Pad a BiPoly with powers of the third variable up to degree n."""
    if not isinstance(f, BiPoly):
        raise InputError("homogenize expects a BiPoly")
    if f.total_degree > n:
        raise DegreeTooSmall(
            f"cannot homogenize degree {f.total_degree} into degree {n}")
    return TriHomPoly(f.field, n,
                      {(i, j, n - i - j): c for (i, j), c in f.terms.items()})


class PolyMatrix:
    """Square matrix of UniPoly entries over one field context."""

    __slots__ = ("field", "rows")

    def __init__(self, field, rows):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise InputError("matrix must be square")
            for entry in r:
                if not isinstance(entry, UniPoly):
                    raise InputError("entries must be UniPoly")
                if entry.field != field:
                    raise FieldMismatch("matrix entries use a different context")
        self.field = field
        self.rows = rows

    @property
    def size(self):
        return len(self.rows)

    def replace_col(self, col, column):
        column = tuple(column)
        if len(column) != self.size:
            raise InputError("replacement column has the wrong length")
        rows = [list(r) for r in self.rows]
        for i in range(self.size):
            rows[i][col] = column[i]
        return PolyMatrix(self.field, rows)

    def eval_at(self, d):
        return [[entry(d) for entry in row] for row in self.rows]

    def det(self):
        """Determinant: cofactor expansion up to 4x4, Bareiss above."""
        n = self.size
        if n == 0:
            return UniPoly.one(self.field)
        if n <= 4:
            return _det_cofactor(self.field, [list(r) for r in self.rows])
        return _det_bareiss(self.field, [list(r) for r in self.rows])

    def __repr__(self):
        body = "; ".join("[" + ", ".join(e.render() for e in row) + "]"
                         for row in self.rows)
        return f"PolyMatrix({body})"


def _det_cofactor(field, rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    acc = UniPoly.zero(field)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = rows[0][j] * _det_cofactor(field, minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def _det_bareiss(field, m):
    n = len(m)
    sign = 1
    prev = UniPoly.one(field)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return UniPoly.zero(field)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                quo, rem = divmod(num, prev)
                if not rem.is_zero():  # pragma: no cover - Bareiss divides exactly
                    raise RuntimeError("inexact division in fraction-free elimination")
                m[i][j] = quo
            m[i][k] = UniPoly.zero(field)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def poly_det(matrix):
    """Determinant of a PolyMatrix (module-level convenience)."""
    if not isinstance(matrix, PolyMatrix):
        raise InputError("poly_det expects a PolyMatrix")
    return matrix.det()
