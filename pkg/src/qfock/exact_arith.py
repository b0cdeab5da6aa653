"""Exact scalars: Laurent polynomials in q, q-combinatorics, p-adic digits
and the cyclotomic field Q(eps) for eps a primitive p-th root of unity.

Everything here is immutable; operations return new values.
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from typing import NamedTuple


class InexactDivision(ArithmeticError):
    """Raised when a Laurent polynomial division leaves a remainder."""

    def __init__(self, dividend, divisor, remainder):
        self.dividend = dividend
        self.divisor = divisor
        self.remainder = remainder
        super().__init__(f"({dividend}) / ({divisor}) leaves remainder {remainder}")


def check_p(p):
    """Validate a root-of-unity order: odd integer greater than 1."""
    if isinstance(p, bool) or not isinstance(p, int) or p <= 1 or p % 2 == 0:
        raise ValueError(f"p must be an odd integer > 1, got {p!r}")
    return p


# ---------------------------------------------------------------------------
# Laurent polynomials over Z
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Element of Z[q, q^-1] stored as a sparse exponent -> int map.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif isinstance(terms, int):
            terms = {0: terms} if terms else {}
        else:
            terms = {int(k): int(v) for k, v in dict(terms).items() if v}
        self._terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, k=1, c=1):
        """c * q^k."""
        return cls._raw({k: c} if c else {})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs in ascending exponent order."""
        return sorted(self._terms.items())

    def coefficient(self, k):
        return self._terms.get(k, 0)

    @property
    def min_exp(self):
        return min(self._terms) if self._terms else None

    @property
    def max_exp(self):
        return max(self._terms) if self._terms else None

    def is_monomial(self):
        return len(self._terms) == 1

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self._terms.items()})

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            c = out.get(k, 0) + v
            if c:
                out[k] = c
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return LaurentPoly()
            return LaurentPoly._raw({k: v * other for k, v in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((j, w),) = b.items()
            if w == 1:
                return LaurentPoly._raw({i + j: v for i, v in a.items()})
            return LaurentPoly._raw({i + j: v * w for i, v in a.items()})
        out = {}
        for j, w in b.items():
            for i, v in a.items():
                out[i + j] = out.get(i + j, 0) + v * w
        return LaurentPoly._raw({k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            ((k, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly.monomial(k * n, c ** (-n))
        result = LaurentPoly(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k):
        """Multiply by q^k."""
        return LaurentPoly._raw({e + k: v for e, v in self._terms.items()})

    def bar(self):
        """The involution q -> q^-1."""
        return LaurentPoly._raw({-k: v for k, v in self._terms.items()})

    def evaluate(self, x):
        """Substitute a number (int, Fraction, complex, ...) for q."""
        return sum((c * x ** k for k, c in self._terms.items()), 0 * x)

    def divmod(self, other):
        """Division in Z[q, q^-1]; returns (quotient, remainder).

        The remainder is zero iff ``other`` divides ``self`` in the Laurent
        ring.  Units q^k are stripped first, after which the problem is
        ordinary long division in Z[q] by a divisor with nonzero constant term.
        """
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self:
            return LaurentPoly(), LaurentPoly()
        a0, b0 = self.min_exp, other.min_exp
        num = _dense(self)
        den = _dense(other)
        quot = [0] * max(len(num) - len(den) + 1, 0)
        lead = den[-1]
        for i in range(len(num) - len(den), -1, -1):
            c = num[i + len(den) - 1]
            if not c:
                continue
            if c % lead:
                break
            c //= lead
            quot[i] = c
            for j, d in enumerate(den):
                num[i + j] -= c * d
        q = LaurentPoly({i + a0 - b0: c for i, c in enumerate(quot)})
        r = LaurentPoly({i + a0: c for i, c in enumerate(num)})
        return q, r

    def exact_div(self, other):
        q, r = self.divmod(other)
        if r:
            raise InexactDivision(self, other, r)
        return q

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "q" if k == 1 else f"q^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self})"


def _dense(p):
    lo, hi = p.min_exp, p.max_exp
    out = [0] * (hi - lo + 1)
    for k, v in p._terms.items():
        out[k - lo] = v
    return out


Q = LaurentPoly.monomial(1)
ONE = LaurentPoly(1)
ZERO = LaurentPoly()


# ---------------------------------------------------------------------------
# q-combinatorics
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def q_int(n):
    """Symmetric q-integer [n]_q = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n == 0:
        return ZERO
    if n < 0:
        return -q_int(-n)
    return LaurentPoly._raw({k: 1 for k in range(1 - n, n, 2)})


@functools.lru_cache(maxsize=None)
def q_factorial(m):
    if m < 0:
        raise ValueError(f"q_factorial needs m >= 0, got {m}")
    if m == 0:
        return ONE
    return q_factorial(m - 1) * q_int(m)


def _times_qdiff(lo, c, a):
    # (q^a - q^-a) * q^lo * sum c[k] q^(2k)  ->  q^(lo-a) * sum c'[k] q^(2k)
    if a < 0:
        lo, c = _times_qdiff(lo, c, -a)
        return lo, [-x for x in c]
    out = [0] * (len(c) + a)
    for k, x in enumerate(c):
        out[k + a] += x
        out[k] -= x
    return lo - a, out


def _div_qdiff(lo, c, j):
    # exact division by (q^j - q^-j) = q^-j (t^j - 1), t = q^2, j > 0
    if len(c) <= j:
        raise InexactDivision(_from_dense(lo, c), Q ** j - Q ** -j, "nonzero")
    d = [0] * (len(c) - j)
    for k in range(len(d)):
        d[k] = (d[k - j] if k >= j else 0) - c[k]
    # the top j coefficients of c must be reproduced by d * (t^j - 1)
    for k in range(len(d), len(c)):
        if c[k] != (d[k - j] if 0 <= k - j < len(d) else 0):
            raise InexactDivision(_from_dense(lo, c), Q ** j - Q ** -j, "nonzero")
    return lo + j, d


def _from_dense(lo, c):
    # dense coefficients in t = q^2
    return LaurentPoly({lo + 2 * k: x for k, x in enumerate(c) if x})


@functools.lru_cache(maxsize=None)
def q_binomial(n, m):
    """Gaussian binomial [n over m]_q for any integer n; zero when m < 0.

    Uses the product formula [n][n-1]...[n-m+1] / [m]!.  Each q-integer is
    (q^k - q^-k) / (q - q^-1), so the common (q - q^-1)^m cancels and the
    quotient is taken by successive exact divisions by q^j - q^-j, on dense
    coefficient lists in q^2.  A remainder raises InexactDivision.
    """
    if m < 0:
        return ZERO
    lo, c = 0, [1]
    for i in range(m):
        if n - i == 0:
            return ZERO
        lo, c = _times_qdiff(lo, c, n - i)
    for j in range(1, m + 1):
        lo, c = _div_qdiff(lo, c, j)
    return _from_dense(lo, c)


# ---------------------------------------------------------------------------
# p-adic digits
# ---------------------------------------------------------------------------

class Digits(NamedTuple):
    """n = n0 + p * n1 with 0 <= n0 < p (floor convention)."""

    n0: int
    n1: int


def digits(n, p):
    check_p(p)
    n1, n0 = divmod(n, p)
    return Digits(n0, n1)


def q_binom_at_root(n, p):
    """[n over p] evaluated at eps; equals the high digit n1."""
    return digits(n, p).n1


# ---------------------------------------------------------------------------
# Dense polynomial helpers over Q (coefficient lists, low degree first)
# ---------------------------------------------------------------------------

def _trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def _pdivmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if len(a) < len(b):
        return [], _trim(a)
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        quot[i] = c
        if c:
            for j, d in enumerate(b):
                a[i + j] -= c * d
    return _trim(quot), _trim(a)


def _psub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def _pmul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pinverse_mod(a, m):
    """Inverse of a modulo m in Q[x] by the extended Euclidean algorithm."""
    r0, r1 = _trim(list(m)), _trim([Fraction(x) for x in a])
    s0, s1 = [], [Fraction(1)]
    while r1:
        quot, rem = _pdivmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _psub(s0, _pmul(quot, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    c = r0[0]
    return [x / c for x in s0]


# ---------------------------------------------------------------------------
# Cyclotomic polynomials and the field Q(eps)
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _cyclotomic_coeffs(n):
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, all exact over Z
    num = LaurentPoly({n: 1, 0: -1})
    for d in range(1, n):
        if n % d == 0:
            num = num.exact_div(LaurentPoly(dict(enumerate(_cyclotomic_coeffs(d)))))
    return tuple(num.coefficient(k) for k in range(num.max_exp + 1))


def cyclotomic_polynomial(p):
    """Phi_p as a LaurentPoly in q with nonnegative exponents."""
    check_p(p)
    return LaurentPoly(dict(enumerate(_cyclotomic_coeffs(p))))


class _Field:
    """Per-p data: Phi_p, its degree, and x^k mod Phi_p for 0 <= k < p."""

    def __init__(self, p):
        self.p = p
        self.phi = tuple(_cyclotomic_coeffs(p))
        self.deg = len(self.phi) - 1
        assert self.deg == _totient(p)
        powers = []
        for k in range(p):
            vec = [0] * max(k + 1, self.deg)
            vec[k] = 1
            powers.append(tuple(self._reduce(vec)))
        self.powers = tuple(powers)
        one = tuple([1] + [0] * (self.deg - 1))
        # eps^p = 1 and eps^k != 1 for 0 < k < p
        assert self._reduce(self._x_pow(p)) == list(one)
        for k in range(1, p):
            assert tuple(self.powers[k]) != one, f"eps^{k} == 1 for p={p}"

    def _x_pow(self, k):
        vec = [0] * (k + 1)
        vec[k] = 1
        return vec

    def _reduce(self, vec):
        # Phi_p is monic with integer coefficients, so integrality is preserved
        vec = list(vec)
        d = self.deg
        for i in range(len(vec) - 1, d - 1, -1):
            c = vec[i]
            if c:
                for j in range(d + 1):
                    vec[i - d + j] -= c * self.phi[j]
        vec = vec[:d] + [0] * (d - len(vec))
        return vec


def _totient(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@functools.lru_cache(maxsize=None)
def _field(p):
    check_p(p)
    return _Field(p)


class CyclotomicNumber:
    """Element of Q(eps), eps a primitive p-th root of unity.

    Stored as integer numerators of the coordinates in the power basis
    1, eps, ..., eps^(phi(p)-1) over one positive common denominator,
    kept in lowest terms.
    """

    __slots__ = ("p", "_num", "_den", "_hash")

    def __init__(self, p, coeffs=()):
        field = _field(p)
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > field.deg:
            vec = [Fraction(0)] * field.deg
            for k, c in enumerate(fr):
                if c:
                    for i, v in enumerate(field.powers[k % p]):
                        vec[i] += c * v
            fr = vec
        fr = fr + [Fraction(0)] * (field.deg - len(fr))
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        self._set(p, [int(c * den) for c in fr], den)

    def _set(self, p, num, den):
        g = den
        for c in num:
            g = math.gcd(g, c)
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self.p = p
        self._num = tuple(num)
        self._den = den
        self._hash = None

    @classmethod
    def _make(cls, p, num, den):
        obj = cls.__new__(cls)
        obj._set(p, num, den)
        return obj

    @classmethod
    def from_int(cls, p, n):
        d = _field(p).deg
        return cls._make(p, [n] + [0] * (d - 1), 1)

    @classmethod
    def eps_power(cls, p, k, c=1):
        """c * eps^k (k any integer)."""
        field = _field(p)
        return cls._make(p, [c * v for v in field.powers[k % p]], 1)

    @property
    def coeffs(self):
        """Rational coordinates in the power basis, length phi(p)."""
        return tuple(Fraction(c, self._den) for c in self._num)

    def __bool__(self):
        return any(self._num)

    def is_one(self):
        return self._den == 1 and self._num[0] == 1 and not any(self._num[1:])

    def _coerce(self, other):
        if isinstance(other, CyclotomicNumber):
            if other.p != self.p:
                raise ValueError(f"mixing roots of order {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return CyclotomicNumber.from_int(self.p, other)
        if isinstance(other, Fraction):
            return CyclotomicNumber(self.p, [other])
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, self._num, self._den))
        return self._hash

    def __neg__(self):
        return CyclotomicNumber._make(self.p, [-c for c in self._num], self._den)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._den, other._den
        num = [x * b + y * a for x, y in zip(self._num, other._num)]
        return CyclotomicNumber._make(self.p, num, a * b)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        field = _field(self.p)
        prod = [0] * (2 * field.deg - 1)
        for i, x in enumerate(self._num):
            if x:
                for j, y in enumerate(other._num):
                    prod[i + j] += x * y
        return CyclotomicNumber._make(self.p, field._reduce(prod), self._den * other._den)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(eps)")
        field = _field(self.p)
        inv = _pinverse_mod([Fraction(c, self._den) for c in self._num], field.phi)
        return CyclotomicNumber(self.p, inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNumber.from_int(self.p, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def to_complex(self):
        """Numeric embedding with eps = exp(2 pi i / p)."""
        import cmath

        eps = cmath.exp(2j * cmath.pi / self.p)
        return sum(c / self._den * eps ** k for k, c in enumerate(self._num))

    def rational(self):
        """The value as a Fraction if it lies in Q, else None."""
        if any(self._num[1:]):
            return None
        return Fraction(self._num[0], self._den)

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            var = "" if k == 0 else ("eps" if k == 1 else f"eps^{k}")
            if not var:
                body = str(mag)
            elif mag == 1:
                body = var
            else:
                body = f"{mag}*{var}"
            if not terms:
                terms.append(body if c > 0 else "-" + body)
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"

    def __repr__(self):
        return f"CyclotomicNumber(p={self.p}, {self})"


def specialize(poly, p):
    """Image of a Laurent polynomial under q -> eps (exponents taken mod p)."""
    field = _field(p)
    vec = [0] * field.deg
    for k, c in poly._terms.items():
        for i, v in enumerate(field.powers[k % p]):
            if v:
                vec[i] += c * v
    return CyclotomicNumber._make(p, vec, 1)


@functools.lru_cache(maxsize=None)
def q_binomial_at(n, m, p):
    """specialize(q_binomial(n, m), p), cached."""
    return specialize(q_binomial(n, m), p)


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*(?:(q|eps)(?:\^(-?\d+))?)?\s*")


def _parse_terms(text, var):
    text = text.strip()
    if text == "0":
        return []
    out = []
    pos = 0
    while pos < len(text):
        mt = _TERM.match(text, pos)
        sign, mag, name, exp = mt.groups()
        if mt.end() == pos or (mag is None and name is None) or (out and sign is None):
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        if name is not None and name != var:
            raise ValueError(f"unexpected variable {name!r} in {text!r}")
        c = Fraction(mag) if mag else Fraction(1)
        k = 0 if name is None else int(exp) if exp is not None else 1
        out.append((k, -c if sign == "-" else c))
        pos = mt.end()
    return out


def parse_laurent(text):
    """Inverse of str(LaurentPoly)."""
    terms = {}
    for k, c in _parse_terms(text, "q"):
        if c.denominator != 1:
            raise ValueError(f"non-integral coefficient in {text!r}")
        terms[k] = terms.get(k, 0) + int(c)
    return LaurentPoly(terms)


def parse_cyclotomic(text, p):
    """Inverse of str(CyclotomicNumber) at the given p."""
    out = CyclotomicNumber.from_int(p, 0)
    for k, c in _parse_terms(text, "eps"):
        out = out + CyclotomicNumber(p, [0] * k + [c])
    return out
