"""Exact scalar arithmetic: quadratic symbols, Hilbert symbols, square classes,
L-values, and the number/polynomial/series types used everywhere else.

All values are immutable after construction and all arithmetic is exact;
no floating point appears anywhere in this package.
"""

from __future__ import annotations

import os
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, isqrt

Rational = Fraction

OO = float("inf")  # the archimedean place, for hilbert_symbol


# ---------------------------------------------------------------------------
# elementary number theory
# ---------------------------------------------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer as {p: exponent}."""
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    while d * d <= n:
        for p in (d, d + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        d += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor d of |n| with n = d * square, sign kept."""
    if n == 0:
        raise ValueError("squarefree_part of 0")
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in factorize(abs(n)).items():
        if e % 2:
            out *= p
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of a positive integer."""
    ds = [1]
    for p, e in factorize(n).items():
        ds = [d * p**i for d in ds for i in range(e + 1)]
    return sorted(ds)


def moebius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return (-1) ** len(f)


def sigma(k: int, n: int) -> int:
    """Divisor power sum sigma_k(n)."""
    return sum(d**k for d in divisors(n))


def ord_p(x: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("ord_p of 0")

    def _vint(m: int) -> int:
        v = 0
        while m % p == 0:
            m //= p
            v += 1
        return v

    return _vint(abs(x.numerator)) - _vint(x.denominator)


def unit_mod(x: Fraction | int, modulus: int) -> int:
    """Reduce a rational with denominator prime to `modulus` mod `modulus`."""
    x = Fraction(x)
    if gcd(x.denominator, modulus) != 1:
        raise ValueError("denominator not invertible mod %d" % modulus)
    return (x.numerator * pow(x.denominator, -1, modulus)) % modulus


def legendre(a: int, p: int) -> int:
    """Quadratic residue symbol mod an odd prime; 0 when p | a."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def kronecker_symbol(a: int, n: int) -> int:
    """Quadratic symbol (a/n), completely multiplicative in n >= 1.

    At n = 2 this is the 8-periodic symbol equal to 1 for a = 1 mod 8,
    -1 for a = 5 mod 8 and 0 otherwise (in particular it vanishes on
    a = 3, 7 mod 8); at odd primes it is the Legendre symbol.
    """
    if n < 1:
        raise ValueError("kronecker_symbol expects n >= 1")
    out = 1
    for p, e in factorize(n).items():
        if p == 2:
            r = a % 8
            s = 1 if r == 1 else -1 if r == 5 else 0
        else:
            s = legendre(a, p)
        if s == 0:
            return 0
        out *= s**e
    return out


def kronecker_disc(d: int, n: int) -> int:
    """Standard Kronecker symbol (d/n) for n >= 1; used for the quadratic
    character attached to a fundamental discriminant d."""
    if n < 1:
        raise ValueError("kronecker_disc expects n >= 1")
    out = 1
    for p, e in factorize(n).items():
        if p == 2:
            if d % 2 == 0:
                s = 0
            else:
                r = d % 8
                s = 1 if r in (1, 7) else -1
        else:
            s = legendre(d, p)
        if s == 0:
            return 0
        out *= s**e
    return out


def square_class_sign(a: Fraction | int, p: int) -> int:
    """1, -1 or 0 according as a is a square in Q_p, generates the unramified
    quadratic extension, or generates a ramified quadratic extension."""
    a = Fraction(a)
    if a == 0:
        raise ValueError("square_class_sign of 0")
    v = ord_p(a, p)
    if v % 2:
        return 0
    u = a / Fraction(p) ** v
    if p == 2:
        r = unit_mod(u, 8)
        return 1 if r == 1 else -1 if r == 5 else 0
    return legendre(unit_mod(u, p), p)


def square_class_sign_signed(a: Fraction | int, p: int, k: int) -> int:
    """square_class_sign of (-1)^k * a."""
    return square_class_sign(Fraction(a) * (-1) ** (k % 2), p)


def is_padic_square(a: Fraction | int, p: int) -> bool:
    return square_class_sign(a, p) == 1


def padic_symbol(x: Fraction | int, p: int) -> int:
    """Quadratic symbol (x/p) extended to rationals: 0 unless x is a p-adic
    unit, otherwise the mod-p (or 8-periodic at p = 2) symbol of its unit."""
    x = Fraction(x)
    if x == 0 or ord_p(x, p) != 0:
        return 0
    if p == 2:
        r = unit_mod(x, 8)
        return 1 if r == 1 else -1 if r == 5 else 0
    return legendre(unit_mod(x, p), p)


def hilbert_symbol(a: Fraction | int, b: Fraction | int, p) -> int:
    """Hilbert symbol (a, b)_p over Q_p, or over R when p is OO."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert_symbol of 0")
    if p == OO or p is None:
        return -1 if (a < 0 and b < 0) else 1
    alpha, beta = ord_p(a, p), ord_p(b, p)
    u = a / Fraction(p) ** alpha
    v = b / Fraction(p) ** beta
    if p == 2:
        un, vn = unit_mod(u, 8), unit_mod(v, 8)
        eps = ((un - 1) // 2) * ((vn - 1) // 2)
        omega_u = (un * un - 1) // 8
        omega_v = (vn * vn - 1) // 8
        return (-1) ** ((eps + alpha * omega_v + beta * omega_u) % 2)
    lu = legendre(unit_mod(u, p), p)
    lv = legendre(unit_mod(v, p), p)
    sign = (-1) ** ((alpha * beta * (p - 1) // 2) % 2)
    return sign * lu**beta * lv**alpha


# ---------------------------------------------------------------------------
# Bernoulli numbers and quadratic L-values
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli expects n >= 0")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    acc = Fraction(0)
    for k in range(n):
        acc += comb(n + 1, k) * bernoulli(k)
    return -acc / (n + 1)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    """Bernoulli polynomial B_n(x)."""
    return sum((comb(n, k) * bernoulli(k) * x ** (n - k) for k in range(n + 1)),
               Fraction(0))


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1:
        return True
    if d % 4 == 1:
        return squarefree_part(d) == d
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and squarefree_part(m) == m
    return False


def fundamental_discriminant(x: Fraction | int) -> int:
    """Discriminant of Q(sqrt(x))/Q (= 1 when x is a square)."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("fundamental_discriminant of 0")
    s = squarefree_part(x.numerator * x.denominator)
    if s == 1:
        return 1
    return s if s % 4 == 1 else 4 * s


def quad_character(d: int, m: int) -> int:
    """Value at m >= 1 of the primitive quadratic character of conductor |d|,
    d a fundamental discriminant (trivial character for d = 1)."""
    if not is_fundamental_discriminant(d):
        raise ValueError("%d is not a fundamental discriminant" % d)
    return kronecker_disc(d, m)


def dirichlet_L_minus(k: int, d: int) -> Fraction:
    """Exact value L(1 - k, chi_d) for the quadratic character of fundamental
    discriminant d (the Riemann zeta value zeta(1 - k) when d = 1)."""
    if k <= 0:
        raise ValueError("dirichlet_L_minus expects k >= 1")
    if not is_fundamental_discriminant(d):
        raise ValueError("%d is not a fundamental discriminant" % d)
    f = abs(d)
    acc = Fraction(0)
    for a in range(1, f + 1):
        chi = kronecker_disc(d, a)
        if chi:
            acc += chi * bernoulli_poly(k, Fraction(a, f))
    bk_chi = Fraction(f) ** (k - 1) * acc
    return -bk_chi / k


def zeta_minus(k: int) -> Fraction:
    """zeta(1 - k) for k >= 1."""
    return dirichlet_L_minus(k, 1)


# ---------------------------------------------------------------------------
# the fundamental-discriminant splitting N = d * f^2
# ---------------------------------------------------------------------------

def split_exponent(a: Fraction | int, p: int, k: int) -> int:
    """The square-part exponent at p of a relative to the sign twist (-1)^k:
    floor((ord_p a + 1 - [p=2]) / 2) - 1 + square_class_sign((-1)^k a)^2.
    May be -1 (exactly when (-1)^k a is a unit-times-ramified class at p)."""
    v = ord_p(a, p)
    s = square_class_sign_signed(a, p, k)
    return (v + 1 - (1 if p == 2 else 0)) // 2 - 1 + s * s


def fundamental_split(n: int, k: int) -> tuple[int, Fraction]:
    """Split n >= 1 as n = d * f^2 where d is the absolute value of the
    discriminant of Q(sqrt((-1)^k n)). Returns (d, f); f is a positive
    rational (the exponent of 2 in f can be -1)."""
    if n < 1:
        raise ValueError("fundamental_split expects n >= 1")
    f = Fraction(1)
    for p in set(factorize(n)) | {2}:
        f *= Fraction(p) ** split_exponent(n, p, k)
    d = Fraction(n) / (f * f)
    if d.denominator != 1:
        raise ArithmeticError("split does not divide n")
    d = d.numerator
    if abs(fundamental_discriminant((-1) ** k * n)) != d:
        raise ArithmeticError("split disagrees with the field discriminant")
    return d, f


# ---------------------------------------------------------------------------
# numbers in Q(sqrt(m1), sqrt(m2), ...)
# ---------------------------------------------------------------------------

class HalfPowerNumber:
    """Exact element of the ring generated over Q by square roots of
    squarefree positive integers; stores {m: c_m} meaning sum c_m sqrt(m)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, Fraction] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    # -- constructors -------------------------------------------------------

    @staticmethod
    def rat(x: Fraction | int) -> "HalfPowerNumber":
        return HalfPowerNumber({1: Fraction(x)})

    @staticmethod
    def sqrt(n: Fraction | int) -> "HalfPowerNumber":
        """sqrt(n) for a positive rational n."""
        n = Fraction(n)
        if n <= 0:
            raise ValueError("sqrt expects a positive argument")
        m = n.numerator * n.denominator
        s = squarefree_part(m)
        return HalfPowerNumber({s: Fraction(isqrt(m // s), n.denominator)})

    @staticmethod
    def half_pow(base: Fraction | int, half_exponent: int) -> "HalfPowerNumber":
        """base ** (half_exponent / 2) for a positive rational base."""
        base = Fraction(base)
        if base <= 0:
            raise ValueError("half_pow expects a positive base")
        q, r = divmod(half_exponent, 2)
        out = HalfPowerNumber.rat(base**q)
        if r:
            out = out * HalfPowerNumber.sqrt(base)
        return out

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return HalfPowerNumber(terms)

    __radd__ = __add__

    def __neg__(self):
        return HalfPowerNumber({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                g = gcd(m1, m2)
                key = (m1 // g) * (m2 // g)
                val = c1 * c2 * g
                terms[key] = terms.get(key, Fraction(0)) + val
        return HalfPowerNumber(terms)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = HalfPowerNumber.rat(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "HalfPowerNumber":
        """Inverse of a single-term value c*sqrt(m); general inverses are
        never needed in this package."""
        if len(self.terms) != 1:
            raise ArithmeticError("inverse only implemented for single-term values")
        (m, c), = self.terms.items()
        return HalfPowerNumber({m: 1 / (c * m)})

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    # -- inspection ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return all(m == 1 for m in self.terms)

    def rational(self) -> Fraction:
        if not self.is_rational:
            raise ArithmeticError("value has irrational support: %r" % self)
        return self.terms.get(1, Fraction(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            bits.append(str(c) if m == 1 else "%s*sqrt(%d)" % (c, m))
        return " + ".join(bits)


def _coerce(x) -> "HalfPowerNumber":
    if isinstance(x, HalfPowerNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return HalfPowerNumber.rat(x)
    return NotImplemented


HPN = HalfPowerNumber


# ---------------------------------------------------------------------------
# Laurent polynomials over HalfPowerNumber (or any compatible ring)
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial in one variable; coefficients are HalfPowerNumber
    unless explicitly constructed over another ring (tests use LaurentPoly
    coefficients for symbolic identities)."""

    __slots__ = ("c",)

    def __init__(self, coeffs: dict | None = None):
        self.c = {e: v for e, v in (coeffs or {}).items() if v}

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly({})

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: HPN.rat(1)})

    @staticmethod
    def X(e: int = 1, coeff=1) -> "LaurentPoly":
        return LaurentPoly({e: _as_coeff(coeff)})

    @staticmethod
    def const(v) -> "LaurentPoly":
        return LaurentPoly({0: _as_coeff(v)})

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        c = dict(self.c)
        for e, v in other.c.items():
            c[e] = c.get(e, _zero_like(v)) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self.c.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.const(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        c: dict = {}
        for e1, v1 in self.c.items():
            for e2, v2 in other.c.items():
                e = e1 + e2
                prod = v1 * v2
                c[e] = c.get(e) + prod if e in c else prod
        return LaurentPoly(c)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s) -> "LaurentPoly":
        s = _as_coeff(s, allow_poly=True)
        return LaurentPoly({e: v * s for e, v in self.c.items()})

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a Laurent polynomial")
        out = LaurentPoly.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(other)
        return self.c == other.c

    def __bool__(self):
        return bool(self.c)

    def __hash__(self):
        return hash(tuple(sorted((e, hash(v)) for e, v in self.c.items())))

    # -- structure ----------------------------------------------------------

    def degree(self) -> int:
        if not self.c:
            raise ValueError("degree of 0")
        return max(self.c)

    def valuation(self) -> int:
        if not self.c:
            raise ValueError("valuation of 0")
        return min(self.c)

    def shift(self, j: int) -> "LaurentPoly":
        """Multiply by X^j."""
        return LaurentPoly({e + j: v for e, v in self.c.items()})

    def subs_square(self) -> "LaurentPoly":
        """Substitute X -> X^2."""
        return LaurentPoly({2 * e: v for e, v in self.c.items()})

    def subs_scaled(self, s: HalfPowerNumber) -> "LaurentPoly":
        """Substitute X -> s*X for an invertible scalar s."""
        s = _as_coeff(s)
        out = {}
        for e, v in self.c.items():
            out[e] = v * (s**e)
        return LaurentPoly(out)

    def reciprocal(self) -> "LaurentPoly":
        """Substitute X -> 1/X."""
        return LaurentPoly({-e: v for e, v in self.c.items()})

    def is_symmetric(self) -> bool:
        return self == self.reciprocal()

    def coeff(self, e: int):
        return self.c.get(e, HPN.rat(0))

    def evaluate(self, x: HalfPowerNumber):
        """Evaluate at an invertible scalar."""
        x = _as_coeff(x)
        acc = HPN.rat(0)
        for e, v in self.c.items():
            acc = acc + v * (x**e)
        return acc

    def evaluate_symmetric(self, t, one=None):
        """Evaluate a self-reciprocal Laurent polynomial at a point given only
        through t = x + 1/x, via u_j = x^j + x^-j, u_0 = 2, u_1 = t.

        Works over any coefficient ring containing t (scalar or polynomial)."""
        if not self.is_symmetric():
            raise ArithmeticError("not self-reciprocal")
        if not self.c:
            return _as_coeff(0) if one is None else one - one
        one = HPN.rat(1) if one is None else one
        d = self.degree()
        u = [one + one, t]
        for j in range(2, d + 1):
            u.append(t * u[-1] - u[-2])
        acc = self.coeff(0) * one
        for e in range(1, d + 1):
            v = self.coeff(e)
            if v:
                acc = acc + u[e] * v
        return acc

    def divide_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises if the remainder is nonzero."""
        if not other.c:
            raise ZeroDivisionError
        if not self.c:
            return LaurentPoly.zero()
        sv, ov = self.valuation(), other.valuation()
        num = {e - sv: v for e, v in self.c.items()}
        den = {e - ov: v for e, v in other.c.items()}
        dd = max(den)
        lead = den[dd]
        lead_inv = lead.inverse()
        q: dict = {}
        while num:
            nd = max(num)
            if nd < dd:
                raise ArithmeticError("inexact Laurent division")
            e = nd - dd
            coeff = num[nd] * lead_inv
            q[e] = coeff
            for de, dv in den.items():
                k = de + e
                cur = num.get(k, HPN.rat(0)) - dv * coeff
                if cur:
                    num[k] = cur
                elif k in num:
                    del num[k]
        return LaurentPoly(q).shift(sv - ov)

    def series_inverse(self, order: int) -> "LaurentPoly":
        """Inverse as a power series up to X^order; needs valuation 0 and an
        invertible constant term."""
        if self.valuation() != 0:
            raise ArithmeticError("series inverse needs valuation 0")
        c0 = self.c[0]
        c0_inv = c0.inverse()
        inv = {0: c0_inv}
        for n in range(1, order + 1):
            acc = HPN.rat(0)
            for k in range(1, n + 1):
                if k in self.c and (n - k) in inv:
                    acc = acc + self.c[k] * inv[n - k]
            val = -(c0_inv * acc)
            if val:
                inv[n] = val
        return LaurentPoly(inv)

    def truncate(self, order: int) -> "LaurentPoly":
        return LaurentPoly({e: v for e, v in self.c.items() if e <= order})

    def is_rational(self) -> bool:
        return all(isinstance(v, HalfPowerNumber) and v.is_rational
                   for v in self.c.values())

    def rational_coeffs(self) -> dict[int, Fraction]:
        return {e: v.rational() for e, v in self.c.items()}

    def __repr__(self):
        if not self.c:
            return "0"
        return " + ".join("(%r)*X^%d" % (v, e) for e, v in sorted(self.c.items()))


def _as_coeff(v, allow_poly: bool = False):
    if isinstance(v, HalfPowerNumber):
        return v
    if isinstance(v, (int, Fraction)):
        return HPN.rat(v)
    if allow_poly and isinstance(v, LaurentPoly):
        return v
    if isinstance(v, LaurentPoly):
        return v
    raise TypeError("cannot use %r as a coefficient" % (v,))


def _zero_like(v):
    return v - v


def laurent_from_fractions(coeffs: dict[int, Fraction | int]) -> LaurentPoly:
    return LaurentPoly({e: HPN.rat(v) for e, v in coeffs.items()})


# ---------------------------------------------------------------------------
# truncated q-expansions
# ---------------------------------------------------------------------------

def default_prec() -> int:
    """Global default truncation order, overridable via JFL_PREC."""
    return int(os.environ.get("JFL_PREC", "200"))


class QSeries:
    """Truncated series sum_j c_j q^(j/den), exact coefficients, explicit
    truncation order; arithmetic never silently extends precision."""

    __slots__ = ("den", "prec", "coeffs")

    def __init__(self, coeffs, den: int = 1, prec: int | None = None):
        if den < 1:
            raise ValueError("den must be positive")
        coeffs = list(coeffs)
        if prec is None:
            prec = len(coeffs) - 1
        if prec < 0:
            raise ValueError("truncation order must be nonnegative")
        coeffs = coeffs[: prec + 1] + [0] * (prec + 1 - len(coeffs))
        self.den = den
        self.prec = prec
        self.coeffs = coeffs

    @staticmethod
    def zero(prec: int, den: int = 1) -> "QSeries":
        return QSeries([0], den=den, prec=prec)

    def copy(self) -> "QSeries":
        return QSeries(list(self.coeffs), den=self.den, prec=self.prec)

    def __getitem__(self, j: int):
        if j < 0:
            return 0
        if j > self.prec:
            raise IndexError("coefficient %d beyond truncation %d" % (j, self.prec))
        return self.coeffs[j]

    def get(self, j: int, dflt=0):
        if 0 <= j <= self.prec:
            return self.coeffs[j]
        return dflt

    def _check(self, other: "QSeries"):
        if self.den != other.den:
            raise ValueError("mixed q-power denominators %d, %d" % (self.den, other.den))

    def __add__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        n = min(self.prec, other.prec)
        return QSeries([self.coeffs[j] + other.coeffs[j] for j in range(n + 1)],
                       den=self.den, prec=n)

    def __sub__(self, other: "QSeries") -> "QSeries":
        self._check(other)
        n = min(self.prec, other.prec)
        return QSeries([self.coeffs[j] - other.coeffs[j] for j in range(n + 1)],
                       den=self.den, prec=n)

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self.coeffs], den=self.den, prec=self.prec)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return QSeries([c * other for c in self.coeffs], den=self.den,
                           prec=self.prec)
        self._check(other)
        n = min(self.prec, other.prec)
        out = [0] * (n + 1)
        for i, a in enumerate(self.coeffs[: n + 1]):
            if a == 0:
                continue
            top = n - i
            for j, b in enumerate(other.coeffs[: top + 1]):
                if b:
                    out[i + j] += a * b
        return QSeries(out, den=self.den, prec=n)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QSeries":
        if e < 0:
            raise ValueError("negative power of a q-series")
        out = QSeries([1], den=self.den, prec=self.prec)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.den == other.den and self.prec == other.prec
                and all(Fraction(a) == Fraction(b)
                        for a, b in zip(self.coeffs, other.coeffs)))

    def agrees_with(self, other: "QSeries", upto: int | None = None) -> bool:
        self._check(other)
        n = min(self.prec, other.prec)
        if upto is not None:
            n = min(n, upto)
        return all(Fraction(self.coeffs[j]) == Fraction(other.coeffs[j])
                   for j in range(n + 1))

    def shift(self, j: int) -> "QSeries":
        """Multiply by q^(j/den)."""
        if j < 0:
            raise ValueError("negative shift")
        return QSeries([0] * j + self.coeffs, den=self.den, prec=self.prec)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self):
        head = ["%s*q^(%d/%d)" % (c, j, self.den)
                for j, c in enumerate(self.coeffs[:6]) if c]
        return "QSeries(%s + O(q^(%d/%d)))" % (" + ".join(head) or "0",
                                               self.prec + 1, self.den)


# ---------------------------------------------------------------------------
# number field elements with a designated involution
# ---------------------------------------------------------------------------

class NumberField:
    """Q[x]/(f) for a monic integer-coefficient irreducible f, with a
    designated involution given by the image of x."""

    def __init__(self, defining: list[Fraction | int],
                 conj_gen: list[Fraction | int] | None = None):
        self.defining = [Fraction(c) for c in defining]
        if self.defining[-1] != 1:
            raise ValueError("defining polynomial must be monic")
        self.deg = len(self.defining) - 1
        if conj_gen is None:
            conj_gen = [0] * self.deg
            if self.deg >= 2:
                conj_gen[1] = 1
        self.conj_gen = self.elem(conj_gen)
        x = self.elem([0, 1] if self.deg >= 2 else [0])
        if self._apply_conj(self._apply_conj(x)) != x:
            raise ValueError("conjugation is not an involution")

    def elem(self, coords) -> "NumberFieldElem":
        coords = [Fraction(c) for c in coords]
        return NumberFieldElem(self, self._reduce(coords))

    def _reduce(self, coords: list[Fraction]) -> tuple[Fraction, ...]:
        coords = list(coords)
        while len(coords) > self.deg:
            top = coords.pop()
            if top:
                for i in range(self.deg):
                    coords[len(coords) - self.deg + i] -= top * self.defining[i]
        coords += [Fraction(0)] * (self.deg - len(coords))
        return tuple(coords)

    def _apply_conj(self, x: "NumberFieldElem") -> "NumberFieldElem":
        acc = self.elem([x.coords[0]])
        power = self.elem([1])
        for i in range(1, self.deg):
            power = power * self.conj_gen
            acc = acc + power * self.elem([x.coords[i]])
        return acc


class NumberFieldElem:
    __slots__ = ("field", "coords")

    def __init__(self, field: NumberField, coords: tuple[Fraction, ...]):
        self.field = field
        self.coords = coords

    def _co(self, other):
        if isinstance(other, NumberFieldElem):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.elem([other])
        return NotImplemented

    def __add__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return NumberFieldElem(self.field, tuple(a + b for a, b in
                                                 zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElem(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._co(other) - self

    def __mul__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        n = self.field.deg
        prod = [Fraction(0)] * (2 * n - 1 if n > 1 else 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        return NumberFieldElem(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.field.elem([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def conj(self) -> "NumberFieldElem":
        return self.field._apply_conj(self)

    def __eq__(self, other):
        other = self._co(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "NF%r" % (self.coords,)
