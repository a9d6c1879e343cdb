"""Exact scalar arithmetic for the quantum semantics.

Real scalars are finite Q-linear combinations sum c_d*sqrt(d) over
squarefree positive integers d (d=1 is the rational part).  Square roots
of distinct squarefree integers are linearly independent over Q, so
equality testing is coefficient-wise, and the sign of a nonzero value can
be certified by refining rational bounds on each sqrt(d).

Complex scalars are pairs of real scalars.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from sympy import factorint


def square_split(n):
    """n = s*s*d with d squarefree; returns (s, d).  Requires n >= 1."""
    s = 1
    d = 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


def _sqrt_bounds(d, prec):
    """Rational l <= sqrt(d) <= u with u - l = 2^-prec."""
    scale = 1 << prec
    root = isqrt(d * scale * scale)
    return Fraction(root, scale), Fraction(root + 1, scale)


@dataclass(frozen=True)
class RadicalScalar:
    """sum of c*sqrt(d) terms; ``terms`` is a sorted tuple of (d, c) pairs
    with squarefree d and nonzero rational c."""

    terms: tuple

    @staticmethod
    def make(coeffs):
        """From a {d: c} map; drops zeros, sorts, validates nothing else."""
        items = tuple(
            (d, Fraction(c)) for d, c in sorted(coeffs.items()) if Fraction(c) != 0
        )
        return RadicalScalar(items)

    @staticmethod
    def rational(q):
        return RadicalScalar.make({1: Fraction(q)})

    @staticmethod
    def sqrt_of(q):
        """Exact square root of a nonnegative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if q == 0:
            return RAD_ZERO
        s_num, d_num = square_split(q.numerator)
        s_den, d_den = square_split(q.denominator)
        # sqrt(a/b) = sqrt(a*b)/b
        s_mix, d = square_split(d_num * d_den)
        coeff = Fraction(s_num * s_mix, s_den * d_den)
        return RadicalScalar.make({d: coeff})

    def coeff(self, d):
        for dd, c in self.terms:
            if dd == d:
                return c
        return Fraction(0)

    def is_zero(self):
        return not self.terms

    def is_rational(self):
        return all(d == 1 for d, _ in self.terms)

    def as_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.coeff(1)

    def __add__(self, other):
        other = _coerce_real(other)
        out = dict(self.terms)
        for d, c in other.terms:
            out[d] = out.get(d, Fraction(0)) + c
        return RadicalScalar.make(out)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return RadicalScalar(tuple((d, -c) for d, c in self.terms))

    def __sub__(self, other):
        return self + (-_coerce_real(other))

    def __rsub__(self, other):
        return _coerce_real(other) + (-self)

    def __mul__(self, other):
        other = _coerce_real(other)
        out = {}
        for d1, c1 in self.terms:
            for d2, c2 in other.terms:
                s, d = square_split(d1 * d2)
                out[d] = out.get(d, Fraction(0)) + c1 * c2 * s
        return RadicalScalar.make(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def sign(self):
        """-1, 0 or +1; exact.  Zero iff no terms (independence of square
        roots of distinct squarefree integers); otherwise rational sqrt
        bounds are refined until they separate the sum from zero."""
        if not self.terms:
            return 0
        prec = 16
        while True:
            lo = Fraction(0)
            hi = Fraction(0)
            for d, c in self.terms:
                l, u = _sqrt_bounds(d, prec)
                if c >= 0:
                    lo += c * l
                    hi += c * u
                else:
                    lo += c * u
                    hi += c * l
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2

    def __lt__(self, other):
        return (self - _coerce_real(other)).sign() < 0

    def __le__(self, other):
        return (self - _coerce_real(other)).sign() <= 0

    def __gt__(self, other):
        return (self - _coerce_real(other)).sign() > 0

    def __ge__(self, other):
        return (self - _coerce_real(other)).sign() >= 0

    def compares(self, cmp, q):
        """Apply a primitive comparison symbol against a rational."""
        if cmp == "=":
            return self == RadicalScalar.rational(q)
        if cmp == "<":
            return self < RadicalScalar.rational(q)
        raise ValueError(f"unknown comparison {cmp}")

    def __float__(self):
        out = 0.0
        for d, c in self.terms:
            out += float(c) * d**0.5
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for d, c in self.terms:
            if d == 1:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"sqrt({d})")
            elif c == -1:
                parts.append(f"-sqrt({d})")
            else:
                parts.append(f"{c}*sqrt({d})")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out

    def __repr__(self):
        return f"<RadicalScalar {self}>"


RAD_ZERO = RadicalScalar(())
RAD_ONE = RadicalScalar.rational(1)


def _coerce_real(x):
    if isinstance(x, RadicalScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return RadicalScalar.rational(x)
    raise TypeError(f"cannot treat {x!r} as an exact real scalar")


@dataclass(frozen=True)
class ComplexScalar:
    re: RadicalScalar
    im: RadicalScalar

    @staticmethod
    def real(x):
        return ComplexScalar(_coerce_real(x), RAD_ZERO)

    def conjugate(self):
        return ComplexScalar(self.re, -self.im)

    def is_zero(self):
        return self.re.is_zero() and self.im.is_zero()

    def __add__(self, other):
        other = coerce_complex(other)
        return ComplexScalar(self.re + other.re, self.im + other.im)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return ComplexScalar(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-coerce_complex(other))

    def __mul__(self, other):
        other = coerce_complex(other)
        return ComplexScalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __rmul__(self, other):
        return self.__mul__(other)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.im.is_zero():
            return str(self.re)
        return f"({self.re})+({self.im})i"

    def __repr__(self):
        return f"<ComplexScalar {self}>"


C_ZERO = ComplexScalar(RAD_ZERO, RAD_ZERO)
C_ONE = ComplexScalar(RAD_ONE, RAD_ZERO)


def coerce_complex(x):
    if isinstance(x, ComplexScalar):
        return x
    if isinstance(x, RadicalScalar):
        return ComplexScalar(x, RAD_ZERO)
    if isinstance(x, (int, Fraction)):
        return ComplexScalar.real(x)
    raise TypeError(f"cannot treat {x!r} as an exact complex scalar")


# -- string forms ------------------------------------------------------------
#
# Real scalars in structure files are written as sums of signed parts,
# each a rational ("3/4", "-2") or a scaled radical ("1/2*sqrt(2)",
# "-sqrt(3)").  This is exactly what __str__ above emits.


def parse_radical(text):
    """Parse a real scalar string; raises ValueError on malformed input."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    # split into signed parts
    parts = []
    start = 0
    for i, ch in enumerate(s):
        if ch in "+-" and i > start and s[i - 1] not in "+-*/(":
            parts.append(s[start:i])
            start = i
    parts.append(s[start:])
    coeffs = {}
    for part in parts:
        sign = 1
        while part and part[0] in "+-":
            if part[0] == "-":
                sign = -sign
            part = part[1:]
        if not part:
            raise ValueError(f"malformed scalar part in {text!r}")
        if "sqrt(" in part:
            head, _, tail = part.partition("sqrt(")
            if not tail.endswith(")"):
                raise ValueError(f"unclosed sqrt in {text!r}")
            d = int(tail[:-1])
            if d <= 0:
                raise ValueError("sqrt argument must be positive")
            if head == "":
                c = Fraction(1)
            elif head.endswith("*"):
                c = Fraction(head[:-1])
            elif head.endswith("/"):
                # "sqrt(2)/2" style is not produced but easy to accept
                raise ValueError(f"write the coefficient first in {text!r}")
            else:
                raise ValueError(f"malformed radical part in {text!r}")
            rad = RadicalScalar.sqrt_of(d) * c
        else:
            rad = RadicalScalar.rational(Fraction(part))
        for dd, cc in (rad * sign).terms:
            coeffs[dd] = coeffs.get(dd, Fraction(0)) + cc
    return RadicalScalar.make(coeffs)


def print_radical(x):
    return str(x)
