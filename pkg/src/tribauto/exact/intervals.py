"""Closed intervals with exact rational endpoints.

Arithmetic is exact; ``rounded(bits)`` widens the endpoints outward to
multiples of ``2**-bits`` so that long computations keep bounded
denominators.  Transcendental helpers (``pi_interval``, ``atan_interval``,
``arg_interval``) are certified: every returned interval contains the true
value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Union

Number = Union[int, Fraction]


def _floor_div_pow2(value: Fraction, bits: int) -> int:
    return (value.numerator << bits) // value.denominator


def _ceil_div_pow2(value: Fraction, bits: int) -> int:
    return -((-value.numerator << bits) // value.denominator)


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = Fraction(self.lo), Fraction(self.hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value: Number) -> "RationalInterval":
        return cls(Fraction(value), Fraction(value))

    @classmethod
    def coerce(cls, value) -> "RationalInterval":
        if isinstance(value, RationalInterval):
            return value
        if isinstance(value, (int, Rational)):
            return cls.point(value)
        return NotImplemented

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def magnitude(self) -> Fraction:
        """Upper bound of ``|x|`` over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mignitude(self) -> Fraction:
        """Lower bound of ``|x|`` over the interval."""
        if self.lo <= 0 <= self.hi:
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def contains(self, value) -> bool:
        if isinstance(value, RationalInterval):
            return self.lo <= value.lo and value.hi <= self.hi
        return self.lo <= value <= self.hi

    def __contains__(self, value) -> bool:
        return self.contains(value)

    def sign(self):
        """+1 or -1 when the interval excludes zero, else ``None``."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None

    def certainly_lt(self, other) -> bool:
        other = RationalInterval.coerce(other)
        return self.hi < other.lo

    def certainly_gt(self, other) -> bool:
        other = RationalInterval.coerce(other)
        return self.lo > other.hi

    def rounded(self, bits: int) -> "RationalInterval":
        scale = 1 << bits
        lo = Fraction(_floor_div_pow2(self.lo, bits), scale)
        hi = Fraction(_ceil_div_pow2(self.hi, bits), scale)
        return RationalInterval(lo, hi)

    def hull(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: "RationalInterval") -> "RationalInterval":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("disjoint intervals")
        return RationalInterval(lo, hi)

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __add__(self, other):
        other = RationalInterval.coerce(other)
        if other is NotImplemented:
            return other
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __sub__(self, other):
        other = RationalInterval.coerce(other)
        if other is NotImplemented:
            return other
        return RationalInterval(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        other = RationalInterval.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, RationalInterval):
            other = Fraction(other)
            if other >= 0:
                return RationalInterval(self.lo * other, self.hi * other)
            return RationalInterval(self.hi * other, self.lo * other)
        other = RationalInterval.coerce(other)
        if other is NotImplemented:
            return other
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(products), max(products))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        other = RationalInterval.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = RationalInterval.coerce(other)
        if other is NotImplemented:
            return other
        return other * self.reciprocal()

    def square(self) -> "RationalInterval":
        lo2, hi2 = self.lo * self.lo, self.hi * self.hi
        if self.lo >= 0:
            return RationalInterval(lo2, hi2)
        if self.hi <= 0:
            return RationalInterval(hi2, lo2)
        return RationalInterval(Fraction(0), max(lo2, hi2))

    def sqrt(self, bits: int) -> "RationalInterval":
        if self.lo < 0:
            raise ValueError("square root of an interval reaching below zero")
        scale = 1 << bits
        # floor(sqrt(lo)) and ceil(sqrt(hi)) on the 2**-bits grid
        lo_int = math.isqrt(_floor_div_pow2(self.lo, 2 * bits))
        hi_sq = _ceil_div_pow2(self.hi, 2 * bits)
        hi_int = math.isqrt(hi_sq)
        if hi_int * hi_int < hi_sq:
            hi_int += 1
        return RationalInterval(Fraction(lo_int, scale), Fraction(hi_int, scale))

    def __repr__(self):
        return f"RationalInterval({float(self.lo)!r}, {float(self.hi)!r}; width={float(self.width):.3g})"


@dataclass(frozen=True)
class ComplexInterval:
    re: RationalInterval
    im: RationalInterval

    @classmethod
    def coerce(cls, value) -> "ComplexInterval":
        if isinstance(value, ComplexInterval):
            return value
        if isinstance(value, RationalInterval):
            return cls(value, RationalInterval.point(0))
        if isinstance(value, (int, Rational)):
            return cls(RationalInterval.point(value), RationalInterval.point(0))
        return NotImplemented

    def conj(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im)

    def __add__(self, other):
        other = ComplexInterval.coerce(other)
        if other is NotImplemented:
            return other
        return ComplexInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = ComplexInterval.coerce(other)
        if other is NotImplemented:
            return other
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = ComplexInterval.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = ComplexInterval.coerce(other)
        if other is NotImplemented:
            return other
        return ComplexInterval(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def abs2(self) -> RationalInterval:
        return self.re.square() + self.im.square()

    def __truediv__(self, other):
        other = ComplexInterval.coerce(other)
        if other is NotImplemented:
            return other
        num = self * other.conj()
        den = other.abs2()
        return ComplexInterval(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        other = ComplexInterval.coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def rounded(self, bits: int) -> "ComplexInterval":
        return ComplexInterval(self.re.rounded(bits), self.im.rounded(bits))

    def power(self, n: int, bits: int) -> "ComplexInterval":
        """``self**n`` by repeated squaring, rounding outward after each product.

        Runs on integer endpoints scaled by ``2**bits``; every product is
        floored (lower ends) or ceiled (upper ends) back onto the grid.
        """
        lifted = self.rounded(bits)
        base = tuple(
            _floor_div_pow2(v, bits) if k % 2 == 0 else _ceil_div_pow2(v, bits)
            for k, v in enumerate((lifted.re.lo, lifted.re.hi, lifted.im.lo, lifted.im.hi))
        )
        one = 1 << bits
        result = (one, one, 0, 0)
        while n:
            if n & 1:
                result = _grid_complex_mul(result, base, bits)
            n >>= 1
            if n:
                base = _grid_complex_mul(base, base, bits)
        scale = 1 << bits
        return ComplexInterval(
            RationalInterval(Fraction(result[0], scale), Fraction(result[1], scale)),
            RationalInterval(Fraction(result[2], scale), Fraction(result[3], scale)),
        )

    def modulus_bound(self) -> Fraction:
        """Upper bound for ``|z|**2``."""
        return self.re.magnitude() ** 2 + self.im.magnitude() ** 2

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)


def _grid_mul(a_lo, a_hi, b_lo, b_hi):
    products = (a_lo * b_lo, a_lo * b_hi, a_hi * b_lo, a_hi * b_hi)
    return min(products), max(products)


def _grid_complex_mul(a, b, bits):
    """Product of complex intervals held as scaled integer endpoints ``(re_lo, re_hi, im_lo, im_hi)``."""
    rr = _grid_mul(a[0], a[1], b[0], b[1])
    ii = _grid_mul(a[2], a[3], b[2], b[3])
    ri = _grid_mul(a[0], a[1], b[2], b[3])
    ir = _grid_mul(a[2], a[3], b[0], b[1])
    re_lo, re_hi = rr[0] - ii[1], rr[1] - ii[0]
    im_lo, im_hi = ri[0] + ir[0], ri[1] + ir[1]
    return (re_lo >> bits, -((-re_hi) >> bits), im_lo >> bits, -((-im_hi) >> bits))


def _atan_series(t: Fraction, bits: int):
    """Return integers ``lo, hi`` with ``lo <= atan(t) * 2**bits <= hi``; needs ``|t| <= 1/2``."""
    assert abs(t) <= Fraction(1, 2)
    if t == 0:
        return 0, 0
    sign = 1 if t > 0 else -1
    t = abs(t)
    t2_num, t2_den = (t * t).numerator, (t * t).denominator
    # p_lo <= t**(2k+1) * 2**bits <= p_hi
    p_lo = (t.numerator << bits) // t.denominator
    p_hi = -((-t.numerator << bits) // t.denominator)
    s_lo = s_hi = 0
    k = 0
    while True:
        d = 2 * k + 1
        term_lo = p_lo // d
        term_hi = -(-p_hi // d)
        if k % 2 == 0:
            s_lo += term_lo
            s_hi += term_hi
        else:
            s_lo -= term_hi
            s_hi -= term_lo
        p_lo = p_lo * t2_num // t2_den
        p_hi = -(-p_hi * t2_num // t2_den)
        k += 1
        next_hi = -(-p_hi // (2 * k + 1))
        if next_hi <= 1:
            # alternating series with decreasing terms: the tail is below the next term
            s_lo -= next_hi
            s_hi += next_hi
            break
    if sign > 0:
        return s_lo, s_hi
    return -s_hi, -s_lo


def _grid(lo: int, hi: int, bits: int) -> RationalInterval:
    scale = 1 << bits
    return RationalInterval(Fraction(lo, scale), Fraction(hi, scale))


@lru_cache(maxsize=64)
def pi_interval(bits: int) -> RationalInterval:
    """Machin's formula: pi = 16 atan(1/5) - 4 atan(1/239)."""
    w = bits + 16
    a_lo, a_hi = _atan_series(Fraction(1, 5), w)
    b_lo, b_hi = _atan_series(Fraction(1, 239), w)
    return _grid(16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo, w).rounded(bits + 8)


def atan_interval(t: Fraction, bits: int) -> RationalInterval:
    """Certified enclosure of ``atan(t)`` for a rational point ``t``."""
    t = Fraction(t)
    if t < 0:
        return -atan_interval(-t, bits)
    w = bits + 16
    if t > 1:
        return (pi_interval(w) * Fraction(1, 2) - atan_interval(1 / t, w)).rounded(bits + 8)
    if t > Fraction(1, 2):
        # atan(t) = pi/4 + atan((t-1)/(t+1)), the shifted argument lies in [-1/3, 0]
        lo, hi = _atan_series((t - 1) / (t + 1), w)
        return (pi_interval(w) * Fraction(1, 4) + _grid(lo, hi, w)).rounded(bits + 8)
    lo, hi = _atan_series(t, w)
    return _grid(lo, hi, w).rounded(bits + 8)


def atan2_point(y: Fraction, x: Fraction, bits: int) -> RationalInterval:
    """Enclosure of the argument of ``x + iy`` in ``[0, 2*pi)``."""
    y, x = Fraction(y), Fraction(x)
    if x == 0 and y == 0:
        raise ValueError("argument of zero")
    pi = pi_interval(bits + 8)
    if x > 0:
        base = atan_interval(y / x, bits + 8)
        return base if y >= 0 else base + 2 * pi
    if x < 0:
        return atan_interval(y / x, bits + 8) + pi
    return pi * Fraction(1, 2) if y > 0 else pi * Fraction(3, 2)


def arg_interval(z: ComplexInterval, bits: int) -> RationalInterval:
    """Enclosure of ``arg z`` in ``[0, 2*pi)`` over a rectangle.

    The rectangle must avoid the origin and must not straddle the
    non-negative real axis, so that the argument is continuous on it and
    its extremes sit at the corners.
    """
    if z.re.lo <= 0 <= z.re.hi and z.im.lo <= 0 <= z.im.hi:
        raise ValueError("rectangle contains the origin")
    if z.im.lo <= 0 <= z.im.hi and z.re.hi >= 0:
        raise ValueError("rectangle meets the branch cut of arg on [0, 2*pi)")
    corners = [(y, x) for y in (z.im.lo, z.im.hi) for x in (z.re.lo, z.re.hi)]
    result = None
    for y, x in corners:
        enclosure = atan2_point(y, x, bits)
        result = enclosure if result is None else result.hull(enclosure)
    return result


def to_decimal(value: Fraction, digits: int, *, round_up: bool = False) -> str:
    """Decimal string of ``value`` truncated to ``digits`` places (floor or ceiling)."""
    scaled = value * 10**digits
    q = math.floor(scaled) if not round_up else math.ceil(scaled)
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"
