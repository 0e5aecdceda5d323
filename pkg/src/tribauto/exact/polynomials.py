"""Dense univariate polynomials with integer coefficients.

Only what the resultant and cyclotomic checks need: ring arithmetic,
exact division, Horner evaluation over any ring-like argument, Sylvester
matrices and fraction-free (Bareiss) determinants.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple


class Poly:
    """Integer polynomial; ``coeffs[i]`` is the coefficient of ``X**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: Tuple[int, ...] = tuple(c)

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "Poly":
        return cls([0] * degree + [coefficient])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mag = abs(c)
            body = "" if (mag == 1 and i > 0) else str(mag)
            if i >= 1:
                body += "X" if i == 1 else f"X^{i}"
            parts.append(("-" if c < 0 else "+", body))
        text = "".join(f" {s} {b}" for s, b in parts).strip()
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    @staticmethod
    def _lift(value) -> "Poly":
        if isinstance(value, Poly):
            return value
        if isinstance(value, int):
            return Poly([value])
        return NotImplemented

    def __add__(self, other):
        other = Poly._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Poly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = Poly._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = Poly._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = Poly._lift(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = Poly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod_rational(self, divisor: "Poly") -> Tuple[List[Fraction], List[Fraction]]:
        """Long division over Q; returns (quotient, remainder) coefficient lists."""
        if not divisor:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        dq = divisor.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        lead = Fraction(divisor.leading)
        for k in range(len(rem) - dq - 1, -1, -1):
            q = rem[k + dq] / lead
            quot[k] = q
            if q:
                for i, c in enumerate(divisor.coeffs):
                    rem[k + i] -= q * c
        rem = rem[:dq] if dq > 0 else []
        while rem and rem[-1] == 0:
            rem.pop()
        return quot, rem

    def __divmod__(self, divisor: "Poly") -> Tuple["Poly", "Poly"]:
        quot, rem = self.divmod_rational(divisor)
        if any(q.denominator != 1 for q in quot) or any(r.denominator != 1 for r in rem):
            raise ArithmeticError(f"{self} / {divisor} leaves the integer ring")
        return Poly(int(q) for q in quot), Poly(int(r) for r in rem)

    def __mod__(self, divisor: "Poly") -> "Poly":
        return divmod(self, divisor)[1]

    def __floordiv__(self, divisor):
        """Exact division; raises when the remainder is non-zero."""
        divisor = Poly._lift(divisor)
        q, r = divmod(self, divisor)
        if r:
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        """True iff ``self`` divides ``other`` in Q[X]."""
        _, rem = other.divmod_rational(self)
        return not rem

    def __call__(self, value):
        """Horner evaluation; ``value`` may be any ring element (int, Fraction, interval)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc


def bareiss_det(matrix: Sequence[Sequence]):
    """Fraction-free determinant over an integral domain with exact ``//``.

    Entries may be ints or :class:`Poly`; all divisions performed are exact.
    """
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0 * m[0][0]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0 * m[k][k]
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def sylvester_matrix(f: Sequence, g: Sequence, zero=0) -> List[list]:
    """Sylvester matrix of two polynomials given by coefficient lists (low degree first).

    Coefficients may themselves be ring elements (e.g. :class:`Poly`).
    """
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fh = list(reversed(f))
    gh = list(reversed(g))
    for i in range(n):
        rows.append([zero] * i + fh + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gh + [zero] * (size - n - 1 - i))
    return rows


def resultant(f: Sequence, g: Sequence, zero=0):
    return bareiss_det(sylvester_matrix(f, g, zero))


def interpolate(points: Sequence[Tuple[int, int]]) -> Poly:
    """Integer polynomial through the given points (Newton form over Q)."""
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    coeffs = [table[0]]
    for level in range(1, len(points)):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(len(table) - 1)
        ]
        coeffs.append(table[0])
    acc = [Fraction(0)]
    for k in range(len(coeffs) - 1, -1, -1):
        # acc = acc * (X - xs[k]) + coeffs[k]
        shifted = [Fraction(0)] + acc
        for i, c in enumerate(acc):
            shifted[i] -= xs[k] * c
        shifted[0] += coeffs[k]
        acc = shifted
    if any(c.denominator != 1 for c in acc):
        raise ArithmeticError("interpolating polynomial is not integral")
    return Poly(int(c) for c in acc)


def totient(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> Poly:
    """``Phi_d`` from ``X**d - 1 = prod_{e | d} Phi_e``."""
    poly = Poly.monomial(d) - 1
    for e in range(1, d):
        if d % e == 0:
            poly = poly // cyclotomic(e)
    return poly
