"""Exact and certified arithmetic around the Tribonacci constant.

``psi`` is the unique real zero of ``X^3 - X^2 - X - 1`` and the polynomial
has positive leading coefficient, so for any rational ``x``

    sign(x - psi) == sign(x^3 - x^2 - x - 1),

and after clearing a positive denominator the test is a single integer
sign.  The same holds for ``phi`` and ``X^2 - X - 1`` on ``x >= 0``.  These
integer comparisons are the trusted path.  The interval computations below
(constants, the envelope, the angle ``v(n)``) are a second path that never
calls the integer sign tests.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Tuple

from ..errors import DegenerateInput, DomainError, PrecisionCapExceeded
from ..numeration import FIB, TRIB, basis_term
from .intervals import ComplexInterval, RationalInterval, arg_interval, pi_interval

PRECISION_START = 128
PRECISION_CAP = 16384

_PSI_FLOAT = 1.8392867552141612
_PHI_FLOAT = 1.618033988749895
_FLOAT_SAFE = 1 << 50


class Sign(enum.IntEnum):
    NEGATIVE = -1
    POSITIVE = 1

    def __str__(self):
        return "positive" if self is Sign.POSITIVE else "negative"


def _precision_schedule(start: int = PRECISION_START, cap: int = PRECISION_CAP):
    bits = start
    while bits <= cap:
        yield bits
        bits *= 2


# ---------------------------------------------------------------------------
# trusted path: integer sign tests


def cubic_value(x_num: int, x_den: int) -> int:
    """``x_den**3 * p(x_num/x_den)`` for ``p = X^3 - X^2 - X - 1``."""
    d2 = x_den * x_den
    return ((x_num - x_den) * x_num - d2) * x_num - d2 * x_den


def cubic_sign(x_num: int, x_den: int) -> Sign:
    """Sign of ``x_num/x_den - psi``."""
    if x_den < 1:
        raise DomainError("denominator must be positive")
    value = cubic_value(x_num, x_den)
    if value == 0:
        raise DegenerateInput(f"X^3-X^2-X-1 vanishes at {x_num}/{x_den}")
    return Sign.POSITIVE if value > 0 else Sign.NEGATIVE


def quadratic_sign(x_num: int, x_den: int) -> Sign:
    """Sign of ``x_num/x_den - phi`` for ``x_num >= 0``."""
    if x_den < 1:
        raise DomainError("denominator must be positive")
    if x_num < 0:
        # the other zero of X^2-X-1 is negative; the reduction needs x >= 0
        raise DomainError("quadratic_sign needs a non-negative numerator")
    value = x_num * x_num - x_num * x_den - x_den * x_den
    if value == 0:
        raise DegenerateInput(f"X^2-X-1 vanishes at {x_num}/{x_den}")
    return Sign.POSITIVE if value > 0 else Sign.NEGATIVE


@lru_cache(maxsize=None)
def _psi_fixed(bits: int) -> int:
    """``floor(psi * 2**bits)`` by integer Newton steps, settled by ``cubic_sign``."""
    if bits <= 48:
        x = int(_PSI_FLOAT * (1 << bits))
    else:
        half = bits // 2
        x = _psi_fixed(half) << (bits - half)
        d = 1 << bits
        for _ in range(2):
            f = cubic_value(x, d)
            df = (3 * x - 2 * d) * x - d * d
            x -= f // df
    d = 1 << bits
    while cubic_sign(x, d) is Sign.POSITIVE:
        x -= 1
    while cubic_sign(x + 1, d) is Sign.NEGATIVE:
        x += 1
    return x


def _psi_guess(n: int) -> int:
    if n < _FLOAT_SAFE:
        return int(n * _PSI_FLOAT)
    bits = 1 << (n.bit_length() + 8 - 1).bit_length()
    return (n * _psi_fixed(bits)) >> bits


def floor_psi(n: int) -> int:
    """``floor(psi * n)``: an estimate corrected by exact cubic sign tests."""
    if n < 0:
        raise DomainError("floor_psi needs n >= 0")
    if n == 0:
        return 0
    x = _psi_guess(n)
    for _ in range(4):
        if cubic_sign(x, n) is Sign.POSITIVE:
            x -= 1
        elif cubic_sign(x + 1, n) is Sign.NEGATIVE:
            x += 1
        else:
            return x
    raise AssertionError(f"floor_psi estimate for n={n} needed more than 3 corrections")


def floor_phi(n: int) -> int:
    if n < 0:
        raise DomainError("floor_phi needs n >= 0")
    if n == 0:
        return 0
    x = (n + math.isqrt(5 * n * n)) // 2
    for _ in range(4):
        if quadratic_sign(x, n) is Sign.POSITIVE:
            x -= 1
        elif quadratic_sign(x + 1, n) is Sign.NEGATIVE:
            x += 1
        else:
            return x
    raise AssertionError(f"floor_phi estimate for n={n} needed more than 3 corrections")


def seq_a(n: int) -> int:
    return floor_psi(n)


def seq_c(n: int) -> int:
    """``floor(psi (n+1)) - floor(psi n)``, always 1 or 2."""
    return floor_psi(n + 1) - floor_psi(n)


def seq_b(n: int) -> int:
    # floor((psi-1) m) = floor(psi m) - m
    return (floor_psi(n + 2) - (n + 2)) - (floor_psi(n + 1) - (n + 1))


def sturmian_phi(n: int) -> int:
    """``floor((phi-1)(n+2)) - floor((phi-1)(n+1))``."""
    return (floor_phi(n + 2) - (n + 2)) - (floor_phi(n + 1) - (n + 1))


def frac_psi_lt_threshold(n: int) -> bool:
    """Whether ``{psi n} < 2 - psi``, i.e. ``psi (n+1) < floor(psi n) + 2``."""
    if n < 1:
        raise DomainError("frac_psi_lt_threshold needs n >= 1")
    return cubic_sign(floor_psi(n) + 2, n + 1) is Sign.POSITIVE


def c_of_T(m: int) -> int:
    """``c(T_m)`` through the exact floor."""
    return seq_c(basis_term(TRIB, m))


def drift_sign_trib(n: int) -> Sign:
    """Sign of ``T_n - psi T_{n-1}``."""
    if n < 2:
        raise DomainError("drift_sign_trib needs n >= 2")
    return cubic_sign(basis_term(TRIB, n), basis_term(TRIB, n - 1))


def drift_sign_fib(n: int) -> Sign:
    """Sign of ``F_{n+1} - phi F_n``."""
    if n < 1:
        raise DomainError("drift_sign_fib needs n >= 1")
    return quadratic_sign(basis_term(FIB, n + 1), basis_term(FIB, n))


def _norm_form_stream(char_poly, seeds, start, n_max, spot_check, check_stride):
    """Yield ``(n, value)`` for a sequence annihilated by ``char_poly`` (monic, integer).

    ``seeds`` are the first ``deg`` values, computed directly.  Every
    ``check_stride``-th value is recomputed by ``spot_check`` as a guard.
    """
    coeffs = char_poly.coeffs
    order = len(coeffs) - 1
    assert coeffs[-1] == 1 and len(seeds) == order
    window = list(seeds)
    low = coeffs[:-1]
    n = start
    while n <= n_max:
        value = window[0]
        if check_stride and (n - start) % check_stride == 0:
            if spot_check(n) != value:
                raise AssertionError(f"norm-form recurrence drifted at n={n}")
        yield n, value
        nxt = 0
        for c, w in zip(low, window):
            if c:
                nxt -= c * w
        window.pop(0)
        window.append(nxt)
        n += 1


def _trib_norm(n: int) -> int:
    return cubic_value(basis_term(TRIB, n), basis_term(TRIB, n - 1))


def drift_signs_trib(n_max: int, check_stride: int = 4096) -> Iterator[Tuple[int, Sign]]:
    """Stream ``drift_sign_trib(n)`` for ``n = 2..n_max``.

    ``D_n = T_n^3 - T_n^2 T_{n-1} - T_n T_{n-1}^2 - T_{n-1}^3`` is a cubic form
    in a Tribonacci pair, hence a combination of the ten products
    ``r_i r_j r_k`` of roots.  Those are the roots of ``(Z-1) R(Z)`` with
    ``R`` the x^2 y resultant polynomial (``psi alpha beta = 1``), so ``D_n``
    obeys that order-10 integer recurrence and never needs a full cubic
    evaluation on huge operands.
    """
    from .polynomials import Poly
    from .rootcheck import x2y_polynomial

    char_poly = Poly([-1, 1]) * x2y_polynomial()
    order = char_poly.degree
    seeds = [_trib_norm(n) for n in range(2, 2 + order)]
    for n, value in _norm_form_stream(char_poly, seeds, 2, n_max, _trib_norm, check_stride):
        if value == 0:
            raise DegenerateInput(f"norm form vanished at n={n}")
        yield n, Sign.POSITIVE if value > 0 else Sign.NEGATIVE


def _fib_norm(n: int) -> int:
    x, y = basis_term(FIB, n + 1), basis_term(FIB, n)
    return x * x - x * y - y * y


def drift_signs_fib(n_max: int, check_stride: int = 4096) -> Iterator[Tuple[int, Sign]]:
    """Stream ``drift_sign_fib(n)`` for ``n = 1..n_max`` via the quadratic norm form.

    Products of two roots of ``X^2-X-1`` are ``phi^2, phibar^2, -1``; the
    annihilator is ``(Z+1)(Z^2-3Z+1)``.
    """
    from .polynomials import Poly

    char_poly = Poly([1, 1]) * Poly([1, -3, 1])
    seeds = [_fib_norm(n) for n in range(1, 1 + char_poly.degree)]
    for n, value in _norm_form_stream(char_poly, seeds, 1, n_max, _fib_norm, check_stride):
        if value == 0:
            raise DegenerateInput(f"norm form vanished at n={n}")
        yield n, Sign.POSITIVE if value > 0 else Sign.NEGATIVE


# ---------------------------------------------------------------------------
# certified interval path


def _newton_enclosure(coeffs, lo: Fraction, hi: Fraction, bits: int) -> RationalInterval:
    """Interval Newton refinement of a simple real root inside ``[lo, hi]``."""
    def poly(x):
        return sum(c * x**i for i, c in enumerate(coeffs))

    dcoeffs = [i * c for i, c in enumerate(coeffs)][1:]
    target = Fraction(1, 1 << bits)
    w = bits + 8
    box = RationalInterval(lo, hi)
    for _ in range(4 * bits.bit_length() + 64):
        if box.width <= target:
            return box
        m = Fraction(math.floor(box.mid * (1 << w)), 1 << w)
        slope = RationalInterval.point(0)
        for i, c in enumerate(dcoeffs):
            term = box.square() if i == 2 else (box if i == 1 else RationalInterval.point(1))
            slope = slope + term * c
        step = (m - RationalInterval.point(poly(m)) / slope).rounded(w)
        box = box.intersect(step)
    raise AssertionError("interval Newton failed to converge")


@lru_cache(maxsize=64)
def psi_interval(bits: int) -> RationalInterval:
    return _newton_enclosure((-1, -1, -1, 1), Fraction(9, 5), Fraction(19, 10), bits)


@lru_cache(maxsize=64)
def phi_interval(bits: int) -> RationalInterval:
    return _newton_enclosure((-1, -1, 1), Fraction(8, 5), Fraction(17, 10), bits)


@dataclass(frozen=True)
class AlgebraicConstants:
    psi: RationalInterval
    phi: RationalInterval
    alpha: ComplexInterval
    beta: ComplexInterval
    c1: ComplexInterval
    c2: ComplexInterval
    c3: ComplexInterval
    kappa: ComplexInterval  # c2 (psi - alpha)
    gamma: RationalInterval
    zeta: RationalInterval
    pi: RationalInterval
    precision: int

    @property
    def two_pi(self) -> RationalInterval:
        return self.pi * 2

    def abs_alpha(self) -> RationalInterval:
        return self.alpha.abs2().sqrt(self.precision + 8)

    def abs_kappa(self) -> RationalInterval:
        return self.kappa.abs2().sqrt(self.precision + 8)

    def widths(self):
        return {
            "psi": self.psi.width,
            "phi": self.phi.width,
            "alpha": self.alpha.width,
            "beta": self.beta.width,
            "c1": self.c1.width,
            "c2": self.c2.width,
            "c3": self.c3.width,
            "kappa": self.kappa.width,
            "gamma": self.gamma.width,
            "zeta": self.zeta.width,
        }


def _build_constants(w: int) -> AlgebraicConstants:
    psi = psi_interval(w)
    phi = phi_interval(w)
    # alpha, beta: zeros of X^2 + (psi-1) X + 1/psi
    disc = (4 / psi - (psi - 1).square()).rounded(w)
    root = disc.sqrt(w)
    re = ((1 - psi) * Fraction(1, 2)).rounded(w)
    im = (root * Fraction(1, 2)).rounded(w)
    alpha = ComplexInterval(re, -im)
    beta = alpha.conj()
    psi_c = ComplexInterval.coerce(psi)
    c1 = ComplexInterval.coerce((psi / (psi_c - alpha).abs2()).rounded(w))
    c2 = (alpha / ((alpha - psi_c) * (alpha - beta))).rounded(w)
    c3 = (beta / ((beta - psi_c) * (beta - alpha))).rounded(w)
    kappa = (c2 * (psi_c - alpha)).rounded(w)
    return AlgebraicConstants(
        psi=psi, phi=phi, alpha=alpha, beta=beta, c1=c1, c2=c2, c3=c3, kappa=kappa,
        gamma=arg_interval(kappa, w), zeta=arg_interval(alpha, w), pi=pi_interval(w),
        precision=w,
    )


@lru_cache(maxsize=32)
def constants(bits: int = PRECISION_START, cap: int = PRECISION_CAP) -> AlgebraicConstants:
    """All constants enclosed in intervals of width at most ``2**-bits``."""
    if bits < 1:
        raise DomainError("precision must be positive")
    target = Fraction(1, 1 << bits)
    guard = 16
    while bits + guard <= cap + 64:
        built = _build_constants(bits + guard)
        if all(width <= target for width in built.widths().values()):
            return built
        guard *= 2
    raise PrecisionCapExceeded("constants", bits + guard)


def envelope_at(n: int, bits: int) -> RationalInterval:
    """Enclosure of ``2 Re(c2 (psi - alpha) alpha**n)`` at working precision ``bits``."""
    const = constants(bits)
    w = const.precision
    value = const.kappa * const.alpha.power(n, w)
    return (value.re * 2).rounded(w)


def envelope_decision(n: int, start: int = PRECISION_START, cap: int = PRECISION_CAP):
    """Return ``(interval, below, bits)`` where ``below`` says ``|E_n| < 2 - psi``.

    Undecidable at ``n = 2``, where ``E_2 = psi - 2`` exactly.
    """
    if n < 0:
        raise DomainError("envelope needs n >= 0")
    for bits in _precision_schedule(start, cap):
        value = envelope_at(n, bits)
        threshold = 2 - constants(bits).psi
        if value.magnitude() < threshold.lo:
            return value, True, bits
        if value.mignitude() > threshold.hi:
            return value, False, bits
    raise PrecisionCapExceeded("envelope", cap, n)


def envelope(n: int, bits: int = PRECISION_START) -> RationalInterval:
    if n < 0:
        raise DomainError("envelope needs n >= 0")
    return envelope_at(n, bits)


def envelope_below_threshold(n: int) -> bool:
    return envelope_decision(n)[1]


def closed_form_enclosure(n: int) -> RationalInterval:
    """Enclosure of ``c1 psi**n + c2 alpha**n + c3 beta**n``, which equals ``T_n``."""
    bits = 64 * (2 + (n + n.bit_length()) // 64)
    const = constants(bits)
    w = const.precision
    psi_n = ComplexInterval.coerce(const.psi).power(n, w)
    main = (const.c1 * psi_n).re
    decay = (const.c2 * const.alpha.power(n, w)).re * 2
    return (main + decay).rounded(w)


def _reduce_mod_two_pi(x: RationalInterval, two_pi: RationalInterval) -> RationalInterval:
    k = math.floor(x.mid / two_pi.mid)
    v = x - two_pi * k
    if v.hi < 0:
        v = v + two_pi
    elif v.lo >= two_pi.hi:
        v = v - two_pi
    return v


def v_angle_at(n: int, bits: int) -> RationalInterval:
    """``gamma + n zeta`` reduced mod ``2 pi``; may straddle 0 at low precision."""
    const = constants(bits + n.bit_length() + 8)
    x = const.gamma + const.zeta * n
    return _reduce_mod_two_pi(x, const.two_pi).rounded(bits + 8)


def v_angle(n: int, start: int = PRECISION_START, cap: int = PRECISION_CAP) -> RationalInterval:
    if n < 0:
        raise DomainError("v_angle needs n >= 0")
    for bits in _precision_schedule(start, cap):
        v = v_angle_at(n, bits)
        two_pi = constants(bits).two_pi
        if v.lo > 0 and v.hi < two_pi.lo:
            return v
    raise PrecisionCapExceeded("v_angle", cap, n)


def _quadrant_value(v: RationalInterval, pi: RationalInterval) -> Optional[int]:
    half, three_half, two = pi * Fraction(1, 2), pi * Fraction(3, 2), pi * 2
    if v.lo > 0 and v.hi < half.lo:
        return 1
    if v.lo > three_half.hi and v.hi < two.lo:
        return 1
    if v.lo > half.hi and v.hi < three_half.lo:
        return 2
    return None


def predict_with_precision(n: int, start: int = PRECISION_START, cap: int = PRECISION_CAP):
    """``(prediction, bits)``: the quadrant rule for ``c(T_n)`` and the precision it took."""
    if n < 5:
        raise DomainError("the quadrant predictor is valid for n >= 5")
    for bits in _precision_schedule(start, cap):
        value = _quadrant_value(v_angle_at(n, bits), constants(bits).pi)
        if value is not None:
            return value, bits
    raise PrecisionCapExceeded("predict_c_of_T", cap, n)


def predict_c_of_T(n: int) -> int:
    return predict_with_precision(n)[0]


def floor_psi_interval(n: int, start: int = 64, cap: int = PRECISION_CAP) -> int:
    """``floor(psi n)`` from the certified ``psi`` enclosure alone."""
    if n < 0:
        raise DomainError("floor_psi_interval needs n >= 0")
    bits = max(start, n.bit_length() + 16)
    while bits <= cap + n.bit_length():
        x = psi_interval(bits) * n
        lo = math.floor(x.lo)
        if lo == math.floor(x.hi):
            return lo
        bits *= 2
    raise PrecisionCapExceeded("floor_psi_interval", bits, n)


def c_of_T_interval(m: int) -> int:
    """``c(T_m)`` via intervals only: the quadrant rule for ``m >= 5``, enclosed floors below."""
    if m >= 5:
        return predict_c_of_T(m)
    t = basis_term(TRIB, m)
    return floor_psi_interval(t + 1) - floor_psi_interval(t)
