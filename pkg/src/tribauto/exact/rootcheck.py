"""Certified proof that ``alpha/|alpha|`` is not a root of unity.

Three independent layers:

1. exact: ``Q(Y) = Y^6+4Y^5+11Y^4+12Y^3+11Y^2+4Y+1`` divides the degree-9
   polynomial whose roots are ``x**2 * y`` over ordered pairs of roots of
   ``X^3-X^2-X-1``.  That polynomial is a double resultant, computed from
   Sylvester determinants over the integers and interpolated in ``Z``.  Since
   ``|alpha|**2 = 1/psi``, the square of ``u = alpha/|alpha|`` is ``alpha**2 psi``.
2. exact: no cyclotomic ``Phi_d`` with ``totient(d) <= 12`` divides
   ``M(X) = Q(X**2)``.
3. numeric: an interval evaluation of ``M(u)`` is within ``1e-30`` of zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List

from ..errors import VerificationFailed
from .intervals import ComplexInterval
from .polynomials import Poly, cyclotomic, interpolate, resultant, totient

TRIB_POLY = Poly([-1, -1, -1, 1])
Q_POLY = Poly([1, 4, 11, 12, 11, 4, 1])
M_POLY = Poly([1, 0, 4, 0, 11, 0, 12, 0, 11, 0, 4, 0, 1])


def _resultant_at(z: int, inner_x_power: int, y_power: int) -> int:
    """``Res_x(p(x), Res_y(p(y), z - x**a * y**b))`` for integer ``z``."""
    x = Poly.x()
    p_in_y = [Poly([c]) for c in TRIB_POLY.coeffs]
    if y_power == 0:
        inner = Poly([z]) - x ** inner_x_power
    else:
        g = [Poly()] * (y_power + 1)
        g[0] = Poly([z])
        g[y_power] = -(x ** inner_x_power)
        # p is monic, so Res_y(p, g) carries no leading-coefficient factor
        inner = resultant(p_in_y, g, zero=Poly())
    return resultant(list(TRIB_POLY.coeffs), list(inner.coeffs))


def _interpolated(inner_x_power: int, y_power: int, degree: int) -> Poly:
    points = [(z, _resultant_at(z, inner_x_power, y_power)) for z in range(degree + 3)]
    poly = interpolate(points)
    if poly.degree != degree:
        raise VerificationFailed("layer1", f"interpolant has degree {poly.degree}, expected {degree}")
    return poly


@lru_cache(maxsize=None)
def x2y_polynomial() -> Poly:
    """Monic degree-9 polynomial with roots ``x**2 * y`` for roots ``x, y`` of ``X^3-X^2-X-1``."""
    return _interpolated(2, 1, 9)


@lru_cache(maxsize=None)
def cube_polynomial() -> Poly:
    """Monic cubic with roots ``x**3`` for roots ``x`` of ``X^3-X^2-X-1``."""
    return _interpolated(3, 0, 3)


@dataclass
class LayerResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)


@dataclass
class RootCheckReport:
    layers: List[LayerResult]

    @property
    def passed(self) -> bool:
        return all(layer.passed for layer in self.layers)

    @property
    def conclusion(self) -> str:
        if self.passed:
            return ("u = alpha/|alpha| is not a root of unity; "
                    "zeta and 2*pi are linearly independent over Q")
        return "inconclusive"

    def as_dict(self) -> dict:
        return {
            "version": 1,
            "passed": self.passed,
            "layers": [{"name": l.name, "passed": l.passed, **l.detail} for l in self.layers],
            "conclusion": self.conclusion,
        }


def layer_divisibility() -> LayerResult:
    r = x2y_polynomial()
    quotient, remainder = r.divmod_rational(Q_POLY)
    cofactor_ok = False
    if not remainder and all(q.denominator == 1 for q in quotient):
        cofactor_ok = Poly(int(q) for q in quotient) == cube_polynomial()
    return LayerResult(
        "layer1-divisibility",
        passed=not remainder and cofactor_ok,
        detail={
            "R": str(r),
            "Q": str(Q_POLY),
            "remainder_zero": not remainder,
            "cofactor_is_cube_polynomial": cofactor_ok,
        },
    )


def cyclotomic_orders(max_totient: int = 12) -> List[int]:
    # totient(d) >= sqrt(d/2), so d <= 2 * max_totient**2 bounds the search.
    return [d for d in range(1, 2 * max_totient * max_totient + 1) if totient(d) <= max_totient]


def layer_cyclotomic(max_totient: int = 12) -> LayerResult:
    hits = []
    orders = cyclotomic_orders(max_totient)
    for d in orders:
        if cyclotomic(d).divides(M_POLY):
            hits.append(d)
    return LayerResult(
        "layer2-cyclotomic",
        passed=not hits,
        detail={"orders_checked": orders, "dividing_orders": hits, "M(1)": M_POLY(1), "M(-1)": M_POLY(-1)},
    )


def unit_vector_alpha(bits: int) -> ComplexInterval:
    from .algebra import constants

    alpha = constants(bits).alpha
    modulus = alpha.abs2().sqrt(bits + 8)
    return ComplexInterval(alpha.re / modulus, alpha.im / modulus).rounded(bits + 8)


def layer_interval(bits: int = 256, tolerance: Fraction = Fraction(1, 10**30)) -> LayerResult:
    u = unit_vector_alpha(bits)
    value = M_POLY(u)
    bound_sq = value.modulus_bound()
    passed = bound_sq <= tolerance * tolerance
    return LayerResult(
        "layer3-interval",
        passed=passed,
        detail={"bits": bits, "abs_M_u_upper": f"{float(bound_sq) ** 0.5:.3e}", "tolerance": "1e-30"},
    )


def unit_root_exclusion(raise_on_failure: bool = True) -> RootCheckReport:
    report = RootCheckReport([layer_divisibility(), layer_cyclotomic(), layer_interval()])
    if raise_on_failure:
        for layer in report.layers:
            if not layer.passed:
                raise VerificationFailed(layer.name, str(layer.detail))
    return report
