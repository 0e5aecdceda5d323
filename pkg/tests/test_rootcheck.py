import sympy

from tribauto.exact import rootcheck
from tribauto.exact.polynomials import Poly, cyclotomic
from tribauto.exact.rootcheck import (
    M_POLY,
    Q_POLY,
    TRIB_POLY,
    cube_polynomial,
    cyclotomic_orders,
    layer_cyclotomic,
    layer_divisibility,
    layer_interval,
    unit_root_exclusion,
    x2y_polynomial,
)

X, Y, Z = sympy.symbols("X Y Z")


def test_x2y_polynomial_against_sympy_double_resultant():
    p = X**3 - X**2 - X - 1
    inner = sympy.resultant(p.subs(X, Y), Z - X**2 * Y, Y)
    outer = sympy.Poly(sympy.resultant(p, inner, X), Z)
    ours = x2y_polynomial()
    assert ours.degree == 9
    assert [int(c) for c in reversed(outer.all_coeffs())] == list(ours.coeffs) or \
        [-int(c) for c in reversed(outer.all_coeffs())] == list(ours.coeffs)
    assert ours.coeffs == (-1, 1, 2, 16, -24, -22, -46, -12, -3, 1)


def test_cube_polynomial_is_cofactor():
    assert cube_polynomial() == Poly([-1, 5, -7, 1])
    assert Q_POLY * cube_polynomial() == x2y_polynomial()


def test_m_is_q_of_x_squared():
    assert Q_POLY.compose(Poly([0, 0, 1])) == M_POLY
    assert TRIB_POLY(2) == 1


def test_layers():
    d = layer_divisibility()
    assert d.passed and d.detail["remainder_zero"]
    c = layer_cyclotomic()
    assert c.passed and c.detail["M(1)"] == 44 and c.detail["M(-1)"] == 44
    assert cyclotomic_orders() == [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16,
                                   18, 20, 21, 22, 24, 26, 28, 30, 36, 42]
    assert not any(cyclotomic(k).divides(M_POLY) for k in cyclotomic_orders())
    i = layer_interval()
    assert i.passed


def test_unit_root_exclusion_report():
    report = unit_root_exclusion()
    assert report.passed
    data = report.as_dict()
    assert data["version"] == 1
    assert [layer["name"] for layer in data["layers"]] == [
        "layer1-divisibility", "layer2-cyclotomic", "layer3-interval"]
    assert "not a root of unity" in data["conclusion"]


def test_layer_failure_is_reported(monkeypatch):
    import pytest
    from tribauto.errors import VerificationFailed

    monkeypatch.setattr(rootcheck, "M_POLY", Poly([-1, 0, 1]))  # X^2 - 1 = Phi_1 Phi_2
    with pytest.raises(VerificationFailed) as info:
        unit_root_exclusion()
    assert info.value.layer == "layer2-cyclotomic"
    assert not unit_root_exclusion(raise_on_failure=False).passed
