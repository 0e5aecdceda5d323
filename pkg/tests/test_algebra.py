from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from tribauto.errors import DegenerateInput, DomainError
from tribauto.exact import algebra
from tribauto.exact.algebra import (
    Sign,
    c_of_T,
    closed_form_enclosure,
    constants,
    cubic_sign,
    drift_sign_fib,
    drift_sign_trib,
    drift_signs_fib,
    drift_signs_trib,
    envelope,
    envelope_below_threshold,
    floor_phi,
    floor_psi,
    floor_psi_interval,
    frac_psi_lt_threshold,
    phi_interval,
    predict_c_of_T,
    psi_interval,
    quadratic_sign,
    seq_a,
    seq_b,
    seq_c,
    sturmian_phi,
    v_angle,
)
from tribauto.numeration import FIB, TRIB, basis_term

mpmath.mp.dps = 80


@pytest.fixture(autouse=True)
def _mp_precision():
    # other modules change the global mpmath precision
    with mpmath.workdps(80):
        yield
PSI = mpmath.findroot(lambda x: x**3 - x**2 - x - 1, 1.84)
PHI = (1 + mpmath.sqrt(5)) / 2


def mp(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def test_cubic_sign_examples():
    assert cubic_sign(2, 1) is Sign.POSITIVE
    assert cubic_sign(1, 1) is Sign.NEGATIVE
    assert cubic_sign(24, 13) is Sign.POSITIVE
    assert 24 / 13 > PSI


def test_quadratic_sign_examples():
    assert quadratic_sign(2, 1) is Sign.POSITIVE
    assert quadratic_sign(3, 2) is Sign.NEGATIVE
    assert quadratic_sign(8, 5) is Sign.NEGATIVE


def test_sign_domain_errors():
    with pytest.raises(DomainError):
        cubic_sign(1, 0)
    with pytest.raises(DomainError):
        quadratic_sign(-1, 1)


def test_degenerate_input_is_unreachable_for_rationals_but_guarded(monkeypatch):
    monkeypatch.setattr(algebra, "cubic_value", lambda a, b: 0)
    with pytest.raises(DegenerateInput):
        cubic_sign(2, 1)


@given(st.integers(min_value=-10**30, max_value=10**30), st.integers(min_value=1, max_value=10**30))
def test_cubic_sign_against_mpmath(num, den):
    diff = mpmath.mpf(num) / den - PSI
    expected = Sign.POSITIVE if diff > 0 else Sign.NEGATIVE
    assert cubic_sign(num, den) is expected


@given(st.integers(min_value=0, max_value=10**30), st.integers(min_value=1, max_value=10**30))
def test_quadratic_sign_against_mpmath(num, den):
    expected = Sign.POSITIVE if mpmath.mpf(num) / den > PHI else Sign.NEGATIVE
    assert quadratic_sign(num, den) is expected


def test_floor_examples():
    assert [floor_psi(n) for n in (0, 5, 7)] == [0, 9, 12]
    assert [floor_phi(n) for n in (0, 4, 5)] == [0, 6, 8]
    assert seq_a(7) == 12


@given(st.integers(min_value=0, max_value=10**60))
def test_floors_against_mpmath(n):
    assert floor_psi(n) == int(mpmath.floor(PSI * n))
    assert floor_phi(n) == int(mpmath.floor(PHI * n))


@settings(max_examples=30)
@given(st.integers(min_value=10**200, max_value=10**400))
def test_floor_psi_huge_against_bracket(n):
    x = floor_psi(n)
    assert cubic_sign(x, n) is Sign.NEGATIVE and cubic_sign(x + 1, n) is Sign.POSITIVE


def test_floor_psi_matches_interval_path():
    for n in list(range(0, 3000)) + [10**5 - k for k in range(50)]:
        assert floor_psi(n) == floor_psi_interval(n)


def test_sequence_examples():
    assert seq_c(0) == 1
    assert seq_c(6) == 1
    assert seq_b(0) == 1
    assert [frac_psi_lt_threshold(n) for n in (1, 6, 7)] == [False, True, False]
    assert [sturmian_phi(n) for n in (0, 1, 2)] == [1, 0, 1]
    with pytest.raises(DomainError):
        frac_psi_lt_threshold(0)


def test_sequences_on_initial_segment():
    for n in range(1, 20000):
        c = seq_c(n)
        assert c in (1, 2)
        assert (c == 1) == frac_psi_lt_threshold(n)
        assert seq_b(n) == seq_c(n + 1) - 1


def test_drift_examples():
    assert drift_sign_trib(2) is Sign.NEGATIVE
    assert drift_sign_trib(3) is Sign.POSITIVE
    assert drift_sign_trib(5) is Sign.NEGATIVE
    assert drift_sign_fib(1) is Sign.NEGATIVE
    assert drift_sign_fib(2) is Sign.POSITIVE
    assert drift_sign_fib(10) is Sign.POSITIVE
    assert str(Sign.POSITIVE) == "positive"
    with pytest.raises(DomainError):
        drift_sign_trib(1)


def test_drift_streams_match_direct_evaluation():
    trib = dict(drift_signs_trib(3000, check_stride=97))
    assert all(trib[n] is drift_sign_trib(n) for n in range(2, 3001))
    fib = dict(drift_signs_fib(3000, check_stride=89))
    assert all(fib[n] is drift_sign_fib(n) for n in range(1, 3001))


def test_drift_predictor_link():
    for n, sign in drift_signs_trib(2000):
        if n >= 6:
            assert (sign is Sign.POSITIVE) == (c_of_T(n - 1) == 2)


def test_constants_digits_and_widths():
    const = constants(40)
    assert all(w <= Fraction(1, 1 << 40) for w in const.widths().values())
    checks = [
        (const.psi, "1.839"),
        (const.c1.re, "0.336228"),
        (const.abs_alpha(), "0.7373527"),
        (const.abs_kappa(), "0.608085"),
        (const.gamma, "2.536155"),
        (const.zeta, "4.10695"),
    ]
    for iv, digits in checks:
        assert mpmath.nstr(mp(iv.lo), 20).startswith(digits) or str(float(iv.lo)).startswith(digits)
        assert str(float(iv.lo))[: len(digits)] == digits == str(float(iv.hi))[: len(digits)]
    # alpha has negative imaginary part by convention
    assert const.alpha.im.hi < 0 and const.beta.im.lo > 0
    assert const.c1.im.hi == 0 == const.c1.im.lo


def test_constants_against_mpmath():
    const = constants(150)
    roots = mpmath.polyroots([1, -1, -1, -1], maxsteps=200, extraprec=400)
    alpha = next(r for r in roots if mpmath.im(r) < 0)
    beta = mpmath.conj(alpha)
    c2 = alpha / ((alpha - PSI) * (alpha - beta))
    kappa = c2 * (PSI - alpha)
    pairs = [
        (const.psi, PSI), (const.phi, PHI),
        (const.alpha.re, mpmath.re(alpha)), (const.alpha.im, mpmath.im(alpha)),
        (const.c1.re, mpmath.re(PSI / ((PSI - alpha) * (PSI - beta)))),
        (const.c2.re, mpmath.re(c2)), (const.c2.im, mpmath.im(c2)),
        (const.gamma, mpmath.arg(kappa) % (2 * mpmath.pi)),
        (const.zeta, mpmath.arg(alpha) % (2 * mpmath.pi)),
        (const.pi, mpmath.pi),
    ]
    for iv, ref in pairs:
        assert mp(iv.lo) <= ref <= mp(iv.hi)


def test_psi_phi_enclosures_contain_roots():
    for bits in (8, 64, 200):
        assert psi_interval(bits).width <= Fraction(1, 1 << bits)
        assert mp(psi_interval(bits).lo) <= PSI <= mp(psi_interval(bits).hi)
        assert mp(phi_interval(bits).lo) <= PHI <= mp(phi_interval(bits).hi)


def test_envelope_identity_and_bound():
    # E_n = psi T_n - T_{n+1}; the reference needs digits beyond T_n's size
    with mpmath.workdps(200):
        psi = mpmath.findroot(lambda x: x**3 - x**2 - x - 1, mpmath.mpf("1.84"))
        refs = [psi * basis_term(TRIB, n) - basis_term(TRIB, n + 1) for n in range(200)]
    for n in range(0, 200):
        e = envelope(n)
        exact = refs[n]
        assert mp(e.lo) <= exact <= mp(e.hi)
        if n >= 5:
            assert envelope_below_threshold(n)
    assert not envelope_below_threshold(3)
    assert not envelope_below_threshold(4)


def test_closed_form_contains_tribonacci_numbers():
    for n in range(5, 301):
        assert closed_form_enclosure(n).contains(basis_term(TRIB, n))


def test_v_angle_and_predictor_examples():
    pi = mpmath.pi
    v5 = v_angle(5)
    assert pi < mp(v5.lo) and mp(v5.hi) < 3 * pi / 2
    assert predict_c_of_T(5) == 2 == seq_c(7)
    # c(T_6) = c(13) = floor(14 psi) - floor(13 psi) = 25 - 23
    assert predict_c_of_T(6) == 2 == seq_c(13) == floor_psi(14) - floor_psi(13)
    with pytest.raises(DomainError):
        predict_c_of_T(4)


def test_predictor_initial_sweep():
    assert all(predict_c_of_T(n) == c_of_T(n) for n in range(5, 600))


def test_interval_c_of_T_small():
    assert [algebra.c_of_T_interval(m) for m in range(12)] == [c_of_T(m) for m in range(12)]


def test_precision_cap_is_reported():
    from tribauto.errors import PrecisionCapExceeded

    with pytest.raises(PrecisionCapExceeded) as info:
        algebra.predict_with_precision(10, start=128, cap=64)
    assert info.value.n == 10
    with pytest.raises(PrecisionCapExceeded):
        algebra.envelope_decision(2, start=64, cap=256)
