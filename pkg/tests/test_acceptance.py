"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Caches are cleared before timing so runtimes reflect cold computation.
"""

import time
from contextlib import contextmanager
from fractions import Fraction
from importlib import resources

import pytest

from tribauto import certifier
from tribauto.automata import learn
from tribauto.automata.machines import dumps, loads, minimize
from tribauto.bfile import compare_index_lists, parse
from tribauto.cli import main
from tribauto.exact import algebra, intervals, rootcheck
from tribauto.exact.algebra import Sign
from tribauto.numeration import TRIB, basis_term
from tribauto.tribword import check_an_bounds

DATA = resources.files("tribauto.data")


def cold_caches():
    algebra.constants.cache_clear()
    algebra.psi_interval.cache_clear()
    algebra.phi_interval.cache_clear()
    algebra._psi_fixed.cache_clear()
    intervals.pi_interval.cache_clear()
    rootcheck.x2y_polynomial.cache_clear()
    rootcheck.cube_polynomial.cache_clear()
    certifier._c_of_T = certifier._ExactCofT()


@contextmanager
def criterion(number, title, budget, capsys):
    cold_caches()
    state = {"detail": ""}
    start = time.perf_counter()
    ok = False
    try:
        yield state
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        ok = ok and elapsed < budget
        with capsys.disabled():
            print(f"\n[acceptance {number:>2}] {'PASS' if ok else 'FAIL'} {title}: "
                  f"{state['detail']} ({elapsed:.2f}s, budget {budget}s)")
    assert elapsed < budget, f"criterion {number} took {elapsed:.2f}s"


def digits_inside(iv, digits):
    """Every value of ``iv`` starts with ``digits``."""
    places = len(digits.split(".")[1])
    low = Fraction(digits)
    high = low + Fraction(1, 10**places)
    return low <= iv.lo and iv.hi < high


def test_c01_constants_digits(capsys):
    with criterion(1, "constants match printed digits", 1.0, capsys) as st:
        const = algebra.constants(27)  # 2^-27 < 1e-8
        names = {
            "psi": (const.psi, "1.839"),
            "c1": (const.c1.re, "0.336228"),
            "|alpha|": (const.abs_alpha(), "0.7373527"),
            "|c2(psi-alpha)|": (const.abs_kappa(), "0.608085"),
            "gamma": (const.gamma, "2.536155"),
            "zeta": (const.zeta, "4.10695"),
        }
        for name, (iv, digits) in names.items():
            assert iv.width <= Fraction(1, 10**8), name
            assert digits_inside(iv, digits), name
        st["detail"] = ", ".join(f"{n}={float(iv.mid):.9f}" for n, (iv, _) in names.items())


def test_c02_exact_sequences(capsys):
    n_max = 10**6
    with criterion(2, "c in {1,2}, c=1 iff {psi n}<2-psi, b(n)=c(n+1)-1 for n<=1e6", 60, capsys) as st:
        bad = []
        for n in range(n_max + 1):
            c = algebra.seq_c(n)
            if c not in (1, 2) or algebra.seq_b(n) != algebra.seq_c(n + 1) - 1:
                bad.append(n)
            elif n >= 1 and (c == 1) != algebra.frac_psi_lt_threshold(n):
                bad.append(n)
        # second, independent path on a stride
        stride_bad = [n for n in range(0, n_max + 1, 997)
                      if algebra.floor_psi(n) != algebra.floor_psi_interval(n)]
        assert not bad and not stride_bad
        st["detail"] = f"{n_max + 1} values exact, {n_max // 997 + 1} interval cross-checks"


def test_c03_envelope_bound(capsys):
    with criterion(3, "|2 Re c2(psi-alpha) alpha^n| < 2-psi for 5<=n<=1e4", 30, capsys) as st:
        max_bits = 0
        for n in range(5, 10**4 + 1):
            _, below, bits = algebra.envelope_decision(n)
            assert below, n
            max_bits = max(max_bits, bits)
        st["detail"] = f"9996 values certified, max precision {max_bits} bits"


def test_c04_predictor_agreement(capsys):
    with criterion(4, "quadrant predictor equals c(T_n) for 5<=n<=1e4", 300, capsys) as st:
        report = certifier.agreement_sweep(10**4)  # PrecisionCapExceeded would propagate
        assert report.passed and report.checked == 9996
        st["detail"] = f"{report.checked} agree, max precision {report.max_bits} bits, no cap hits"


def test_c05_lower_bound_certificate(tmp_path, capsys):
    with criterion(5, "certificate for 65 states, deterministic; N=16 fully interval-checked", 300, capsys) as st:
        out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["certify", "--states", "64", "--out", str(out1)]) == 0
        assert main(["certify", "--states", "64", "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert main(["verify", "--cert", str(out1)]) == 0
        cert = certifier.Certificate.from_json(out1.read_text(encoding="utf-8"))
        assert len(cert.entries) == 2080 and max(k for *_, k in cert.entries) <= cert.k_cap
        small = certifier.verify_certificate(certifier.build_certificate(16), interval_fraction=1.0)
        assert small.ok and small.interval_checked == 136 and small.interval_uncertified == 0
        st["detail"] = (f"2080 pairs, max k {max(k for *_, k in cert.entries)}, "
                        f"N=16 interval path 136/136")
    capsys.readouterr()


def test_c06_case_searches(capsys):
    with criterion(6, "case search for d<=20 with certified tau and 3 witnesses", 120, capsys) as st:
        cases = {}
        for d in range(1, 21):
            result = certifier.case_search(d, witness_count=3)
            assert result.arc_width_tau.lo > 0
            assert len(result.witnesses) == 3
            expected = (1, 2) if result.case_id == 1 else (2, 1)
            for m in result.witnesses:
                assert (algebra.c_of_T(m), algebra.c_of_T(m + d)) == expected
            cases[d] = result.case_id
        assert cases[1] == 2
        ones = sorted(d for d, c in cases.items() if c == 1)
        st["detail"] = f"case 1 for d in {ones}, case 2 otherwise"


def test_c07_root_of_unity_exclusion(capsys):
    with criterion(7, "alpha/|alpha| is not a root of unity (three layers)", 10, capsys) as st:
        report = rootcheck.unit_root_exclusion()
        layers = {layer.name: layer for layer in report.layers}
        assert layers["layer1-divisibility"].passed
        assert layers["layer2-cyclotomic"].passed and not layers["layer2-cyclotomic"].detail["dividing_orders"]
        assert layers["layer3-interval"].passed
        st["detail"] = (f"Q | R exact, {len(layers['layer2-cyclotomic'].detail['orders_checked'])} "
                        f"cyclotomic orders excluded, |M(u)| <= {layers['layer3-interval'].detail['abs_M_u_upper']}")


def test_c08_fibonacci_machines(capsys):
    with criterion(8, "floor(phi n) synchronizer and Sturmian DFAO verified to 1e5", 180, capsys) as st:
        sync = learn.build_floor_phi_synchronizer()
        dfao = learn.build_fib_sturmian_dfao()
        # postconditions re-run on the minimized machines
        assert learn.check_floor_phi_synchronizer(sync, 10**5) is None
        assert learn.check_sturmian_dfao(dfao, 10**5) is None
        assert minimize(sync).state_count == sync.state_count
        assert minimize(dfao).state_count == dfao.state_count
        assert dumps(sync) == DATA.joinpath("fib_floor_phi_sync.txt").read_text(encoding="utf-8")
        assert dumps(dfao) == DATA.joinpath("fib_sturmian_dfao.txt").read_text(encoding="utf-8")
        assert dumps(loads(dumps(sync))) == dumps(sync)
        st["detail"] = f"synchronizer {sync.state_count} states, DFAO {dfao.state_count} states, match fixtures"


def test_c09_drift_periodicity(capsys):
    with criterion(9, "Fibonacci drift has period 2; Tribonacci drift has no period <= 100", 60, capsys) as st:
        fib = list(algebra.drift_signs_fib(10**4))
        assert all((s is Sign.POSITIVE) == (n % 2 == 0) for n, s in fib)
        assert all(fib[k][1] is fib[k + 2][1] for k in range(len(fib) - 2))
        report = certifier.nonperiodicity_probe(100, 10**5)
        assert report.passed and [p for p, _ in report.trib_violations] == list(range(1, 101))
        for p, n in report.trib_violations:
            # re-check each violation with the direct cubic test
            assert algebra.drift_sign_trib(n) is not algebra.drift_sign_trib(n + p)
        latest = max(n for _, n in report.trib_violations)
        st["detail"] = f"100 periods violated, latest witness n={latest}"


def test_c10_an_bounds(capsys):
    with criterion(10, "floor(psi n)-1 <= A_n <= floor(psi n)+1 for n<=1e5", 60, capsys) as st:
        report = check_an_bounds(10**5)
        assert report.passed
        hist = report.as_dict()["histogram"]
        st["detail"] = "histogram of A_n - floor(psi n): " + ", ".join(f"{k}:{v}" for k, v in hist.items())


def test_c11_oeis_cross_check(capsys):
    with criterion(11, "drift index lists match b-file prefixes", 10, capsys) as st:
        pos = DATA.joinpath("a352719_selfgen.txt")
        neg = DATA.joinpath("a352748_selfgen.txt")
        assert main(["signs", "--max", "5000", "--bfile-pos", str(pos), "--bfile-neg", str(neg)]) == 0
        positives, negatives = certifier.sign_sequences(5000)
        ov_p, mm_p = compare_index_lists(positives, parse(pos.read_text(encoding="utf-8")), 5000)
        ov_n, mm_n = compare_index_lists(negatives, parse(neg.read_text(encoding="utf-8")), 5000)
        assert mm_p is None and mm_n is None and ov_p > 0 and ov_n > 0
        st["detail"] = f"overlap {ov_p} positive and {ov_n} negative indices (self-generated fixture)"
    capsys.readouterr()
