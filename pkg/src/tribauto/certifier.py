"""Finite, re-checkable witnesses for the Tribonacci lower-bound argument.

State ``q_i`` of a Tribonacci DFAO for ``c(n)`` is the state reached on the
input ``1 0^i``, whose value is ``T_{i+2}``.  Appending ``0^k`` moves to the
value ``T_{i+k+2}``, so ``q_i`` and ``q_j`` are inequivalent as soon as
``c(T_{i+k+2}) != c(T_{j+k+2})`` for some ``k``.  A certificate lists one such
``k`` for every pair ``i < j <= N`` and so proves that any such DFAO has
more than ``N`` states.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import CapExceeded, DomainError, PrecisionCapExceeded, ProbeInconclusive, VerificationFailed
from .exact.algebra import (
    PRECISION_CAP,
    PRECISION_START,
    Sign,
    _precision_schedule,
    _reduce_mod_two_pi,
    c_of_T,
    c_of_T_interval,
    constants,
    drift_signs_fib,
    drift_signs_trib,
    predict_with_precision,
    v_angle_at,
)
from .exact.intervals import RationalInterval

log = logging.getLogger(__name__)

CERT_KIND = "trib-c-lower-bound"
CERT_VERSION = 1
ORACLE_ID = "integer-cubic-sign"
DEFAULT_K_CAP = 10**6
SCAN_CAP = 10**7
STATE_OFFSET = 2  # q_i is reached on 1 0^i, which decodes to T_{i+2}


class _ExactCofT:
    """Memoised ``c(T_m)`` from the integer cubic oracle."""

    def __init__(self):
        self._values: List[int] = []

    def __call__(self, m: int) -> int:
        while len(self._values) <= m:
            self._values.append(c_of_T(len(self._values)))
        return self._values[m]


_c_of_T = _ExactCofT()


def claim_text(n_bound: int) -> str:
    return (f"any DFAO computing n↦c(n) over Tribonacci representations has at least "
            f"{n_bound + 1} states; state q_i is reached on input 1 0^i (value T_{{i+2}}) "
            f"and each entry's word 0^k separates q_i from q_j")


@dataclass(frozen=True)
class Certificate:
    n_bound: int
    k_cap: int
    entries: Tuple[Tuple[int, int, int], ...]
    oracle_id: str = ORACLE_ID
    claim: str = ""

    @property
    def state_lower_bound(self) -> int:
        return self.n_bound + 1

    def to_json(self) -> str:
        doc = {
            "kind": CERT_KIND,
            "version": CERT_VERSION,
            "n_bound": self.n_bound,
            "k_cap": self.k_cap,
            "oracle": self.oracle_id,
            "entries": [{"i": i, "j": j, "k": k} for i, j, k in self.entries],
            "claim": self.claim,
        }
        return json.dumps(doc, ensure_ascii=False, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Certificate":
        doc = json.loads(text)
        if doc.get("kind") != CERT_KIND or doc.get("version") != CERT_VERSION:
            raise ValueError(f"not a version-{CERT_VERSION} {CERT_KIND} certificate")
        entries = tuple((int(e["i"]), int(e["j"]), int(e["k"])) for e in doc["entries"])
        return cls(int(doc["n_bound"]), int(doc["k_cap"]), entries, doc["oracle"], doc["claim"])


def distinguish_pair(i: int, j: int, k_cap: int = DEFAULT_K_CAP) -> int:
    """Smallest ``k`` with ``c(T_{i+k+2}) != c(T_{j+k+2})``."""
    if not 0 <= i < j:
        raise DomainError(f"need 0 <= i < j, got ({i}, {j})")
    for k in range(k_cap + 1):
        if _c_of_T(i + k + STATE_OFFSET) != _c_of_T(j + k + STATE_OFFSET):
            return k
    raise CapExceeded(f"no distinguishing 0^k for ({i}, {j}) with k <= {k_cap}", i, j, k_cap)


def build_certificate(n_bound: int, k_cap: int = DEFAULT_K_CAP) -> Certificate:
    if n_bound < 1:
        raise DomainError("n_bound must be >= 1")
    entries = tuple(
        (i, j, distinguish_pair(i, j, k_cap)) for i in range(n_bound + 1) for j in range(i + 1, n_bound + 1)
    )
    return Certificate(n_bound, k_cap, entries, ORACLE_ID, claim_text(n_bound))


@dataclass
class CertificateReport:
    ok: bool
    pairs_expected: int
    entries_checked: int
    failing_entries: List[Tuple[int, int, int]] = field(default_factory=list)
    missing_pairs: List[Tuple[int, int]] = field(default_factory=list)
    duplicate_pairs: List[Tuple[int, int]] = field(default_factory=list)
    over_cap: List[Tuple[int, int, int]] = field(default_factory=list)
    unordered: bool = False
    interval_checked: int = 0
    interval_failures: List[Tuple[int, int, int]] = field(default_factory=list)
    interval_uncertified: int = 0
    max_k: int = 0
    state_lower_bound: int = 0

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {
            "version": 1,
            "ok": self.ok,
            "pairs_expected": self.pairs_expected,
            "entries_checked": self.entries_checked,
            "failing_entries": [list(e) for e in self.failing_entries],
            "missing_pairs": [list(p) for p in self.missing_pairs],
            "duplicate_pairs": [list(p) for p in self.duplicate_pairs],
            "over_cap": [list(e) for e in self.over_cap],
            "unordered": self.unordered,
            "interval_checked": self.interval_checked,
            "interval_failures": [list(e) for e in self.interval_failures],
            "interval_uncertified": self.interval_uncertified,
            "max_k": self.max_k,
            "state_lower_bound": self.state_lower_bound if self.ok else None,
        }


def verify_certificate(cert: Certificate, interval_fraction: float = 0.01) -> CertificateReport:
    """Re-check every entry with the exact oracle and a stride sample with intervals.

    Never raises on a bad certificate; the report says what failed.
    """
    n = cert.n_bound
    expected = {(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)}
    report = CertificateReport(ok=False, pairs_expected=len(expected), entries_checked=len(cert.entries))
    seen = set()
    for i, j, k in cert.entries:
        pair = (i, j)
        if pair in seen:
            report.duplicate_pairs.append(pair)
        seen.add(pair)
        if pair not in expected or k < 0:
            report.failing_entries.append((i, j, k))
            continue
        if k > cert.k_cap:
            report.over_cap.append((i, j, k))
        if _c_of_T(i + k + STATE_OFFSET) == _c_of_T(j + k + STATE_OFFSET):
            report.failing_entries.append((i, j, k))
        report.max_k = max(report.max_k, k)
    report.missing_pairs = sorted(expected - seen)
    report.unordered = [(i, j) for i, j, _ in cert.entries] != sorted((i, j) for i, j, _ in cert.entries)

    if interval_fraction > 0 and cert.entries:
        stride = max(1, round(1 / min(interval_fraction, 1.0)))
        for idx in range(0, len(cert.entries), stride):
            i, j, k = cert.entries[idx]
            if (i, j, k) in report.failing_entries:
                continue
            report.interval_checked += 1
            try:
                differs = c_of_T_interval(i + k + STATE_OFFSET) != c_of_T_interval(j + k + STATE_OFFSET)
            except PrecisionCapExceeded:
                report.interval_uncertified += 1
                continue
            if not differs:
                report.interval_failures.append((i, j, k))

    report.ok = not (report.failing_entries or report.missing_pairs or report.duplicate_pairs
                     or report.over_cap or report.unordered or report.interval_failures)
    report.state_lower_bound = cert.state_lower_bound
    return report


# ---------------------------------------------------------------------------
# Kronecker cases as bounded search


@dataclass
class CaseSearchResult:
    d: int
    case_id: int
    theta: RationalInterval  # d zeta mod 2 pi
    arc_width_tau: RationalInterval
    arc: Tuple[RationalInterval, RationalInterval]
    witnesses: List[int]
    values: List[Tuple[int, int]]
    bits: int

    def as_dict(self) -> dict:
        return {
            "version": 1,
            "d": self.d,
            "case": self.case_id,
            "theta": [float(self.theta.lo), float(self.theta.hi)],
            "tau": [float(self.arc_width_tau.lo), float(self.arc_width_tau.hi)],
            "arc": [float(self.arc[0].lo), float(self.arc[1].hi)],
            "witnesses": self.witnesses,
            "values": [list(v) for v in self.values],
            "bits": self.bits,
        }


def _case_geometry(d: int, bits: int):
    const = constants(bits + d.bit_length() + 8)
    pi, two_pi = const.pi, const.two_pi
    theta = _reduce_mod_two_pi(const.zeta * d, two_pi)
    half = pi * Fraction(1, 2)
    if theta.lo > 0 and theta.hi < pi.lo:
        tau = pi - theta
        # c(T_m) = 1 and c(T_{m+d}) = 2 exactly when v(m) - (pi/2 - theta) lies in (0, theta)
        return 1, theta, tau, half - theta, theta, half - theta, half
    if theta.lo > pi.hi and theta.hi < two_pi.lo:
        tau = two_pi - theta
        # c(T_m) = 2 and c(T_{m+d}) = 1 exactly when v(m) - pi/2 lies in (0, tau)
        return 2, theta, tau, half, tau, half, half + tau
    return None


def _arc_membership(m: int, d: int, start: int, cap: int) -> bool:
    for bits in _precision_schedule(start, cap):
        geometry = _case_geometry(d, bits)
        if geometry is None:
            continue
        _, _, _, arc_start, width, _, _ = geometry
        two_pi = constants(bits).two_pi
        w = _reduce_mod_two_pi(v_angle_at(m, bits) - arc_start, two_pi)
        if w.lo > 0 and w.hi < width.lo:
            return True
        if w.lo > width.hi and w.hi < two_pi.lo:
            return False
    raise PrecisionCapExceeded("case_search arc membership", cap, m)


def case_search(d: int, witness_count: int = 3, scan_cap: int = SCAN_CAP,
                start: int = PRECISION_START, cap: int = PRECISION_CAP) -> CaseSearchResult:
    """Classify ``d zeta mod 2 pi`` against ``pi`` and scan ``m >= 5`` for witnesses."""
    if d < 1:
        raise DomainError("d must be >= 1")
    for bits in _precision_schedule(start, cap):
        geometry = _case_geometry(d, bits)
        if geometry is not None:
            break
    else:
        raise PrecisionCapExceeded("case_search classification", cap, d)
    case_id, theta, tau, _, _, arc_lo, arc_hi = geometry
    if not tau.lo > 0:
        raise VerificationFailed("case_search", f"tau not certified positive for d={d}")
    expected = (1, 2) if case_id == 1 else (2, 1)
    witnesses, values = [], []
    m = 5
    while len(witnesses) < witness_count:
        if m - 5 >= scan_cap:
            raise CapExceeded(f"fewer than {witness_count} witnesses for d={d} below m={m}", d, m)
        if _arc_membership(m, d, start, cap):
            pair = (_c_of_T(m), _c_of_T(m + d))
            if pair != expected:
                raise VerificationFailed("case_search", f"m={m}, d={d}: exact values {pair}, expected {expected}")
            witnesses.append(m)
            values.append(pair)
        m += 1
    return CaseSearchResult(d, case_id, theta, tau, (arc_lo, arc_hi), witnesses, values, bits)


def blind_scan(d: int, m_max: int, m_min: int = 5) -> List[int]:
    """All ``m`` in ``[m_min, m_max]`` with ``c(T_m) != c(T_{m+d})``, by the exact oracle only."""
    return [m for m in range(m_min, m_max + 1) if _c_of_T(m) != _c_of_T(m + d)]


# ---------------------------------------------------------------------------
# sweeps and probes


@dataclass
class AgreementReport:
    n_max: int
    checked: int
    mismatches: List[int]
    max_bits: int

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def as_dict(self) -> dict:
        return {"version": 1, "n_max": self.n_max, "checked": self.checked,
                "mismatches": self.mismatches, "max_bits": self.max_bits, "passed": self.passed}


def agreement_sweep(n_max: int) -> AgreementReport:
    """Compare the quadrant rule with exact ``c(T_n)`` for ``5 <= n <= n_max``."""
    if n_max < 5:
        raise DomainError("n_max must be >= 5")
    mismatches, max_bits = [], 0
    for n in range(5, n_max + 1):
        predicted, bits = predict_with_precision(n)
        max_bits = max(max_bits, bits)
        if predicted != _c_of_T(n):
            mismatches.append(n)
    return AgreementReport(n_max, n_max - 4, mismatches, max_bits)


def sign_sequences(n_max: int) -> Tuple[List[int], List[int]]:
    """Split ``2..n_max`` by the sign of ``T_n - psi T_{n-1}``."""
    if n_max < 2:
        raise DomainError("n_max must be >= 2")
    positives, negatives = [], []
    for n, sign in drift_signs_trib(n_max):
        (positives if sign is Sign.POSITIVE else negatives).append(n)
    return positives, negatives


@dataclass
class NonperiodicityReport:
    p_max: int
    window: int
    trib_violations: List[Tuple[int, int]]
    fib_period2_holds: bool
    fib_matches_parity: bool
    fib_period1_violation: Optional[int]
    note: str = ("the nonperiodic claim is sometimes written 'T_(n+1) - phi T_n'; "
                 "phi there is read as psi, and the probe uses psi for the Tribonacci drift")

    @property
    def passed(self) -> bool:
        return (len(self.trib_violations) == self.p_max and self.fib_period2_holds
                and self.fib_matches_parity and self.fib_period1_violation is not None)

    def as_dict(self) -> dict:
        return {
            "version": 1,
            "p_max": self.p_max,
            "window": self.window,
            "tribonacci": [{"p": p, "n": n} for p, n in self.trib_violations],
            "fibonacci": {
                "period2_holds": self.fib_period2_holds,
                "positive_iff_even": self.fib_matches_parity,
                "period1_violation": self.fib_period1_violation,
            },
            "note": self.note,
            "passed": self.passed,
        }


def nonperiodicity_probe(p_max: int, window: int) -> NonperiodicityReport:
    """Exhibit ``n`` with ``s(n) != s(n+p)`` for each ``p <= p_max`` on ``2..window``."""
    if p_max < 1 or window <= p_max + 2:
        raise DomainError("need p_max >= 1 and window well above p_max")
    trib = [0, 0] + [int(s) for _, s in drift_signs_trib(window)]
    violations = []
    for p in range(1, p_max + 1):
        witness = next((n for n in range(2, window - p + 1) if trib[n] != trib[n + p]), None)
        if witness is None:
            raise ProbeInconclusive(p, window)
        violations.append((p, witness))
    fib = [0] + [int(s) for _, s in drift_signs_fib(window)]
    period2 = all(fib[n] == fib[n + 2] for n in range(1, window - 1))
    parity = all((fib[n] > 0) == (n % 2 == 0) for n in range(1, window + 1))
    period1 = next((n for n in range(1, window) if fib[n] != fib[n + 1]), None)
    return NonperiodicityReport(p_max, window, violations, period2, parity, period1)
