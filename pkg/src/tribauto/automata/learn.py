"""Learn-and-verify construction of the positive-side Fibonacci machines.

Prefixes are grouped by their observation signature on every suffix up to a
test depth; the resulting table is closed into a machine, checked
exhaustively against an exact oracle, and minimized.  A counterexample
raises the depth and restarts.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Hashable, List, Optional, Sequence, Tuple

from ..errors import ConstructionDiverged
from ..exact.algebra import floor_phi, sturmian_phi
from ..numeration import FIB, decode, encode
from .machines import ONE_TRACK, TWO_TRACK, Dfa, Dfao, minimize, words

log = logging.getLogger(__name__)

START_DEPTH = 8
MAX_DEPTH = 16
VERIFY_LIMIT = 10**5
_DEAD_OUTPUT = 0


@dataclass(frozen=True)
class Counterexample:
    word: Tuple
    expected: Hashable
    got: Hashable


def learn_table(alphabet: Sequence, observe: Callable[[Tuple], Hashable], depth: int,
                suffix_ok: Optional[Callable[[Tuple], bool]] = None, max_states: int = 5000):
    """Close prefixes under the alphabet, merging those with equal signatures.

    Returns ``(delta, labels)`` with state 0 the empty prefix and
    ``labels[q] = observe(representative)``.
    """
    suffixes = [s for s in words(alphabet, depth) if suffix_ok is None or suffix_ok(s)]

    def signature(prefix):
        return tuple(observe(prefix + s) for s in suffixes)

    reps = [()]
    ids = {signature(()): 0}
    delta: List[List[int]] = []
    i = 0
    while i < len(reps):
        u = reps[i]
        row = []
        for a in alphabet:
            ua = u + (a,)
            sig = signature(ua)
            if sig not in ids:
                ids[sig] = len(reps)
                reps.append(ua)
                if len(reps) > max_states:
                    raise ConstructionDiverged(f"more than {max_states} signatures at depth {depth}")
            row.append(ids[sig])
        delta.append(row)
        i += 1
    return delta, [observe(u) for u in reps]


def _memo(fn):
    cache = {}

    def wrapped(word):
        try:
            return cache[word]
        except KeyError:
            value = cache[word] = fn(word)
            return value

    return wrapped


def _track(word, k):
    return "".join(str(sym[k]) for sym in word)


@_memo
def _sync_observe(word) -> bool:
    top, bottom = _track(word, 0), _track(word, 1)
    if "11" in top or "11" in bottom:
        return False
    return floor_phi(decode(top, FIB)) == decode(bottom, FIB)


def _pair_suffix_ok(word) -> bool:
    return "11" not in _track(word, 0) and "11" not in _track(word, 1)


@_memo
def _sturmian_observe(word):
    digits = "".join(map(str, word))
    if "11" in digits:
        return None
    return sturmian_phi(decode(digits, FIB))


def _one_track_suffix_ok(word) -> bool:
    return "11" not in "".join(map(str, word))


def _fib_strings(limit: int) -> List[str]:
    return [encode(FIB, v).digits for v in range(limit + 1)]


def check_floor_phi_synchronizer(machine: Dfa, n_max: int = VERIFY_LIMIT,
                                 exhaustive_length: int = 7) -> Optional[Counterexample]:
    """First disagreement with the exact relation ``x = floor(phi n)``, or ``None``.

    Accepts ``(n, floor(phi n))`` and rejects ``x = floor(phi n) +- 1, +- 2`` for
    every ``n <= n_max``, then compares all pair words up to
    ``exhaustive_length`` (padded and invalid tracks included).
    """
    reps = _fib_strings(floor_phi(n_max) + 2)
    for n in range(n_max + 1):
        f = floor_phi(n)
        top = reps[n]
        for x in range(max(f - 2, 0), f + 3):
            bottom = reps[x]
            width = max(len(top), len(bottom))
            word = tuple(zip(map(int, top.rjust(width, "0")), map(int, bottom.rjust(width, "0"))))
            expected = x == f
            if machine.run(word) != expected:
                return Counterexample(word, expected, not expected)
    for word in words(TWO_TRACK, exhaustive_length):
        expected = _sync_observe(word)
        got = machine.run(word)
        if got != expected:
            return Counterexample(word, expected, got)
    return None


def check_sturmian_dfao(machine: Dfao, n_max: int = VERIFY_LIMIT,
                        exhaustive_length: int = 12) -> Optional[Counterexample]:
    for n in range(n_max + 1):
        word = tuple(int(d) for d in encode(FIB, n).digits)
        expected = sturmian_phi(n)
        got = machine.run(word)
        if got != expected:
            return Counterexample(word, expected, got)
    for word in words(ONE_TRACK, exhaustive_length):
        expected = _sturmian_observe(word)
        if expected is None:
            continue
        got = machine.run(word)
        if got != expected:
            return Counterexample(word, expected, got)
    return None


def build_floor_phi_synchronizer(depth: int = START_DEPTH, n_max: int = VERIFY_LIMIT) -> Dfa:
    """Minimal two-track DFA accepting exactly the Zeckendorf pairs ``(n, floor(phi n))``."""
    while depth <= MAX_DEPTH:
        delta, labels = learn_table(TWO_TRACK, _sync_observe, depth, _pair_suffix_ok)
        candidate = Dfa(TWO_TRACK, delta, 0, frozenset(q for q, acc in enumerate(labels) if acc))
        bad = check_floor_phi_synchronizer(candidate, n_max)
        if bad is None:
            return minimize(candidate)
        log.info("depth %d: counterexample %s", depth, bad)
        depth += 1
    raise ConstructionDiverged(f"floor-phi synchronizer not verified up to depth {MAX_DEPTH}")


def build_fib_sturmian_dfao(depth: int = START_DEPTH, n_max: int = VERIFY_LIMIT) -> Dfao:
    """Minimal Zeckendorf DFAO for ``floor((phi-1)(n+2)) - floor((phi-1)(n+1))``.

    Words containing ``11`` are routed to a dead state with output 0.
    """
    while depth <= MAX_DEPTH:
        delta, labels = learn_table(ONE_TRACK, _sturmian_observe, depth, _one_track_suffix_ok)
        outputs = [_DEAD_OUTPUT if out is None else out for out in labels]
        candidate = Dfao(ONE_TRACK, delta, 0, tuple(outputs))
        bad = check_sturmian_dfao(candidate, n_max)
        if bad is None:
            return minimize(candidate)
        log.info("depth %d: counterexample %s", depth, bad)
        depth += 1
    raise ConstructionDiverged(f"Sturmian DFAO not verified up to depth {MAX_DEPTH}")
