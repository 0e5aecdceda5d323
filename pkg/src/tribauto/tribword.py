"""Fixed points of the Tribonacci and Fibonacci morphisms.

Positions in TR are 1-indexed here, and only here; every other sequence in
the package is 0-indexed.
"""

from __future__ import annotations

import enum
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .errors import BoundViolated, DomainError
from .exact.algebra import floor_psi


class WordKind(enum.Enum):
    TRIBONACCI = "trib"
    FIBONACCI = "fib"

    @classmethod
    def parse(cls, value) -> "WordKind":
        if isinstance(value, cls):
            return value
        for member in cls:
            if str(value).lower() in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown morphic word {value!r}")


MORPHISMS = {
    WordKind.TRIBONACCI: {"0": "01", "1": "02", "2": "0"},
    WordKind.FIBONACCI: {"0": "01", "1": "0"},
}

# s(n) = floor((phi-1)(n+2)) - floor((phi-1)(n+1)) equals 1 - f[n + offset]
# for the Fibonacci word f; found by find_sturmian_recoding.
STURMIAN_RECODING = {"offset": 0, "complement": True}


class MorphicWord:
    """Growing prefix of a morphism's fixed point starting with ``0``.

    The buffer is extended by applying the morphism to the whole prefix,
    so memory is about the largest requested length times the growth
    factor (at most ``psi``).  Single owner; readers should copy
    ``prefix(n)`` if another thread may extend the buffer.
    """

    def __init__(self, kind):
        self.kind = WordKind.parse(kind)
        self.morphism = MORPHISMS[self.kind]
        self._table = str.maketrans(self.morphism)
        self._buffer = "0"
        self._zeros: List[int] = []
        self._zeros_scanned = 0

    @property
    def length(self) -> int:
        return len(self._buffer)

    def extend_to(self, length: int) -> None:
        while len(self._buffer) < length:
            self._buffer = self._buffer.translate(self._table)

    def prefix(self, length: int) -> str:
        if length < 0:
            raise DomainError("length must be non-negative")
        self.extend_to(length)
        return self._buffer[:length]

    def _scan_zeros(self) -> None:
        buf = self._buffer
        start = self._zeros_scanned
        pos = buf.find("0", start)
        while pos != -1:
            self._zeros.append(pos + 1)
            pos = buf.find("0", pos + 1)
        self._zeros_scanned = len(buf)

    def position_of_nth_zero(self, n: int) -> int:
        """1-indexed position of the ``n``-th ``0``."""
        if n < 1:
            raise DomainError("n must be >= 1")
        while len(self._zeros) < n:
            self.extend_to(2 * len(self._buffer))
            self._scan_zeros()
        return self._zeros[n - 1]

    def zeros_up_to(self, length: int) -> int:
        self.extend_to(length)
        self._scan_zeros()
        return bisect_right(self._zeros, length)


_SHARED: Dict[WordKind, MorphicWord] = {}


def _shared(kind) -> MorphicWord:
    kind = WordKind.parse(kind)
    if kind not in _SHARED:
        _SHARED[kind] = MorphicWord(kind)
    return _SHARED[kind]


def generate(kind, length: int) -> str:
    return _shared(kind).prefix(length)


def position_of_nth_zero(n: int) -> int:
    """``A_n``: position of the ``n``-th ``0`` in TR, counting from 1."""
    return _shared(WordKind.TRIBONACCI).position_of_nth_zero(n)


@dataclass
class AnReport:
    n_max: int
    histogram: Dict[int, int] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return sum(self.histogram.values()) == self.n_max

    def as_dict(self) -> dict:
        return {
            "version": 1,
            "n_max": self.n_max,
            "histogram": {str(k): self.histogram.get(k, 0) for k in (-1, 0, 1)},
            "passed": self.passed,
        }


def check_an_bounds(n_max: int) -> AnReport:
    """Check ``floor(psi n) - 1 <= A_n <= floor(psi n) + 1`` for ``1 <= n <= n_max``."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    word = _shared(WordKind.TRIBONACCI)
    word.position_of_nth_zero(n_max)
    counts: Counter = Counter()
    for n in range(1, n_max + 1):
        a_n = word.position_of_nth_zero(n)
        f = floor_psi(n)
        diff = a_n - f
        if not -1 <= diff <= 1:
            raise BoundViolated(n, a_n, f)
        counts[diff] += 1
    return AnReport(n_max, dict(counts))


def zero_density(length: int) -> float:
    return _shared(WordKind.TRIBONACCI).zeros_up_to(length) / length


def find_sturmian_recoding(sequence, n_max: int = 10_000, max_offset: int = 3) -> Optional[dict]:
    """The unique ``(offset, complement)`` with ``sequence(n) == f[n+offset]`` (or ``1 - f[...]``).

    ``f`` is the 0-indexed Fibonacci word; returns ``None`` if no single
    choice fits all ``n < n_max``.
    """
    f = generate(WordKind.FIBONACCI, n_max + max_offset)
    values = [sequence(n) for n in range(n_max)]
    fits = []
    for offset in range(max_offset + 1):
        for complement in (False, True):
            if all((1 - int(f[n + offset]) if complement else int(f[n + offset])) == v
                   for n, v in enumerate(values)):
                fits.append({"offset": offset, "complement": complement})
    return fits[0] if len(fits) == 1 else None
