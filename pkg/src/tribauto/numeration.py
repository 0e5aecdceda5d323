"""Zeckendorf (Fibonacci) and Tribonacci representations of natural numbers.

Words are msd-first strings over ``{0,1}``.  The digit for basis index ``i``
(``F_i`` or ``T_i``, ``i >= 2``) sits ``t - i`` places from the left of a word
whose leading digit has index ``t``.  Zero is the empty word; padded forms
``"0...0"`` are accepted everywhere a word is read.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple, Union

from .errors import DomainError, InvalidWord


class NumerationSystem(enum.Enum):
    FIBONACCI = "fib"
    TRIBONACCI = "trib"

    @property
    def order(self) -> int:
        return 2 if self is NumerationSystem.FIBONACCI else 3

    @property
    def forbidden(self) -> str:
        return "1" * self.order

    @classmethod
    def parse(cls, value: Union[str, "NumerationSystem"]) -> "NumerationSystem":
        if isinstance(value, cls):
            return value
        key = str(value).lower()
        for member in cls:
            if key in (member.value, member.name.lower()):
                return member
        raise ValueError(f"unknown numeration system {value!r}")


FIB = NumerationSystem.FIBONACCI
TRIB = NumerationSystem.TRIBONACCI

# Cached prefixes of the exact sequences; index i holds F_i / T_i.
_SEQ_CACHE = {FIB: [0, 1], TRIB: [0, 1, 1]}
_CACHE_LIMIT = 20000


def _step_matrix_power(system: NumerationSystem, i: int) -> int:
    # Companion-matrix exponentiation for indices past the cache.
    k = system.order
    if k == 2:
        m = [[1, 1], [1, 0]]
    else:
        m = [[1, 1, 1], [1, 0, 0], [0, 1, 0]]

    def mul(a, b):
        return [[sum(a[r][t] * b[t][c] for t in range(k)) for c in range(k)] for r in range(k)]

    result = [[int(r == c) for c in range(k)] for r in range(k)]
    e = i
    while e:
        if e & 1:
            result = mul(result, m)
        m = mul(m, m)
        e >>= 1
    if k == 2:
        # M^i = [[F_{i+1}, F_i], [F_i, F_{i-1}]]
        return result[0][1]
    # with state (T_{i+2}, T_{i+1}, T_i) = M^i (T_2, T_1, T_0)
    return result[2][0] + result[2][1]


def basis_term(system: NumerationSystem, i: int) -> int:
    """``F_i`` or ``T_i`` by the exact integer recurrence."""
    if i < 0:
        raise DomainError(f"basis index must be >= 0, got {i}")
    system = NumerationSystem.parse(system)
    seq = _SEQ_CACHE[system]
    if i < len(seq):
        return seq[i]
    if i >= _CACHE_LIMIT:
        return _step_matrix_power(system, i)
    k = system.order
    while len(seq) <= i:
        seq.append(sum(seq[-k:]))
    return seq[i]


def basis_terms(system: NumerationSystem, start: int = 0) -> Iterator[int]:
    """Stream ``F_i`` (or ``T_i``) for ``i = start, start+1, ...`` without caching."""
    system = NumerationSystem.parse(system)
    k = system.order
    window = [0, 1] if k == 2 else [0, 1, 1]
    i = 0
    while True:
        if i >= start:
            yield window[0]
        nxt = sum(window)
        window = window[1:] + [nxt]
        i += 1


@dataclass(frozen=True)
class DigitWord:
    digits: str
    system: NumerationSystem

    def __post_init__(self):
        if any(ch not in "01" for ch in self.digits):
            raise InvalidWord(f"digit word must be over {{0,1}}: {self.digits!r}")

    def __str__(self) -> str:
        return self.digits

    def __len__(self) -> int:
        return len(self.digits)

    @property
    def is_canonical(self) -> bool:
        return not self.digits.startswith("0")


@dataclass(frozen=True)
class PairWord:
    symbols: Tuple[Tuple[int, int], ...]
    system: NumerationSystem

    def __len__(self) -> int:
        return len(self.symbols)

    def tracks(self) -> Tuple[str, str]:
        top = "".join(str(a) for a, _ in self.symbols)
        bottom = "".join(str(b) for _, b in self.symbols)
        return top, bottom

    def __str__(self) -> str:
        top, bottom = self.tracks()
        return f"{top}:{bottom}"

    @classmethod
    def parse(cls, text: str, system) -> "PairWord":
        top, sep, bottom = text.partition(":")
        if not sep or len(top) != len(bottom):
            raise InvalidWord(f"pair word needs two equal-length tracks: {text!r}")
        w1 = DigitWord(top, NumerationSystem.parse(system))
        w2 = DigitWord(bottom, NumerationSystem.parse(system))
        return cls(tuple(zip(map(int, w1.digits), map(int, w2.digits))), w1.system)


WordLike = Union[DigitWord, str, Sequence[int]]


def _digits_of(word: WordLike) -> str:
    if isinstance(word, DigitWord):
        return word.digits
    if isinstance(word, str):
        return word
    return "".join(str(int(d)) for d in word)


def _system_of(word: WordLike, system) -> NumerationSystem:
    if system is not None:
        return NumerationSystem.parse(system)
    if isinstance(word, DigitWord):
        return word.system
    raise TypeError("a NumerationSystem is required for a bare digit string")


def is_valid(word: WordLike, system=None) -> bool:
    system = _system_of(word, system)
    return system.forbidden not in _digits_of(word)


def encode(system: NumerationSystem, n: int) -> DigitWord:
    """Greedy representation of ``n``; canonical (no leading zero)."""
    system = NumerationSystem.parse(system)
    if n < 0:
        raise DomainError(f"cannot represent negative integer {n}")
    if n == 0:
        return DigitWord("", system)
    terms = []
    for value in basis_terms(system, start=2):
        if value > n:
            break
        terms.append(value)
    digits = []
    rem = n
    for value in reversed(terms):
        if value <= rem:
            digits.append("1")
            rem -= value
        else:
            digits.append("0")
    assert rem == 0
    return DigitWord("".join(digits), system)


def decode(word: WordLike, system=None) -> int:
    system = _system_of(word, system)
    digits = _digits_of(word)
    if system.forbidden in digits:
        raise InvalidWord(f"{digits!r} contains forbidden factor {system.forbidden!r}")
    total = 0
    for digit, value in zip(reversed(digits), basis_terms(system, start=2)):
        if digit == "1":
            total += value
        elif digit != "0":
            raise InvalidWord(f"bad digit {digit!r} in {digits!r}")
    return total


def pair_align(w1: DigitWord, w2: DigitWord) -> PairWord:
    if w1.system is not w2.system:
        raise ValueError("cannot align words from different numeration systems")
    width = max(len(w1), len(w2))
    top = w1.digits.rjust(width, "0")
    bottom = w2.digits.rjust(width, "0")
    return PairWord(tuple(zip(map(int, top), map(int, bottom))), w1.system)


def least_term(system: NumerationSystem, n: int) -> int:
    """Value of the lowest set digit of ``encode(n)`` (V(n) / V'(n))."""
    if n < 1:
        raise DomainError("least_term is undefined for n = 0")
    word = encode(system, n).digits
    position = len(word) - 1 - word.rindex("1")
    return basis_term(system, position + 2)


def radix_key(word: WordLike):
    """Sort key for radix order: shorter first, then lexicographic."""
    digits = _digits_of(word)
    return (len(digits), digits)
