"""Deterministic automata over one-track or two-track digit alphabets.

Machines read msd-first and are immutable.  Transition tables are total;
constructions that need a sink route to an explicit dead state.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from ..errors import AlphabetMismatch
from ..numeration import NumerationSystem, encode, pair_align

ONE_TRACK: Tuple[int, ...] = (0, 1)
TWO_TRACK: Tuple[Tuple[int, int], ...] = ((0, 0), (0, 1), (1, 0), (1, 1))


def _alphabet_for_size(size: int):
    if size == 2:
        return ONE_TRACK
    if size == 4:
        return TWO_TRACK
    raise ValueError(f"no standard alphabet of size {size}")


@dataclass(frozen=True)
class _Machine:
    alphabet: Tuple[Hashable, ...]
    delta: Tuple[Tuple[int, ...], ...]
    start: int = 0
    _index: Dict[Hashable, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "delta", tuple(tuple(row) for row in self.delta))
        k = len(self.alphabet)
        n = len(self.delta)
        if not 0 <= self.start < n:
            raise ValueError(f"start state {self.start} outside 0..{n - 1}")
        for q, row in enumerate(self.delta):
            if len(row) != k:
                raise ValueError(f"state {q} has {len(row)} transitions, expected {k}")
            for target in row:
                if not 0 <= target < n:
                    raise ValueError(f"transition from {q} to missing state {target}")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(self.alphabet)})

    @property
    def state_count(self) -> int:
        return len(self.delta)

    def symbol_index(self, symbol) -> int:
        try:
            return self._index[symbol]
        except (KeyError, TypeError):
            raise AlphabetMismatch(f"symbol {symbol!r} not in alphabet {self.alphabet}") from None

    def step(self, state: int, symbol) -> int:
        return self.delta[state][self.symbol_index(symbol)]

    def final_state(self, word: Iterable, state: Optional[int] = None) -> int:
        q = self.start if state is None else state
        delta, index = self.delta, self._index
        for symbol in word:
            try:
                q = delta[q][index[symbol]]
            except (KeyError, TypeError):
                raise AlphabetMismatch(f"symbol {symbol!r} not in alphabet {self.alphabet}") from None
        return q

    def reachable(self) -> List[int]:
        seen = [self.start]
        marked = {self.start}
        queue = deque([self.start])
        while queue:
            q = queue.popleft()
            for target in self.delta[q]:
                if target not in marked:
                    marked.add(target)
                    seen.append(target)
                    queue.append(target)
        return seen

    def label(self, state: int):
        raise NotImplementedError


@dataclass(frozen=True)
class Dfa(_Machine):
    accepting: FrozenSet[int] = frozenset()

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        if any(not 0 <= q < self.state_count for q in self.accepting):
            raise ValueError("accepting state out of range")

    def label(self, state: int) -> bool:
        return state in self.accepting

    def run(self, word: Iterable, state: Optional[int] = None) -> bool:
        return self.final_state(word, state) in self.accepting

    def synchronized_accepts(self, n: int, x: int, system) -> bool:
        """Run on the aligned pair of representations of ``n`` and ``x``."""
        system = NumerationSystem.parse(system)
        if len(self.alphabet) != 4:
            raise AlphabetMismatch("synchronized machines read a two-track alphabet")
        return self.run(pair_align(encode(system, n), encode(system, x)).symbols)

    def complement(self) -> "Dfa":
        return Dfa(self.alphabet, self.delta, self.start,
                   frozenset(range(self.state_count)) - self.accepting)


@dataclass(frozen=True)
class Dfao(_Machine):
    output: Tuple[int, ...] = ()

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "output", tuple(self.output))
        if len(self.output) != self.state_count:
            raise ValueError("every state needs an output")

    def label(self, state: int):
        return self.output[state]

    def run(self, word: Iterable, state: Optional[int] = None):
        return self.output[self.final_state(word, state)]

    def evaluate(self, n: int, system):
        """Output after reading the canonical representation of ``n``."""
        digits = encode(NumerationSystem.parse(system), n).digits
        return self.run(int(d) for d in digits)


def run(machine: _Machine, word: Iterable):
    return machine.run(word)


def product(m1: Dfa, m2: Dfa, combine: Callable[[bool, bool], bool]) -> Dfa:
    """Reachable part of the product automaton; acceptance by ``combine``."""
    if m1.alphabet != m2.alphabet:
        raise AlphabetMismatch("product needs identical alphabets")
    start = (m1.start, m2.start)
    ids = {start: 0}
    order = [start]
    rows: List[List[int]] = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = []
        for a in range(len(m1.alphabet)):
            pair = (m1.delta[p][a], m2.delta[q][a])
            if pair not in ids:
                ids[pair] = len(order)
                order.append(pair)
            row.append(ids[pair])
        rows.append(row)
        i += 1
    accepting = {ids[pq] for pq in order if combine(pq[0] in m1.accepting, pq[1] in m2.accepting)}
    return Dfa(m1.alphabet, rows, 0, frozenset(accepting))


def equivalence_classes(machine: _Machine) -> List[int]:
    """Moore partition refinement over *all* states; returns a block id per state."""
    n = machine.state_count
    labels = {}
    block = [labels.setdefault(machine.label(q), len(labels)) for q in range(n)]
    count = len(labels)
    while True:
        signatures = {}
        new_block = []
        for q in range(n):
            key = (block[q],) + tuple(block[t] for t in machine.delta[q])
            new_block.append(signatures.setdefault(key, len(signatures)))
        if len(signatures) == count:
            return new_block
        block, count = new_block, len(signatures)


def _rebuild(machine: _Machine, delta, start, labels):
    if isinstance(machine, Dfa):
        return Dfa(machine.alphabet, delta, start, frozenset(q for q, acc in enumerate(labels) if acc))
    return Dfao(machine.alphabet, delta, start, tuple(labels))


def minimize(machine: _Machine):
    """Minimal equivalent machine, states numbered in BFS order from the start."""
    block = equivalence_classes(machine)
    new_id = {block[machine.start]: 0}
    order = [machine.start]
    i = 0
    while i < len(order):
        q = order[i]
        for target in machine.delta[q]:
            b = block[target]
            if b not in new_id:
                new_id[b] = len(order)
                order.append(target)
        i += 1
    delta = [[new_id[block[t]] for t in machine.delta[q]] for q in order]
    labels = [machine.label(q) for q in order]
    return _rebuild(machine, delta, 0, labels)


def distinguishing_word(machine: _Machine, s1: int, s2: int) -> Optional[Tuple]:
    """Shortest word whose label differs when read from ``s1`` and from ``s2``."""
    for s in (s1, s2):
        if not 0 <= s < machine.state_count:
            raise ValueError(f"state {s} out of range")
    if s1 == s2:
        return None
    parent = {(s1, s2): None}
    queue = deque([(s1, s2)])
    while queue:
        pair = queue.popleft()
        p, q = pair
        if machine.label(p) != machine.label(q):
            word = []
            while parent[pair] is not None:
                pair, symbol = parent[pair]
                word.append(symbol)
            return tuple(reversed(word))
        for a, symbol in enumerate(machine.alphabet):
            nxt = (machine.delta[p][a], machine.delta[q][a])
            if nxt[0] != nxt[1] and nxt not in parent:
                parent[nxt] = (pair, symbol)
                queue.append(nxt)
    return None


def words(alphabet: Sequence, max_length: int, min_length: int = 0):
    """All words over ``alphabet`` by increasing length."""
    level = [()]
    for length in range(max_length + 1):
        if length >= min_length:
            yield from level
        level = [w + (a,) for w in level for a in alphabet]


def forbidden_factor_dfa(system) -> Dfa:
    """One-track validity DFA: no factor ``11`` (Fibonacci) or ``111`` (Tribonacci)."""
    system = NumerationSystem.parse(system)
    k = system.order
    # state j < k: current run of trailing ones has length j; state k is dead
    delta = []
    for j in range(k):
        delta.append([0, j + 1])
    delta.append([k, k])
    return Dfa(ONE_TRACK, delta, 0, frozenset(range(k)))


# ---------------------------------------------------------------------------
# text serialization


def dumps(machine: _Machine) -> str:
    """Line-oriented text form; the start state is written as state 0."""
    if machine.start != 0:
        machine = _relabel_start(machine)
    kind = "dfa" if isinstance(machine, Dfa) else "dfao"
    lines = [f"{kind} {machine.state_count} {len(machine.alphabet)}"]
    for q, row in enumerate(machine.delta):
        for a, target in enumerate(row):
            lines.append(f"{q} {a} {target}")
    if isinstance(machine, Dfa):
        lines.append("accepting: " + " ".join(str(q) for q in sorted(machine.accepting)))
    else:
        for q, out in enumerate(machine.output):
            lines.append(f"output: {q}={out}")
    return "\n".join(lines) + "\n"


def _relabel_start(machine: _Machine):
    s = machine.start
    perm = list(range(machine.state_count))
    perm[0], perm[s] = s, 0
    inverse = {old: new for new, old in enumerate(perm)}
    delta = [[inverse[t] for t in machine.delta[old]] for old in perm]
    labels = [machine.label(old) for old in perm]
    return _rebuild(machine, delta, 0, labels)


def loads(text: str) -> _Machine:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty machine description")
    head = lines[0].split()
    if len(head) != 3 or head[0] not in ("dfa", "dfao"):
        raise ValueError(f"bad header {lines[0]!r}")
    kind, n, k = head[0], int(head[1]), int(head[2])
    alphabet = _alphabet_for_size(k)
    delta = [[None] * k for _ in range(n)]
    accepting: FrozenSet[int] = frozenset()
    outputs: Dict[int, int] = {}
    for line in lines[1:]:
        if line.startswith("accepting:"):
            accepting = frozenset(int(tok) for tok in line.split(":", 1)[1].split())
        elif line.startswith("output:"):
            state, _, value = line.split(":", 1)[1].strip().partition("=")
            outputs[int(state)] = int(value)
        else:
            q, a, t = (int(tok) for tok in line.split())
            delta[q][a] = t
    if any(t is None for row in delta for t in row):
        raise ValueError("transition table is not total")
    if kind == "dfa":
        return Dfa(alphabet, delta, 0, accepting)
    return Dfao(alphabet, delta, 0, tuple(outputs[q] for q in range(n)))
