import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from tribauto.errors import AlphabetMismatch
from tribauto.automata.machines import (
    ONE_TRACK,
    TWO_TRACK,
    Dfa,
    Dfao,
    distinguishing_word,
    dumps,
    equivalence_classes,
    forbidden_factor_dfa,
    loads,
    minimize,
    product,
    run,
    words,
)
from tribauto.numeration import FIB, TRIB, is_valid


def machine_data(alphabet, max_states=7):
    k = len(alphabet)

    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=max_states))
        delta = [[draw(st.integers(0, n - 1)) for _ in range(k)] for _ in range(n)]
        accepting = frozenset(q for q in range(n) if draw(st.booleans()))
        return Dfa(alphabet, delta, 0, accepting)

    return build()


def same_language(m1, m2, length):
    return all(m1.run(w) == m2.run(w) for w in words(m1.alphabet, length))


def test_run_basics():
    m = Dfa(ONE_TRACK, [[0, 1], [1, 1]], 0, {0})
    assert m.run(()) is True
    assert run(m, (0, 0, 1)) is False
    dead = Dfa(ONE_TRACK, [[1, 1], [1, 1]], 0, {0})
    assert dead.run(()) and not any(dead.run(w) for w in words(ONE_TRACK, 6, 1))
    with pytest.raises(AlphabetMismatch):
        m.run((2,))
    with pytest.raises(AlphabetMismatch):
        m.step(0, "x")


def test_construction_validation():
    with pytest.raises(ValueError):
        Dfa(ONE_TRACK, [[0]], 0, set())
    with pytest.raises(ValueError):
        Dfa(ONE_TRACK, [[0, 3]], 0, set())
    with pytest.raises(ValueError):
        Dfa(ONE_TRACK, [[0, 0]], 1, set())
    with pytest.raises(ValueError):
        Dfao(ONE_TRACK, [[0, 0]], 0, ())


@pytest.mark.parametrize("system,states", [(FIB, 3), (TRIB, 4)])
def test_forbidden_factor_dfa(system, states):
    m = forbidden_factor_dfa(system)
    assert m.state_count == states
    for w in words(ONE_TRACK, 12):
        assert m.run(w) == is_valid("".join(map(str, w)), system)
    assert not m.run((1, 1)) or system is TRIB


def test_last_digit_dfao():
    m = Dfao(ONE_TRACK, [[0, 1], [0, 1]], 0, (0, 1))
    assert m.evaluate(4, FIB) == 1
    assert m.evaluate(0, FIB) == m.output[m.start]
    assert m.evaluate(5, FIB) == 0


@settings(max_examples=60, deadline=None)
@given(machine_data(ONE_TRACK))
def test_product_identities(m):
    both = product(m, m, lambda a, b: a and b)
    assert same_language(both, m, 10)
    empty = product(m, m.complement(), lambda a, b: a and b)
    assert not any(empty.run(w) for w in words(ONE_TRACK, 10))


def test_product_alphabet_check():
    with pytest.raises(AlphabetMismatch):
        product(forbidden_factor_dfa(FIB), Dfa(TWO_TRACK, [[0] * 4], 0, {0}), lambda a, b: a)


@settings(max_examples=60, deadline=None)
@given(st.one_of(machine_data(ONE_TRACK), machine_data(TWO_TRACK, 5)))
def test_minimize_properties(m):
    small = minimize(m)
    length = 12 if len(m.alphabet) == 2 else 6
    assert same_language(small, m, length)
    again = minimize(small)
    assert again.state_count == small.state_count
    assert dumps(again) == dumps(small)
    assert small.state_count <= len(m.reachable())
    # every state pair of a minimal machine is distinguishable
    for p, q in itertools.combinations(range(small.state_count), 2):
        assert distinguishing_word(small, p, q) is not None


@settings(max_examples=80, deadline=None)
@given(machine_data(ONE_TRACK))
def test_distinguishing_word_matches_partition(m):
    block = equivalence_classes(m)
    for p, q in itertools.product(range(m.state_count), repeat=2):
        w = distinguishing_word(m, p, q)
        assert (w is None) == (block[p] == block[q])
        if w is not None:
            assert m.run(w, state=p) != m.run(w, state=q)
            # shortest: no shorter word separates them
            assert all(m.run(u, state=p) == m.run(u, state=q) for u in words(ONE_TRACK, len(w) - 1))


def test_distinguishing_word_trivial_cases():
    m = Dfa(ONE_TRACK, [[0, 0], [1, 1]], 0, {1})
    assert distinguishing_word(m, 0, 0) is None
    assert distinguishing_word(m, 0, 1) == ()
    with pytest.raises(ValueError):
        distinguishing_word(m, 0, 5)


def test_minimize_removes_unreachable_states():
    m = Dfa(ONE_TRACK, [[0, 0], [1, 1], [0, 2]], 0, {0, 2})
    assert minimize(m).state_count == 1


def test_minimize_dfao_keeps_outputs():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(1, 8)
        m = Dfao(ONE_TRACK, [[rng.randrange(n) for _ in range(2)] for _ in range(n)], 0,
                 tuple(rng.randrange(3) for _ in range(n)))
        small = minimize(m)
        assert all(small.run(w) == m.run(w) for w in words(ONE_TRACK, 10))


def test_serialization_round_trip():
    m = Dfa(TWO_TRACK, [[1, 0, 0, 0], [1, 1, 0, 1]], 0, {1})
    text = dumps(m)
    assert text.splitlines()[0] == "dfa 2 4"
    assert text.endswith("accepting: 1\n")
    assert loads(text) == m
    o = Dfao(ONE_TRACK, [[1, 0], [1, 1]], 0, (5, 7))
    assert loads(dumps(o)) == o
    assert "output: 1=7" in dumps(o)


def test_serialization_moves_start_to_zero():
    m = Dfa(ONE_TRACK, [[0, 0], [0, 1]], 1, {1})
    back = loads(dumps(m))
    assert back.start == 0
    assert all(back.run(w) == m.run(w) for w in words(ONE_TRACK, 8))


def test_loads_rejects_bad_input():
    for text in ("", "nfa 1 2\n", "dfa 1 3\n0 0 0\n0 1 0\n0 2 0\n", "dfa 2 2\n0 0 1\n0 1 1\n1 0 0\n"):
        with pytest.raises(ValueError):
            loads(text)


def test_synchronized_accepts_needs_two_tracks():
    with pytest.raises(AlphabetMismatch):
        forbidden_factor_dfa(FIB).synchronized_accepts(1, 1, FIB)
