import pytest

from pdakit.core import NotDeterministic, NotStateless, classify, stateless_pda
from pdakit.simulator import enumerate_language
from pdakit.transforms import EpsilonLanguage, to_realtime
from pdakit.witnesses import build_example, build_stateless, build_unary

from corpus import TRANSFORM_BUDGET, hand_epsilon_machines, random_corpus


def same_language(m, out, bound=10):
    before = enumerate_language(m, bound, TRANSFORM_BUDGET)
    after = enumerate_language(out, bound)
    return before.words == after.words


def test_realtime_input_is_unchanged():
    m3 = build_stateless(3)
    out, log = to_realtime(m3)
    assert out == m3
    assert log.eliminated == [] and log.removed_dead == set()
    assert log.alphabet_before == log.alphabet_after == 3


def test_top_epsilon_pop_is_substituted_away():
    m, _, _ = hand_epsilon_machines()
    out, log = to_realtime(m)
    assert out.pushdown_alphabet == ("Z",)
    assert out.initial_pushdown == ("Z",)
    assert {(t.top, t.input, t.push) for t in out.transitions} == {("Z", "a", ())}
    assert log.eliminated == [("E", ())]
    assert enumerate_language(m, 6).strings == enumerate_language(out, 6).strings == {"a"}


def test_epsilon_rename_is_substituted_into_initial_string():
    _, m, _ = hand_epsilon_machines()
    out, log = to_realtime(m)
    assert out.pushdown_alphabet == ("B",)
    assert out.initial_pushdown == ("B",)
    assert {(t.top, t.input, t.push) for t in out.transitions} == {("B", "a", ())}
    assert enumerate_language(out, 6).strings == {"a"}
    assert same_language(m, out)


def test_self_reinstating_symbol_gives_empty_machine():
    _, _, m = hand_epsilon_machines()
    out, log = to_realtime(m)
    assert log.removed_dead == {"X"}
    assert out.transitions == frozenset()
    assert out.initial_pushdown == ("X",)
    assert enumerate_language(out, 6).words == frozenset()
    assert enumerate_language(m, 6, 50).words == frozenset()


def test_dead_symbol_below_the_top_kills_its_rules():
    # pushing D under A: A can be popped, then D loops forever
    m = stateless_pda("ab", ["S", "A", "D"],
                      [("S", "a", ("D", "A")), ("S", "b", ()), ("A", "a", ()), ("D", None, ("D",))],
                      ["S"])
    out, log = to_realtime(m)
    assert "D" in log.removed_dead
    assert enumerate_language(out, 6).strings == {"b"}
    assert same_language(m, out, 6)


def test_epsilon_language_is_refused():
    with pytest.raises(EpsilonLanguage):
        to_realtime(build_unary(0))


def test_preconditions():
    with pytest.raises(NotStateless):
        to_realtime(build_example(2, 2))
    nondet = stateless_pda("a", "A", [("A", None, ()), ("A", "a", ())], "A")
    with pytest.raises(NotDeterministic):
        to_realtime(nondet)


@pytest.mark.parametrize("c", [1, 2, 3, 5])
def test_unary_machines_are_already_realtime(c):
    m = build_unary(c)
    out, _ = to_realtime(m)
    assert out == m


def test_elimination_log_is_reproducible():
    m = stateless_pda("ab", ["A", "B", "C"],
                      [("C", None, ("B",)), ("B", None, ("A", "A")), ("A", "a", ())], ["C"])
    out, log = to_realtime(m)
    assert log.eliminated == [("B", ("A", "A")), ("C", ("A", "A"))]
    assert out.initial_pushdown == ("A", "A")
    assert to_realtime(m) == (out, log)


def test_random_machines():
    for m in random_corpus():
        try:
            out, log = to_realtime(m)
        except EpsilonLanguage:
            assert enumerate_language(m, 10, TRANSFORM_BUDGET).words == {()}
            continue
        r = classify(out)
        assert r.realtime and r.stateless
        assert not any(t.input is None for t in out.transitions)
        assert len(out.pushdown_alphabet) <= len(m.pushdown_alphabet)
        assert log.alphabet_after == len(out.pushdown_alphabet)
        assert len({x for x, _ in log.eliminated}) == len(log.eliminated)
        assert same_language(m, out)
