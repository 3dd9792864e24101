import pytest
from hypothesis import given, strategies as st

from pdakit.core import NotDeterministic, Pda, Transition, stateless_pda
from pdakit.simulator import (
    Configuration, LanguageSample, Verdict, accepts_exactly, enumerate_language,
    find_counterexample, prefix_free, prefix_pair, run, step,
)
from pdakit.witnesses import (
    Family, WitnessSpec, build_example, build_mstate, build_stateless, witness_language,
)

from corpus import all_witnesses, random_corpus


def test_step_climbs_on_b():
    m2 = build_stateless(2)
    assert step(m2, Configuration("s", ("X0",), ("b", "a"))) == {Configuration("s", ("X1",), ("a",))}


def test_step_pops_on_a():
    m2 = build_stateless(2)
    assert step(m2, Configuration("s", ("X1",), ("a",))) == {Configuration("s", (), ())}


def test_step_without_top_symbol():
    assert step(build_stateless(2), Configuration("s", (), ("a",))) == frozenset()


def test_step_collects_nondeterministic_successors():
    m = Pda(("p",), ("a",), ("A",),
            frozenset({Transition("p", "A", "a", "p", ()), Transition("p", "A", None, "p", ("A", "A"))}),
            "p", ("A",), frozenset({"p"}))
    assert step(m, Configuration("p", ("A",), ("a",))) == {
        Configuration("p", (), ()), Configuration("p", ("A", "A"), ("a",))}


def test_run_accepts_bba():
    out = run(build_stateless(3), "bba", 100)
    assert out.verdict is Verdict.ACCEPTED
    assert out.trace[-1] == Configuration("s", (), ())
    assert out.steps_used == 3 and out.epsilon_steps_used == 0


def test_run_rejects_too_many_bs():
    out = run(build_stateless(3), "bbba", 100)
    assert out.verdict is Verdict.REJECTED
    assert out.trace[-1] == Configuration("s", ("X2",), ("b", "a"))


def test_run_diverges_on_epsilon_self_loop():
    m = stateless_pda("a", "X", [("X", None, ("X",))], "X")
    for w in ("", "a", "aa"):
        out = run(m, w, 100)
        assert out.verdict is Verdict.DIVERGED
        assert out.epsilon_steps_used == 100


def test_run_epsilon_pop_accepts_empty_word():
    m = stateless_pda("a", "A", [("A", None, ())], "A")
    out = run(m, "", 100)
    assert out.verdict is Verdict.ACCEPTED
    assert out.epsilon_steps_used == 1
    assert run(m, "a", 100).verdict is Verdict.REJECTED


def test_run_rejects_input_left_on_empty_pushdown():
    assert run(build_stateless(2), "baa", 10).verdict is Verdict.REJECTED


def test_run_needs_deterministic_machine():
    m = stateless_pda("a", "A", [("A", None, ()), ("A", "a", ())], "A")
    with pytest.raises(NotDeterministic):
        run(m, "a", 10)


def test_example_machine_trace():
    out = run(build_example(2, 2), "bba", 100)
    assert out.verdict is Verdict.ACCEPTED
    assert [c.pushdown for c in out.trace] == [
        ("Z",), ("B", "B", "B"), ("B", "B"), ("B",), ()]
    assert [c.state for c in out.trace] == ["f", "q", "q", "f", "f"]
    assert out.epsilon_steps_used == 1


def test_trace_is_chain_of_steps():
    m = build_example(3, 2)
    out = run(m, "bbbba", 100)
    for a, b in zip(out.trace, out.trace[1:]):
        assert b in step(m, a)


def test_enumerate_m3():
    s = enumerate_language(build_stateless(3), 5, 100)
    assert s.strings == {"ba", "bba"}
    assert s.diverged == frozenset()


def test_enumerate_m22_and_example():
    expected = {"ba", "bba", "bbba"}
    assert enumerate_language(build_mstate(2, 2), 6, 100).strings == expected
    assert enumerate_language(build_example(2, 2), 6, 100).strings == expected


def test_enumerate_nondeterministic_machine():
    # accepts a^k for 1 <= k: nondeterministically guesses when to stop pushing
    m = Pda(("p",), ("a",), ("A",),
            frozenset({Transition("p", "A", "a", "p", ()), Transition("p", "A", "a", "p", ("A", "A"))}),
            "p", ("A",), frozenset({"p"}))
    s = enumerate_language(m, 4)
    assert s.strings == {"a", "aaa"}  # each a changes the stack height by ±1 from 1


def test_enumerate_reports_divergence():
    m = stateless_pda("ab", ["X", "Y"], [("X", "a", ("Y",)), ("Y", None, ("Y",)), ("X", "b", ())],
                      "X")
    for method in ("strings", "bfs"):
        s = enumerate_language(m, 2, 50, method=method)
        assert s.strings == {"b"}
        assert s.diverged_strings == {"a", "aa", "ab"}


def test_sample_invariants():
    for m in all_witnesses():
        s = enumerate_language(m, 8)
        assert all(len(w) <= 8 for w in s.words)
        assert not (s.words & s.diverged)


def test_enumeration_routes_agree():
    for m in random_corpus(200) + all_witnesses():
        if not (m.is_stateless or len(m.states) <= 3):
            continue
        by_strings = enumerate_language(m, 6, 60, method="strings")
        by_bfs = enumerate_language(m, 6, 60, method="bfs")
        assert by_strings == by_bfs


def test_enumeration_is_monotone_in_length():
    for m in random_corpus(100):
        small = enumerate_language(m, 5, 500)
        large = enumerate_language(m, 8, 500)
        assert small.words <= large.words
        assert {w for w in large.words if len(w) <= 5} == small.words


def test_prefix_free_examples():
    assert prefix_free({"ba", "bba"})
    assert prefix_pair({"a", "ab"}) == ("a", "ab")
    assert not prefix_free({"a", "ab"})
    assert prefix_free(set())


def test_prefix_free_on_sample():
    sample = enumerate_language(build_stateless(4), 6)
    assert prefix_free(sample)
    assert prefix_pair(LanguageSample(frozenset({("a",), ("a", "b")}), 2)) == ("a", "ab")


def _brute_prefix_pairs(strings):
    return {(u, v) for u in strings for v in strings if u != v and v.startswith(u)}


@given(st.sets(st.text(alphabet="ab", max_size=5), max_size=12))
def test_prefix_pair_matches_brute_force(strings):
    pairs = _brute_prefix_pairs(strings)
    found = prefix_pair(strings)
    if pairs:
        assert found in pairs
    else:
        assert found is None


def test_accepts_exactly():
    m4 = build_stateless(4)
    l4 = witness_language(WitnessSpec(Family.STATELESS, n=4))
    l3 = witness_language(WitnessSpec(Family.STATELESS, n=3))
    assert accepts_exactly(m4, l4, 8)
    assert not accepts_exactly(m4, l3, 8)
    assert find_counterexample(m4, l3, 8) == "bbba"
    with pytest.raises(ValueError):
        accepts_exactly(m4, l4, 3)


def test_diverged_word_is_a_counterexample():
    m = stateless_pda("a", "X", [("X", None, ("X",))], "X")
    assert find_counterexample(m, set(), 2, 20) == ""


def test_multichar_symbols_are_space_separated():
    m = stateless_pda(["go", "stop"], ["T"], [("T", "go", ("T", "T")), ("T", "stop", ())], ["T"])
    assert run(m, "go stop stop", 10).accepted
    s = enumerate_language(m, 3)
    assert s.strings == {"stop", "go stop stop"}
