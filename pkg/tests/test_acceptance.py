"""Exit criteria.  Each test records one PASS/FAIL line, printed at the end of the run.

Run alone with ``pytest tests/test_acceptance.py``.
"""
import time
from contextlib import contextmanager

import pytest

from pdakit.core import classify
from pdakit.fileformat import parse, serialize
from pdakit.search import (
    SearchBounds, certify_lower_bound, certify_mstate_lower_bound, min_pushdown_alphabet,
    search_acceptors,
)
from pdakit.simulator import enumerate_language, prefix_free
from pdakit.transforms import EpsilonLanguage, to_realtime
from pdakit.witnesses import (
    Family, WitnessSpec, build_example, build_mstate, build_stateless, build_unary,
    witness_language,
)

from conftest import ACCEPTANCE_LINES
from corpus import TRANSFORM_BUDGET, all_witnesses, hand_epsilon_machines, random_corpus


@contextmanager
def criterion(number, title, seconds):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        ACCEPTANCE_LINES.append(f"[{number}] FAIL {title} ({elapsed:.2f}s): {exc!r}"[:300])
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < seconds
    ACCEPTANCE_LINES.append(
        f"[{number}] {'PASS' if ok else 'FAIL'} {title} ({elapsed:.2f}s, limit {seconds}s)")
    assert ok, f"criterion {number} took {elapsed:.2f}s, limit {seconds}s"


def b_then_a(max_b):
    return {"b" * k + "a" for k in range(1, max_b + 1)}


def test_1_stateless_witnesses():
    with criterion(1, "stateless witnesses accept {b^k a | 1<=k<=n-1}, n=2..10", 1):
        for n in range(2, 11):
            sample = enumerate_language(build_stateless(n), 2 * n)
            assert sample.strings == b_then_a(n - 1)
            assert not sample.diverged


def test_2_mstate_witnesses():
    with criterion(2, "m-state witnesses accept {b^k a | 1<=k<=mn-1}, m=1..5, n=2..5", 5):
        for m in range(1, 6):
            for n in range(2, 6):
                sample = enumerate_language(build_mstate(m, n), 2 * m * n)
                assert sample.strings == b_then_a(m * n - 1)
                assert not sample.diverged


def test_3_example_machine_agrees():
    with criterion(3, "two-state ε-machine agrees with m-state witness, 2<=mn<=12", 5):
        checked = 0
        for m in range(1, 13):
            for n in range(2, 13):
                if not 2 <= m * n <= 12:
                    continue
                bound = m * n + 3
                a = enumerate_language(build_example(m, n), bound)
                b = enumerate_language(build_mstate(m, n), bound)
                assert a.strings == b.strings and not a.diverged
                checked += 1
        assert checked > 0


def test_4_epsilon_elimination():
    with criterion(4, "ε-elimination: realtime, |Γ'|<=|Γ|, same language at l=10", 30):
        with pytest.raises(EpsilonLanguage):
            to_realtime(build_unary(0))
        machines = [build_unary(c) for c in range(1, 6)] + hand_epsilon_machines() + random_corpus()
        transformed = refused = 0
        for m in machines:
            before = enumerate_language(m, 10, TRANSFORM_BUDGET)
            try:
                out, _ = to_realtime(m)
            except EpsilonLanguage:
                assert before.words == {()}
                refused += 1
                continue
            assert classify(out).realtime
            assert len(out.pushdown_alphabet) <= len(m.pushdown_alphabet)
            # diverged words of the original count as rejected
            assert enumerate_language(out, 10).words == before.words
            transformed += 1
        assert transformed >= 450


def test_5_stateless_lower_bound():
    with criterion(5, "no acceptor of L_n with n-1 symbols (bounded); controls at n symbols", 65):
        cases = [
            (2, dict(max_push_length=2, max_initial_length=2, length_bound=4), 1),
            (3, dict(max_push_length=2, max_initial_length=3, length_bound=5), 60),
        ]
        for n, common, limit in cases:
            start = time.perf_counter()
            cert = certify_lower_bound(n, SearchBounds(max_pushdown_symbols=n - 1, **common))
            assert cert.accepting_machines == []
            target = witness_language(WitnessSpec(Family.STATELESS, n=n))
            control = search_acceptors(target, SearchBounds(max_pushdown_symbols=n, **common))
            assert len(control.accepting_machines) >= 1
            assert time.perf_counter() - start < limit


def test_6_mstate_lower_bound():
    with criterion(6, "no 2-state acceptor of L_{2,2} with 1 symbol (bounded); control with 2", 60):
        common = dict(max_push_length=1, max_initial_length=1, length_bound=6, max_states=2)
        cert = certify_mstate_lower_bound(2, 2, SearchBounds(max_pushdown_symbols=1, **common))
        assert cert.accepting_machines == []
        target = witness_language(WitnessSpec(Family.MSTATE, m=2, n=2))
        control = search_acceptors(target, SearchBounds(max_pushdown_symbols=2, **common))
        assert len(control.accepting_machines) >= 1


def test_7_prefix_freeness():
    with criterion(7, "bound-12 samples of stateless deterministic machines are prefix-free", 10):
        machines = [m for m in all_witnesses() + random_corpus()
                    if classify(m).stateless and classify(m).deterministic]
        assert len(machines) >= 500
        for m in machines:
            assert prefix_free(enumerate_language(m, 12, TRANSFORM_BUDGET))


def test_8_hierarchy():
    with criterion(8, "min pushdown alphabet of L_n is n; K_n has n non-input symbols", 65):
        bounds = {
            2: SearchBounds(2, 2, 2, 4),
            3: SearchBounds(3, 2, 3, 5),
        }
        for n, b in bounds.items():
            assert min_pushdown_alphabet(witness_language(WitnessSpec(Family.STATELESS, n=n)), b) == n
        for n in range(0, 4):
            assert classify(build_stateless(n + 2)).non_input_symbol_count == n


def test_9_round_trip():
    with criterion(9, "parse/serialize round trip on the corpus, bit-exact", 1):
        for m in all_witnesses() + hand_epsilon_machines() + random_corpus():
            text = serialize(m)
            assert parse(text) == m
            assert serialize(parse(text)) == text
