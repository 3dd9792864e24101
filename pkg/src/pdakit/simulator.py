"""Running pushdown automata and sampling their bounded languages.

Acceptance is by final state *and* empty pushdown.  Inputs are words,
i.e. tuples of input symbols; a plain ``str`` is accepted wherever a word
is expected and is split into characters when every input symbol is a
single character, or on whitespace otherwise.
"""
from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .core import NotDeterministic, Pda, is_deterministic

Word = tuple[str, ...]


class Configuration(NamedTuple):
    state: str
    pushdown: tuple[str, ...]  # top is rightmost
    remaining: tuple[str, ...]

    def render(self) -> str:
        stack = " ".join(self.pushdown) or "eps"
        rest = " ".join(self.remaining) or "eps"
        return f"{self.state} | {stack} | {rest}"


class Verdict(enum.Enum):
    ACCEPTED = "Accepted"
    REJECTED = "Rejected"
    DIVERGED = "Diverged"


@dataclass(frozen=True)
class RunOutcome:
    verdict: Verdict
    trace: tuple[Configuration, ...]
    steps_used: int
    epsilon_steps_used: int

    @property
    def accepted(self) -> bool:
        return self.verdict is Verdict.ACCEPTED


def _single_char(m: Pda) -> bool:
    return all(len(a) == 1 for a in m.input_alphabet)


def to_word(m: Pda, w: Union[str, Sequence[str]]) -> Word:
    if isinstance(w, str):
        return tuple(w) if _single_char(m) else tuple(w.split())
    return tuple(w)


def render_word(m: Pda, word: Sequence[str]) -> str:
    return ("" if _single_char(m) else " ").join(word)


def default_budget(m: Pda) -> int:
    """Default ε-step budget: 10·|Γ|·(longest push string)."""
    return 10 * len(m.pushdown_alphabet) * max(1, m.max_push_length)


def step(m: Pda, c: Configuration) -> frozenset[Configuration]:
    """Every configuration reachable from ``c`` in exactly one move."""
    if not c.pushdown:
        return frozenset()
    below, top = c.pushdown[:-1], c.pushdown[-1]
    out = set()
    if c.remaining:
        for target, push in m.delta.get((c.state, top, c.remaining[0]), ()):
            out.add(Configuration(target, below + push, c.remaining[1:]))
    for target, push in m.delta.get((c.state, top, None), ()):
        out.add(Configuration(target, below + push, c.remaining))
    return frozenset(out)


def is_accepting(m: Pda, c: Configuration) -> bool:
    return not c.pushdown and not c.remaining and c.state in m.final_states


def run(m: Pda, w, budget: Optional[int] = None) -> RunOutcome:
    """Deterministic run of ``m`` on ``w``.

    Diverged means more than ``budget`` consecutive ε-moves happened
    without consuming input.
    """
    if not is_deterministic(m):
        raise NotDeterministic("run() needs a deterministic machine; use enumerate_language")
    if budget is None:
        budget = default_budget(m)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    c = Configuration(m.initial_state, m.initial_pushdown, to_word(m, w))
    trace = [c]
    steps = eps_steps = eps_run = 0
    while True:
        if is_accepting(m, c):
            return RunOutcome(Verdict.ACCEPTED, tuple(trace), steps, eps_steps)
        succ = step(m, c)
        if not succ:
            return RunOutcome(Verdict.REJECTED, tuple(trace), steps, eps_steps)
        if len(succ) > 1:
            raise NotDeterministic(f"configuration {c.render()} has {len(succ)} successors")
        (nxt,) = succ
        if len(nxt.remaining) == len(c.remaining):
            if eps_run == budget:
                return RunOutcome(Verdict.DIVERGED, tuple(trace), steps, eps_steps)
            eps_run += 1
            eps_steps += 1
        else:
            eps_run = 0
        steps += 1
        c = nxt
        trace.append(c)


def shortlex(words: Iterable[Sequence[str]]) -> list:
    return sorted(words, key=lambda w: (len(w), tuple(w)))


def all_words(alphabet: Sequence[str], length_bound: int):
    """Every word over ``alphabet`` of length at most ``length_bound``, shortlex."""
    for n in range(length_bound + 1):
        yield from itertools.product(alphabet, repeat=n)


@dataclass(frozen=True)
class LanguageSample:
    """Accepted words of length at most ``length_bound``.

    ``diverged`` collects words whose deterministic run exhausted the
    ε-budget; they are never members of ``words``.
    """
    words: frozenset[Word]
    length_bound: int
    diverged: frozenset[Word] = field(default=frozenset())
    single_char: bool = True

    def _render(self, ws):
        sep = "" if self.single_char else " "
        return frozenset(sep.join(w) for w in ws)

    @property
    def strings(self) -> frozenset[str]:
        return self._render(self.words)

    @property
    def diverged_strings(self) -> frozenset[str]:
        return self._render(self.diverged)

    def sorted_strings(self) -> list[str]:
        sep = "" if self.single_char else " "
        return [sep.join(w) for w in shortlex(self.words)]


def _enumerate_by_strings(m: Pda, length_bound: int, budget: int):
    accepted, diverged = set(), set()
    for word in all_words(m.input_alphabet, length_bound):
        verdict = run(m, word, budget).verdict
        if verdict is Verdict.ACCEPTED:
            accepted.add(word)
        elif verdict is Verdict.DIVERGED:
            diverged.add(word)
    return accepted, diverged


def _unlink(stack):
    out = []
    while stack is not None:
        out.append(stack[0])
        stack = stack[1]
    return tuple(reversed(out))


def _link(symbols, below=None):
    for sym in symbols:
        below = (sym, below)
    return below


def _enumerate_by_configurations(m: Pda, length_bound: int, budget: int, deterministic: bool):
    """Breadth-first search over (state, pushdown, consumed prefix).

    Pushdowns are linked cons cells ``(top, below)`` so a move costs
    O(push length).  A deterministic branch that exhausts the budget
    after consuming ``u`` marks ``u`` and all its extensions diverged,
    matching what ``run`` reports for those words.
    """
    sigma = m.input_alphabet
    delta = m.delta
    finals = m.final_states
    accepted, diverged = set(), set()
    start = (m.initial_state, _link(m.initial_pushdown), (), 0)
    queue = deque([start])
    seen = {start}
    while queue:
        state, stack, consumed, eps_run = queue.popleft()
        if stack is None:
            if state in finals:
                accepted.add(consumed)
            continue
        top, below = stack
        eps_targets = delta.get((state, top, None), ())
        successors = []
        if eps_targets and eps_run == budget:
            if deterministic:
                room = length_bound - len(consumed)
                diverged.update(consumed + tail for tail in all_words(sigma, room))
            continue
        for target, push in eps_targets:
            successors.append((target, _link(push, below), consumed, eps_run + 1))
        if len(consumed) < length_bound:
            for a in sigma:
                for target, push in delta.get((state, top, a), ()):
                    successors.append((target, _link(push, below), consumed + (a,), 0))
        for nxt in successors:
            if deterministic or nxt not in seen:
                if not deterministic:
                    seen.add(nxt)
                queue.append(nxt)
    if not deterministic:
        diverged = set()
    return accepted, diverged


def enumerate_language(m: Pda, length_bound: int, budget: Optional[int] = None,
                       method: str = "auto") -> LanguageSample:
    """Accepted words of length ≤ ``length_bound``.

    ``method`` is ``"strings"`` (run every word, deterministic machines
    only), ``"bfs"`` (search over configurations) or ``"auto"`` (BFS).
    Both routes give identical samples on deterministic machines.
    """
    if length_bound < 0:
        raise ValueError("length_bound must be non-negative")
    if budget is None:
        budget = default_budget(m)
    deterministic = is_deterministic(m)
    if method == "strings":
        if not deterministic:
            raise NotDeterministic("string testing needs a deterministic machine")
        accepted, diverged = _enumerate_by_strings(m, length_bound, budget)
    elif method in ("bfs", "auto"):
        accepted, diverged = _enumerate_by_configurations(m, length_bound, budget, deterministic)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    return LanguageSample(frozenset(accepted), length_bound, frozenset(diverged),
                          single_char=_single_char(m))


def _as_words(items) -> list[tuple]:
    if isinstance(items, LanguageSample):
        return list(items.words)
    return [tuple(w) for w in items]


def prefix_pair(sample) -> Optional[tuple]:
    """An offending pair ``(u, uv)`` with ``u`` a proper prefix, or None.

    Accepts a ``LanguageSample`` (pair rendered as strings) or any
    iterable of strings/words.
    """
    words = sorted(set(_as_words(sample)))
    # in lexicographic order a word's extensions follow it directly
    for u, v in zip(words, words[1:]):
        if len(u) < len(v) and v[:len(u)] == u:
            if isinstance(sample, LanguageSample):
                sep = "" if sample.single_char else " "
                return sep.join(u), sep.join(v)
            if all(isinstance(w, str) for w in sample):
                return "".join(u), "".join(v)
            return u, v
    return None


def prefix_free(sample) -> bool:
    return prefix_pair(sample) is None


def find_counterexample(m: Pda, reference: Iterable, length_bound: int,
                        budget: Optional[int] = None) -> Optional[str]:
    """Shortlex-least word separating ``m`` from ``reference``, or None.

    Only words of length ≤ ``length_bound`` are considered; a diverged
    word counts as a counterexample.
    """
    ref = {to_word(m, w) for w in reference}
    if any(len(w) > length_bound for w in ref):
        raise ValueError("length_bound is shorter than the longest reference string")
    sample = enumerate_language(m, length_bound, budget)
    bad = (sample.words ^ ref) | sample.diverged
    if not bad:
        return None
    return render_word(m, shortlex(bad)[0])


def accepts_exactly(m: Pda, reference: Iterable, length_bound: int,
                    budget: Optional[int] = None) -> bool:
    return find_counterexample(m, reference, length_bound, budget) is None
