"""Exhaustive search over bounded realtime pushdown automata.

Two routes cover the same bounded model:

* ``enumerate_machines`` streams every stateless realtime machine within
  the bounds, one per pushdown-symbol renaming class, and
  ``search_acceptors(..., strategy="exhaustive")`` tests each one.
* ``strategy="pruned"`` (the default) assigns transitions lazily while
  running the words of length ≤ ``length_bound`` in shortlex order, so a
  partial machine is abandoned as soon as some short word disagrees with
  the target.  New symbols and states are introduced in discovery order,
  which removes renaming duplicates without a separate canonical check.

A machine found by the pruned route only fixes the transitions that the
bounded words actually exercise; every completion of it accepts the same
bounded language.  Nothing here says anything about machines outside the
bounds.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .core import STATELESS_STATE, Pda, PdaError, Transition
from .simulator import enumerate_language, find_counterexample
from .witnesses import SIGMA, Family, WitnessSpec, witness_language

DEFAULT_CEILING = 10 ** 8

CAVEAT = ("certificate covers only the bounded model above; "
          "it is not a proof for unbounded push or initial-string lengths")


class BadBounds(PdaError):
    pass


class SpaceTooLarge(PdaError):
    pass


@dataclass(frozen=True)
class SearchBounds:
    max_pushdown_symbols: int
    max_push_length: int
    max_initial_length: int
    length_bound: int
    max_states: int = 1
    epsilon_budget: int = 0

    def __post_init__(self):
        for name in ("max_pushdown_symbols", "max_push_length", "max_initial_length",
                     "length_bound", "max_states"):
            if getattr(self, name) < 1:
                raise BadBounds(f"{name} must be at least 1")
        if self.epsilon_budget < 0:
            raise BadBounds("epsilon_budget must be non-negative")

    def to_text(self) -> str:
        return (f"max_pushdown_symbols={self.max_pushdown_symbols} "
                f"max_push_length={self.max_push_length} "
                f"max_initial_length={self.max_initial_length} "
                f"max_states={self.max_states} "
                f"length_bound={self.length_bound} "
                f"epsilon_budget={self.epsilon_budget}")


@dataclass
class SearchReport:
    target_language: frozenset[str]
    bounds: SearchBounds
    candidates_examined: int = 0
    candidates_after_symmetry: int = 0
    accepting_machines: list[Pda] = field(default_factory=list)
    wall_notes: str = ""
    space_size: int = 0  # raw machines in the bounded model, before symmetry

    def to_text(self) -> str:
        from .fileformat import serialize

        target = " ".join(sorted(self.target_language, key=lambda w: (len(w), w)))
        lines = [
            "search report",
            f"target: {target or '(empty)'}",
            f"bounds: {self.bounds.to_text()}",
            f"space_size: {self.space_size}",
            f"candidates_examined: {self.candidates_examined}",
            f"candidates_after_symmetry: {self.candidates_after_symmetry}",
            f"accepting_machines: {len(self.accepting_machines)}",
            f"notes: {self.wall_notes}",
            f"caveat: {CAVEAT}",
        ]
        for i, machine in enumerate(self.accepting_machines, 1):
            lines.append(f"--- machine {i}")
            lines.append(serialize(machine).rstrip("\n"))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- counting

def _push_count(k: int, max_push: int) -> int:
    return sum(k ** length for length in range(max_push + 1))


def _alpha_count(k: int, max_alpha: int) -> int:
    return sum(k ** length for length in range(1, max_alpha + 1))


def predicted_space_size(bounds: SearchBounds, sigma_size: int = len(SIGMA)) -> int:
    """Raw number of machines in the bounded space, before symmetry reduction.

    Every machine has exactly ``max_states`` states and ``k`` pushdown
    symbols for some ``1 ≤ k ≤ max_pushdown_symbols``; each (state, top,
    input) key is undefined or maps to one (state, push) pair.  Multi-state
    machines also choose a non-empty final-state set.
    """
    m = bounds.max_states
    total = 0
    for k in range(1, bounds.max_pushdown_symbols + 1):
        per_key = 1 + m * _push_count(k, bounds.max_push_length)
        total += per_key ** (m * k * sigma_size) * _alpha_count(k, bounds.max_initial_length)
    if m > 1:
        total *= 2 ** m - 1
    return total


# --------------------------------------------------------- canonical forms

def _encode(m: Pda, state_names, sym_names):
    trans = sorted(
        (state_names[t.state], sym_names[t.top], t.input or "",
         state_names[t.target], tuple(sym_names[s] for s in t.push))
        for t in m.transitions)
    return (tuple(sym_names[s] for s in m.initial_pushdown),
            tuple(sorted(state_names[q] for q in m.final_states)),
            tuple(trans))


def canonical_labels(m: Pda) -> tuple[dict, dict]:
    """Renaming of states and pushdown symbols to indices.

    The initial state is 0 and symbols are numbered by first occurrence in
    the initial string.  Then (state, symbol) rows are scanned smallest
    pair first, inputs in alphabet order, numbering new target states and
    pushed symbols as they occur.  For a stateless machine this is
    "initial string, then the rows of X0, X1, ... in order".  Anything
    the scan never reaches is numbered by the lexicographically least
    encoding over its permutations.
    """
    states = {m.initial_state: 0}
    syms = {}
    for s in m.initial_pushdown:
        syms.setdefault(s, len(syms))
    inv_states = [m.initial_state]
    inv_syms = sorted(syms, key=syms.get)
    done = set()
    delta = m.delta
    while True:
        pending = [(i, j) for i in range(len(inv_states)) for j in range(len(inv_syms))
                   if (i, j) not in done]
        if not pending:
            break
        i, j = min(pending)
        done.add((i, j))
        q, x = inv_states[i], inv_syms[j]
        for a in (None,) + tuple(m.input_alphabet):
            for target, push in sorted(
                    delta.get((q, x, a), ()),
                    key=lambda tp: (states.get(tp[0], len(states)),
                                    tuple(syms.get(s, len(syms)) for s in tp[1]))):
                if target not in states:
                    states[target] = len(states)
                    inv_states.append(target)
                for s in push:
                    if s not in syms:
                        syms[s] = len(syms)
                        inv_syms.append(s)

    rest_states = [q for q in m.states if q not in states]
    rest_syms = [s for s in m.pushdown_alphabet if s not in syms]
    if rest_states or rest_syms:
        best = None
        for ps in itertools.permutations(rest_states):
            for px in itertools.permutations(rest_syms):
                st = dict(states, **{q: len(states) + i for i, q in enumerate(ps)})
                sy = dict(syms, **{s: len(syms) + i for i, s in enumerate(px)})
                code = _encode(m, st, sy)
                if best is None or code < best[0]:
                    best = (code, st, sy)
        states, syms = best[1], best[2]
    return states, syms


def relabel(m: Pda, state_names: dict, sym_names: dict) -> Pda:
    return Pda(
        states=tuple(state_names[q] for q in m.states),
        input_alphabet=m.input_alphabet,
        pushdown_alphabet=tuple(sym_names[s] for s in m.pushdown_alphabet),
        transitions=frozenset(
            Transition(state_names[t.state], sym_names[t.top], t.input,
                       state_names[t.target], tuple(sym_names[s] for s in t.push))
            for t in m.transitions),
        initial_state=state_names[m.initial_state],
        initial_pushdown=tuple(sym_names[s] for s in m.initial_pushdown),
        final_states=frozenset(state_names[q] for q in m.final_states),
    )


def canonical_form(m: Pda) -> Pda:
    """Representative of ``m`` under renaming of pushdown symbols and non-initial states.

    Symbols become ``X0, X1, ...``.  A stateless machine keeps its state
    name; otherwise states become ``q0, q1, ...`` with ``q0`` initial.
    """
    states, syms = canonical_labels(m)
    if not m.is_stateless:
        m = Pda(tuple(sorted(m.states, key=states.get)), m.input_alphabet,
                m.pushdown_alphabet, m.transitions, m.initial_state,
                m.initial_pushdown, m.final_states)
        state_names = {q: f"q{i}" for q, i in states.items()}
    else:
        state_names = {m.states[0]: m.states[0]}
    m = Pda(m.states, m.input_alphabet, tuple(sorted(m.pushdown_alphabet, key=syms.get)),
            m.transitions, m.initial_state, m.initial_pushdown, m.final_states)
    return relabel(m, state_names, {s: f"X{i}" for s, i in syms.items()})


def _reachable_symbols(m: Pda) -> set:
    seen = set(m.initial_pushdown)
    todo = list(seen)
    while todo:
        x = todo.pop()
        for t in m.transitions:
            if t.top == x:
                for s in t.push:
                    if s not in seen:
                        seen.add(s)
                        todo.append(s)
    return seen


# ---------------------------------------------------- exhaustive stream

def _raw_stateless(k: int, bounds: SearchBounds, sigma=SIGMA) -> Iterator[Pda]:
    gamma = tuple(f"X{i}" for i in range(k))
    pushes = [p for length in range(bounds.max_push_length + 1)
              for p in itertools.product(gamma, repeat=length)]
    choices = [None] + pushes
    keys = [(x, a) for x in gamma for a in sigma]
    alphas = [p for length in range(1, bounds.max_initial_length + 1)
              for p in itertools.product(gamma, repeat=length)]
    for alpha in alphas:
        for combo in itertools.product(choices, repeat=len(keys)):
            yield Pda(
                states=(STATELESS_STATE,),
                input_alphabet=sigma,
                pushdown_alphabet=gamma,
                transitions=frozenset(
                    Transition(STATELESS_STATE, x, a, STATELESS_STATE, push)
                    for (x, a), push in zip(keys, combo) if push is not None),
                initial_state=STATELESS_STATE,
                initial_pushdown=alpha,
                final_states=frozenset({STATELESS_STATE}),
            )


def raw_machines(bounds: SearchBounds, sigma=SIGMA) -> Iterator[Pda]:
    """Every stateless realtime machine within the bounds, no symmetry reduction."""
    for k in range(1, bounds.max_pushdown_symbols + 1):
        yield from _raw_stateless(k, bounds, sigma)


def is_canonical(m: Pda) -> bool:
    """True when every symbol is reachable and the scan labelling is the identity."""
    if _reachable_symbols(m) != set(m.pushdown_alphabet):
        return False
    _, syms = canonical_labels(m)
    return all(syms[s] == i for i, s in enumerate(m.pushdown_alphabet))


def enumerate_machines(bounds: SearchBounds, sigma=SIGMA) -> Iterator[Pda]:
    """Stateless realtime machines within the bounds, one per renaming class.

    Machines with a pushdown symbol unreachable from the initial string
    are skipped: dropping that symbol gives an equivalent machine that is
    already in the space with fewer symbols.
    """
    for m in raw_machines(bounds, sigma):
        if is_canonical(m):
            yield m


# -------------------------------------------------------- pruned search

class _Need(Exception):
    pass


def _restricted_pushes(k_used: int, k_max: int, max_len: int):
    """Push strings where unseen symbols appear in increasing order."""
    out = []

    def extend(prefix, used):
        out.append((tuple(prefix), used))
        if len(prefix) == max_len:
            return
        for s in range(min(used + 1, k_max)):
            prefix.append(s)
            extend(prefix, max(used, s + 1))
            prefix.pop()

    extend([], k_used)
    return out


class _LazySearch:
    """Depth-first search over partial realtime machines.

    A partial machine maps ``(state, symbol, input)`` to ``None``
    (undefined) or ``(state, push)``; absent keys are still open.
    Finality of a state is decided the first time a run ends there with an
    empty pushdown.  Words are checked in shortlex order and the first open
    decision met is branched on.
    """

    def __init__(self, target_words, bounds: SearchBounds, sigma, stateless, first_only):
        self.target = target_words
        self.bounds = bounds
        self.sigma = sigma
        self.stateless = stateless
        self.first_only = first_only
        self.nodes = 0
        self.found = []
        words = [w for n in range(bounds.length_bound + 1)
                 for w in itertools.product(range(len(sigma)), repeat=n)]
        self.words = words

    def evaluate(self, alpha, delta, finals):
        """Return ``None`` if consistent and complete, ``False`` on contradiction,
        or the open decision ``("key", key)`` / ``("final", state)``."""
        configs = {(): (0, alpha)}
        target = self.target
        for w in self.words:
            if w:
                parent = configs.get(w[:-1])
                if parent is None or not parent[1]:
                    # stuck or already empty: w and its extensions are rejected
                    if w in target:
                        return False
                    continue
                state, stack = parent
                key = (state, stack[-1], w[-1])
                if key not in delta:
                    return ("key", key)
                move = delta[key]
                if move is None:
                    if w in target:
                        return False
                    continue
                configs[w] = (move[0], stack[:-1] + move[1])
            state, stack = configs[w]
            accepted = False
            if not stack:
                if self.stateless:
                    accepted = True
                elif state not in finals:
                    return ("final", state)
                else:
                    accepted = finals[state]
            if accepted != (w in target):
                return False
        return None

    def run(self):
        k_max = self.bounds.max_pushdown_symbols
        for alpha, used in _restricted_strings(k_max, self.bounds.max_initial_length):
            self._dfs(alpha, {}, {}, used, 1)
            if self.first_only and self.found:
                return

    def _dfs(self, alpha, delta, finals, k_used, n_states):
        self.nodes += 1
        need = self.evaluate(alpha, delta, finals)
        if need is False:
            return
        if need is None:
            self.found.append((alpha, dict(delta), dict(finals), k_used, n_states))
            return
        kind, what = need
        if kind == "final":
            for value in (False, True):
                finals[what] = value
                self._dfs(alpha, delta, finals, k_used, n_states)
                del finals[what]
                if self.first_only and self.found:
                    return
            return
        b = self.bounds
        targets = range(min(n_states + 1, b.max_states))
        options = [None] + [
            (p, push, used, max(n_states, p + 1))
            for p in targets
            for push, used in _restricted_pushes(k_used, b.max_pushdown_symbols,
                                                 b.max_push_length)]
        for opt in options:
            if opt is None:
                delta[what] = None
                self._dfs(alpha, delta, finals, k_used, n_states)
            else:
                p, push, used, ns = opt
                delta[what] = (p, push)
                self._dfs(alpha, delta, finals, used, ns)
            del delta[what]
            if self.first_only and self.found:
                return


def _restricted_strings(k_max, max_len):
    for length in range(1, max_len + 1):
        for word in itertools.product(range(k_max), repeat=length):
            used = 0
            ok = True
            for s in word:
                if s > used:
                    ok = False
                    break
                used = max(used, s + 1)
            if ok:
                yield word, used


def _partial_to_pda(found, sigma, stateless) -> Pda:
    alpha, delta, finals, k_used, n_states = found
    gamma = tuple(f"X{i}" for i in range(k_used))
    if stateless:
        names = [STATELESS_STATE]
        final = {STATELESS_STATE}
    else:
        names = [f"q{j}" for j in range(n_states)]
        final = {names[q] for q, v in finals.items() if v}
    trans = frozenset(
        Transition(names[q], gamma[x], sigma[a], names[move[0]],
                   tuple(gamma[s] for s in move[1]))
        for (q, x, a), move in delta.items() if move is not None)
    return Pda(
        states=tuple(names),
        input_alphabet=tuple(sigma),
        pushdown_alphabet=gamma,
        transitions=trans,
        initial_state=names[0],
        initial_pushdown=tuple(gamma[s] for s in alpha),
        final_states=frozenset(final),
    )


# ------------------------------------------------------------- front end

def _target_words(target: Iterable[str], sigma) -> frozenset:
    index = {a: i for i, a in enumerate(sigma)}
    words = set()
    for w in target:
        try:
            words.add(tuple(index[ch] for ch in w))
        except KeyError as exc:
            raise BadBounds(f"target string {w!r} is not over {sigma}") from exc
    return frozenset(words)


def _verify(machine: Pda, target, length_bound):
    # independent route: run every word, not the configuration BFS
    sample = enumerate_language(machine, length_bound, method="strings")
    if sample.diverged or sample.strings != frozenset(target):
        raise AssertionError(f"search produced a machine that does not accept the target:\n"
                             f"{machine}")


def search_acceptors(target: Iterable[str], bounds: SearchBounds, *,
                     strategy: str = "pruned", first_only: bool = False,
                     ceiling: Optional[int] = None, sigma=SIGMA) -> SearchReport:
    """All machines within ``bounds`` whose bounded language equals ``target``.

    ``bounds.max_states == 1`` searches stateless machines (the sole state
    is final); larger values search realtime machines with up to that many
    states and a free final-state set.
    """
    target = frozenset(target)
    if any(len(w) > bounds.length_bound for w in target):
        raise BadBounds("length_bound is shorter than the longest target string")
    predicted = predicted_space_size(bounds, len(sigma))
    if ceiling is not None and predicted > ceiling:
        raise SpaceTooLarge(
            f"the bounded space has {predicted} machines, above the ceiling {ceiling}")
    stateless = bounds.max_states == 1
    started = time.perf_counter()
    report = SearchReport(target_language=target, bounds=bounds, space_size=predicted)

    if strategy == "exhaustive":
        if not stateless:
            raise BadBounds("the exhaustive stream covers stateless machines only")
        for m in raw_machines(bounds, sigma):
            report.candidates_examined += 1
            if not is_canonical(m):
                continue
            report.candidates_after_symmetry += 1
            if find_counterexample(m, target, bounds.length_bound) is None:
                report.accepting_machines.append(m)
                if first_only:
                    break
    elif strategy == "pruned":
        engine = _LazySearch(_target_words(target, sigma), bounds, sigma, stateless, first_only)
        engine.run()
        # symmetry is broken while generating, so every examined node counts for both
        report.candidates_examined = engine.nodes
        report.candidates_after_symmetry = engine.nodes
        report.accepting_machines = [
            canonical_form(_partial_to_pda(f, sigma, stateless)) for f in engine.found]
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    for m in report.accepting_machines:
        _verify(m, target, bounds.length_bound)
    elapsed = time.perf_counter() - started
    if strategy == "pruned":
        report.wall_notes = (f"strategy=pruned; candidates are partial machines, each standing "
                             f"for every completion of its unexercised transitions; "
                             f"{elapsed:.2f}s")
    else:
        report.wall_notes = f"strategy=exhaustive; {elapsed:.2f}s"
    return report


def certify_lower_bound(n: int, bounds: SearchBounds, **kwargs) -> SearchReport:
    """Search the stateless machines with n-1 symbols for an acceptor of L_n."""
    if n < 2:
        raise BadBounds("n must be at least 2")
    if bounds.max_pushdown_symbols != n - 1:
        raise BadBounds("max_pushdown_symbols must equal n - 1")
    if bounds.max_states != 1:
        raise BadBounds("the stateless search needs max_states = 1")
    if bounds.length_bound < n + 1:
        raise BadBounds("length_bound must be at least n + 1")
    target = witness_language(WitnessSpec(Family.STATELESS, n=n))
    return search_acceptors(target, bounds, **kwargs)


def certify_mstate_lower_bound(m: int, n: int, bounds: SearchBounds, *,
                               ceiling: Optional[int] = DEFAULT_CEILING,
                               **kwargs) -> SearchReport:
    """Search m-state realtime machines with n-1 symbols for an acceptor of L_{m,n}."""
    if m < 1 or n < 2:
        raise BadBounds("need m >= 1 and n >= 2")
    if bounds.max_states != m:
        raise BadBounds("max_states must equal m")
    if bounds.max_pushdown_symbols != n - 1:
        raise BadBounds("max_pushdown_symbols must equal n - 1")
    if bounds.length_bound < m * n + 1:
        raise BadBounds("length_bound must be at least mn + 1")
    target = witness_language(WitnessSpec(Family.MSTATE, n=n, m=m))
    return search_acceptors(target, bounds, ceiling=ceiling, **kwargs)


def min_pushdown_alphabet(target: Iterable[str], bounds: SearchBounds,
                          **kwargs) -> Optional[int]:
    """Smallest symbol count whose bounded space holds an acceptor of ``target``.

    Returns ``None`` when no count up to ``bounds.max_pushdown_symbols`` works.
    """
    target = frozenset(target)
    for k in range(1, bounds.max_pushdown_symbols + 1):
        sub = SearchBounds(
            max_pushdown_symbols=k,
            max_push_length=bounds.max_push_length,
            max_initial_length=bounds.max_initial_length,
            length_bound=bounds.length_bound,
            max_states=bounds.max_states,
            epsilon_budget=bounds.epsilon_budget,
        )
        if search_acceptors(target, sub, first_only=True, **kwargs).accepting_machines:
            return k
    return None
