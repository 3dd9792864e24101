"""ε-elimination for stateless deterministic pushdown automata.

Each ε-rule ``X -ε-> σ`` is removed by substituting ``σ`` for ``X`` wherever
``X`` can be pushed, which deletes ``X`` from the pushdown alphabet.  The
result is realtime and never has more pushdown symbols than the input.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    NotDeterministic, NotStateless, Pda, PdaError, Transition, classify,
)


class EpsilonLanguage(PdaError):
    """The machine accepts exactly {ε}, which no realtime machine can."""


@dataclass
class TransformLog:
    eliminated: list[tuple[str, tuple[str, ...]]] = field(default_factory=list)
    removed_dead: set[str] = field(default_factory=set)
    alphabet_before: int = 0
    alphabet_after: int = 0

    def summary(self) -> str:
        lines = [f"pushdown symbols: {self.alphabet_before} -> {self.alphabet_after}"]
        for sym, sigma in self.eliminated:
            lines.append(f"substituted {sym} := {' '.join(sigma) or 'eps'}")
        for sym in sorted(self.removed_dead):
            lines.append(f"removed dead symbol {sym}")
        return "\n".join(lines) + "\n"


def _substitute(word, sym, replacement):
    out = []
    for s in word:
        if s == sym:
            out.extend(replacement)
        else:
            out.append(s)
    return tuple(out)


def _reachable(initial, rules):
    seen = set(initial)
    todo = list(initial)
    while todo:
        top = todo.pop()
        for (t, _), push in rules.items():
            if t != top:
                continue
            for s in push:
                if s not in seen:
                    seen.add(s)
                    todo.append(s)
    return seen


def to_realtime(m: Pda) -> tuple[Pda, TransformLog]:
    report = classify(m)
    if not report.stateless:
        raise NotStateless("ε-elimination is defined for stateless machines only")
    if not report.deterministic:
        raise NotDeterministic("; ".join(report.violations))

    state = m.states[0]
    # (top, input-or-None) -> push; unique because m is deterministic
    rules = {(t.top, t.input): t.push for t in m.transitions}
    gamma = list(m.pushdown_alphabet)
    alpha = m.initial_pushdown
    log = TransformLog(alphabet_before=len(gamma))

    while True:
        eps_tops = sorted(top for (top, inp) in rules if inp is None)
        if not eps_tops:
            break
        x = eps_tops[0]
        sigma = rules.pop((x, None))
        if x in sigma:
            # x can never leave the pushdown once it is on top
            log.removed_dead.add(x)
            if x in alpha:
                return _empty_machine(m, state, log), log
            rules = {k: v for k, v in rules.items() if x not in v}
        else:
            log.eliminated.append((x, sigma))
            rules = {k: _substitute(v, x, sigma) for k, v in rules.items()}
            alpha = _substitute(alpha, x, sigma)
        gamma.remove(x)

    if not alpha:
        if state in m.final_states:
            raise EpsilonLanguage("the machine accepts exactly {ε}")
        return _empty_machine(m, state, log), log

    live = _reachable(alpha, rules)
    for sym in gamma:
        if sym not in live:
            log.removed_dead.add(sym)
    gamma = [s for s in gamma if s in live]
    rules = {k: v for k, v in rules.items() if k[0] in live}
    log.alphabet_after = len(gamma)

    out = Pda(
        states=m.states,
        input_alphabet=m.input_alphabet,
        pushdown_alphabet=tuple(gamma),
        transitions=frozenset(
            Transition(state, top, inp, state, push) for (top, inp), push in rules.items()),
        initial_state=state,
        initial_pushdown=alpha,
        final_states=m.final_states,
    )
    return out, log


def _empty_machine(m: Pda, state: str, log: TransformLog) -> Pda:
    keep = m.pushdown_alphabet[0]
    log.alphabet_after = 1
    return Pda(
        states=m.states,
        input_alphabet=m.input_alphabet,
        pushdown_alphabet=(keep,),
        transitions=frozenset(),
        initial_state=state,
        initial_pushdown=(keep,),
        final_states=m.final_states,
    )
