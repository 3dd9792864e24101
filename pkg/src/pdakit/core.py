"""Pushdown automaton data model, well-formedness checks and classification.

Stacks are written bottom-to-top, so the top of the pushdown is the
rightmost symbol of every push string and of the initial pushdown string.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional

EPS = "eps"  # reserved file-format token for the empty string / empty input

STATELESS_STATE = "s"


class PdaError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(PdaError):
    pass


class UnknownSymbol(ValidationError):
    pass


class UnknownState(ValidationError):
    pass


class EmptyAlphabet(ValidationError):
    pass


class BadInitial(ValidationError):
    pass


class BadFinal(ValidationError):
    pass


class BadName(ValidationError):
    pass


class NotDeterministic(PdaError):
    pass


class NotStateless(PdaError):
    pass


class Transition(NamedTuple):
    """One element of the transition relation.

    ``input`` is ``None`` for an epsilon move.  ``push`` replaces the top
    symbol and is written bottom-to-top.
    """
    state: str
    top: str
    input: Optional[str]
    target: str
    push: tuple[str, ...]

    @property
    def key(self) -> tuple[str, str, Optional[str]]:
        return (self.state, self.top, self.input)


def check_name(name, what="symbol"):
    if not isinstance(name, str) or not name:
        raise BadName(f"{what} name must be a non-empty string, got {name!r}")
    if name == EPS:
        raise BadName(f"{EPS!r} is reserved and cannot name a {what}")
    if not name.isprintable() or any(ch.isspace() for ch in name):
        raise BadName(f"{what} name {name!r} contains whitespace or unprintable characters")
    if "#" in name or name == "->" or name.endswith(":"):
        raise BadName(f"{what} name {name!r} clashes with the file syntax")


def _unique(names, what):
    names = tuple(names)
    for name in names:
        check_name(name, what)
    seen = set()
    for name in names:
        if name in seen:
            raise BadName(f"duplicate {what} {name!r}")
        seen.add(name)
    return names


@dataclass(frozen=True)
class Pda:
    """A pushdown automaton ``(Q, Σ, Γ, δ, q0, α, F)``.

    Alphabets and the state set keep their declaration order, which the
    file format reproduces.  ``transitions`` is a set of ``Transition``;
    several entries may share a key for nondeterministic machines.
    Construction validates the machine, so every instance is well-formed.
    """
    states: tuple[str, ...]
    input_alphabet: tuple[str, ...]
    pushdown_alphabet: tuple[str, ...]
    transitions: frozenset[Transition]
    initial_state: str
    initial_pushdown: tuple[str, ...]
    final_states: frozenset[str] = field(default=frozenset())

    def __post_init__(self):
        set_ = object.__setattr__
        set_(self, "states", _unique(self.states, "state"))
        set_(self, "input_alphabet", _unique(self.input_alphabet, "input symbol"))
        set_(self, "pushdown_alphabet", _unique(self.pushdown_alphabet, "pushdown symbol"))
        set_(self, "initial_pushdown", tuple(self.initial_pushdown))
        set_(self, "final_states", frozenset(self.final_states))
        set_(self, "transitions", frozenset(
            Transition(t[0], t[1], t[2], t[3], tuple(t[4])) for t in self.transitions))
        self._check()

    def _check(self):
        if not self.states:
            raise ValidationError("the state set is empty")
        if not self.input_alphabet:
            raise EmptyAlphabet("the input alphabet is empty")
        if not self.pushdown_alphabet:
            raise EmptyAlphabet("the pushdown alphabet is empty")
        states = set(self.states)
        gamma = set(self.pushdown_alphabet)
        sigma = set(self.input_alphabet)
        if self.initial_state not in states:
            raise BadInitial(f"initial state {self.initial_state!r} is not a state")
        if not self.initial_pushdown:
            raise BadInitial("the initial pushdown string must be non-empty")
        for sym in self.initial_pushdown:
            if sym not in gamma:
                raise BadInitial(f"initial pushdown symbol {sym!r} is not in the pushdown alphabet")
        for q in self.final_states:
            if q not in states:
                raise BadFinal(f"final state {q!r} is not a state")
        for t in self.transitions:
            if t.state not in states or t.target not in states:
                bad = t.state if t.state not in states else t.target
                raise UnknownState(f"transition {format_transition(t)} uses unknown state {bad!r}")
            if t.top not in gamma:
                raise UnknownSymbol(
                    f"transition {format_transition(t)}: {t.top!r} is not a pushdown symbol")
            if t.input is not None and t.input not in sigma:
                raise UnknownSymbol(
                    f"transition {format_transition(t)}: {t.input!r} is not an input symbol")
            for sym in t.push:
                if sym not in gamma:
                    raise UnknownSymbol(
                        f"transition {format_transition(t)}: pushes unknown symbol {sym!r}")

    @cached_property
    def delta(self) -> Mapping[tuple, tuple[tuple[str, tuple[str, ...]], ...]]:
        """Key ``(state, top, input-or-None)`` to its sorted targets."""
        table = defaultdict(list)
        for t in self.transitions:
            table[t.key].append((t.target, t.push))
        return {k: tuple(sorted(v)) for k, v in table.items()}

    @property
    def is_stateless(self) -> bool:
        return len(self.states) == 1

    @property
    def max_push_length(self) -> int:
        return max((len(t.push) for t in self.transitions), default=0)

    def to_dict(self) -> dict:
        """Plain description accepted by ``validate``."""
        return {
            "states": list(self.states),
            "input": list(self.input_alphabet),
            "stack": list(self.pushdown_alphabet),
            "initial": self.initial_state,
            "start_stack": list(self.initial_pushdown),
            "final": sorted(self.final_states),
            "transitions": [
                [t.state, t.top, t.input, t.target, list(t.push)]
                for t in sorted(self.transitions, key=_transition_order)
            ],
        }


def _transition_order(t: Transition):
    return (t.state, t.top, "" if t.input is None else t.input, t.target, t.push)


def format_transition(t: Transition) -> str:
    inp = "ε" if t.input is None else t.input
    push = " ".join(t.push) if t.push else "ε"
    return f"δ({t.state}, {t.top}, {inp}) -> ({t.target}, {push})"


def validate(raw: Mapping) -> Pda:
    """Build a ``Pda`` from a plain mapping, enforcing every invariant.

    Keys: ``input``, ``stack``, ``start_stack``, ``transitions`` and
    optionally ``states``, ``initial`` and ``final``.  Without ``states``
    the machine is stateless: one implicit state, which is final.  Each
    transition is ``(state, top, input, target, push)`` with ``None`` for
    an epsilon input, or ``(top, input, push)`` for a stateless machine.
    """
    if "states" in raw and raw["states"] is not None:
        states = tuple(raw["states"])
        initial = raw.get("initial")
        if initial is None:
            raise BadInitial("no initial state given")
        final = raw.get("final", ())
        stateless = False
    else:
        states = (STATELESS_STATE,)
        initial = STATELESS_STATE
        final = raw.get("final", states)
        stateless = True

    transitions = []
    for entry in raw.get("transitions", ()):
        entry = tuple(entry)
        if stateless and len(entry) == 3:
            top, inp, push = entry
            entry = (STATELESS_STATE, top, inp, STATELESS_STATE, push)
        if len(entry) != 5:
            raise ValidationError(f"malformed transition {entry!r}")
        state, top, inp, target, push = entry
        if inp == EPS:
            inp = None
        if isinstance(push, str):
            push = () if push == EPS else tuple(push.split())
        transitions.append(Transition(state, top, inp, target, tuple(push)))

    return Pda(
        states=states,
        input_alphabet=tuple(raw.get("input", ())),
        pushdown_alphabet=tuple(raw.get("stack", ())),
        transitions=frozenset(transitions),
        initial_state=initial,
        initial_pushdown=tuple(raw.get("start_stack", ())),
        final_states=frozenset(final),
    )


@dataclass(frozen=True)
class ClassReport:
    deterministic: bool
    realtime: bool
    stateless: bool
    pushdown_alphabet_size: int
    non_input_symbol_count: int
    violations: tuple[str, ...] = ()

    def to_text(self) -> str:
        lines = [
            f"deterministic: {str(self.deterministic).lower()}",
            f"realtime: {str(self.realtime).lower()}",
            f"stateless: {str(self.stateless).lower()}",
            f"pushdown_alphabet_size: {self.pushdown_alphabet_size}",
            f"non_input_symbol_count: {self.non_input_symbol_count}",
        ]
        if self.violations:
            lines.extend(f"violation: {v}" for v in self.violations)
        else:
            lines.append("violations: none")
        return "\n".join(lines) + "\n"


def _key_text(state, top, inp):
    return f"δ({state}, {top}, {'ε' if inp is None else inp})"


def determinism_violations(m: Pda) -> list[str]:
    violations = []
    for key in sorted(m.delta, key=lambda k: (k[0], k[1], "" if k[2] is None else k[2])):
        targets = m.delta[key]
        if len(targets) > 1:
            violations.append(f"{_key_text(*key)} has {len(targets)} targets")
    for key in sorted(k for k in m.delta if k[2] is None):
        state, top, _ = key
        clashing = [a for a in m.input_alphabet if (state, top, a) in m.delta]
        if clashing:
            others = ", ".join(_key_text(state, top, a) for a in clashing)
            violations.append(f"{_key_text(*key)} is defined together with {others}")
    return violations


def classify(m: Pda) -> ClassReport:
    violations = determinism_violations(m)
    deterministic = not violations
    has_eps = any(k[2] is None for k in m.delta)
    return ClassReport(
        deterministic=deterministic,
        realtime=deterministic and not has_eps,
        stateless=m.is_stateless,
        pushdown_alphabet_size=len(m.pushdown_alphabet),
        non_input_symbol_count=len(m.pushdown_alphabet) - len(m.input_alphabet),
        violations=tuple(violations),
    )


def is_deterministic(m: Pda) -> bool:
    return not determinism_violations(m)


def is_n_limited(m: Pda, n: int) -> bool:
    """True when the pushdown alphabet has at most ``n`` symbols."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return len(m.pushdown_alphabet) <= n


def stateless_pda(input_alphabet: Iterable[str], pushdown_alphabet: Iterable[str],
                  rules: Iterable[tuple], initial_pushdown: Iterable[str]) -> Pda:
    """Stateless machine from ``(top, input, push)`` rules; ``input=None`` is ε."""
    return Pda(
        states=(STATELESS_STATE,),
        input_alphabet=tuple(input_alphabet),
        pushdown_alphabet=tuple(pushdown_alphabet),
        transitions=frozenset(
            Transition(STATELESS_STATE, top, inp, STATELESS_STATE, tuple(push))
            for top, inp, push in rules),
        initial_state=STATELESS_STATE,
        initial_pushdown=tuple(initial_pushdown),
        final_states=frozenset({STATELESS_STATE}),
    )
