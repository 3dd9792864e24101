"""The ``.pda`` text format.

One declaration per line, ``#`` starts a comment::

    states: q0 q1          # omit for a stateless machine
    input: a b
    stack: X0 X1
    initial: q0            # omitted when stateless
    start-stack: X0 X0     # bottom ... top, TOP IS RIGHTMOST
    final: q1              # omitted when stateless (the sole state is final)
    trans: q0 X0 b -> q0 X1
    trans: q0 X1 a -> q1 eps

Push strings are also written bottom-to-top with the top rightmost, and
``eps`` stands for the empty input (ε-move) or the empty push string.  In
the stateless form a transition drops both states: ``trans: X0 b -> X1``.
"""
from __future__ import annotations

from .core import EPS, STATELESS_STATE, Pda, PdaError, validate

HEADERS = ("states", "input", "stack", "initial", "start-stack", "final")


class ParseError(PdaError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse(text: str) -> Pda:
    headers = {}
    trans = []
    for lineno, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected 'keyword: ...', got {line!r}", lineno)
        tokens = rest.split()
        if key == "trans":
            trans.append((lineno, tokens))
        elif key in HEADERS:
            if key in headers:
                raise ParseError(f"duplicate '{key}:' declaration", lineno)
            headers[key] = (lineno, tokens)
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno)

    stateless = "states" not in headers
    if stateless:
        for key in ("initial", "final"):
            if key in headers:
                raise ParseError(f"'{key}:' needs a 'states:' declaration", headers[key][0])
    for key in ("input", "stack", "start-stack"):
        if key not in headers:
            raise ParseError(f"missing '{key}:' declaration")

    transitions = []
    for lineno, tokens in trans:
        if "->" not in tokens:
            raise ParseError("transition needs '->'", lineno)
        arrow = tokens.index("->")
        lhs, rhs = tokens[:arrow], tokens[arrow + 1:]
        if stateless:
            if len(lhs) != 2 or not rhs:
                raise ParseError("stateless transition is 'TOP INPUT -> PUSH...'", lineno)
            state, (top, inp), target, push = STATELESS_STATE, lhs, STATELESS_STATE, rhs
        else:
            if len(lhs) != 3 or len(rhs) < 2:
                raise ParseError("transition is 'STATE TOP INPUT -> STATE PUSH...'", lineno)
            (state, top, inp), target, push = lhs, rhs[0], rhs[1:]
        if push == [EPS]:
            push = []
        elif EPS in push:
            raise ParseError(f"'{EPS}' must stand alone as the empty push string", lineno)
        transitions.append((state, top, None if inp == EPS else inp, target, tuple(push)))

    raw = {
        "input": headers["input"][1],
        "stack": headers["stack"][1],
        "start_stack": headers["start-stack"][1],
        "transitions": transitions,
    }
    if not stateless:
        raw["states"] = headers["states"][1]
        if "initial" not in headers:
            raise ParseError("missing 'initial:' declaration")
        initial = headers["initial"][1]
        if len(initial) != 1:
            raise ParseError("'initial:' takes exactly one state", headers["initial"][0])
        raw["initial"] = initial[0]
        raw["final"] = headers.get("final", (None, []))[1]
    return validate(raw)


def _uses_shorthand(m: Pda) -> bool:
    return m.states == (STATELESS_STATE,) and m.final_states == {STATELESS_STATE}


def serialize(m: Pda) -> str:
    """Canonical text: fixed header order, transitions sorted by (state, top, input)."""
    short = _uses_shorthand(m)
    lines = []
    if not short:
        lines.append("states: " + " ".join(m.states))
    lines.append("input: " + " ".join(m.input_alphabet))
    lines.append("stack: " + " ".join(m.pushdown_alphabet))
    if not short:
        lines.append(f"initial: {m.initial_state}")
    lines.append("start-stack: " + " ".join(m.initial_pushdown))
    if not short:
        finals = [q for q in m.states if q in m.final_states]
        lines.append(("final: " + " ".join(finals)).rstrip())
    order = lambda t: (t.state, t.top, "" if t.input is None else t.input, t.target, t.push)
    for t in sorted(m.transitions, key=order):
        inp = EPS if t.input is None else t.input
        push = " ".join(t.push) if t.push else EPS
        if short:
            lines.append(f"trans: {t.top} {inp} -> {push}")
        else:
            lines.append(f"trans: {t.state} {t.top} {inp} -> {t.target} {push}")
    return "\n".join(lines) + "\n"
