"""Witness languages and the automata that accept them.

``b^k a`` families separate pushdown-alphabet sizes over the binary
alphabet {a, b}; the unary family ``{a^c}`` covers the single-symbol level.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .core import PdaError, Pda, Transition, stateless_pda

SIGMA = ("a", "b")


class BadSpec(PdaError):
    pass


class Family(enum.Enum):
    STATELESS = "stateless"    # L_n, n >= 2
    MSTATE = "mstate"          # L_{m,n}, m >= 1, n >= 2
    EXAMPLE = "example"        # two-state ε-machine for L_{m,n}
    UNARY = "unary"            # {a^c}
    NONINPUT = "noninput"      # K_n = L_{n+2}, n >= 0


@dataclass(frozen=True)
class WitnessSpec:
    family: Family
    n: Optional[int] = None
    m: Optional[int] = None
    c: Optional[int] = None

    def __post_init__(self):
        fam = Family(self.family)
        object.__setattr__(self, "family", fam)
        if fam is Family.UNARY:
            if self.c is None or self.c < 0:
                raise BadSpec("the unary family needs c >= 0")
            return
        if self.n is None:
            raise BadSpec(f"the {fam.value} family needs n")
        if fam is Family.NONINPUT:
            if self.n < 0:
                raise BadSpec("the noninput family needs n >= 0")
        elif self.n < 2:
            raise BadSpec(f"the {fam.value} family needs n >= 2 (use the unary family for n = 1)")
        if fam in (Family.MSTATE, Family.EXAMPLE) and (self.m is None or self.m < 1):
            raise BadSpec(f"the {fam.value} family needs m >= 1")


def _b_then_a(max_b: int) -> frozenset[str]:
    return frozenset("b" * k + "a" for k in range(1, max_b + 1))


def witness_language(spec: WitnessSpec) -> frozenset[str]:
    fam = spec.family
    if fam is Family.STATELESS:
        return _b_then_a(spec.n - 1)
    if fam in (Family.MSTATE, Family.EXAMPLE):
        return _b_then_a(spec.m * spec.n - 1)
    if fam is Family.UNARY:
        return frozenset({"a" * spec.c})
    return _b_then_a(spec.n + 1)


def build_stateless(n: int) -> Pda:
    """One state, symbols X0..X{n-1}: each ``b`` climbs one symbol, ``a`` pops."""
    if n < 2:
        raise BadSpec("build_stateless needs n >= 2; use build_unary for n = 1")
    gamma = tuple(f"X{i}" for i in range(n))
    rules = [(gamma[i], "b", (gamma[i + 1],)) for i in range(n - 1)]
    rules += [(gamma[i], "a", ()) for i in range(1, n)]
    return stateless_pda(SIGMA, gamma, rules, (gamma[0],))


def build_unary(c: int) -> Pda:
    """Accepts exactly ``a^c``.

    For ``c = 0`` the initial string cannot be ``a^0``, so the machine
    starts from a single ``E`` that pops itself by an ε-move.
    """
    if c < 0:
        raise BadSpec("c must be non-negative")
    if c == 0:
        return stateless_pda(("a",), ("E",), [("E", None, ())], ("E",))
    return stateless_pda(("a",), ("a",), [("a", "a", ())], ("a",) * c)


def build_mstate(m: int, n: int) -> Pda:
    """Realtime machine with states q0..q{m-1} and n pushdown symbols.

    States and the single stack symbol together count up to ``mn - 1``
    b's; any ``a`` read after at least one ``b`` pops into the final state.
    """
    if m < 1 or n < 2:
        raise BadSpec("build_mstate needs m >= 1 and n >= 2")
    q = [f"q{j}" for j in range(m)]
    x = [f"X{i}" for i in range(n)]
    last = q[m - 1]
    rules = []
    for j in range(m):
        for i in range(n - 1):
            rules.append((q[j], x[i], "b", q[j], (x[i + 1],)))
    for j in range(m - 1):
        rules.append((q[j], x[n - 1], "b", q[j + 1], (x[0],)))
    for i in range(1, n):
        rules.append((q[0], x[i], "a", last, ()))
    for j in range(1, m):
        for i in range(n):
            rules.append((q[j], x[i], "a", last, ()))
    return Pda(
        states=tuple(q),
        input_alphabet=SIGMA,
        pushdown_alphabet=tuple(x),
        transitions=frozenset(Transition(*r) for r in rules),
        initial_state=q[0],
        initial_pushdown=(x[0],),
        final_states=frozenset({last}),
    )


def build_example(m: int, n: int) -> Pda:
    """Two states, two symbols, one ε-rule: accepts ``{b^k a | 1 ≤ k ≤ mn-1}``.

    The first ``b`` pushes ``B^(mn-1)``; every further ``b`` pops one ``B``;
    ``a`` pops one more and moves to ``f``, where the rest is ε-popped.
    """
    if m < 1 or n < 1 or m * n < 2:
        raise BadSpec("build_example needs m, n >= 1 and mn >= 2")
    rules = [
        ("f", "Z", "b", "q", ("B",) * (m * n - 1)),
        ("q", "B", "b", "q", ()),
        ("q", "B", "a", "f", ()),
        ("f", "B", None, "f", ()),
    ]
    return Pda(
        states=("f", "q"),
        input_alphabet=SIGMA,
        pushdown_alphabet=("Z", "B"),
        transitions=frozenset(Transition(*r) for r in rules),
        initial_state="f",
        initial_pushdown=("Z",),
        final_states=frozenset({"f"}),
    )


def build_noninput(n: int) -> Pda:
    """Acceptor of ``K_n = L_{n+2}``; it has exactly ``n`` non-input symbols."""
    if n < 0:
        raise BadSpec("n must be non-negative")
    return build_stateless(n + 2)


def build(spec: WitnessSpec) -> Pda:
    fam = spec.family
    if fam is Family.STATELESS:
        return build_stateless(spec.n)
    if fam is Family.MSTATE:
        return build_mstate(spec.m, spec.n)
    if fam is Family.EXAMPLE:
        return build_example(spec.m, spec.n)
    if fam is Family.UNARY:
        return build_unary(spec.c)
    return build_noninput(spec.n)
