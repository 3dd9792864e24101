"""Pushdown automata with limited pushdown alphabets.

Restricted machine classes (deterministic, realtime, stateless), ε-move
elimination for stateless deterministic machines, the b^k a witness
families, and a bounded exhaustive search for small acceptors.
"""
from .core import (
    EPS, ClassReport, Pda, PdaError, Transition, classify, is_n_limited, validate,
)
from .fileformat import parse, serialize
from .search import (
    SearchBounds, SearchReport, certify_lower_bound, certify_mstate_lower_bound,
    enumerate_machines, min_pushdown_alphabet, search_acceptors,
)
from .simulator import (
    Configuration, LanguageSample, RunOutcome, Verdict, accepts_exactly,
    enumerate_language, find_counterexample, prefix_free, prefix_pair, run, step,
)
from .transforms import EpsilonLanguage, TransformLog, to_realtime
from .witnesses import (
    Family, WitnessSpec, build_example, build_mstate, build_stateless, build_unary,
    witness_language,
)

__version__ = "0.1.0"
