"""Linear temporal logic: syntax, trace semantics and decision procedures."""
from .ast import (
    And,
    Ap,
    Bottom,
    Equiv,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    Release,
    Top,
    Until,
    aps,
    conjoin,
)
from .parser import parse_ltl, print_ltl, to_compact
from .semantics import Trace, enumerate_traces, eval_batch, eval_trace, to_nnf
from .tableau import EquivResult, SatResult, is_satisfiable, ltl_equivalent

UltimatelyPeriodicTrace = Trace

__all__ = [
    "And", "Ap", "Bottom", "Equiv", "Finally", "Formula", "Globally", "Implies",
    "Next", "Not", "Or", "Release", "Top", "Until", "aps", "conjoin",
    "parse_ltl", "print_ltl", "to_compact",
    "Trace", "UltimatelyPeriodicTrace", "enumerate_traces", "eval_batch", "eval_trace", "to_nnf",
    "EquivResult", "SatResult", "is_satisfiable", "ltl_equivalent",
]
