"""Seeded random LTL formulas for property tests and demos."""
from __future__ import annotations

import random

from .ast import (
    Ap,
    And,
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
)

_UNARY = (Not, Next, Finally, Globally)
_BINARY = (And, Or, Implies, Equiv, Until, Release)


def random_formula(rng: random.Random, aps=("a", "b", "c"), max_depth=4, constants=True) -> Formula:
    """Any formula of depth at most ``max_depth`` over ``aps``."""
    if max_depth <= 1 or rng.random() < 0.3:
        if constants and rng.random() < 0.1:
            return rng.choice((Top(), Bottom()))
        return Ap(rng.choice(aps))
    if rng.random() < 0.4:
        return rng.choice(_UNARY)(random_formula(rng, aps, max_depth - 1, constants))
    op = rng.choice(_BINARY)
    return op(random_formula(rng, aps, max_depth - 1, constants),
              random_formula(rng, aps, max_depth - 1, constants))


def random_admissible(rng: random.Random, aps=("a", "b", "c", "d", "e"), max_depth=5) -> Formula:
    """A formula the controlled-English grammar can verbalise.

    Negation occurs only directly on atomic propositions and there are no
    boolean constants.
    """
    if max_depth <= 1 or rng.random() < 0.25:
        f = Ap(rng.choice(aps))
        return Not(f) if rng.random() < 0.3 else f
    if rng.random() < 0.4:
        op = rng.choice((Next, Finally, Globally))
        return op(random_admissible(rng, aps, max_depth - 1))
    op = rng.choice(_BINARY)
    return op(random_admissible(rng, aps, max_depth - 1), random_admissible(rng, aps, max_depth - 1))
