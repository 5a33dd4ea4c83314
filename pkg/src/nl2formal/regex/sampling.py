"""Seeded random regex trees, used by the property tests and demos."""
from __future__ import annotations

import random

from . import ast as R

DEFAULT_LITERALS = ("a", "b", "ab", "dog")
DEFAULT_CLASSES = ("0-9", "A-Z", "a-z", "AEIOUaeiou")


def random_regex(rng: random.Random, max_depth=5, literals=DEFAULT_LITERALS,
                 classes=DEFAULT_CLASSES, boundaries=True, max_repeat=3) -> R.Regex:
    """Draw a tree of depth at most ``max_depth`` covering every node kind."""
    if max_depth <= 1 or rng.random() < 0.25:
        r = rng.random()
        if r < 0.45:
            return R.Literal(rng.choice(literals))
        if r < 0.8:
            return R.CharClass.of(rng.choice(classes))
        return R.AnyChar()

    def sub():
        return random_regex(rng, max_depth - 1, literals, classes, boundaries, max_repeat)

    kinds = ["concat", "or", "and", "not", "star", "plus", "atleast", "atmost",
             "contains", "starts", "ends", "followed"]
    if boundaries:
        kinds.append("wb")
    kind = rng.choice(kinds)
    if kind == "concat":
        return R.Concat(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == "or":
        return R.Or(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == "and":
        return R.And(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == "not":
        return R.Not(sub())
    if kind == "star":
        return R.Star(sub())
    if kind == "plus":
        return R.Plus(sub())
    if kind == "atleast":
        return R.RepeatAtLeast(sub(), rng.randint(0, max_repeat))
    if kind == "atmost":
        return R.RepeatAtMost(sub(), rng.randint(1, max_repeat))
    if kind == "contains":
        return R.Contains(sub())
    if kind == "starts":
        return R.StartsWith(sub())
    if kind == "ends":
        return R.EndsWith(sub())
    if kind == "followed":
        return R.FollowedBy(sub(), sub())
    return R.WordBounded(sub())
