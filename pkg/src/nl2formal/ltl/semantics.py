"""Ultimately periodic traces, trace evaluation and negation normal form."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..errors import MissingApError
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
    aps as formula_aps,
)


@dataclass(frozen=True)
class Trace:
    """The infinite word ``prefix . period^omega``.

    ``prefix`` and ``period`` are tuples of steps; each step is a tuple of
    booleans aligned with ``aps``.
    """

    aps: tuple
    prefix: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be non-empty")
        for step in self.prefix + self.period:
            if len(step) != len(self.aps):
                raise ValueError("every step must assign every ap")

    @classmethod
    def from_dicts(cls, prefix, period, aps=None):
        """Build from lists of ``{ap: bool}`` dicts; ``aps`` defaults to all keys."""
        steps = list(prefix) + list(period)
        if aps is None:
            aps = sorted({k for s in steps for k in s})
        aps = tuple(aps)
        for s in steps:
            missing = set(aps) - set(s)
            if missing:
                raise ValueError(f"assignment misses {sorted(missing)}")

        def conv(s):
            return tuple(bool(s[a]) for a in aps)

        return cls(aps, tuple(conv(s) for s in prefix), tuple(conv(s) for s in period))

    def steps_as_dicts(self):
        def conv(s):
            return {a: v for a, v in zip(self.aps, s)}

        return [conv(s) for s in self.prefix], [conv(s) for s in self.period]

    def value(self, ap, i):
        """Truth of ``ap`` at position ``i`` of the infinite word."""
        k = self.aps.index(ap)
        if i < len(self.prefix):
            return self.prefix[i][k]
        return self.period[(i - len(self.prefix)) % len(self.period)][k]

    def __str__(self):
        def show(steps):
            return " ".join("{" + ",".join(a for a, v in zip(self.aps, s) if v) + "}" for s in steps)

        pre = show(self.prefix)
        return (pre + " " if pre else "") + "(" + show(self.period) + ")^w"


def eval_batch(f: Formula, aps, values, prefix_len: int) -> np.ndarray:
    """Evaluate ``f`` on a batch of lassos sharing one shape.

    ``values`` has shape ``(batch, prefix_len + period_len, len(aps))``;
    returns a boolean vector, the verdict at position 0 of each trace.
    """
    values = np.asarray(values, dtype=bool)
    b, n, _ = values.shape
    if n <= prefix_len:
        raise ValueError("period must be non-empty")
    index = {a: k for k, a in enumerate(aps)}
    missing = formula_aps(f) - set(index)
    if missing:
        raise MissingApError(f"trace does not assign {sorted(missing)}")
    succ = np.arange(1, n + 1)
    succ[-1] = prefix_len
    memo = {}

    def until(phi, psi):
        # least fixpoint of  psi | (phi & X r)
        r = psi.copy()
        while True:
            r2 = psi | (phi & r[:, succ])
            if np.array_equal(r2, r):
                return r
            r = r2

    def release(phi, psi):
        # greatest fixpoint of  psi & (phi | X r)
        r = psi.copy()
        while True:
            r2 = psi & (phi | r[:, succ])
            if np.array_equal(r2, r):
                return r
            r = r2

    def ev(g):
        hit = memo.get(g)
        if hit is not None:
            return hit
        if isinstance(g, Ap):
            out = values[:, :, index[g.name]]
        elif isinstance(g, Top):
            out = np.ones((b, n), dtype=bool)
        elif isinstance(g, Bottom):
            out = np.zeros((b, n), dtype=bool)
        elif isinstance(g, Not):
            out = ~ev(g.child)
        elif isinstance(g, And):
            out = ev(g.left) & ev(g.right)
        elif isinstance(g, Or):
            out = ev(g.left) | ev(g.right)
        elif isinstance(g, Implies):
            out = ~ev(g.left) | ev(g.right)
        elif isinstance(g, Equiv):
            out = ev(g.left) == ev(g.right)
        elif isinstance(g, Next):
            out = ev(g.child)[:, succ]
        elif isinstance(g, Until):
            out = until(ev(g.left), ev(g.right))
        elif isinstance(g, Release):
            out = release(ev(g.left), ev(g.right))
        elif isinstance(g, Finally):
            out = until(np.ones((b, n), dtype=bool), ev(g.child))
        elif isinstance(g, Globally):
            out = release(np.zeros((b, n), dtype=bool), ev(g.child))
        else:
            raise TypeError(f"not an LTL formula: {g!r}")
        memo[g] = out
        return out

    return ev(f)[:, 0].copy()


def eval_trace(f: Formula, t: Trace) -> bool:
    """Whether the infinite word of ``t`` satisfies ``f`` at position 0."""
    steps = np.array(t.prefix + t.period, dtype=bool).reshape(1, len(t.prefix) + len(t.period), len(t.aps))
    return bool(eval_batch(f, t.aps, steps, len(t.prefix))[0])


def _primitive(word):
    n = len(word)
    return all(word != word[d:] + word[:d] for d in range(1, n) if n % d == 0)


def lasso_shapes(max_prefix, max_period, max_length=None):
    for p in range(max_prefix + 1):
        for q in range(1, max_period + 1):
            if max_length is None or p + q <= max_length:
                yield p, q


def trace_batches(aps, max_prefix, max_period, max_length=None):
    """Yield ``(prefix_len, values)`` blocks covering :func:`enumerate_traces`."""
    aps = tuple(aps)
    letters = list(itertools.product((False, True), repeat=len(aps)))
    for p, q in lasso_shapes(max_prefix, max_period, max_length):
        rows = []
        for period in itertools.product(letters, repeat=q):
            if not _primitive(period):
                continue
            for prefix in itertools.product(letters, repeat=p):
                if p and prefix[-1] == period[-1]:
                    continue
                rows.append(prefix + period)
        if rows:
            yield p, np.array(rows, dtype=bool).reshape(len(rows), p + q, len(aps))


def enumerate_traces(aps, max_prefix: int, max_period: int, max_length=None):
    """Every infinite word with a lasso of at most the given sizes, once each.

    Each word is produced in its canonical form: the period is primitive and
    the prefix cannot be shortened by rotating the period.
    """
    aps = tuple(aps)
    for p, block in trace_batches(aps, max_prefix, max_period, max_length):
        for row in block:
            steps = tuple(tuple(bool(v) for v in s) for s in row)
            yield Trace(aps, steps[:p], steps[p:])


def to_nnf(f: Formula) -> Formula:
    """Equivalent formula over ``X U R & | ! true false`` with ``!`` only on aps."""
    return _nnf(f, False)


def _nnf(f, neg):
    if isinstance(f, Ap):
        return Not(f) if neg else f
    if isinstance(f, Top):
        return Bottom() if neg else f
    if isinstance(f, Bottom):
        return Top() if neg else f
    if isinstance(f, Not):
        return _nnf(f.child, not neg)
    if isinstance(f, And):
        op = Or if neg else And
        return op(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, Or):
        op = And if neg else Or
        return op(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, Implies):
        return _nnf(Or(Not(f.left), f.right), neg)
    if isinstance(f, Equiv):
        both = And(f.left, f.right)
        neither = And(Not(f.left), Not(f.right))
        return _nnf(Or(both, neither), neg)
    if isinstance(f, Next):
        return Next(_nnf(f.child, neg))
    if isinstance(f, Until):
        op = Release if neg else Until
        return op(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, Release):
        op = Until if neg else Release
        return op(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, Finally):
        return _nnf(Until(Top(), f.child), neg)
    if isinstance(f, Globally):
        return _nnf(Release(Bottom(), f.child), neg)
    raise TypeError(f"not an LTL formula: {f!r}")
