"""Direct regex matching by span sets.

For a string ``s`` of length ``n`` every node denotes the set of spans
``(i, j)`` such that the node matches ``s[i:j]`` in the context of the whole
string.  Row ``i`` of a span set is stored as an integer bitmask over ``j``.
Concatenation is relational composition, star a reflexive-transitive
closure and complement flips the upper triangle.  Nothing here touches the
automata code, so it serves as an independent check on :func:`compile_dfa`.

Span sets carry a leading batch axis, so all strings of one length are
matched in a single pass.
"""
from __future__ import annotations

from collections import defaultdict

import numpy as np

from . import ast as R

_WORD = np.zeros(128, dtype=bool)
for _c in R.WORD_CHARS:
    _WORD[ord(_c)] = True


def _class_table(chars):
    t = np.zeros(128, dtype=bool)
    for c in chars:
        t[ord(c)] = True
    return t


def _row_dtype(width):
    for dt in (np.uint8, np.uint16, np.uint32, np.uint64):
        if width <= np.iinfo(dt).bits:
            return np.dtype(dt)
    return np.dtype(object)  # python ints, any width


class _Ctx:
    def __init__(self, codes):
        self.codes = codes
        b, n = codes.shape
        self.b, self.n = b, n
        self.dt = _row_dtype(n + 1)
        bits = [1 << i for i in range(n + 1)]
        self.bit = np.array(bits, dtype=self.dt)
        full = (1 << (n + 1)) - 1
        upper = np.array([full & ~((1 << i) - 1) for i in range(n + 1)], dtype=self.dt)
        self.eye = np.broadcast_to(self.bit, (b, n + 1))
        self.upper = np.broadcast_to(upper, (b, n + 1))
        w = _WORD[codes]
        pad = np.zeros((b, 1), dtype=bool)
        # boundary at position k: word status differs on either side
        bnd = np.concatenate([pad, w], axis=1) != np.concatenate([w, pad], axis=1)
        self.boundary_rows = bnd
        cols = np.zeros(b, dtype=self.dt)
        for k in range(n + 1):
            cols = cols | (bnd[:, k].astype(self.dt) * self.bit[k])
        self.boundary_cols = cols[:, None]

    def zeros(self):
        return np.zeros((self.b, self.n + 1), dtype=self.dt)

    def single(self, ok, length=1):
        """Spans ``(i, i+length)`` for the starts ``i`` where ``ok[:, i]``."""
        m = self.zeros()
        for i in range(ok.shape[1]):
            m[:, i] = ok[:, i].astype(self.dt) * self.bit[i + length]
        return m

    def mm(self, a, b):
        """Relational composition of two span sets."""
        out = self.zeros()
        for j in range(self.n + 1):
            out |= ((a >> j) & 1) * b[:, j : j + 1]
        return out

    def star(self, m):
        r = self.eye | m
        while True:
            r2 = self.mm(r, r)
            if np.array_equal(r2, r):
                return r
            r = r2

    def plus(self, m):
        return self.mm(m, self.star(m))

    def power(self, m, k):
        r = np.array(self.eye)
        for _ in range(k):
            r = self.mm(r, m)
        return r


def _spans(node, ctx):
    if isinstance(node, R.Literal):
        L = len(node.text)
        target = np.array([ord(c) for c in node.text])
        ok = np.zeros((ctx.b, max(ctx.n - L + 1, 0)), dtype=bool)
        for i in range(ctx.n - L + 1):
            ok[:, i] = (ctx.codes[:, i : i + L] == target).all(axis=1)
        return ctx.single(ok, L)
    if isinstance(node, R.CharClass):
        return ctx.single(_class_table(node.chars())[ctx.codes])
    if isinstance(node, R.AnyChar):
        return ctx.single(np.ones((ctx.b, ctx.n), dtype=bool))
    if isinstance(node, R.Concat):
        out = _spans(node.items[0], ctx)
        for c in node.items[1:]:
            out = ctx.mm(out, _spans(c, ctx))
        return out
    if isinstance(node, R.Or):
        out = ctx.zeros()
        for c in node.items:
            out |= _spans(c, ctx)
        return out
    if isinstance(node, R.And):
        out = np.array(ctx.upper)
        for c in node.items:
            out &= _spans(c, ctx)
        return out
    if isinstance(node, R.Not):
        return ctx.upper & ~_spans(node.child, ctx)
    if isinstance(node, R.Star):
        return ctx.star(_spans(node.child, ctx))
    if isinstance(node, R.Plus):
        return ctx.plus(_spans(node.child, ctx))
    if isinstance(node, R.RepeatAtLeast):
        m = _spans(node.child, ctx)
        return ctx.mm(ctx.power(m, node.n), ctx.star(m))
    if isinstance(node, R.RepeatAtMost):
        m = _spans(node.child, ctx)
        out, acc = m, m
        for _ in range(node.n - 1):
            acc = ctx.mm(acc, m)
            out = out | acc
        return out
    if isinstance(node, R.WordBounded):
        m = _spans(node.child, ctx)
        m = np.where(ctx.boundary_rows, m, ctx.zeros())
        return m & ctx.boundary_cols
    anything = ctx.upper
    if isinstance(node, R.Contains):
        return ctx.mm(ctx.mm(anything, _spans(node.child, ctx)), anything)
    if isinstance(node, R.StartsWith):
        return ctx.mm(_spans(node.child, ctx), anything)
    if isinstance(node, R.EndsWith):
        return ctx.mm(anything, _spans(node.child, ctx))
    if isinstance(node, R.FollowedBy):
        first = ctx.mm(ctx.mm(anything, _spans(node.first, ctx)), anything)
        return ctx.mm(first, _spans(node.second, ctx))
    raise TypeError(f"not a regex node: {node!r}")


def match_codes(node, codes) -> np.ndarray:
    """Full-match verdicts for a ``(batch, length)`` array of ASCII codes."""
    codes = np.asarray(codes, dtype=np.int64)
    if codes.ndim != 2:
        raise ValueError("codes must be two-dimensional")
    if codes.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    ctx = _Ctx(codes)
    top = _spans(node, ctx)[:, 0]
    return ((top >> ctx.n) & 1).astype(bool)


def regex_matches(node, s: str) -> bool:
    """Whether ``node`` matches all of ``s``."""
    if any(c not in R.UNIVERSE for c in s):
        return False
    codes = np.array([[ord(c) for c in s]], dtype=np.int64).reshape(1, len(s))
    return bool(match_codes(node, codes)[0])


def regex_matches_many(node, strings) -> list:
    """Vectorised :func:`regex_matches`, grouping strings by length."""
    strings = list(strings)
    out = [False] * len(strings)
    by_len = defaultdict(list)
    for i, s in enumerate(strings):
        if all(c in R.UNIVERSE for c in s):
            by_len[len(s)].append(i)
    for n, idx in by_len.items():
        codes = np.array([[ord(c) for c in strings[i]] for i in idx], dtype=np.int64).reshape(len(idx), n)
        for i, v in zip(idx, match_codes(node, codes)):
            out[i] = bool(v)
    return out
