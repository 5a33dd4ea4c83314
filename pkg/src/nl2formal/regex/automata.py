"""Deterministic automata for the regex dialect.

Characters are grouped into minterm classes so that transition tables stay
small.  Every DFA built here is total, starts in state 0 and is kept
minimal with states numbered in breadth-first order, which makes two
automata for the same language identical arrays.

Word boundaries are handled by interleaving the input with boundary markers:
the string ``c1..cn`` is read as ``m0 c1 m1 .. cn mn`` where ``mk`` records
whether the characters left and right of position ``k`` are word characters.
A submatch of ``ci+1..cj`` then sees ``mi .. mj`` and carries its own
context, so complement and intersection stay purely language-level, and
concatenation fuses the shared marker.  Marker mode is only switched on
when some input uses ``\\b``.
"""
from __future__ import annotations

import time
from collections import deque

import numpy as np

from ..errors import CapacityError, EquivalenceTimeout
from . import ast as R

DEFAULT_MAX_STATES = 200_000


class SymbolicAlphabet:
    """Partition of printable ASCII into minterm classes.

    Symbols ``0..n_classes-1`` are the classes; in boundary mode four marker
    symbols follow, marker ``n_classes + 2*prev + next``.
    """

    def __init__(self, classes, boundaries=False):
        classes = [frozenset(c) for c in classes]
        seen = set()
        for c in classes:
            if not c or seen & c:
                raise ValueError("minterm classes must be non-empty and disjoint")
            seen |= c
        if seen != set(R.UNIVERSE):
            raise ValueError("minterm classes must cover the universe")
        classes.sort(key=min)
        self.classes = tuple(classes)
        self.boundaries = bool(boundaries)
        self.representatives = tuple(min(c) for c in classes)
        self.index = np.full(128, -1, dtype=np.int64)
        for i, c in enumerate(classes):
            for ch in c:
                self.index[ord(ch)] = i
        self.is_word = np.array([c <= R.WORD_CHARS for c in classes])
        if self.boundaries and any(c & R.WORD_CHARS and not c <= R.WORD_CHARS for c in classes):
            raise ValueError("boundary mode needs word and non-word characters in separate classes")

    @classmethod
    def from_sets(cls, sets, boundaries=False):
        sets = sorted({frozenset(s) for s in sets}, key=lambda s: sorted(s))
        if boundaries:
            sets.append(R.WORD_CHARS)
        groups = {}
        for ch in R.UNIVERSE:
            groups.setdefault(tuple(ch in s for s in sets), set()).add(ch)
        return cls(groups.values(), boundaries)

    @classmethod
    def for_asts(cls, *asts):
        """The coarsest alphabet that refines every class used in ``asts``."""
        sets = set()
        for a in asts:
            sets |= R.char_sets(a)
        return cls.from_sets(sets, boundaries=any(R.uses_word_boundary(a) for a in asts))

    @property
    def n_classes(self):
        return len(self.classes)

    @property
    def n_symbols(self):
        return self.n_classes + (4 if self.boundaries else 0)

    def marker(self, prev_word, next_word):
        return self.n_classes + 2 * int(prev_word) + int(next_word)

    def refines(self, chars) -> bool:
        return all(c <= chars or not (c & chars) for c in self.classes)

    def symbols_for(self, chars):
        if not self.refines(chars):
            raise ValueError("alphabet does not refine character set")
        return [i for i, c in enumerate(self.classes) if c <= chars]

    def encode(self, s):
        """Symbol sequence for ``s``; None if ``s`` leaves the universe."""
        codes = [ord(c) for c in s]
        if any(c >= 128 or self.index[c] < 0 for c in codes):
            return None
        return self.encode_batch(np.array([codes], dtype=np.int64).reshape(1, len(codes)))[0]

    def encode_batch(self, codes):
        """Encode a ``(batch, length)`` array of character codes."""
        ids = self.index[codes]
        if not self.boundaries:
            return ids
        b, n = ids.shape
        w = self.is_word[ids].astype(np.int64)
        pad = np.zeros((b, 1), dtype=np.int64)
        prev = np.concatenate([pad, w], axis=1)
        nxt = np.concatenate([w, pad], axis=1)
        markers = self.n_classes + 2 * prev + nxt
        out = np.empty((b, 2 * n + 1), dtype=np.int64)
        out[:, 0::2] = markers
        out[:, 1::2] = ids
        return out

    def decode(self, symbols):
        return "".join(self.representatives[a] for a in symbols if a < self.n_classes)

    def __repr__(self):
        return f"SymbolicAlphabet({self.n_classes} classes, boundaries={self.boundaries})"


class Dfa:
    """Total, minimal DFA over a :class:`SymbolicAlphabet`; start state 0."""

    def __init__(self, table, accepting, alphabet):
        self.table = np.asarray(table, dtype=np.int64)
        self.accepting = np.asarray(accepting, dtype=bool)
        self.alphabet = alphabet
        self.table.flags.writeable = False
        self.accepting.flags.writeable = False

    start = 0

    @property
    def n_states(self):
        return len(self.accepting)

    @property
    def word_boundaries(self):
        return self.alphabet.boundaries

    def accepts(self, s: str) -> bool:
        syms = self.alphabet.encode(s)
        if syms is None:
            return False
        q = 0
        for a in syms:
            q = self.table[q, a]
        return bool(self.accepting[q])

    def accepts_batch(self, codes) -> np.ndarray:
        """Vectorised acceptance for a ``(batch, length)`` array of codes."""
        syms = self.alphabet.encode_batch(np.asarray(codes, dtype=np.int64))
        q = np.zeros(len(syms), dtype=np.int64)
        for t in range(syms.shape[1]):
            q = self.table[q, syms[:, t]]
        return self.accepting[q]

    def same_language(self, other: "Dfa") -> bool:
        # both are minimal with BFS numbering, so isomorphic means identical
        return (
            self.table.shape == other.table.shape
            and bool(np.array_equal(self.table, other.table))
            and bool(np.array_equal(self.accepting, other.accepting))
        )

    def __repr__(self):
        return f"Dfa({self.n_states} states, {self.alphabet!r})"


# --------------------------------------------------------------------------
# construction helpers; automata are (table as list of lists, acc as list)

class _Builder:
    def __init__(self, alphabet, max_states, deadline):
        self.sigma = alphabet
        self.k = alphabet.n_classes
        self.m = alphabet.n_symbols
        self.markers = alphabet.boundaries
        self.max_states = max_states
        self.deadline = deadline
        self._cache = {}

    # -- generic subset/product exploration
    def explore(self, init, step_all, is_acc):
        ids = {init: 0}
        keys = [init]
        rows = []
        i = 0
        while i < len(keys):
            if self.deadline is not None and i % 64 == 0 and time.monotonic() > self.deadline:
                raise EquivalenceTimeout("automaton construction exceeded its time budget")
            row = []
            for k2 in step_all(keys[i]):
                j = ids.get(k2)
                if j is None:
                    j = len(keys)
                    if j >= self.max_states:
                        raise CapacityError(f"automaton exceeds {self.max_states} states")
                    ids[k2] = j
                    keys.append(k2)
                row.append(j)
            rows.append(row)
            i += 1
        return minimize(rows, [bool(is_acc(k)) for k in keys])

    # -- leaves
    def chain(self, symbol_sets):
        """Words whose i-th symbol lies in ``symbol_sets[i]``."""
        n = len(symbol_sets)
        sink = n + 1
        rows = []
        for i, allowed in enumerate(symbol_sets):
            allowed = set(allowed)
            rows.append([i + 1 if a in allowed else sink for a in range(self.m)])
        rows.append([sink] * self.m)
        rows.append([sink] * self.m)
        acc = [False] * n + [True, False]
        return minimize(rows, acc)

    def _markers(self):
        return range(self.k, self.k + 4)

    def chars(self, symbols):
        """A single character from ``symbols``."""
        if self.markers:
            m = self._markers()
            return self.local(self.chain([m, symbols, m]))
        return self.chain([symbols])

    def word(self, symbol_seq):
        if not self.markers:
            return self.chain([[a] for a in symbol_seq])
        m = list(self._markers())
        sets = [m]
        for a in symbol_seq:
            sets += [[a], m]
        return self.local(self.chain(sets))

    def epsilon(self):
        if self.markers:
            return self.local(self.chain([self._markers()]))
        return self.chain([])

    def boundary(self):
        return self.chain([[self.sigma.marker(p, n) for p in (0, 1) for n in (0, 1) if p != n]])

    def consistency(self, top):
        """Marker/character agreement; ``top`` also pins the outer context."""
        k, w = self.k, self.sigma.is_word
        # 0 start, 1/2 after marker announcing non-word/word, 3/4 after a
        # non-word/word character, 5 sink
        rows = [[5] * self.m for _ in range(6)]
        for p in (0, 1):
            for n in (0, 1):
                mk = self.sigma.marker(p, n)
                if not top or p == 0:
                    rows[0][mk] = 1 + n
                rows[3 + p][mk] = 1 + n
        for a in range(k):
            if w[a]:
                rows[2][a] = 4
            else:
                rows[1][a] = 3
        acc = [False, True, not top, False, False, False]
        return minimize(rows, acc)

    def local(self, a):
        if "local" not in self._cache:
            self._cache["local"] = self.consistency(top=False)
        return self.intersect(a, self._cache["local"])

    # -- operations
    def product(self, a, b, op):
        ta, aa = a
        tb, ab = b
        m = self.m

        def step_all(key):
            ra, rb = ta[key[0]], tb[key[1]]
            return [(ra[x], rb[x]) for x in range(m)]

        return self.explore((0, 0), step_all, lambda key: op(aa[key[0]], ab[key[1]]))

    def intersect(self, a, b):
        return self.product(a, b, lambda x, y: x and y)

    def union(self, a, b):
        return self.product(a, b, lambda x, y: x or y)

    def complement(self, a):
        rows, acc = a
        out = (rows, [not x for x in acc])
        return self.local(out) if self.markers else out

    def concat(self, a, b):
        ta, aa = a
        tb, ab = b
        m, k, fuse = self.m, self.k, self.markers
        b_start = tb[0]

        def step_all(key):
            p, S = key
            rp = ta[p]
            out = []
            for x in range(m):
                p2 = rp[x]
                S2 = {tb[q][x] for q in S}
                if aa[p2]:
                    if not fuse:
                        S2.add(0)
                    elif x >= k:
                        S2.add(b_start[x])
                out.append((p2, frozenset(S2)))
            return out

        init = (0, frozenset([0]) if (aa[0] and not fuse) else frozenset())
        return self.explore(init, step_all, lambda key: any(ab[q] for q in key[1]))

    def plus(self, a):
        t, acc = a
        m, k, fuse = self.m, self.k, self.markers
        start = t[0]

        def step_all(S):
            out = []
            for x in range(m):
                S2 = {t[q][x] for q in S}
                if any(acc[q] for q in S2):
                    if not fuse:
                        S2.add(0)
                    elif x >= k:
                        S2.add(start[x])
                out.append(frozenset(S2))
            return out

        return self.explore(frozenset([0]), step_all, lambda S: any(acc[q] for q in S))

    def star(self, a):
        return self.union(self.plus(a), self.epsilon())

    def power(self, a, n):
        out = self.epsilon()
        for _ in range(n):
            out = self.concat(out, a)
        return out

    def any_star(self):
        if "anystar" not in self._cache:
            self._cache["anystar"] = self.star(self.chars(range(self.k)))
        return self._cache["anystar"]

    # -- compilation
    def build(self, node):
        if isinstance(node, R.Literal):
            return self.word([self.sigma.symbols_for(frozenset(c))[0] for c in node.text])
        if isinstance(node, R.CharClass):
            return self.chars(self.sigma.symbols_for(node.chars()))
        if isinstance(node, R.AnyChar):
            return self.chars(range(self.k))
        if isinstance(node, R.Concat):
            out = self.build(node.items[0])
            for c in node.items[1:]:
                out = self.concat(out, self.build(c))
            return out
        if isinstance(node, (R.Or, R.And)):
            op = self.union if isinstance(node, R.Or) else self.intersect
            out = self.build(node.items[0])
            for c in node.items[1:]:
                out = op(out, self.build(c))
            return out
        if isinstance(node, R.Not):
            return self.complement(self.build(node.child))
        if isinstance(node, R.Star):
            return self.star(self.build(node.child))
        if isinstance(node, R.Plus):
            return self.plus(self.build(node.child))
        if isinstance(node, R.RepeatAtLeast):
            x = self.build(node.child)
            if node.n == 0:
                return self.star(x)
            return self.concat(self.power(x, node.n - 1), self.plus(x))
        if isinstance(node, R.RepeatAtMost):
            x = self.build(node.child)
            opt = self.union(self.epsilon(), x)
            out = x
            for _ in range(node.n - 1):
                out = self.concat(out, opt)
            return out
        if isinstance(node, R.WordBounded):
            if not self.markers:
                raise ValueError("word boundaries need an alphabet in boundary mode")
            b = self.boundary()
            return self.concat(b, self.concat(self.build(node.child), b))
        s = self.any_star()
        if isinstance(node, R.Contains):
            return self.concat(s, self.concat(self.build(node.child), s))
        if isinstance(node, R.StartsWith):
            return self.concat(self.build(node.child), s)
        if isinstance(node, R.EndsWith):
            return self.concat(s, self.build(node.child))
        if isinstance(node, R.FollowedBy):
            tail = self.concat(s, self.build(node.second))
            return self.concat(s, self.concat(self.build(node.first), tail))
        raise TypeError(f"not a regex node: {node!r}")


def minimize(rows, acc):
    """Moore partition refinement; returns a canonical (rows, acc) pair."""
    table = np.asarray(rows, dtype=np.int64)
    accv = np.asarray(acc, dtype=bool)
    n = len(accv)
    # drop unreachable states
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    frontier = np.array([0])
    while frontier.size:
        nxt = np.unique(table[frontier].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    if not seen.all():
        keep = np.flatnonzero(seen)
        remap = np.full(n, -1, dtype=np.int64)
        remap[keep] = np.arange(len(keep))
        table = remap[table[keep]]
        accv = accv[keep]
    _, cls = np.unique(accv, return_inverse=True)
    cls = cls.reshape(-1).astype(np.int64)
    n_cls = int(cls.max()) + 1
    while True:
        sig = np.concatenate([cls[:, None], cls[table]], axis=1)
        _, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.reshape(-1)
        k = int(new.max()) + 1
        if k == n_cls:
            break
        cls, n_cls = new, k
    qtable = np.empty((n_cls, table.shape[1]), dtype=np.int64)
    qtable[cls] = cls[table]
    qacc = np.zeros(n_cls, dtype=bool)
    qacc[cls] = accv
    # breadth-first renumbering from the start class
    order = {int(cls[0]): 0}
    queue = deque([int(cls[0])])
    qrows = qtable.tolist()
    while queue:
        q = queue.popleft()
        for r in qrows[q]:
            if r not in order:
                order[r] = len(order)
                queue.append(r)
    perm = np.empty(n_cls, dtype=np.int64)
    for old, new_id in order.items():
        perm[old] = new_id
    out = np.empty_like(qtable)
    out[perm] = perm[qtable]
    oacc = np.empty_like(qacc)
    oacc[perm] = qacc
    return out.tolist(), oacc.tolist()


def compile_dfa(ast, alphabet=None, max_states=DEFAULT_MAX_STATES, deadline=None) -> Dfa:
    """Minimal DFA for the full-match language of ``ast``.

    ``alphabet`` defaults to the coarsest one for ``ast``; it must refine every
    character set in the tree.  Raises :class:`CapacityError` past
    ``max_states`` and :class:`EquivalenceTimeout` after ``deadline``
    (a ``time.monotonic()`` value).
    """
    if alphabet is None:
        alphabet = SymbolicAlphabet.for_asts(ast)
    b = _Builder(alphabet, max_states, deadline)
    rows, acc = b.build(ast)
    if alphabet.boundaries:
        rows, acc = b.intersect((rows, acc), b.consistency(top=True))
    return Dfa(rows, acc, alphabet)


def _deadline(timeout):
    return None if timeout is None else time.monotonic() + timeout


def find_counterexample(a, b, max_states=DEFAULT_MAX_STATES, timeout=None):
    """A shortest string in exactly one of the two languages, or None."""
    sigma = SymbolicAlphabet.for_asts(a, b)
    deadline = _deadline(timeout)
    da = compile_dfa(a, sigma, max_states, deadline)
    db = compile_dfa(b, sigma, max_states, deadline)
    if da.same_language(db):
        return None
    ta, tb = da.table.tolist(), db.table.tolist()
    aa, ab = da.accepting.tolist(), db.accepting.tolist()
    parent = {(0, 0): None}
    queue = deque([(0, 0)])
    while queue:
        p, q = queue.popleft()
        if aa[p] != ab[q]:
            path = []
            key = (p, q)
            while parent[key] is not None:
                key, sym = parent[key]
                path.append(sym)
            return sigma.decode(reversed(path))
        for x in range(sigma.n_symbols):
            nxt = (ta[p][x], tb[q][x])
            if nxt not in parent:
                parent[nxt] = ((p, q), x)
                queue.append(nxt)
    raise AssertionError("distinct minimal automata must disagree somewhere")


def regex_equivalent(a, b, max_states=DEFAULT_MAX_STATES, timeout=None) -> bool:
    """True iff ``a`` and ``b`` denote the same language over printable ASCII."""
    sigma = SymbolicAlphabet.for_asts(a, b)
    deadline = _deadline(timeout)
    return compile_dfa(a, sigma, max_states, deadline).same_language(
        compile_dfa(b, sigma, max_states, deadline)
    )
