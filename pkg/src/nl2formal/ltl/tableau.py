"""Satisfiability and equivalence of LTL formulas.

The formula is put in negation normal form and explored on the fly as a
tableau whose states are the sets of obligations for the next step.  Each
transition carries the literals it needs and, per until-subformula, whether
it fulfils or does not owe that until.  A formula is satisfiable iff a
reachable strongly connected component has internal transitions covering
every until; a lasso through such a component spells out a witness trace,
which is checked with :func:`eval_trace` before it is returned.
"""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from ..errors import CapacityError, EquivalenceTimeout
from .ast import Ap, And, Bottom, Formula, Next, Not, Or, Release, Top, Until, aps as formula_aps
from .semantics import Trace, eval_trace, to_nnf

DEFAULT_MAX_STATES = 1 << 20

# interned node kinds
_TOP, _BOT, _LIT, _AND, _OR, _NEXT, _UNTIL, _RELEASE = range(8)


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    witness: Trace | None = None

    def __bool__(self):
        return self.satisfiable


@dataclass(frozen=True)
class EquivResult:
    equivalent: bool
    witness: Trace | None = None

    def __bool__(self):
        return self.equivalent


class _Closure:
    """Interned NNF subformulas: ``nodes[i] = (kind, a, b)``."""

    def __init__(self):
        self.nodes = []
        self.ids = {}
        self.untils = []  # node ids of until subformulas, in creation order

    def intern(self, f):
        if isinstance(f, Top):
            key = (_TOP, None, None)
        elif isinstance(f, Bottom):
            key = (_BOT, None, None)
        elif isinstance(f, Ap):
            key = (_LIT, f.name, True)
        elif isinstance(f, Not):
            key = (_LIT, f.child.name, False)
        elif isinstance(f, And):
            key = (_AND, self.intern(f.left), self.intern(f.right))
        elif isinstance(f, Or):
            key = (_OR, self.intern(f.left), self.intern(f.right))
        elif isinstance(f, Next):
            key = (_NEXT, self.intern(f.child), None)
        elif isinstance(f, Until):
            key = (_UNTIL, self.intern(f.left), self.intern(f.right))
        elif isinstance(f, Release):
            key = (_RELEASE, self.intern(f.left), self.intern(f.right))
        else:
            raise TypeError(f"not in negation normal form: {f!r}")
        i = self.ids.get(key)
        if i is None:
            i = len(self.nodes)
            self.ids[key] = i
            self.nodes.append(key)
            if key[0] == _UNTIL:
                self.untils.append(i)
        return i


def _expand(cl, state, until_bit):
    """All ways to meet the obligations in ``state`` during one step.

    Returns ``(literals, next_state, acceptance_mask)`` triples, where
    ``literals`` maps ap name to required value.
    """
    nodes = cl.nodes
    out = []
    # stack of branches: (todo, seen, lits, nexts, deferred)
    stack = [(list(state), frozenset(), {}, frozenset(), 0)]
    while stack:
        todo, seen, lits, nexts, deferred = stack.pop()
        dead = False
        while todo:
            i = todo.pop()
            if i in seen:
                continue
            seen = seen | {i}
            kind, a, b = nodes[i]
            if kind == _TOP:
                continue
            if kind == _BOT:
                dead = True
                break
            if kind == _LIT:
                if lits.get(a, b) != b:
                    dead = True
                    break
                if a not in lits:
                    lits = dict(lits)
                    lits[a] = b
            elif kind == _AND:
                todo.append(a)
                todo.append(b)
            elif kind == _OR:
                stack.append((todo + [b], seen, lits, nexts, deferred))
                todo.append(a)
            elif kind == _NEXT:
                nexts = nexts | {a}
            elif kind == _UNTIL:
                # defer: a now and the until again next step
                stack.append((todo + [a], seen, lits, nexts | {i}, deferred | until_bit[i]))
                todo.append(b)
            elif kind == _RELEASE:
                # either both hold now, or b now and the release again
                stack.append((todo + [b], seen, lits, nexts | {i}, deferred))
                todo.append(a)
                todo.append(b)
        if not dead:
            out.append((lits, nexts, deferred))
    return out


def _tarjan(n_nodes, succ):
    """Strongly connected components; returns a component id per node."""
    index = [-1] * n_nodes
    low = [0] * n_nodes
    comp = [-1] * n_nodes
    on_stack = [False] * n_nodes
    stack = []
    counter = 0
    n_comp = 0
    for root in range(n_nodes):
        if index[root] >= 0:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, k = work[-1]
            if k < len(succ[v]):
                work[-1] = (v, k + 1)
                w = succ[v][k]
                if index[w] < 0:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = n_comp
                        if w == v:
                            break
                    n_comp += 1
    return comp


class _Graph:
    def __init__(self, f, max_states, deadline):
        self.cl = _Closure()
        root = self.cl.intern(f)
        self.until_bit = {u: 1 << k for k, u in enumerate(self.cl.untils)}
        self.full = (1 << len(self.cl.untils)) - 1
        self.states = [frozenset([root])]
        self.index = {self.states[0]: 0}
        self.edges = [None]  # per state: list of (target, lits, accepting mask)
        q = deque([0])
        while q:
            if deadline is not None and time.monotonic() > deadline:
                raise EquivalenceTimeout("satisfiability check ran out of time")
            s = q.popleft()
            row = []
            for lits, nexts, deferred in _expand(self.cl, self.states[s], self.until_bit):
                t = self.index.get(nexts)
                if t is None:
                    if len(self.states) >= max_states:
                        raise CapacityError(f"tableau exceeded {max_states} states")
                    t = len(self.states)
                    self.index[nexts] = t
                    self.states.append(nexts)
                    self.edges.append(None)
                    q.append(t)
                row.append((t, lits, self.full & ~deferred))
            self.edges[s] = row

    def accepting_component(self):
        n = len(self.states)
        succ = [[t for t, _, _ in self.edges[s]] for s in range(n)]
        comp = _tarjan(n, succ)
        masks = {}
        has_edge = set()
        for s in range(n):
            for t, _, acc in self.edges[s]:
                if comp[s] == comp[t]:
                    has_edge.add(comp[s])
                    masks[comp[s]] = masks.get(comp[s], 0) | acc
        for c in sorted(has_edge):
            if masks[c] == self.full:
                return c, comp
        return None, comp

    def _path(self, src, goal, allowed):
        """Shortest edge path from ``src`` to a state satisfying ``goal``."""
        prev = {src: None}
        q = deque([src])
        while q:
            s = q.popleft()
            if goal(s):
                path = []
                while prev[s] is not None:
                    p, e = prev[s]
                    path.append(e)
                    s = p
                return path[::-1]
            for e in self.edges[s]:
                t = e[0]
                if t not in prev and allowed(t):
                    prev[t] = (s, e)
                    q.append(t)
        raise AssertionError("no path in tableau")

    def lasso(self, c, comp):
        inside = lambda s: comp[s] == c  # noqa: E731
        stem = self._path(0, inside, lambda s: True)
        start = stem[-1][0] if stem else 0
        loop = []
        cur = start
        need = self.full
        while need:
            bit = need & -need

            def has_bit(s, bit=bit):
                return any(comp[t] == c and acc & bit for t, _, acc in self.edges[s])

            hop = self._path(cur, has_bit, inside)
            loop += hop
            if hop:
                cur = hop[-1][0]
            e = next(e for e in self.edges[cur] if comp[e[0]] == c and e[2] & bit)
            loop.append(e)
            need &= ~e[2]
            cur = e[0]
        if not loop:
            e = next(e for e in self.edges[start] if comp[e[0]] == c)
            loop.append(e)
            cur = e[0]
        loop += self._path(cur, lambda s: s == start, inside) if cur != start else []
        return stem, loop


def is_satisfiable(f: Formula, aps=None, max_states=DEFAULT_MAX_STATES, timeout=None) -> SatResult:
    """Decide satisfiability; a satisfiable verdict carries a witness trace.

    The witness assigns every ap in ``aps`` (default: those of ``f``);
    propositions the tableau leaves open are set to false.
    """
    deadline = None if timeout is None else time.monotonic() + timeout
    names = tuple(sorted(set(aps if aps is not None else ()) | formula_aps(f)))
    g = _Graph(to_nnf(f), max_states, deadline)
    c, comp = g.accepting_component()
    if c is None:
        return SatResult(False)
    stem, loop = g.lasso(c, comp)

    def step(lits):
        return tuple(bool(lits.get(a, False)) for a in names)

    trace = Trace(names, tuple(step(e[1]) for e in stem), tuple(step(e[1]) for e in loop))
    if not eval_trace(f, trace):
        raise AssertionError(f"tableau produced an invalid witness for {f}")
    return SatResult(True, trace)


def ltl_equivalent(a: Formula, b: Formula, max_states=DEFAULT_MAX_STATES, timeout=None) -> EquivResult:
    """Equivalent, or a trace on which exactly one of ``a`` and ``b`` holds."""
    deadline = None if timeout is None else time.monotonic() + timeout
    names = formula_aps(a) | formula_aps(b)
    for query in (And(a, Not(b)), And(Not(a), b)):
        left = None if deadline is None else max(deadline - time.monotonic(), 0.0)
        r = is_satisfiable(query, names, max_states, left)
        if r.satisfiable:
            return EquivResult(False, r.witness)
    return EquivResult(True)
