"""LTL syntax trees.

All nodes are frozen dataclasses, so formulas are hashable values that can
be shared freely.  Derived operators (``&``, ``->``, ``<->``, ``F``, ``G``,
``R``) are first-class nodes; :func:`to_nnf` expands them when needed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

AP_NAME = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")
RESERVED = frozenset({"X", "F", "G", "U", "R", "true", "false"})


class Formula:
    __slots__ = ()

    def children(self) -> tuple:
        return ()

    def __str__(self):
        from .parser import print_ltl

        return print_ltl(self)


@dataclass(frozen=True)
class Ap(Formula):
    name: str

    def __post_init__(self):
        if not AP_NAME.match(self.name) or self.name in RESERVED:
            raise ValueError(f"invalid atomic proposition name {self.name!r}")


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class _Unary(Formula):
    child: Formula

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


class Not(_Unary):
    pass


class Next(_Unary):
    pass


class Finally(_Unary):
    pass


class Globally(_Unary):
    pass


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Implies(_Binary):
    pass


class Equiv(_Binary):
    pass


class Until(_Binary):
    pass


class Release(_Binary):
    pass


UNARY_TYPES = (Not, Next, Finally, Globally)
BINARY_TYPES = (And, Or, Implies, Equiv, Until, Release)


def walk(f: Formula):
    stack = [f]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(n.children()))


def aps(f: Formula) -> frozenset:
    return frozenset(n.name for n in walk(f) if isinstance(n, Ap))


def depth(f: Formula) -> int:
    kids = f.children()
    return 1 + (max(depth(k) for k in kids) if kids else 0)


def conjoin(formulas):
    """Right-nested conjunction; ``Top()`` for an empty list."""
    formulas = list(formulas)
    if not formulas:
        return Top()
    out = formulas[-1]
    for f in reversed(formulas[:-1]):
        out = And(f, out)
    return out


def rename(f: Formula, mapping) -> Formula:
    """Substitute atomic propositions by name."""
    if isinstance(f, Ap):
        return Ap(mapping.get(f.name, f.name))
    if isinstance(f, _Unary):
        return type(f)(rename(f.child, mapping))
    if isinstance(f, _Binary):
        return type(f)(rename(f.left, mapping), rename(f.right, mapping))
    return f
