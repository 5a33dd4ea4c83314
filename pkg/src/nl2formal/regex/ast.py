"""Syntax tree for the regex dialect used by the NL-to-regex datasets.

Besides the usual operators the dialect has intersection (``&``) and
complement (``~(...)``), plus a handful of sugared forms (``.*x.*`` and
friends) that the dataset grammar produces and that get their own nodes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

UNIVERSE = tuple(chr(c) for c in range(0x20, 0x7F))
"""Printable ASCII, the character universe of every regex."""

WORD_CHARS = frozenset(
    c for c in UNIVERSE if c.isascii() and (c.isalnum())
)
METACHARS = frozenset("()[]{}|&~*+.\\?^$")


class Regex:
    """Base class of all regex nodes."""

    __slots__ = ()

    def children(self) -> Tuple["Regex", ...]:
        return ()


@dataclass(frozen=True)
class Literal(Regex):
    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("empty literal")
        bad = [c for c in self.text if c in METACHARS or c not in UNIVERSE or c.isspace()]
        if bad:
            raise ValueError(f"literal {self.text!r} contains {bad[0]!r}")


@dataclass(frozen=True)
class CharClass(Regex):
    """Bracket expression; ``ranges`` keeps the order it was written in."""

    ranges: Tuple[Tuple[str, str], ...]

    def __post_init__(self):
        if not self.ranges:
            raise ValueError("empty character class")
        for lo, hi in self.ranges:
            if lo > hi:
                raise ValueError(f"bad range {lo}-{hi}")

    @classmethod
    def of(cls, spec: str) -> "CharClass":
        """Build from the text between the brackets, e.g. ``"A-Za-z"``."""
        from .parser import _parse_class_body

        return cls(_parse_class_body(spec, 0))

    def chars(self) -> frozenset:
        return frozenset(c for c in UNIVERSE if any(lo <= c <= hi for lo, hi in self.ranges))


@dataclass(frozen=True)
class AnyChar(Regex):
    pass


@dataclass(frozen=True)
class Concat(Regex):
    items: Tuple[Regex, ...]

    def __post_init__(self):
        if len(self.items) < 2:
            raise ValueError("concatenation needs at least two items")

    def children(self):
        return self.items


@dataclass(frozen=True)
class Or(Regex):
    items: Tuple[Regex, ...]

    def __post_init__(self):
        if not 2 <= len(self.items) <= 3:
            raise ValueError("alternation takes two or three operands")

    def children(self):
        return self.items


@dataclass(frozen=True)
class And(Regex):
    items: Tuple[Regex, ...]

    def __post_init__(self):
        if not 2 <= len(self.items) <= 3:
            raise ValueError("intersection takes two or three operands")

    def children(self):
        return self.items


@dataclass(frozen=True)
class _Unary(Regex):
    child: Regex

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class Not(_Unary):
    pass


@dataclass(frozen=True)
class Star(_Unary):
    pass


@dataclass(frozen=True)
class Plus(_Unary):
    pass


@dataclass(frozen=True)
class WordBounded(_Unary):
    """``\\b x \\b``: x matched between two word boundaries."""


@dataclass(frozen=True)
class Contains(_Unary):
    """``.*x.*``"""


@dataclass(frozen=True)
class StartsWith(_Unary):
    """``x.*``"""


@dataclass(frozen=True)
class EndsWith(_Unary):
    """``.*x``"""


@dataclass(frozen=True)
class RepeatAtLeast(Regex):
    """``x{n,}``"""

    child: Regex
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("repeat bound must be non-negative")

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class RepeatAtMost(Regex):
    """``x{1,n}``"""

    child: Regex
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("upper repeat bound must be at least 1")

    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class FollowedBy(Regex):
    """``.*x.*y``"""

    first: Regex
    second: Regex

    def children(self):
        return (self.first, self.second)


def walk(node: Regex):
    """Pre-order iterator over all nodes."""
    stack = [node]
    while stack:
        n = stack.pop()
        yield n
        stack.extend(reversed(n.children()))


def depth(node: Regex) -> int:
    kids = node.children()
    return 1 + (max(depth(k) for k in kids) if kids else 0)


def char_sets(node: Regex):
    """Character sets a minterm partition must respect for ``node``."""
    sets = set()
    for n in walk(node):
        if isinstance(n, CharClass):
            sets.add(n.chars())
        elif isinstance(n, Literal):
            sets.update(frozenset(c) for c in n.text)
    return sets


def uses_word_boundary(node: Regex) -> bool:
    return any(isinstance(n, WordBounded) for n in walk(node))
