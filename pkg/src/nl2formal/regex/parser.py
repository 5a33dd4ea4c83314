"""Text <-> AST for the regex dialect.

Precedence, tightest first: postfix operators (``*``, ``+``, ``{n,}``,
``{1,n}``), concatenation, ``&``, ``|``.  Complement is always written
``~(...)``.  Whitespace is insignificant.

A bare ``.*`` at the edges of a sequence is read as the sugared forms of the
dataset grammar: ``.*x.*`` is ``Contains``, ``x.*`` is ``StartsWith``, ``.*x``
is ``EndsWith`` and ``.*x.*y`` is ``FollowedBy``.  A parenthesised ``(.*)`` is
always a plain ``Star(AnyChar())``, which is how the printer keeps ordinary
concatenations apart from the sugar.
"""
from __future__ import annotations

import re

from ..errors import FormulaSyntaxError
from .ast import (
    METACHARS,
    UNIVERSE,
    And,
    AnyChar,
    CharClass,
    Concat,
    Contains,
    EndsWith,
    FollowedBy,
    Literal,
    Not,
    Or,
    Plus,
    Regex,
    RepeatAtLeast,
    RepeatAtMost,
    Star,
    StartsWith,
    WordBounded,
)

_BOUND = re.compile(r"\{\s*(\d+)\s*,\s*(\d*)\s*\}")


def _is_literal_char(c):
    return c in UNIVERSE and c not in METACHARS and not c.isspace()


def _parse_class_body(body, offset):
    ranges = []
    i = 0
    while i < len(body):
        c = body[i]
        if c not in UNIVERSE or c in "[]\\":
            raise FormulaSyntaxError(f"invalid character {c!r} in class", offset + i)
        if i + 2 < len(body) and body[i + 1] == "-":
            hi = body[i + 2]
            if hi < c:
                raise FormulaSyntaxError(f"reversed range {c}-{hi}", offset + i)
            ranges.append((c, hi))
            i += 3
        else:
            ranges.append((c, c))
            i += 1
    if not ranges:
        raise FormulaSyntaxError("empty character class", offset)
    return tuple(ranges)


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()|&~*+.":
            toks.append((c, c, i))
            i += 1
        elif c == "\\":
            if text.startswith("\\b", i):
                toks.append(("wb", "\\b", i))
                i += 2
            else:
                raise FormulaSyntaxError("unsupported escape", i)
        elif c == "[":
            j = text.find("]", i + 1)
            if j < 0:
                raise FormulaSyntaxError("unterminated character class", i)
            toks.append(("class", _parse_class_body(text[i + 1 : j], i + 1), i))
            i = j + 1
        elif c == "{":
            m = _BOUND.match(text, i)
            if not m:
                raise FormulaSyntaxError("malformed repetition bound", i)
            lo, hi = m.group(1), m.group(2)
            if hi == "":
                toks.append(("atleast", int(lo), i))
            elif lo == "1" and int(hi) >= 1:
                toks.append(("atmost", int(hi), i))
            else:
                raise FormulaSyntaxError(f"unsupported bound {m.group(0)}", i)
            i = m.end()
        elif _is_literal_char(c):
            j = i
            while j < n and _is_literal_char(text[j]):
                j += 1
            toks.append(("lit", text[i:j], i))
            i = j
        else:
            raise FormulaSyntaxError(f"unexpected character {c!r}", i)
    toks.append(("eof", None, n))
    return toks


_POSTFIX = ("*", "+", "atleast", "atmost")


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        node = self.alt(False)
        tok = self.peek()
        if tok[0] != "eof":
            raise FormulaSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return node

    def alt(self, in_wb):
        items = [self.conj(in_wb)]
        while self.peek()[0] == "|":
            self.take()
            items.append(self.conj(in_wb))
        return _chunk(Or, items)

    def conj(self, in_wb):
        items = [self.seq(in_wb)]
        while self.peek()[0] == "&":
            self.take()
            items.append(self.seq(in_wb))
        return _chunk(And, items)

    def seq(self, in_wb):
        items = []  # (node, is_bare_dotstar)
        while True:
            kind, val, pos = self.peek()
            if kind in ("eof", ")", "|", "&") or (kind == "wb" and in_wb):
                break
            if kind in _POSTFIX:
                raise FormulaSyntaxError(f"nothing to repeat before {val!r}", pos)
            if kind == "lit" and len(val) > 1 and self.toks[self.i + 1][0] in _POSTFIX:
                # postfix operators bind to the last character only
                items.append((Literal(val[:-1]), False))
                self.toks[self.i] = ("lit", val[-1], pos + len(val) - 1)
                continue
            items.append(self.item())
        if not items:
            raise FormulaSyntaxError("empty expression", self.peek()[2])
        return _desugar(items)

    def item(self):
        kind, val, pos = self.take()
        if kind == "(":
            node = self.alt(False)
            self.take(")")
        elif kind == "~":
            self.take("(")
            node = Not(self.alt(False))
            self.take(")")
        elif kind == ".":
            node = AnyChar()
        elif kind == "class":
            node = CharClass(val)
        elif kind == "lit":
            node = Literal(val)
        elif kind == "wb":
            node = WordBounded(self.alt(True))
            self.take("wb")
        else:
            raise FormulaSyntaxError(f"unexpected {val!r}", pos)
        bare = kind == "."
        n_post = 0
        while self.peek()[0] in _POSTFIX:
            pkind, pval, _ = self.take()
            n_post += 1
            if pkind == "*":
                node = Star(node)
            elif pkind == "+":
                node = Plus(node)
            elif pkind == "atleast":
                node = RepeatAtLeast(node, pval)
            else:
                node = RepeatAtMost(node, pval)
        bare_dotstar = bare and n_post == 1 and node == Star(AnyChar())
        return node, bare_dotstar


def _chunk(cls, items):
    if len(items) == 1:
        return items[0]
    while len(items) > 3:
        items = [cls(tuple(items[:3]))] + items[3:]
    return cls(tuple(items))


def _desugar(items):
    bare = [b for _, b in items]
    nodes = [n for n, _ in items]
    if len(items) == 4 and bare[0] and bare[2]:
        return FollowedBy(nodes[1], nodes[3])
    if len(items) == 3 and bare[0] and bare[2]:
        return Contains(nodes[1])
    if len(items) == 2 and bare[1]:
        return StartsWith(nodes[0])
    if len(items) == 2 and bare[0]:
        return EndsWith(nodes[1])
    if len(nodes) == 1:
        return nodes[0]
    return Concat(tuple(nodes))


def parse_regex(text: str) -> Regex:
    """Parse a dialect string; raises ``FormulaSyntaxError`` with a position."""
    try:
        return _Parser(text).parse()
    except FormulaSyntaxError as e:
        e.text = text
        raise


# --------------------------------------------------------------------------
# printing

def _is_atom(node):
    return isinstance(node, (AnyChar, CharClass)) or (
        isinstance(node, Literal) and len(node.text) == 1
    )


def _item(node):
    """Render ``node`` so that it reads back as exactly one sequence item."""
    if isinstance(node, (AnyChar, CharClass)):
        return print_regex(node)
    return "(" + print_regex(node) + ")"


def _operand(node):
    """Render an operand of a postfix operator."""
    if _is_atom(node):
        return print_regex(node)
    return "(" + print_regex(node) + ")"


def print_regex(node: Regex) -> str:
    """Canonical text; ``parse_regex(print_regex(x)) == x`` for every AST."""
    if isinstance(node, Literal):
        return node.text
    if isinstance(node, AnyChar):
        return "."
    if isinstance(node, CharClass):
        return "[" + "".join(lo if lo == hi else f"{lo}-{hi}" for lo, hi in node.ranges) + "]"
    if isinstance(node, Concat):
        return "".join(_item(c) for c in node.items)
    if isinstance(node, Or):
        return "|".join("(" + print_regex(c) + ")" for c in node.items)
    if isinstance(node, And):
        return "&".join("(" + print_regex(c) + ")" for c in node.items)
    if isinstance(node, Not):
        return "~(" + print_regex(node.child) + ")"
    if isinstance(node, Star):
        return _operand(node.child) + "*"
    if isinstance(node, Plus):
        return _operand(node.child) + "+"
    if isinstance(node, RepeatAtLeast):
        return _operand(node.child) + "{%d,}" % node.n
    if isinstance(node, RepeatAtMost):
        return _operand(node.child) + "{1,%d}" % node.n
    if isinstance(node, WordBounded):
        return "\\b(" + print_regex(node.child) + ")\\b"
    if isinstance(node, Contains):
        return ".*" + _item(node.child) + ".*"
    if isinstance(node, StartsWith):
        return _item(node.child) + ".*"
    if isinstance(node, EndsWith):
        return ".*" + _item(node.child)
    if isinstance(node, FollowedBy):
        return ".*" + _item(node.first) + ".*" + _item(node.second)
    raise TypeError(f"not a regex node: {node!r}")
