"""ASCII LTL syntax.

Precedence, tightest first: prefix ``! X F G``; ``U`` and ``R`` (right
associative); ``&``; ``|``; ``->`` (right associative); ``<->``.  The
glyphs ``□ ◊ ¬ ∧ ∨ → ↔`` are read as aliases, and ``1``/``0`` as
``true``/``false``.  Output is always fully parenthesised ASCII.
"""
from __future__ import annotations

from ..errors import FormulaSyntaxError
from .ast import (
    RESERVED,
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

_GLYPHS = {"□": "G", "◊": "F", "◇": "F", "¬": "!", "∧": "&", "∨": "|", "→": "->", "↔": "<->"}
_SYMBOLS = ("<->", "->", "(", ")", "!", "&", "|")
_PREFIX = {"!": Not, "X": Next, "F": Finally, "G": Globally}
_TEMPORAL = {"U": Until, "R": Release}


def _tokenize(text):
    toks = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in _GLYPHS:
            toks.append((_GLYPHS[c], i))
            i += 1
        elif c.isascii() and c.isalpha():
            j = i
            while j < n and text[j].isascii() and text[j].isalnum():
                j += 1
            toks.append((text[i:j], i))
            i = j
        elif c in "01":
            toks.append(("true" if c == "1" else "false", i))
            i += 1
        else:
            for s in _SYMBOLS:
                if text.startswith(s, i):
                    toks.append((s, i))
                    i += len(s)
                    break
            else:
                raise FormulaSyntaxError(f"unexpected character {c!r}", i)
    toks.append((None, n))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            found = "end of input" if tok is None else repr(tok)
            raise FormulaSyntaxError(f"expected {expected!r}, found {found}", pos)
        self.i += 1
        return tok

    def parse(self):
        f = self.equiv()
        tok, pos = self.toks[self.i]
        if tok is not None:
            raise FormulaSyntaxError(f"unexpected {tok!r}", pos)
        return f

    def equiv(self):
        f = self.implies()
        while self.peek() == "<->":
            self.take()
            f = Equiv(f, self.implies())
        return f

    def implies(self):
        f = self.disj()
        if self.peek() == "->":
            self.take()
            return Implies(f, self.implies())
        return f

    def disj(self):
        f = self.conj()
        while self.peek() == "|":
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self):
        f = self.temporal()
        while self.peek() == "&":
            self.take()
            f = And(f, self.temporal())
        return f

    def temporal(self):
        f = self.unary()
        op = _TEMPORAL.get(self.peek())
        if op is not None:
            self.take()
            return op(f, self.temporal())
        return f

    def unary(self):
        op = _PREFIX.get(self.peek())
        if op is not None:
            self.take()
            return op(self.unary())
        return self.atom()

    def atom(self):
        tok, pos = self.toks[self.i]
        if tok == "(":
            self.take()
            f = self.equiv()
            self.take(")")
            return f
        if tok == "true":
            self.take()
            return Top()
        if tok == "false":
            self.take()
            return Bottom()
        if tok is not None and tok[0].isalpha() and tok not in RESERVED:
            self.take()
            return Ap(tok)
        found = "end of input" if tok is None else repr(tok)
        raise FormulaSyntaxError(f"expected a formula, found {found}", pos)


def parse_ltl(text: str) -> Formula:
    """Parse ASCII (or glyph) LTL text; raises ``FormulaSyntaxError``."""
    try:
        return _Parser(text).parse()
    except FormulaSyntaxError as e:
        e.text = text
        raise


_UNARY_OPS = {Not: "!", Next: "X", Finally: "F", Globally: "G"}
_BINARY_OPS = {And: "&", Or: "|", Implies: "->", Equiv: "<->", Until: "U", Release: "R"}


def print_ltl(f: Formula) -> str:
    """Fully parenthesised canonical text."""
    if isinstance(f, Ap):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    op = _UNARY_OPS.get(type(f))
    if op is not None:
        return f"({op} ({print_ltl(f.child)}))"
    op = _BINARY_OPS.get(type(f))
    if op is not None:
        return f"(({print_ltl(f.left)}) {op} ({print_ltl(f.right)}))"
    raise TypeError(f"not an LTL formula: {f!r}")


def to_compact(f: Formula) -> str:
    """Minimal-parenthesis text under the parser's precedence, for display."""
    return _compact(f, 0)


# binding strength; higher binds tighter
_LEVEL = {Equiv: 1, Implies: 2, Or: 3, And: 4, Until: 5, Release: 5}


def _compact(f, ctx):
    if isinstance(f, (Ap, Top, Bottom)):
        return print_ltl(f)
    op = _UNARY_OPS.get(type(f))
    if op is not None:
        inner = _compact(f.child, 6)
        return f"{op}{inner}" if op == "!" else f"{op} {inner}"
    lvl = _LEVEL[type(f)]
    right_assoc = type(f) in (Implies, Until, Release)
    left = _compact(f.left, lvl + 1 if right_assoc else lvl)
    right = _compact(f.right, lvl if right_assoc else lvl + 1)
    s = f"{left} {_BINARY_OPS[type(f)]} {right}"
    return f"({s})" if lvl < ctx else s
