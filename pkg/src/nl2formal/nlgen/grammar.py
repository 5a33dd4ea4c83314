"""Controlled English for LTL, in both directions.

Sentences follow the structure of the formula.  Atomic propositions read
``a holds`` or ``a does not hold``; a prefix operator applied to such an atom
reads ``Globally a holds``, and applied to anything else uses the scope
marker ``Globally it is the case that ...``.  Binary operators sit between
their operands (``and``, ``or``, ``if and only if``, ``until``; release is
``... holds until ... or forever``), implication reads ``if ... then ...``.

To keep parsing unique, every rendering is in one of two modes.  An *open*
rendering may end with an operand that runs to the end of the enclosing
scope; a *closed* rendering knows where it stops.  The left operand of a
binary operator must be closed, and unless it is a plain atom the whole
binary phrase is introduced by ``it is the case that``.  With these rules a
left-to-right parser never needs to backtrack, so every sentence has at
most one reading.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from ..errors import AmbiguityError, FormulaSyntaxError, UnsupportedShapeError
from ..ltl.ast import (
    AP_NAME,
    RESERVED as LTL_RESERVED,
    And,
    Ap,
    Equiv,
    Finally,
    Formula,
    Globally,
    Implies,
    Next,
    Not,
    Or,
    Release,
    Until,
)

MARKER = ("it", "is", "the", "case", "that")
_HOLDS = ("holds",)
_NOT_HOLD = ("does", "not", "hold")
_IF, _THEN = ("if",), ("then",)
_RELEASE_OPEN = ("holds", "until")
_RELEASE_CLOSE = ("or", "forever")
_BINARY = ((("if", "and", "only", "if"), Equiv), (("and",), And), (("or",), Or), (("until",), Until))
_KEYWORD = {cls: words for words, cls in _BINARY}
_STRUCTURAL = set(MARKER + _HOLDS + _NOT_HOLD + _IF + _THEN + _RELEASE_OPEN + _RELEASE_CLOSE)
for _w, _ in _BINARY:
    _STRUCTURAL.update(_w)


@dataclass(frozen=True)
class PrefixPhrase:
    """One way to say a prefix operator.

    ``key`` is one of ``G F X GF FG``; ``atomic`` precedes a plain atom,
    ``complex`` precedes any other sub-sentence.
    """

    key: str
    atomic: tuple
    complex: tuple


def _phrase(key, atomic, complex_):
    return PrefixPhrase(key, tuple(atomic.split()), tuple(complex_.split()))


_BASE = (
    _phrase("G", "globally", "globally it is the case that"),
    _phrase("F", "eventually", "eventually it is the case that"),
    _phrase("X", "in the next step", "in the next step it is the case that"),
)
_ENRICHED_EXTRA = (
    _phrase("G", "always", "always it is the case that"),
    _phrase("F", "finally", "finally it is the case that"),
    _phrase("GF", "infinitely often", "infinitely often it is the case that"),
    _phrase("FG", "eventually forever", "eventually it is the case that forever"),
)


class GrammarVariant:
    """Phrase tables for one grammar; checked for conflicts on construction."""

    def __init__(self, name: str, phrases):
        self.name = name
        self.phrases = tuple(phrases)
        seen = {}
        for p in self.phrases:
            if p.key not in ("G", "F", "X", "GF", "FG"):
                raise ValueError(f"unknown operator key {p.key!r}")
            for kind, words in (("atomic", p.atomic), ("complex", p.complex)):
                if not words or any(w != w.lower() or not w.isalpha() for w in words):
                    raise ValueError(f"phrase {' '.join(words)!r} must be lower-case words")
                prev = seen.setdefault(words, (p.key, kind))
                if prev != (p.key, kind):
                    raise AmbiguityError(f"phrase {' '.join(words)!r} is used for {prev} and {(p.key, kind)}")
            if p.complex[: len(p.atomic)] != p.atomic and p.key != "FG":
                raise AmbiguityError(f"complex phrase for {p.key} must extend its atomic phrase")
        self.reserved = frozenset(_STRUCTURAL | {w for p in self.phrases for w in p.atomic + p.complex})
        for p in self.phrases:
            # an atomic phrase must not be followed by something that reads as
            # a longer phrase; ap names are never reserved, so it suffices
            # that every phrase word is reserved
            assert all(w in self.reserved for w in p.atomic + p.complex)
        self.by_key = {}
        for p in self.phrases:
            self.by_key.setdefault(p.key, []).append(p)
        entries = []
        for p in self.phrases:
            entries.append((p.complex, p.key, True))
            entries.append((p.atomic, p.key, False))
        # longest match first
        self._entries = sorted(entries, key=lambda e: -len(e[0]))

    def __repr__(self):
        return f"GrammarVariant({self.name!r})"

    def check_ap(self, name):
        if not AP_NAME.match(name) or name in LTL_RESERVED or name.lower() in self.reserved:
            raise UnsupportedShapeError(f"ap name {name!r} clashes with the grammar")


BASE = GrammarVariant("base", _BASE)
ENRICHED = GrammarVariant("enriched", _BASE + _ENRICHED_EXTRA)
VARIANTS = {"base": BASE, "enriched": ENRICHED}


def get_variant(variant) -> GrammarVariant:
    if isinstance(variant, GrammarVariant):
        return variant
    try:
        return VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown grammar variant {variant!r}; expected one of {sorted(VARIANTS)}") from None


# --------------------------------------------------------------------------
# formula -> sentence

def _literal(f, g):
    if isinstance(f, Ap):
        g.check_ap(f.name)
        return [f.name, *_HOLDS]
    if isinstance(f, Not) and isinstance(f.child, Ap):
        g.check_ap(f.child.name)
        return [f.child.name, *_NOT_HOLD]
    return None


class _Writer:
    def __init__(self, g, rng):
        self.g = g
        self.rng = rng

    def prefix(self, f):
        """Pick a prefix reading of ``f``: ``(phrase, operand)`` or None."""
        options = []
        if isinstance(f, Globally) and isinstance(f.child, Finally):
            options += [(p, f.child.child) for p in self.g.by_key.get("GF", ())]
        if isinstance(f, Finally) and isinstance(f.child, Globally):
            options += [(p, f.child.child) for p in self.g.by_key.get("FG", ())]
        key = {Globally: "G", Finally: "F", Next: "X"}.get(type(f))
        if key is not None:
            options += [(p, f.child) for p in self.g.by_key[key]]
        if not options:
            return None
        return options[self.rng.randrange(len(options))] if len(options) > 1 else options[0]

    def render(self, f, closed):
        """Words for ``f`` and whether they form a plain atom."""
        lit = _literal(f, self.g)
        if lit is not None:
            return lit, True
        pick = self.prefix(f)
        if pick is not None:
            phrase, operand = pick
            lit = _literal(operand, self.g)
            if lit is not None:
                return list(phrase.atomic) + lit, True
            words, _ = self.render(operand, closed)
            return list(phrase.complex) + words, False
        if isinstance(f, Implies):
            left, _ = self.render(f.left, False)
            right, _ = self.render(f.right, closed)
            return [*_IF, *left, *_THEN, *right], False
        if isinstance(f, (And, Or, Equiv, Until, Release)):
            left, atom = self.render(f.left, True)
            right, _ = self.render(f.right, closed)
            if isinstance(f, Release):
                body = left + [*_RELEASE_OPEN] + right + [*_RELEASE_CLOSE]
            else:
                body = left + list(_KEYWORD[type(f)]) + right
            if atom and not closed:
                return body, False
            return [*MARKER, *body], False
        if isinstance(f, Not):
            raise UnsupportedShapeError("negation is only expressible directly on an atomic proposition")
        raise UnsupportedShapeError(f"{type(f).__name__} has no reading in the grammar")


def _capitalise(words, g):
    if words and words[0] in g.reserved:
        words = [words[0].capitalize()] + words[1:]
    return " ".join(words)


def ltl_to_nl(f: Formula, variant="base", seed: int = 0) -> str:
    """Verbalise ``f``; synonyms and shortcuts are chosen with ``seed``."""
    g = get_variant(variant)
    words, _ = _Writer(g, random.Random(seed)).render(f, False)
    return _capitalise(words, g)


# --------------------------------------------------------------------------
# sentence -> formula

class _Reader:
    def __init__(self, sentence, g):
        words = sentence.split()
        if words and words[-1].endswith("."):
            words[-1] = words[-1][:-1]
            if not words[-1]:
                words.pop()
        self.words = words
        self.low = [w.lower() for w in words]
        self.g = g
        self.i = 0

    def error(self, msg):
        found = " ".join(self.words[self.i : self.i + 3]) or "end of sentence"
        return FormulaSyntaxError(f"{msg}, found {found!r}", self.i)

    def at(self, phrase):
        return tuple(self.low[self.i : self.i + len(phrase)]) == tuple(phrase)

    def accept(self, phrase):
        if self.at(phrase):
            self.i += len(phrase)
            return True
        return False

    def expect(self, phrase):
        if not self.accept(phrase):
            raise self.error(f"expected {' '.join(phrase)!r}")

    def prefix(self):
        for words, key, complex_ in self.g._entries:
            if self.accept(words):
                return key, complex_
        return None

    def atom(self):
        if self.i >= len(self.words):
            raise self.error("expected an atomic proposition")
        name = self.words[self.i]
        if not AP_NAME.match(name) or name in LTL_RESERVED or name.lower() in self.g.reserved:
            raise self.error("expected an atomic proposition")
        self.i += 1
        if self.accept(_HOLDS):
            return Ap(name)
        if self.accept(_NOT_HOLD):
            return Not(Ap(name))
        raise self.error("expected 'holds' or 'does not hold'")

    def binary(self, left, required, closed):
        if self.at(_RELEASE_CLOSE):
            pass
        elif self.accept(_RELEASE_OPEN):
            right = self.closed() if closed else self.open()
            self.expect(_RELEASE_CLOSE)
            return Release(left, right)
        else:
            for words, cls in _BINARY:
                if self.accept(words):
                    return cls(left, self.closed() if closed else self.open())
        if required:
            raise self.error("expected a connective")
        return left

    def open(self):
        hit = self.prefix()
        if hit is not None:
            key, complex_ = hit
            if complex_:
                return _build(key, self.open())
            return self.binary(_build(key, self.atom()), False, False)
        if self.accept(_IF):
            left = self.open()
            self.expect(_THEN)
            return Implies(left, self.open())
        if self.accept(MARKER):
            return self.binary(self.closed(), True, False)
        return self.binary(self.atom(), False, False)

    def closed(self):
        hit = self.prefix()
        if hit is not None:
            key, complex_ = hit
            return _build(key, self.closed() if complex_ else self.atom())
        if self.accept(_IF):
            left = self.open()
            self.expect(_THEN)
            return Implies(left, self.closed())
        if self.accept(MARKER):
            return self.binary(self.closed(), True, True)
        return self.atom()


def _build(key, f):
    if key == "G":
        return Globally(f)
    if key == "F":
        return Finally(f)
    if key == "X":
        return Next(f)
    if key == "GF":
        return Globally(Finally(f))
    return Finally(Globally(f))


def nl_to_ltl(sentence: str, variant="base") -> Formula:
    """Parse a grammar sentence back into its formula.

    Keywords are case-insensitive and a final period is ignored.  Raises
    ``FormulaSyntaxError`` (with a word offset) for sentences outside the
    grammar.
    """
    r = _Reader(sentence, get_variant(variant))
    try:
        f = r.open()
        if r.i != len(r.words):
            raise r.error("unexpected words after the end of the formula")
    except FormulaSyntaxError as e:
        e.text = sentence
        raise
    return f
