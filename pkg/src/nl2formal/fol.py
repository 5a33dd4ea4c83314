"""Boxer-style first-order logic in functional notation.

Documents look like ``fol(1,some(A,and(n1port(A),a1available(A)))).``  The
connectives are ``some all and or not imp eq``; every other functor is a
predicate (at formula position) or a function symbol (at term position).
Identifiers that no enclosing quantifier binds are read as constants.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityConflictError, FormulaSyntaxError


# terms

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Func:
    name: str
    args: tuple


# formulas

@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Imp:
    left: object
    right: object


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple


@dataclass(frozen=True)
class FolDocument:
    id: int
    body: object


_TOKEN = re.compile(r"\s*(?:([A-Za-z0-9_]+)|(.))")
_VAR = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")
_BINARY = {"and": And, "or": Or, "imp": Imp}
_QUANT = {"some": Exists, "all": Forall}


def _tokenize(text):
    toks = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            toks.append((m.group(1), m.start(1)))
        elif m.group(2) is not None:
            if m.group(2) not in "(),.":
                raise FormulaSyntaxError(f"unexpected character {m.group(2)!r}", m.start(2))
            toks.append((m.group(2), m.start(2)))
    toks.append((None, len(text)))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0
        self.arity = {}

    def peek(self, k=0):
        return self.toks[self.i + k][0]

    def take(self, expected=None):
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            found = "end of input" if tok is None else repr(tok)
            raise FormulaSyntaxError(f"expected {expected!r}, found {found}", pos)
        self.i += 1
        return tok

    def ident(self):
        tok, pos = self.toks[self.i]
        if tok is None or not (tok[0].isalnum() or tok[0] == "_"):
            found = "end of input" if tok is None else repr(tok)
            raise FormulaSyntaxError(f"expected an identifier, found {found}", pos)
        self.i += 1
        return tok

    def check_arity(self, kind, name, n):
        pos = self.toks[self.i - 1][1]
        prev = self.arity.setdefault((kind, name), n)
        if prev != n:
            raise ArityConflictError(f"{kind} {name} used with arity {prev} and {n}", pos)

    def args(self, bound):
        self.take("(")
        out = [self.term(bound)]
        while self.peek() == ",":
            self.take()
            out.append(self.term(bound))
        self.take(")")
        return tuple(out)

    def term(self, bound):
        name = self.ident()
        if self.peek() == "(":
            args = self.args(bound)
            self.check_arity("function", name, len(args))
            return Func(name, args)
        return Var(name) if name in bound else Const(name)

    def formula(self, bound):
        pos = self.toks[self.i][1]
        name = self.ident()
        if self.peek() != "(":
            if name == "true":
                return Top()
            if name == "false":
                return Bottom()
            self.check_arity("predicate", name, 0)
            return Pred(name, ())
        if name in _QUANT:
            self.take("(")
            vpos = self.toks[self.i][1]
            var = self.ident()
            if not _VAR.match(var):
                raise FormulaSyntaxError(f"quantified variable {var!r} must start upper-case", vpos)
            self.take(",")
            body = self.formula(bound | {var})
            self.take(")")
            return _QUANT[name](var, body)
        if name in _BINARY:
            self.take("(")
            left = self.formula(bound)
            self.take(",")
            right = self.formula(bound)
            self.take(")")
            return _BINARY[name](left, right)
        if name == "not":
            self.take("(")
            body = self.formula(bound)
            self.take(")")
            return Not(body)
        if name == "eq":
            args = self.args(bound)
            if len(args) != 2:
                raise FormulaSyntaxError("eq takes two terms", pos)
            return Eq(*args)
        args = self.args(bound)
        self.check_arity("predicate", name, len(args))
        return Pred(name, args)

    def document(self):
        self.take("fol")
        self.take("(")
        pos = self.toks[self.i][1]
        ident = self.ident()
        if not ident.isdigit():
            raise FormulaSyntaxError("document id must be an integer", pos)
        self.take(",")
        body = self.formula(frozenset())
        self.take(")")
        if self.peek() == ".":
            self.take()
        self.end()
        return FolDocument(int(ident), body)

    def end(self):
        tok, pos = self.toks[self.i]
        if tok is not None:
            raise FormulaSyntaxError(f"unexpected {tok!r}", pos)


def parse_fol(text: str) -> FolDocument:
    """Parse ``fol(<id>,<body>).``; the trailing period is optional on input."""
    try:
        return _Parser(text).document()
    except FormulaSyntaxError as e:
        e.text = text
        raise


def parse_fol_body(text: str):
    """Parse a bare formula such as ``some(A,p(A))``."""
    try:
        p = _Parser(text)
        f = p.formula(frozenset())
        p.end()
        return f
    except FormulaSyntaxError as e:
        e.text = text
        raise


def _term_text(t):
    if isinstance(t, (Var, Const)):
        return t.name
    return t.name + "(" + ",".join(_term_text(a) for a in t.args) + ")"


def formula_text(f) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Pred):
        if not f.args:
            return f.name
        return f.name + "(" + ",".join(_term_text(a) for a in f.args) + ")"
    if isinstance(f, Eq):
        return f"eq({_term_text(f.left)},{_term_text(f.right)})"
    if isinstance(f, Not):
        return f"not({formula_text(f.body)})"
    if isinstance(f, Exists):
        return f"some({f.var},{formula_text(f.body)})"
    if isinstance(f, Forall):
        return f"all({f.var},{formula_text(f.body)})"
    for name, cls in _BINARY.items():
        if isinstance(f, cls):
            return f"{name}({formula_text(f.left)},{formula_text(f.right)})"
    raise TypeError(f"not a FOL formula: {f!r}")


def print_fol(doc: FolDocument) -> str:
    """Canonical boxer text: no whitespace, trailing period."""
    return f"fol({doc.id},{formula_text(doc.body)})."


def _fresh_names(taken):
    k = 0
    while True:
        for c in "ABCDEFGHIJKLMNOPQRSTUVWXYZ":
            name = c if k == 0 else f"{c}{k}"
            if name not in taken:
                yield name
        k += 1


def _constants(f, out):
    def term(t):
        if isinstance(t, Const):
            out.add(t.name)
        elif isinstance(t, Func):
            for a in t.args:
                term(a)

    if isinstance(f, (Pred,)):
        for a in f.args:
            term(a)
    elif isinstance(f, Eq):
        term(f.left)
        term(f.right)
    elif isinstance(f, Not):
        _constants(f.body, out)
    elif isinstance(f, (Exists, Forall)):
        _constants(f.body, out)
    elif isinstance(f, (And, Or, Imp)):
        _constants(f.left, out)
        _constants(f.right, out)
    return out


def alpha_rename(f):
    """Rename bound variables to A, B, C.. in order of their binders."""
    names = _fresh_names(_constants(f, set()))

    def term(t, env):
        if isinstance(t, Var):
            return Var(env[t.name])
        if isinstance(t, Func):
            return Func(t.name, tuple(term(a, env) for a in t.args))
        return t

    def go(g, env):
        if isinstance(g, (Exists, Forall)):
            new = next(names)
            return type(g)(new, go(g.body, {**env, g.var: new}))
        if isinstance(g, Pred):
            return Pred(g.name, tuple(term(a, env) for a in g.args))
        if isinstance(g, Eq):
            return Eq(term(g.left, env), term(g.right, env))
        if isinstance(g, Not):
            return Not(go(g.body, env))
        if isinstance(g, (And, Or, Imp)):
            return type(g)(go(g.left, env), go(g.right, env))
        return g

    return go(f, {})


def _strip(text):
    return "".join(text.split())


def normalize_fol(doc, mode: str = "exact") -> str:
    """Comparison key for syntactic accuracy.

    ``exact`` removes whitespace only.  ``alpha`` also renames bound
    variables in binder order; text that does not parse falls back to the
    ``exact`` key.  Accepts a document, a bare formula, or their text.
    """
    if mode not in ("exact", "alpha"):
        raise ValueError(f"unknown normalisation mode {mode!r}")
    if isinstance(doc, FolDocument):
        text = print_fol(doc)
    elif isinstance(doc, str):
        text = doc
    else:
        text = formula_text(doc)
    if mode == "exact":
        return _strip(text)
    try:
        if _strip(text).startswith("fol("):
            d = parse_fol(text)
            return print_fol(FolDocument(d.id, alpha_rename(d.body)))
        return formula_text(alpha_rename(parse_fol_body(text)))
    except FormulaSyntaxError:
        return _strip(text)


def fol_syntactic_equal(a, b, mode: str = "exact") -> bool:
    return normalize_fol(a, mode) == normalize_fol(b, mode)


def quantifier_count(f) -> int:
    if isinstance(f, (Exists, Forall)):
        return 1 + quantifier_count(f.body)
    if isinstance(f, Not):
        return quantifier_count(f.body)
    if isinstance(f, (And, Or, Imp)):
        return quantifier_count(f.left) + quantifier_count(f.right)
    return 0


def conjuncts(f) -> list:
    """Flatten nested ``and`` below any leading quantifiers."""
    while isinstance(f, (Exists, Forall)):
        f = f.body
    if isinstance(f, And):
        return conjuncts(f.left) + conjuncts(f.right)
    return [f]
