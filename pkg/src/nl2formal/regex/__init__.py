"""The regex dialect: parsing, printing, matching and language equivalence."""
from .ast import (
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
from .automata import (
    Dfa,
    SymbolicAlphabet,
    compile_dfa,
    find_counterexample,
    regex_equivalent,
)
from .matcher import regex_matches, regex_matches_many
from .parser import parse_regex, print_regex

__all__ = [
    "And", "AnyChar", "CharClass", "Concat", "Contains", "EndsWith", "FollowedBy",
    "Literal", "Not", "Or", "Plus", "Regex", "RepeatAtLeast", "RepeatAtMost",
    "Star", "StartsWith", "WordBounded",
    "Dfa", "SymbolicAlphabet", "compile_dfa", "find_counterexample", "regex_equivalent",
    "regex_matches", "regex_matches_many", "parse_regex", "print_regex",
]
