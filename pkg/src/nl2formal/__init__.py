"""Parsers, equivalence checkers, dataset generators and scoring for
natural-language to formal-specification translation (regex, FOL, LTL)."""

__version__ = "0.1.0"
