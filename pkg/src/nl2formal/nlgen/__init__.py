"""Controlled-English verbalisation of LTL and the LTL dataset generators."""
from .grammar import BASE, ENRICHED, GrammarVariant, PrefixPhrase, get_variant, ltl_to_nl, nl_to_ltl
from .patterns import (
    PatternCatalog,
    SynthesisSpec,
    check_record,
    combine_synthesis_spec,
    gen_pattern_dataset,
    gen_pattern_record,
    pattern_catalog,
    pattern_record,
    regenerate_sentence,
    rename_aps,
    synthesis_record,
)

__all__ = [
    "BASE", "ENRICHED", "GrammarVariant", "PrefixPhrase", "get_variant", "ltl_to_nl", "nl_to_ltl",
    "PatternCatalog", "SynthesisSpec", "check_record", "combine_synthesis_spec",
    "gen_pattern_dataset", "gen_pattern_record", "pattern_catalog", "pattern_record",
    "regenerate_sentence", "rename_aps", "synthesis_record",
]
