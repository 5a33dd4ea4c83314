import itertools
import random

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from nl2formal.errors import CapacityError, EquivalenceTimeout, FormulaSyntaxError
from nl2formal.regex import (
    And,
    AnyChar,
    CharClass,
    Concat,
    Literal,
    Not,
    Or,
    RepeatAtLeast,
    Star,
    SymbolicAlphabet,
    compile_dfa,
    find_counterexample,
    parse_regex,
    print_regex,
    regex_equivalent,
    regex_matches,
    regex_matches_many,
)
from nl2formal.regex.matcher import match_codes
from nl2formal.regex.sampling import random_regex

VOWELS_A = "((..*[AEIOUaeiou].*){7,})(.*)"
VOWELS_B = "((..*[AEIOUaeiou].*)(.*)){7,}"

seeds = st.integers(min_value=0, max_value=2**32 - 1)
quick = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


def all_strings(alphabet, max_len):
    reps = [ord(c) for c in alphabet.representatives]
    for n in range(max_len + 1):
        yield np.array(list(itertools.product(reps, repeat=n)), dtype=np.int64).reshape(len(reps) ** n, n)


# parsing and printing

def test_parse_star_of_union():
    tree = parse_regex("(([0-9])|(dog))*")
    assert tree == Star(Or((CharClass((("0", "9"),)), Literal("dog"))))


def test_parse_single_literal():
    assert parse_regex("a") == Literal("a")


def test_parse_ternary_intersection():
    assert parse_regex("((dog)&(truck)&(ring))") == And((Literal("dog"), Literal("truck"), Literal("ring")))


def test_print_examples():
    assert print_regex(Star(Or((CharClass((("0", "9"),)), Literal("dog"))))) == "(([0-9])|(dog))*"
    assert print_regex(Literal("a")) == "a"
    assert print_regex(Not(Concat((Literal("dog"), Star(AnyChar()))))) == "~((dog)(.*))"


def test_repeat_bound():
    assert parse_regex("(ab){2,}") == RepeatAtLeast(Literal("ab"), 2)


@pytest.mark.parametrize("bad", ["((.)&(dog).*", "(dog", "dog)", "()", "a{,3}", "a{2", "~dog", ""])
def test_syntax_errors(bad):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_regex(bad)
    assert info.value.pos is not None


def test_vowel_pair_parses():
    for text in (VOWELS_A, VOWELS_B):
        assert parse_regex(print_regex(parse_regex(text))) == parse_regex(text)


@quick
@given(seeds)
def test_print_parse_round_trip(seed):
    tree = random_regex(random.Random(seed), 5)
    assert parse_regex(print_regex(tree)) == tree


# automata

def test_dfa_for_a_has_three_states():
    alphabet = SymbolicAlphabet.from_sets([frozenset("a")])
    assert alphabet.n_classes == 2
    dfa = compile_dfa(parse_regex("a"), alphabet)
    assert dfa.n_states == 3
    assert dfa.accepts("a") and not dfa.accepts("") and not dfa.accepts("aa")


def test_star_accepts_empty():
    dfa = compile_dfa(parse_regex("(a|b)*"))
    assert dfa.accepts("") and dfa.accepts("ab") and not dfa.accepts("c")


def test_complement():
    dfa = compile_dfa(parse_regex("~(a)"))
    assert dfa.accepts("") and dfa.accepts("b") and not dfa.accepts("a")


def test_alphabet_partition():
    trees = [parse_regex(VOWELS_A), parse_regex("([a-z])+")]
    alphabet = SymbolicAlphabet.for_asts(*trees)
    seen = set()
    for c in alphabet.classes:
        assert not seen & c
        seen |= c
    assert len(seen) == 95
    assert alphabet.refines(CharClass.of("AEIOUaeiou").chars())
    assert alphabet.refines(CharClass.of("a-z").chars())


def test_capacity_error():
    big = "(.*)(a)(.)(.)(.)(.)(.)(.)(.)(.)(.)(.)"
    with pytest.raises(CapacityError):
        compile_dfa(parse_regex(big), max_states=50)


def test_timeout():
    hard = parse_regex("((.*)(a)(.)(.)(.)(.)(.)(.)(.)(.)(.)(.)(.)(.))")
    with pytest.raises(EquivalenceTimeout):
        regex_equivalent(hard, Not(hard), timeout=1e-6)


# matcher

def test_matcher_examples():
    assert regex_matches(parse_regex("([0-9])"), "7")
    assert regex_matches(parse_regex("(a|b)*"), "")
    assert regex_matches(RepeatAtLeast(Literal("ab"), 2), "ababab")
    assert not regex_matches(RepeatAtLeast(Literal("ab"), 2), "ab")


def test_matcher_sugar():
    assert regex_matches(parse_regex(".*dog.*"), "hotdogs")
    assert not regex_matches(parse_regex(".*dog.*"), "dgo")
    assert regex_matches(parse_regex("\\b(dog)\\b"), "dog")
    assert regex_matches_many(parse_regex("(dog).*"), ["dog", "dogma", "adog"]) == [True, True, False]


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_oracle_agreement(seed):
    tree = random_regex(random.Random(seed), 4)
    dfa = compile_dfa(tree)
    for codes in all_strings(dfa.alphabet, 4):
        assert np.array_equal(dfa.accepts_batch(codes), match_codes(tree, codes))


# equivalence

def test_vowel_pair_equivalent():
    assert regex_equivalent(parse_regex(VOWELS_A), parse_regex(VOWELS_B))


def test_union_commutes():
    assert regex_equivalent(parse_regex("(dog)|(truck)"), parse_regex("(truck)|(dog)"))


def test_counterexample_is_distinguishing():
    a, b = parse_regex("(dog).*"), parse_regex(".*(dog)")
    cex = find_counterexample(a, b)
    assert cex is not None
    assert regex_matches(a, cex) != regex_matches(b, cex)


@quick
@given(seeds)
def test_reflexive_and_double_complement(seed):
    tree = random_regex(random.Random(seed), 4)
    assert regex_equivalent(tree, tree)
    assert regex_equivalent(Not(Not(tree)), tree)


@quick
@given(seeds)
def test_equivalence_sound_and_symmetric(seed):
    rng = random.Random(seed)
    a, b = random_regex(rng, 3), random_regex(rng, 3)
    same = regex_equivalent(a, b)
    assert same == regex_equivalent(b, a)
    alphabet = SymbolicAlphabet.for_asts(a, b)
    for codes in all_strings(alphabet, 4):
        agree = np.array_equal(match_codes(a, codes), match_codes(b, codes))
        if same:
            assert agree
    if not same:
        cex = find_counterexample(a, b)
        assert regex_matches(a, cex) != regex_matches(b, cex)


@quick
@given(seeds)
def test_transitive_on_triples(seed):
    rng = random.Random(seed)
    x = random_regex(rng, 3)
    y = Or((x, x))
    z = And((y, Star(AnyChar())))
    assert regex_equivalent(x, y) and regex_equivalent(y, z) and regex_equivalent(x, z)
