"""
Semantic versus syntactic accuracy for regular expressions
===========================================================

Two regexes can differ as text and still describe the same language.
This walk-through compiles both to minimal DFAs and compares them.
"""
from nl2formal.regex import compile_dfa, find_counterexample, parse_regex, print_regex, regex_equivalent

# a model answer and the reference answer: seven or more vowel-bearing words
prediction = parse_regex("((..*[AEIOUaeiou].*){7,})(.*)")
target = parse_regex("((..*[AEIOUaeiou].*)(.*)){7,}")
print("same text?      ", print_regex(prediction) == print_regex(target))
print("same language?  ", regex_equivalent(prediction, target))

# the automaton over the minterm alphabet shared by both regexes
dfa = compile_dfa(target)
print("minimal states: ", dfa.n_states, "over", dfa.alphabet)

# when the languages differ we get a shortest distinguishing string
starts = parse_regex("(dog).*")
ends = parse_regex(".*(dog)")
print("counterexample: ", repr(find_counterexample(starts, ends)))

# intersection and complement are part of the dialect
both = parse_regex("(.*dog.*)&(~(.*truck.*))")
for s in ["dog", "dog truck", "hotdog"]:
    print(f"  {s!r:12} ->", compile_dfa(both).accepts(s))
