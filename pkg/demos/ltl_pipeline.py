"""
From patterns to sentences and back
===================================

Builds a few LTL records from the pattern catalog, verbalises them in the
two grammar variants, parses the sentences back, and checks a wrong
prediction with the tableau.
"""
from nl2formal.ltl import eval_trace, ltl_equivalent, parse_ltl, to_compact
from nl2formal.nlgen import gen_pattern_record, ltl_to_nl, nl_to_ltl, rename_aps

for k in range(1, 4):
    r = gen_pattern_record(k, "base", seed=k)
    print(f"k={k}: {r.target}")
    print("      ", r.nl)
    assert nl_to_ltl(r.nl) == parse_ltl(r.target)

# the enriched grammar knows extra phrasings for the same formulas
f = parse_ltl("G (o2 -> G !i1)")
for seed in range(3):
    print(ltl_to_nl(f, "enriched", seed))

# new variable names, same structure
r = gen_pattern_record(2, "base", seed=42)
print(rename_aps(r, seed=1).nl)

# a near miss: the model wrote G where the target has F
target, guess = parse_ltl("G (a -> F b)"), parse_ltl("G (a -> G b)")
verdict = ltl_equivalent(target, guess)
print(to_compact(guess), "equivalent?", verdict.equivalent)
print("witness", verdict.witness, "target:", eval_trace(target, verdict.witness),
      "guess:", eval_trace(guess, verdict.witness))
