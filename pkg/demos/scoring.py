"""
Scoring a predictions file
==========================

Generates a small LTL dataset, fakes a model that sometimes rewrites
formulas into equivalent forms, and prints the report table.
"""
import random

from nl2formal.evaluation import EvalOptions, evaluate
from nl2formal.ltl import parse_ltl, print_ltl, to_nnf
from nl2formal.nlgen import gen_pattern_dataset

records = gen_pattern_dataset(200, "base", seed=0)
rng = random.Random(0)

predictions = {}
for r in records:
    roll = rng.random()
    if roll < 0.6:
        predictions[r.id] = r.target                            # exact copy
    elif roll < 0.85:
        predictions[r.id] = print_ltl(to_nnf(parse_ltl(r.target)))  # same meaning, new text
    elif roll < 0.95:
        predictions[r.id] = r.target.replace("F", "G", 1)       # usually wrong
    else:
        predictions[r.id] = r.target + " &"                     # does not parse

report = evaluate(records, predictions, EvalOptions(domain="ltl", timeout=2.0))
print(report.table())
