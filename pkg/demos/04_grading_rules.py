"""
Grading relevance with fuzzy rules
==================================

Three inputs (normalised SWF, granularity match, expression overlap) feed a
nine-rule Mamdani base. Its output sits near 0.7 for highly relevant, 0.5
for moderately relevant and 0.1 for irrelevant documents.
"""
import numpy as np

from fuzzygir.config import Config
from fuzzygir.fuzzy import FuzzyRuleBase

rb = FuzzyRuleBase.from_config(Config().fuzzy["rulebase"])
for rule in rb.rules:
    print(rule)

print("\nrelevance with overlap = 1 (rows: swf, columns: gran)")
grid = np.linspace(0, 1, 6)
print("      " + " ".join(f"{g:5.1f}" for g in grid))
for swf in grid:
    row = [rb.infer({"swf": swf, "gran": g, "overlap": 1.0})[0] for g in grid]
    print(f"{swf:5.1f} " + " ".join(f"{v:5.2f}" for v in row))

value, trace = rb.infer({"swf": 0.5, "gran": 1.0, "overlap": 0.3})
print(f"\nswf 0.5, gran 1, overlap 0.3 -> {value:.3f}")
for rule, act in trace:
    if act > 0:
        print(f"  {act:.2f}  {rule}")
