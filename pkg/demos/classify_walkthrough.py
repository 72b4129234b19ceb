"""Walk through the rule-based usage classifier on the bundled sentence set.

Run with:  python3 demos/classify_walkthrough.py
"""

from someany import classify_usage, tokenize
from someany.data import table1_records

print("Tokenization splits whitespace, terminal punctuation, and the n't clitic:")
print("  ", tokenize("They didn't stole something."))
print()

print("Coarse usage classes for the illustration sentences")
print("(rule precedence: CP > QU > CD > DN > MIXED):")
print()
for record, expected in table1_records():
    got = classify_usage(record)
    flag = "ok " if got is expected else "BAD"
    print(f"  [{flag}] {got.value:<5} {record.raw_text}")
