"""Aggregating five-way choice annotations into felicity gold labels.

Run with:  python3 demos/annotation_aggregation.py
"""

from pathlib import Path

from someany import aggregate, infelicity_rate, mean_kappa
from someany.annotation import load_annotation_items

fixtures = Path(__file__).resolve().parents[1] / "fixtures"
items = load_annotation_items(fixtures / "annotations_sample.csv")

print("majority / confidence / gold for the sample annotations:")
aggregates = []
for item in items:
    agg = aggregate(item, threshold=0.8)
    aggregates.append(agg)
    votes = "".join(c.value for c in item.choices)
    print(f"  {item.sentence_id}: wrote {item.original.lemma:<9} votes {votes} "
          f"-> {agg.majority.name:<9} conf {agg.confidence:.1f}  {agg.gold.value}")

print()
print(f"infelicity rate at 0.8: {infelicity_rate(aggregates, 0.8):.3f}")
print(f"infelicity rate at 1.0: {infelicity_rate(aggregates, 1.0):.3f}")

# agreement between the five annotator columns
columns = [[item.choices[k] for item in items] for k in range(5)]
print(f"mean pairwise Cohen kappa across annotators: {mean_kappa(columns):.3f}")
