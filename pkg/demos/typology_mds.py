"""Colexification structure: count matrix -> distances -> 2D MDS layout.

Run with:  python3 demos/typology_mds.py
"""

import warnings
from pathlib import Path

import numpy as np

from someany import ColexMatrix, build_matrix, mds_project, overlap_breadth, to_distance
from someany.data import synthetic_colex_matrix
from someany.typology import load_colex_records

fixtures = Path(__file__).resolve().parents[1] / "fixtures"

records = load_colex_records(fixtures / "colex_records.csv")
matrix = build_matrix(records)
print(f"{matrix.total_languages} synthetic languages, "
      f"{len(matrix.classes)} usage classes")
print(f"share with an English-like broad term pair: "
      f"{overlap_breadth(records):.2f}")
print()

classes, counts, total = synthetic_colex_matrix()
planted = ColexMatrix(classes=tuple(classes), counts=counts, total_languages=total)
with warnings.catch_warnings():
    warnings.simplefilter("ignore")  # integer rounding -> mildly non-Euclidean
    embedding = mds_project(to_distance(planted), dims=2, classes=classes)

print("2D layout of the planted demonstration matrix "
      "(SP, FC, DN sit at the extremes):")
for cls, (x, y) in zip(classes, embedding.coords):
    bar = " " * int(22 + 18 * x)
    print(f"  {cls.value:<5} ({x:+.3f}, {y:+.3f}){bar}*")
print()
print("eigenvalue spectrum:",
      np.array2string(embedding.eigenvalues, precision=4, suppress_small=True))
