"""Access to the bundled data files.

The labeled sentence sets are hand-written fixtures; the colexification
matrix is synthetic (planted geometry), not real typological data.
"""

from __future__ import annotations

import json
from importlib import resources

import numpy as np

from .classifier import CoarseClass, UsageClass
from .corpus import Population, Pronoun, SentenceRecord, tokenize

__all__ = [
    "labeled_sentences",
    "table1_records",
    "regression_records",
    "synthetic_colex_matrix",
    "default_idiom_patterns",
    "data_path",
]


def data_path(name: str):
    """Filesystem path of a bundled data file."""
    return resources.files("someany").joinpath("data", name)


def labeled_sentences(name: str) -> list[tuple[SentenceRecord, CoarseClass]]:
    text = data_path(name).read_text(encoding="utf-8")
    out = []
    for line in text.splitlines():
        if not line.strip():
            continue
        obj = json.loads(line)
        record = SentenceRecord(
            id=obj["id"],
            tokens=tuple(tokenize(obj["text"])),
            ip_index=obj["ip_index"],
            original=Pronoun.from_lemma(obj["original"]),
            population=Population(obj["population"]),
            raw_text=obj["text"],
        )
        out.append((record, CoarseClass(obj["coarse_class"])))
    return out


def table1_records() -> list[tuple[SentenceRecord, CoarseClass]]:
    """The eight usage-class illustration sentences with expected coarse labels."""
    return labeled_sentences("table1.jsonl")


def regression_records() -> list[tuple[SentenceRecord, CoarseClass]]:
    """The 50-sentence hand-labeled classifier regression set."""
    return labeled_sentences("regression50.jsonl")


def synthetic_colex_matrix() -> tuple[list[UsageClass], np.ndarray, int]:
    """(classes, counts, total_languages) of the synthetic demonstration matrix."""
    from .typology import load_matrix_csv

    names, counts = load_matrix_csv(data_path("synthetic_colex.csv"))
    return [UsageClass(n) for n in names], counts.astype(int), int(counts.max())


def default_idiom_patterns() -> list[str]:
    text = data_path("idioms.txt").read_text(encoding="utf-8")
    return [line.strip() for line in text.splitlines()
            if line.strip() and not line.startswith("#")]
