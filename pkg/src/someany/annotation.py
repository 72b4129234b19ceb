"""Aggregation of five-way forced-choice pronoun annotations into gold labels.

Each sentence is judged by five annotators choosing between the some- form,
the any- form, or "other".  The majority choice and its vote share (the
confidence) determine a felicity label: an item is infelicitous only when a
confident majority picks the family the author did not use.  Confidence
below the threshold means both pronouns are treated as roughly equally
natural.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Iterable, Sequence

from .corpus import Family, Pronoun

__all__ = [
    "Choice",
    "GoldLabel",
    "AnnotationItem",
    "AnnotationAggregate",
    "aggregate",
    "infelicity_rate",
    "pairwise_kappa",
    "mean_kappa",
    "matches_idiom",
    "load_annotation_items",
    "DEFAULT_IDIOMS",
]

N_ANNOTATORS = 5


class Choice(Enum):
    SOME_FORM = "S"
    ANY_FORM = "A"
    OTHER = "O"

    @property
    def family(self) -> Family | None:
        if self is Choice.SOME_FORM:
            return Family.SOME
        if self is Choice.ANY_FORM:
            return Family.ANY
        return None


class GoldLabel(Enum):
    FELICITOUS = "FELICITOUS"
    INFELICITOUS = "INFELICITOUS"
    LOW_CONFIDENCE = "LOW_CONFIDENCE"
    OTHER_MAJORITY = "OTHER_MAJORITY"


@dataclass(frozen=True)
class AnnotationItem:
    sentence_id: str
    original: Pronoun
    choices: tuple[Choice, ...]

    def __post_init__(self):
        object.__setattr__(self, "choices", tuple(self.choices))
        if len(self.choices) != N_ANNOTATORS:
            raise ValueError(
                f"item {self.sentence_id!r}: expected {N_ANNOTATORS} choices, "
                f"got {len(self.choices)}"
            )


@dataclass(frozen=True)
class AnnotationAggregate:
    """Majority verdict for one sentence.

    `original` is carried along so the gold label can be recomputed at any
    confidence threshold.
    """

    sentence_id: str
    original: Pronoun
    majority: Choice
    confidence: float
    gold: GoldLabel


def _gold_label(majority: Choice, confidence: float, tied: bool,
                original: Pronoun, threshold: float) -> GoldLabel:
    if tied or confidence < threshold:
        return GoldLabel.LOW_CONFIDENCE
    if majority is Choice.OTHER:
        return GoldLabel.OTHER_MAJORITY
    if majority.family is not original.family:
        return GoldLabel.INFELICITOUS
    return GoldLabel.FELICITOUS


def aggregate(item: AnnotationItem, threshold: float = 0.8) -> AnnotationAggregate:
    """Reduce five choices to majority, confidence (= max votes / 5), and gold.

    A 2-2-1 tie goes to LOW_CONFIDENCE (its confidence of 0.4 is below any
    valid threshold anyway); the reported majority is then the first tied
    choice in S < A < O order, for determinism.
    """
    if not 0.5 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0.5, 1.0], got {threshold}")
    votes = Counter(item.choices)
    top = max(votes.values())
    tied_choices = [c for c in Choice if votes.get(c, 0) == top]
    majority = tied_choices[0]
    confidence = top / N_ANNOTATORS
    gold = _gold_label(majority, confidence, len(tied_choices) > 1,
                       item.original, threshold)
    return AnnotationAggregate(
        sentence_id=item.sentence_id,
        original=item.original,
        majority=majority,
        confidence=confidence,
        gold=gold,
    )


def gold_at_threshold(agg: AnnotationAggregate, threshold: float) -> GoldLabel:
    """The aggregate's gold label recomputed at a different threshold."""
    if not 0.5 < threshold <= 1.0:
        raise ValueError(f"threshold must be in (0.5, 1.0], got {threshold}")
    return _gold_label(agg.majority, agg.confidence, False, agg.original, threshold)


def infelicity_rate(aggregates: Sequence[AnnotationAggregate],
                    threshold: float = 0.8) -> float:
    """Share of infelicitous items among those with a some-/any- majority."""
    if not aggregates:
        raise ValueError("no aggregates")
    labels = [gold_at_threshold(a, threshold) for a in aggregates]
    considered = [lab for lab in labels if lab is not GoldLabel.OTHER_MAJORITY]
    if not considered:
        raise ValueError("every item has an OTHER majority")
    return considered.count(GoldLabel.INFELICITOUS) / len(considered)


def pairwise_kappa(a: Sequence, b: Sequence) -> float:
    """Cohen's kappa between two labelings; NaN when chance agreement is 1
    but observed agreement is not."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if not a:
        raise ValueError("empty labelings")
    n = len(a)
    p_o = sum(1 for x, y in zip(a, b) if x == y) / n
    counts_a = Counter(a)
    counts_b = Counter(b)
    p_e = sum(counts_a[c] * counts_b.get(c, 0) for c in counts_a) / (n * n)
    if p_e == 1.0:
        return 1.0 if p_o == 1.0 else math.nan
    return (p_o - p_e) / (1.0 - p_e)


def mean_kappa(labelings: Sequence[Sequence]) -> float:
    """Mean pairwise Cohen's kappa over all unordered annotator pairs."""
    if len(labelings) < 2:
        raise ValueError("need at least two labelings")
    kappas = [pairwise_kappa(a, b) for a, b in combinations(labelings, 2)]
    defined = [k for k in kappas if not math.isnan(k)]
    if not defined:
        return math.nan
    return sum(defined) / len(defined)


# Stand-in idiom stoplist; the patterns are token sequences that must span
# the marked pronoun.  Replace with a curated list for real studies.
DEFAULT_IDIOMS = (
    "or something",
    "or anything",
    "anything but",
    "if anything",
    "something of a",
    "or someone",
    "or anyone",
)


def matches_idiom(tokens: Sequence[str], ip_index: int,
                  patterns: Iterable[str] = DEFAULT_IDIOMS) -> str | None:
    """The first idiom pattern covering the marked token, or None.

    A pattern is a space-separated token sequence; it matches when it occurs
    contiguously (case-insensitive) and the occurrence spans ip_index.
    """
    lowered = [t.lower() for t in tokens]
    for pattern in patterns:
        parts = pattern.lower().split()
        width = len(parts)
        for start in range(max(0, ip_index - width + 1), ip_index + 1):
            if lowered[start:start + width] == parts:
                return pattern
    return None


def load_annotation_items(path) -> list[AnnotationItem]:
    """Read `sentence_id,original,c1..c5` lines with choice codes S/A/O."""
    items = []
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = [p.strip() for p in line.split(",")]
            if len(parts) != 2 + N_ANNOTATORS:
                raise ValueError(
                    f"line {line_number}: expected {2 + N_ANNOTATORS} fields, "
                    f"got {len(parts)}"
                )
            try:
                items.append(AnnotationItem(
                    sentence_id=parts[0],
                    original=Pronoun.from_lemma(parts[1]),
                    choices=tuple(Choice(code.upper()) for code in parts[2:]),
                ))
            except ValueError as exc:
                raise ValueError(f"line {line_number}: {exc}") from exc
    return items
