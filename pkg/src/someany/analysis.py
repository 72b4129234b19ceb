"""Infelicity detection and the statistics reported over detection results.

Detection is substitution-based: score the sentence as written and with the
pronoun swapped for its alternative; the model's choice is the higher-scoring
variant, with ties kept on the original (conservative flagging).  A sentence
is predicted infelicitous iff the model prefers the alternative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .annotation import AnnotationAggregate, GoldLabel, gold_at_threshold
from .classifier import CoarseClass
from .corpus import Family, Population, Pronoun, SentenceRecord, substitute
from .lm import Scorer, ScorerError

__all__ = [
    "DetectionOutcome",
    "LabelMetrics",
    "DetectionReport",
    "ClassDistribution",
    "detect",
    "detect_all",
    "binary_report",
    "detection_report",
    "infelicity_by_class",
    "usage_shares",
    "two_proportion_test",
    "confusion_direction",
]


@dataclass(frozen=True)
class DetectionOutcome:
    sentence_id: str
    original: Pronoun
    model_choice: Pronoun
    score_original: float
    score_alternative: float
    predicted: GoldLabel  # FELICITOUS or INFELICITOUS

    @property
    def flagged(self) -> bool:
        return self.predicted is GoldLabel.INFELICITOUS


def detect(record: SentenceRecord, scorer: Scorer) -> DetectionOutcome:
    """Score both pronoun variants and keep the argmax (ties to the original)."""
    try:
        score_original = scorer.score(record.tokens)
        score_alternative = scorer.score(substitute(record))
    except ScorerError as exc:
        exc.sentence_id = record.id
        exc.args = (f"{record.id}: {exc.args[0]}",) if exc.args else (record.id,)
        raise
    if score_alternative > score_original:
        model_choice = record.original.alternate()
    else:
        model_choice = record.original
    predicted = (GoldLabel.INFELICITOUS if model_choice is not record.original
                 else GoldLabel.FELICITOUS)
    return DetectionOutcome(
        sentence_id=record.id,
        original=record.original,
        model_choice=model_choice,
        score_original=score_original,
        score_alternative=score_alternative,
        predicted=predicted,
    )


def detect_all(records: Sequence[SentenceRecord], scorer: Scorer) -> list[DetectionOutcome]:
    """Detection over many records; batches both variants when the scorer
    supports score_batch, preserving input order."""
    records = list(records)
    if not hasattr(scorer, "score_batch"):
        return [detect(record, scorer) for record in records]
    sentences = []
    for record in records:
        sentences.append(" ".join(record.tokens))
        sentences.append(" ".join(substitute(record)))
    scores = scorer.score_batch(sentences)
    outcomes = []
    for i, record in enumerate(records):
        s_orig, s_alt = scores[2 * i], scores[2 * i + 1]
        choice = record.original.alternate() if s_alt > s_orig else record.original
        outcomes.append(DetectionOutcome(
            sentence_id=record.id,
            original=record.original,
            model_choice=choice,
            score_original=s_orig,
            score_alternative=s_alt,
            predicted=(GoldLabel.INFELICITOUS if choice is not record.original
                       else GoldLabel.FELICITOUS),
        ))
    return outcomes


@dataclass(frozen=True)
class LabelMetrics:
    precision: float | None
    recall: float | None
    f1: float | None


@dataclass(frozen=True)
class DetectionReport:
    """Per-label detection quality in the layout of the evaluation tables:
    P/R/F1 for the infelicitous and correct classes, overall accuracy, and
    the majority-class baseline."""

    infelicitous: LabelMetrics
    felicitous: LabelMetrics
    accuracy: float
    baseline_accuracy: float
    n: int
    threshold: float | None = None

    def to_dict(self) -> dict:
        def metrics(m: LabelMetrics) -> dict:
            return {"precision": m.precision, "recall": m.recall, "f1": m.f1}

        return {
            "n": self.n,
            "threshold": self.threshold,
            "accuracy": self.accuracy,
            "baseline_accuracy": self.baseline_accuracy,
            "infelicitous": metrics(self.infelicitous),
            "felicitous": metrics(self.felicitous),
        }


def _label_metrics(pairs: Sequence[tuple[GoldLabel, GoldLabel]],
                   positive: GoldLabel) -> LabelMetrics:
    tp = sum(1 for g, p in pairs if g is positive and p is positive)
    fp = sum(1 for g, p in pairs if g is not positive and p is positive)
    fn = sum(1 for g, p in pairs if g is positive and p is not positive)
    precision = tp / (tp + fp) if tp + fp else None
    recall = tp / (tp + fn) if tp + fn else None
    if precision is None or recall is None or precision + recall == 0:
        f1 = None
    else:
        f1 = 2 * precision * recall / (precision + recall)
    return LabelMetrics(precision, recall, f1)


def binary_report(pairs: Sequence[tuple[GoldLabel, GoldLabel]],
                  threshold: float | None = None) -> DetectionReport:
    """Report from (gold, predicted) pairs restricted to the two felicity labels."""
    for g, p in pairs:
        if g not in (GoldLabel.FELICITOUS, GoldLabel.INFELICITOUS):
            raise ValueError(f"gold label {g} is not binary")
        if p not in (GoldLabel.FELICITOUS, GoldLabel.INFELICITOUS):
            raise ValueError(f"predicted label {p} is not binary")
    n = len(pairs)
    if n == 0:
        raise ValueError("no items to report on")
    correct = sum(1 for g, p in pairs if g is p)
    gold_infelicitous = sum(1 for g, _ in pairs if g is GoldLabel.INFELICITOUS)
    majority = max(gold_infelicitous, n - gold_infelicitous)
    return DetectionReport(
        infelicitous=_label_metrics(pairs, GoldLabel.INFELICITOUS),
        felicitous=_label_metrics(pairs, GoldLabel.FELICITOUS),
        accuracy=correct / n,
        baseline_accuracy=majority / n,
        n=n,
        threshold=threshold,
    )


def detection_report(outcomes: Sequence[DetectionOutcome],
                     aggregates: Sequence[AnnotationAggregate],
                     min_confidence: float = 0.8) -> DetectionReport:
    """Join outcomes with gold annotation by sentence id and evaluate.

    Items whose recomputed gold is LOW_CONFIDENCE or OTHER_MAJORITY at
    `min_confidence` are excluded (both pronouns roughly equally preferred,
    or neither preferred).  Passing 1.0 keeps unanimous items only.
    """
    by_id = {a.sentence_id: a for a in aggregates}
    pairs = []
    for outcome in outcomes:
        agg = by_id.get(outcome.sentence_id)
        if agg is None:
            continue
        gold = gold_at_threshold(agg, min_confidence)
        if gold in (GoldLabel.FELICITOUS, GoldLabel.INFELICITOUS):
            pairs.append((gold, outcome.predicted))
    if not pairs:
        raise ValueError(f"no items left after the {min_confidence} confidence filter")
    return binary_report(pairs, threshold=min_confidence)


@dataclass(frozen=True)
class ClassInfelicity:
    annotated: int
    infelicitous: int

    @property
    def percent(self) -> float:
        return 100.0 * self.infelicitous / self.annotated


def infelicity_by_class(gold: Sequence[GoldLabel],
                        classes: Sequence[CoarseClass]) -> dict[CoarseClass, ClassInfelicity]:
    """Annotated and infelicitous counts per coarse class.

    Works on gold labels or on model predictions; classes with no items are
    simply absent from the result.
    """
    if len(gold) != len(classes):
        raise ValueError(f"length mismatch: {len(gold)} labels vs {len(classes)} classes")
    out: dict[CoarseClass, ClassInfelicity] = {}
    for cls in CoarseClass:
        idx = [i for i, c in enumerate(classes) if c is cls]
        if not idx:
            continue
        bad = sum(1 for i in idx if gold[i] is GoldLabel.INFELICITOUS)
        out[cls] = ClassInfelicity(annotated=len(idx), infelicitous=bad)
    return out


def _phi_two_sided(z: float) -> float:
    """Two-sided normal tail probability."""
    return math.erfc(abs(z) / math.sqrt(2.0))


def two_proportion_test(k1: int, n1: int, k2: int, n2: int) -> tuple[float, str]:
    """Pooled two-proportion z statistic and the two-marker significance label.

    z = (p1 - p2) / sqrt(p_hat (1 - p_hat) (1/n1 + 1/n2)) with the pooled
    p_hat; the marker is "***" iff the two-sided p-value is below .001,
    otherwise "ns".  Degenerate pooled variance with differing proportions
    yields the marker "degenerate".
    """
    if n1 <= 0 or n2 <= 0:
        raise ValueError("sample sizes must be positive")
    if not (0 <= k1 <= n1 and 0 <= k2 <= n2):
        raise ValueError("counts must lie within their sample sizes")
    p1, p2 = k1 / n1, k2 / n2
    pooled = (k1 + k2) / (n1 + n2)
    variance = pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2)
    if variance == 0.0:
        if p1 == p2:
            return 0.0, "ns"
        return math.copysign(math.inf, p1 - p2), "degenerate"
    z = (p1 - p2) / math.sqrt(variance)
    return z, ("***" if _phi_two_sided(z) < 0.001 else "ns")


@dataclass(frozen=True)
class ShareCell:
    some_count: int
    any_count: int

    @property
    def total(self) -> int:
        return self.some_count + self.any_count

    @property
    def some_share(self) -> float:
        return self.some_count / self.total

    @property
    def any_share(self) -> float:
        return self.any_count / self.total


TOTAL_KEY = "total"


@dataclass(frozen=True)
class ClassDistribution:
    """some-/any- counts per (usage class, population), with significance
    markers for each non-native population against the native one.

    Cell keys are coarse-class names plus "total"; markers are absent when
    either side of a comparison has no data.
    """

    cells: Mapping[tuple[str, Population], ShareCell]
    markers: Mapping[tuple[str, Population], str]


def usage_shares(records: Sequence[SentenceRecord],
                 classes: Sequence[CoarseClass]) -> ClassDistribution:
    if len(records) != len(classes):
        raise ValueError("records and classes must align")
    counts: dict[tuple[str, Population], list[int]] = {}
    for record, cls in zip(records, classes):
        for key in (cls.value, TOTAL_KEY):
            cell = counts.setdefault((key, record.population), [0, 0])
            if record.original.family is Family.SOME:
                cell[0] += 1
            else:
                cell[1] += 1
    cells = {key: ShareCell(*pair) for key, pair in counts.items()}
    markers: dict[tuple[str, Population], str] = {}
    for (key, population), cell in cells.items():
        if population is Population.NATIVE:
            continue
        native = cells.get((key, Population.NATIVE))
        if native is None or native.total == 0 or cell.total == 0:
            continue
        _, marker = two_proportion_test(cell.some_count, cell.total,
                                        native.some_count, native.total)
        markers[(key, population)] = marker
    return ClassDistribution(cells=cells, markers=markers)


def confusion_direction(aggregates: Sequence[AnnotationAggregate],
                        threshold: float = 0.8) -> dict[str, float | None]:
    """Directional error rates at a confidence threshold.

    Among items whose confident majority is the some- form, the fraction
    written with an any- pronoun, and vice versa.  None marks an empty
    stratum.
    """
    strata = {Family.SOME: [0, 0], Family.ANY: [0, 0]}  # [mismatches, total]
    for agg in aggregates:
        gold = gold_at_threshold(agg, threshold)
        if gold not in (GoldLabel.FELICITOUS, GoldLabel.INFELICITOUS):
            continue
        preferred = agg.majority.family
        stratum = strata[preferred]
        stratum[1] += 1
        if agg.original.family is not preferred:
            stratum[0] += 1

    def rate(stratum: list[int]) -> float | None:
        return stratum[0] / stratum[1] if stratum[1] else None

    return {
        "some_preferred_any_used": rate(strata[Family.SOME]),
        "any_preferred_some_used": rate(strata[Family.ANY]),
    }
