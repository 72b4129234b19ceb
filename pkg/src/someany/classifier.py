"""Rule-based usage-class assignment for sentences with a marked indefinite pronoun.

Eight fine usage classes are defined; automatic classification targets the
five-way coarse grouping {DN, QU, CD, CP, MIXED}, where MIXED pools the
classes that lexical cues cannot reliably separate (SP, NS, FC, IN).

The classifier is a deterministic left-scan over tokens.  Rules fire in a
fixed precedence:

  1. CP    -- "than" within a small window immediately before the pronoun
  2. QU    -- the sentence's final punctuation token is "?"
  3. CD    -- scanning left from the pronoun, a conditional opener is found
              before any clause-boundary token
  4. DN    -- likewise for a negator
  5. MIXED -- otherwise

Clause-boundary tokens (complementizers, wh-words, commas, ...) stop the
leftward scans so that matrix-clause cues do not leak into embedded clauses;
that is what keeps indirect negation out of DN.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

from .corpus import TERMINAL_PUNCT, SentenceRecord

__all__ = [
    "UsageClass",
    "CoarseClass",
    "RuleConfig",
    "ClassMetrics",
    "EvalReport",
    "classify_usage",
    "evaluate_classifier",
    "load_rule_config",
]


class UsageClass(Enum):
    SP = "SP"  # specific
    NS = "NS"  # non-specific
    QU = "QU"  # question
    CD = "CD"  # conditional
    IN = "IN"  # indirect negation
    DN = "DN"  # direct negation
    CP = "CP"  # comparison
    FC = "FC"  # free choice

    @property
    def coarse(self) -> "CoarseClass":
        return _COARSE[self]


# Classes each pronoun family can express.
SOME_COMPATIBLE = frozenset(
    {UsageClass.SP, UsageClass.NS, UsageClass.QU, UsageClass.CD,
     UsageClass.IN, UsageClass.DN, UsageClass.CP}
)
ANY_COMPATIBLE = frozenset(
    {UsageClass.QU, UsageClass.CD, UsageClass.IN, UsageClass.DN,
     UsageClass.CP, UsageClass.FC}
)


class CoarseClass(Enum):
    DN = "DN"
    QU = "QU"
    CD = "CD"
    CP = "CP"
    MIXED = "MIXED"


_COARSE = {
    UsageClass.SP: CoarseClass.MIXED,
    UsageClass.NS: CoarseClass.MIXED,
    UsageClass.QU: CoarseClass.QU,
    UsageClass.CD: CoarseClass.CD,
    UsageClass.IN: CoarseClass.MIXED,
    UsageClass.DN: CoarseClass.DN,
    UsageClass.CP: CoarseClass.CP,
    UsageClass.FC: CoarseClass.MIXED,
}

DEFAULT_NEGATORS = frozenset(
    {"not", "n't", "never", "no", "none", "nothing", "nobody", "without",
     "neither", "nor", "hardly", "barely", "scarcely"}
)
DEFAULT_CONDITIONAL_OPENERS = frozenset({"if", "unless", "whether", "in case"})
DEFAULT_CLAUSE_BOUNDARIES = frozenset(
    {".", ",", ";", ":", "that", "who", "which", "how", "because", "but",
     "and", "than"}
)


@dataclass(frozen=True)
class RuleConfig:
    """Lexical cue inventory for the classifier.

    Conditional openers may be multiword (space-separated), e.g. "in case";
    they are matched as token bigrams during the leftward scan.
    """

    negators: frozenset[str] = DEFAULT_NEGATORS
    conditional_openers: frozenset[str] = DEFAULT_CONDITIONAL_OPENERS
    clause_boundaries: frozenset[str] = DEFAULT_CLAUSE_BOUNDARIES
    comparison_window: int = 2

    def __post_init__(self):
        for name in ("negators", "conditional_openers", "clause_boundaries"):
            value = getattr(self, name)
            object.__setattr__(self, name, frozenset(t.lower() for t in value))
            if not getattr(self, name):
                raise ValueError(f"{name} must be non-empty")
        if self.comparison_window < 1:
            raise ValueError("comparison_window must be >= 1")


DEFAULT_RULES = RuleConfig()


def _scan_left(tokens: Sequence[str], start: int, cues: frozenset[str],
               boundaries: frozenset[str]) -> bool:
    """True iff a cue token is reached before any boundary token.

    Single-token cues match one token; multiword cues match a contiguous
    run ending at the scan position.
    """
    multiword = [c.split() for c in cues if " " in c]
    for j in range(start - 1, -1, -1):
        tok = tokens[j].lower()
        if tok in cues:
            return True
        for parts in multiword:
            lo = j - len(parts) + 1
            if lo >= 0 and [t.lower() for t in tokens[lo:j + 1]] == parts:
                return True
        if tok in boundaries:
            return False
    return False


def classify_usage(record: SentenceRecord, config: RuleConfig = DEFAULT_RULES) -> CoarseClass:
    """Assign the coarse usage class of the marked pronoun occurrence."""
    tokens = record.tokens
    ip = record.ip_index

    window = tokens[max(0, ip - config.comparison_window):ip]
    if any(t.lower() == "than" for t in window):
        return CoarseClass.CP

    final_punct = next((t for t in reversed(tokens) if t in TERMINAL_PUNCT), None)
    if final_punct == "?":
        return CoarseClass.QU

    if _scan_left(tokens, ip, config.conditional_openers, config.clause_boundaries):
        return CoarseClass.CD

    if _scan_left(tokens, ip, config.negators, config.clause_boundaries):
        return CoarseClass.DN

    return CoarseClass.MIXED


def rule_config_from_kv(kv: Mapping[str, str]) -> RuleConfig:
    """Build a RuleConfig from string key/value pairs.

    List values are whitespace-separated tokens; underscores mark the word
    breaks of multiword entries (in_case -> "in case").
    """
    values: dict[str, object] = {}
    for key, raw in kv.items():
        if key == "comparison_window":
            values[key] = int(raw)
        elif key in ("negators", "conditional_openers", "clause_boundaries"):
            values[key] = frozenset(t.replace("_", " ") for t in raw.split())
        else:
            raise ValueError(f"unknown rule key {key!r}")
    return RuleConfig(**values)


def load_rule_config(path) -> RuleConfig:
    """Read a RuleConfig from a key = value file ('#' lines are comments)."""
    kv: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"line {line_number}: expected 'key = value'")
            key, _, raw = line.partition("=")
            kv[key.strip()] = raw.strip()
    try:
        return rule_config_from_kv(kv)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc


@dataclass(frozen=True)
class ClassMetrics:
    """One-vs-rest metrics; None marks an undefined value (empty denominator)."""

    precision: float | None
    recall: float | None
    f1: float | None


@dataclass(frozen=True)
class EvalReport:
    per_class: Mapping[CoarseClass, ClassMetrics]
    accuracy: float
    n: int
    baseline: float = 0.2  # uniform chance over the five coarse classes


def evaluate_classifier(predictions: Sequence[CoarseClass],
                        gold: Sequence[CoarseClass]) -> EvalReport:
    """Per-class one-vs-rest precision/recall/F1 plus micro accuracy.

    A class never predicted has undefined precision; a class absent from
    the gold labels has undefined recall.  Undefined values are reported
    as None rather than coerced to 0.
    """
    if len(predictions) != len(gold):
        raise ValueError(
            f"length mismatch: {len(predictions)} predictions vs {len(gold)} gold"
        )
    n = len(gold)
    correct = sum(1 for p, g in zip(predictions, gold) if p == g)
    per_class = {}
    for cls in CoarseClass:
        tp = sum(1 for p, g in zip(predictions, gold) if p == cls and g == cls)
        fp = sum(1 for p, g in zip(predictions, gold) if p == cls and g != cls)
        fn = sum(1 for p, g in zip(predictions, gold) if p != cls and g == cls)
        precision = tp / (tp + fp) if tp + fp else None
        recall = tp / (tp + fn) if tp + fn else None
        if precision is None or recall is None or precision + recall == 0:
            f1 = None
        else:
            f1 = 2 * precision * recall / (precision + recall)
        per_class[cls] = ClassMetrics(precision, recall, f1)
    return EvalReport(per_class=per_class, accuracy=correct / n if n else 0.0, n=n)
