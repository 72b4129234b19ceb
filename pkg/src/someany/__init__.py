"""Toolkit for analysing English some-/any- indefinite pronoun usage:
rule-based usage-class assignment, annotation aggregation, colexification
typology via MDS, and substitution-based infelicity detection."""

from .annotation import (
    AnnotationAggregate,
    AnnotationItem,
    Choice,
    GoldLabel,
    aggregate,
    infelicity_rate,
    matches_idiom,
    mean_kappa,
    pairwise_kappa,
)
from .analysis import (
    ClassDistribution,
    DetectionOutcome,
    DetectionReport,
    binary_report,
    confusion_direction,
    detect,
    detect_all,
    detection_report,
    infelicity_by_class,
    two_proportion_test,
    usage_shares,
)
from .classifier import (
    CoarseClass,
    EvalReport,
    RuleConfig,
    UsageClass,
    classify_usage,
    evaluate_classifier,
    load_rule_config,
)
from .corpus import (
    Corpus,
    CorpusFormatError,
    Family,
    Population,
    Pronoun,
    SentenceRecord,
    load_corpus,
    locate_ips,
    save_corpus,
    substitute,
    tokenize,
)
from .lm import (
    NgramModel,
    ProtocolError,
    RemoteScorer,
    ScorerError,
    TransportError,
    load_model,
    save_model,
    train,
)
from .synth import synth_corpus, synth_sentences
from .typology import (
    ColexMatrix,
    ColexRecord,
    Embedding2D,
    build_matrix,
    mds_project,
    overlap_breadth,
    to_distance,
)

__version__ = "0.1.0"
