"""Template-based synthetic corpus with known felicity gold labels.

Sentences come from three template groups whose context determines the
felicitous pronoun: negated and interrogative contexts call for an any-
form, affirmative declaratives for a some- form.  A chosen fraction of
records is then corrupted by swapping the pronoun for its alternative,
yielding INFELICITOUS gold labels.  Everything is driven by one seeded
generator, so equal seeds give identical corpora.
"""

from __future__ import annotations

import random
from typing import Sequence

from .annotation import GoldLabel
from .corpus import Corpus, Population, Pronoun, SentenceRecord, locate_ips, tokenize

__all__ = ["synth_corpus", "synth_sentences"]

_SUBJECTS = ["They", "We", "You", "The kids", "My friends", "The neighbors",
             "Her parents", "The students"]
_NEG_AUX = ["did not", "didn't", "do not", "don't", "will not", "won't",
            "could not", "couldn't"]
_THING_VERBS = ["see", "hear", "find", "want", "need", "buy", "notice", "bring"]
_THING_VERBS_PAST = ["saw", "heard", "found", "wanted", "needed", "bought",
                     "noticed", "brought"]
_PERSON_VERBS = ["meet", "know", "call", "invite", "recognize", "trust"]
_PERSON_VERBS_PAST = ["met", "knew", "called", "invited", "recognized", "trusted"]
_TAILS = ["there", "yesterday", "at the party", "in the room", "last night",
          "today", "at work", "on the trip"]
_Q_AUX = ["Did", "Will", "Could", "Should"]


def _felicitous_sentence(rng: random.Random) -> tuple[str, Pronoun]:
    """One template instantiation plus the pronoun its context calls for."""
    group = rng.choice(["negation", "question", "affirmative"])
    person = rng.random() < 0.5
    tail = rng.choice(_TAILS)
    if group == "negation":
        pron = Pronoun.ANYONE if person else Pronoun.ANYTHING
        verb = rng.choice(_PERSON_VERBS if person else _THING_VERBS)
        text = f"{rng.choice(_SUBJECTS)} {rng.choice(_NEG_AUX)} {verb} {pron.lemma} {tail}."
    elif group == "question":
        pron = Pronoun.ANYONE if person else Pronoun.ANYTHING
        verb = rng.choice(_PERSON_VERBS if person else _THING_VERBS)
        subject = rng.choice(_SUBJECTS).lower() if rng.random() < 0.5 else "you"
        text = f"{rng.choice(_Q_AUX)} {subject} {verb} {pron.lemma} {tail}?"
    else:
        pron = Pronoun.SOMEONE if person else Pronoun.SOMETHING
        verb = rng.choice(_PERSON_VERBS_PAST if person else _THING_VERBS_PAST)
        text = f"{rng.choice(_SUBJECTS)} {verb} {pron.lemma} {tail}."
    return text, pron


def synth_sentences(seed: int, size: int) -> list[str]:
    """Uncorrupted sentences for language-model training."""
    if size <= 0:
        raise ValueError("size must be positive")
    rng = random.Random(seed)
    return [_felicitous_sentence(rng)[0] for _ in range(size)]


def synth_corpus(seed: int, size: int,
                 corruption_rate: float) -> tuple[Corpus, dict[str, GoldLabel]]:
    """Corpus of `size` records with exactly round(rate * size) corrupted ones.

    Gold labels ride along as extra fields (plus confidence 1.0), so the
    saved file feeds the detection pipeline directly.
    """
    if size <= 0:
        raise ValueError("size must be positive")
    if not 0.0 <= corruption_rate <= 1.0:
        raise ValueError("corruption_rate must be in [0, 1]")
    rng = random.Random(seed)
    sentences = [_felicitous_sentence(rng) for _ in range(size)]
    corrupted = set(rng.sample(range(size), k=round(corruption_rate * size)))

    records = []
    gold: dict[str, GoldLabel] = {}
    extras: dict[str, dict] = {}
    for i, (text, felicitous) in enumerate(sentences):
        pron = felicitous.alternate() if i in corrupted else felicitous
        text = text.replace(felicitous.lemma, pron.lemma)
        tokens = tokenize(text)
        occurrences = locate_ips(tokens)
        assert len(occurrences) == 1, text
        ip_index, found = occurrences[0]
        assert found is pron
        rec_id = f"synth-{i:05d}"
        label = GoldLabel.INFELICITOUS if i in corrupted else GoldLabel.FELICITOUS
        records.append(SentenceRecord(
            id=rec_id,
            tokens=tuple(tokens),
            ip_index=ip_index,
            original=pron,
            population=Population.LEARNER,
            raw_text=text,
        ))
        gold[rec_id] = label
        extras[rec_id] = {"gold": label.value, "confidence": 1.0}
    corpus = Corpus(records=records, source_meta={"extra_fields": extras,
                                                  "generator": "someany.synth",
                                                  "seed": seed})
    return corpus, gold


def training_tokens(sentences: Sequence[str]) -> list[list[str]]:
    """Tokenized sentences ready for lm.train."""
    return [tokenize(s) for s in sentences]
