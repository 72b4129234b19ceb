"""Sentence corpus data model: tokenization, indefinite-pronoun handling, JSONL I/O.

A corpus is a sequence of sentences, each carrying exactly one marked
occurrence of a target indefinite pronoun (someone/anyone/something/anything).
Sentences with several target pronouns yield one record per occurrence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

__all__ = [
    "Pronoun",
    "Family",
    "Population",
    "SentenceRecord",
    "Corpus",
    "CorpusFormatError",
    "tokenize",
    "locate_ips",
    "substitute",
    "load_corpus",
    "save_corpus",
]

# Punctuation peeled off the end of whitespace chunks, one mark at a time.
TERMINAL_PUNCT = {".", "?", "!", ",", ";", ":"}


class Family(Enum):
    SOME = "SOME"
    ANY = "ANY"


class Pronoun(Enum):
    SOMEONE = "someone"
    ANYONE = "anyone"
    SOMETHING = "something"
    ANYTHING = "anything"

    @property
    def lemma(self) -> str:
        return self.value

    @property
    def family(self) -> Family:
        return Family.SOME if self.value.startswith("some") else Family.ANY

    def alternate(self) -> "Pronoun":
        """The other member of the some-/any- pair (someone<->anyone etc.)."""
        return _ALTERNATES[self]

    @classmethod
    def from_lemma(cls, lemma: str) -> "Pronoun":
        try:
            return cls(lemma.lower())
        except ValueError:
            raise ValueError(f"not a target indefinite pronoun: {lemma!r}") from None


_ALTERNATES = {
    Pronoun.SOMEONE: Pronoun.ANYONE,
    Pronoun.ANYONE: Pronoun.SOMEONE,
    Pronoun.SOMETHING: Pronoun.ANYTHING,
    Pronoun.ANYTHING: Pronoun.SOMETHING,
}

_LEMMAS = {p.value: p for p in Pronoun}


class Population(Enum):
    NATIVE = "NATIVE"
    ADVANCED_L2 = "ADVANCED_L2"
    LEARNER = "LEARNER"


class CorpusFormatError(ValueError):
    """Raised for malformed corpus files; carries the offending line number."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


def tokenize(raw_text: str) -> list[str]:
    """Split text into tokens: whitespace, terminal punctuation, and "n't".

    Whitespace-separated chunks have terminal punctuation marks
    (. ? ! , ; :) peeled off the end one at a time, and a trailing
    "n't" clitic split into its own token.  Casing is preserved.
    """
    tokens: list[str] = []
    for chunk in raw_text.split():
        trailing: list[str] = []
        while len(chunk) > 1 and chunk[-1] in TERMINAL_PUNCT:
            trailing.append(chunk[-1])
            chunk = chunk[:-1]
        if len(chunk) > 3 and chunk[-3:].lower() == "n't":
            tokens.append(chunk[:-3])
            tokens.append(chunk[-3:])
        else:
            tokens.append(chunk)
        tokens.extend(reversed(trailing))
    return tokens


def locate_ips(tokens: Sequence[str]) -> list[tuple[int, Pronoun]]:
    """All positions holding one of the four target lemmas, in order.

    Only someone/anyone/something/anything are matched; the -body forms
    are deliberately not targets.
    """
    found = []
    for i, tok in enumerate(tokens):
        pron = _LEMMAS.get(tok.lower())
        if pron is not None:
            found.append((i, pron))
    return found


@dataclass(frozen=True)
class SentenceRecord:
    """One sentence with a single marked indefinite-pronoun occurrence."""

    id: str
    tokens: tuple[str, ...]
    ip_index: int
    original: Pronoun
    population: Population
    raw_text: str

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not 0 <= self.ip_index < len(self.tokens):
            raise ValueError(
                f"record {self.id!r}: ip_index {self.ip_index} out of range "
                f"for {len(self.tokens)} tokens"
            )
        if self.tokens[self.ip_index].lower() != self.original.lemma:
            raise ValueError(
                f"record {self.id!r}: token {self.tokens[self.ip_index]!r} at "
                f"ip_index {self.ip_index} does not match {self.original.lemma!r}"
            )


def _copy_case(template: str, replacement: str) -> str:
    if len(template) > 1 and template.isupper():
        return replacement.upper()
    if template[:1].isupper():
        return replacement.capitalize()
    return replacement


def substitute(record: SentenceRecord) -> tuple[str, ...]:
    """Token sequence with the marked pronoun swapped for its alternative.

    The initial-capital / all-caps pattern of the replaced token is copied;
    any other pronoun occurrences in the sentence are left untouched.
    Applying twice returns the original tokens.
    """
    replaced = _copy_case(record.tokens[record.ip_index], record.original.alternate().lemma)
    tokens = list(record.tokens)
    tokens[record.ip_index] = replaced
    return tuple(tokens)


@dataclass
class Corpus:
    """A sequence of records with unique ids plus free-form per-source metadata."""

    records: list[SentenceRecord] = field(default_factory=list)
    source_meta: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for rec in self.records:
            if rec.id in seen:
                raise ValueError(f"duplicate record id: {rec.id!r}")
            seen.add(rec.id)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


_KNOWN_FIELDS = {"id", "text", "ip_index", "original", "population"}


def _record_from_json(obj: dict, line_number: int) -> tuple[SentenceRecord, dict]:
    missing = _KNOWN_FIELDS - obj.keys()
    if missing:
        raise CorpusFormatError(f"missing fields: {sorted(missing)}", line_number)
    try:
        record = SentenceRecord(
            id=str(obj["id"]),
            tokens=tuple(tokenize(obj["text"])),
            ip_index=int(obj["ip_index"]),
            original=Pronoun.from_lemma(obj["original"]),
            population=Population(obj["population"]),
            raw_text=obj["text"],
        )
    except (ValueError, TypeError) as exc:
        raise CorpusFormatError(str(exc), line_number) from exc
    extras = {k: v for k, v in obj.items() if k not in _KNOWN_FIELDS}
    return record, extras


def iter_corpus(path) -> Iterable[tuple[SentenceRecord, dict]]:
    """Stream (record, extra-fields) pairs from a JSONL corpus file."""
    with open(path, encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"invalid JSON ({exc.msg})", line_number) from exc
            if not isinstance(obj, dict):
                raise CorpusFormatError("record is not a JSON object", line_number)
            yield _record_from_json(obj, line_number)


def load_corpus(path) -> Corpus:
    """Load a JSONL corpus; unknown per-record fields land in source_meta."""
    records: list[SentenceRecord] = []
    extras: dict[str, dict] = {}
    seen: set[str] = set()
    for line_number, (record, extra) in enumerate(iter_corpus(path), start=1):
        if record.id in seen:
            raise CorpusFormatError(f"duplicate record id {record.id!r}", line_number)
        seen.add(record.id)
        records.append(record)
        if extra:
            extras[record.id] = extra
    corpus = Corpus(records=records)
    if extras:
        corpus.source_meta["extra_fields"] = extras
    return corpus


def record_to_json(record: SentenceRecord, extra: dict | None = None) -> str:
    obj = {
        "id": record.id,
        "text": record.raw_text,
        "ip_index": record.ip_index,
        "original": record.original.lemma,
        "population": record.population.value,
    }
    if extra:
        obj.update({k: v for k, v in extra.items() if k not in _KNOWN_FIELDS})
    return json.dumps(obj, ensure_ascii=False)


def save_corpus(corpus: Corpus, path) -> None:
    """Write one JSON object per line; round-trips with load_corpus."""
    extras = corpus.source_meta.get("extra_fields", {})
    with open(path, "w", encoding="utf-8") as fh:
        for record in corpus.records:
            fh.write(record_to_json(record, extras.get(record.id)))
            fh.write("\n")
