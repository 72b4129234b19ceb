"""Sentence scoring backends: an interpolated n-gram model and a remote client.

Both backends satisfy the same contract: ``score(tokens) -> float`` returns
a log-probability-like value where higher means more probable.  The
detector only ever compares two scores produced by the same backend, so
no calibration across backends is needed.

The native model interpolates maximum-likelihood estimates of orders
1..order, with an add-k floor on the unigram term:

    P(w | h) = lam_n * ML_n(w | h) + ... + lam_2 * ML_2(w | h)
               + lam_1 * (c1(w) + k) / (N1 + k * |V|)

where ML_j is 0 whenever the (j-1)-token history was never observed as a
context.  The add-k term keeps every probability strictly positive.
"""

from __future__ import annotations

import json
import math
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Protocol, Sequence

import requests

__all__ = [
    "Scorer",
    "NgramModel",
    "train",
    "RemoteScorer",
    "ScorerError",
    "TransportError",
    "ProtocolError",
    "save_model",
    "load_model",
]

BOS = "<s>"
EOS = "</s>"
UNK = "<unk>"

MODEL_FORMAT_VERSION = 1


class Scorer(Protocol):
    def score(self, tokens: Sequence[str]) -> float: ...


class ScorerError(RuntimeError):
    """Base for scoring-backend failures."""


class TransportError(ScorerError):
    """Endpoint unreachable or timed out after retries."""


class ProtocolError(ScorerError):
    """Endpoint reachable but the exchange violated the wire protocol."""


class NgramModel:
    """Immutable interpolated n-gram model over lowercased tokens."""

    def __init__(self, order: int, vocab: frozenset[str],
                 counts: dict[int, Counter], lambdas: tuple[float, ...],
                 add_k: float):
        if order < 1:
            raise ValueError("order must be >= 1")
        if len(lambdas) != order:
            raise ValueError(f"need {order} interpolation weights, got {len(lambdas)}")
        if any(lam < 0 for lam in lambdas) or abs(sum(lambdas) - 1.0) > 1e-12:
            raise ValueError("lambdas must be non-negative and sum to 1")
        if add_k <= 0:
            raise ValueError("add_k must be positive")
        if not {BOS, EOS, UNK} <= vocab:
            raise ValueError("vocab must contain the reserved tokens")
        self.order = order
        self.vocab = vocab
        self.counts = counts  # counts[k] maps k-gram tuples to ints
        self.lambdas = tuple(lambdas)  # highest order first
        self.add_k = add_k
        # Context totals per order: contexts[k][h] = sum over w of counts[k][h + (w,)]
        self.contexts: dict[int, Counter] = {}
        for k in range(2, order + 1):
            ctx: Counter = Counter()
            for gram, c in counts[k].items():
                ctx[gram[:-1]] += c
            self.contexts[k] = ctx
        self.unigram_total = sum(counts[1].values())

    def _map(self, token: str) -> str:
        token = token.lower()
        return token if token in self.vocab else UNK

    def next_prob(self, history: Sequence[str], token: str) -> float:
        """Interpolated probability of `token` after `history`.

        Strictly positive for every vocab token; sums to 1 over the vocab
        whenever every history suffix was observed as a context.
        """
        token = self._map(token)
        hist = [self._map(t) for t in history]
        p = 0.0
        for k in range(self.order, 1, -1):
            lam = self.lambdas[self.order - k]
            ctx = tuple(hist[len(hist) - (k - 1):]) if k > 1 else ()
            if len(ctx) < k - 1:
                ctx = (BOS,) * (k - 1 - len(ctx)) + ctx
            denom = self.contexts[k].get(ctx, 0)
            if denom:
                p += lam * self.counts[k].get(ctx + (token,), 0) / denom
        lam1 = self.lambdas[-1]
        v = len(self.vocab)
        p += lam1 * (self.counts[1].get((token,), 0) + self.add_k) / (
            self.unigram_total + self.add_k * v)
        return p

    def score(self, tokens: Sequence[str]) -> float:
        """Natural-log probability of the padded sentence, including </s>."""
        padded = [BOS] * (self.order - 1) + [self._map(t) for t in tokens] + [EOS]
        total = 0.0
        for i in range(self.order - 1, len(padded)):
            total += math.log(self.next_prob(padded[max(0, i - self.order + 1):i],
                                             padded[i]))
        return total


def _default_lambdas(order: int) -> tuple[float, ...]:
    if order == 3:
        return (0.6, 0.3, 0.1)
    return tuple([1.0 / order] * order)


def train(sentences: Sequence[Sequence[str]], order: int = 3,
          lambdas: tuple[float, ...] | None = None, add_k: float = 1.0,
          min_count: int = 1) -> NgramModel:
    """Count n-grams of orders 1..order over lowercased, padded sentences.

    Tokens seen fewer than `min_count` times are mapped to <unk> before
    counting.  Deterministic for a fixed input.
    """
    if not sentences:
        raise ValueError("empty training corpus")
    if lambdas is None:
        lambdas = _default_lambdas(order)

    freq = Counter(t.lower() for sent in sentences for t in sent)
    vocab = frozenset(t for t, c in freq.items() if c >= min_count) | {BOS, EOS, UNK}

    counts: dict[int, Counter] = {k: Counter() for k in range(1, order + 1)}
    for sent in sentences:
        mapped = [t.lower() if t.lower() in vocab else UNK for t in sent]
        padded = [BOS] * (order - 1) + mapped + [EOS]
        for k in range(1, order + 1):
            for i in range(len(padded) - k + 1):
                counts[k][tuple(padded[i:i + k])] += 1
    return NgramModel(order=order, vocab=vocab, counts=counts,
                      lambdas=tuple(lambdas), add_k=add_k)


def save_model(model: NgramModel, path) -> None:
    """Line-based count dump: a JSON header, then `k<TAB>gram<TAB>count` lines."""
    header = {
        "format": "someany-ngram",
        "version": MODEL_FORMAT_VERSION,
        "order": model.order,
        "lambdas": list(model.lambdas),
        "add_k": model.add_k,
        "vocab": sorted(model.vocab),
    }
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, ensure_ascii=False))
        fh.write("\n")
        for k in range(1, model.order + 1):
            for gram in sorted(model.counts[k]):
                fh.write(f"{k}\t{' '.join(gram)}\t{model.counts[k][gram]}\n")


def load_model(path) -> NgramModel:
    with open(path, encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        if header.get("format") != "someany-ngram":
            raise ValueError(f"{path}: not an n-gram model file")
        if header.get("version") != MODEL_FORMAT_VERSION:
            raise ValueError(f"{path}: unsupported model version {header.get('version')}")
        order = header["order"]
        counts: dict[int, Counter] = {k: Counter() for k in range(1, order + 1)}
        for line_number, line in enumerate(fh, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            try:
                k_str, gram_str, count_str = line.split("\t")
                counts[int(k_str)][tuple(gram_str.split(" "))] = int(count_str)
            except (ValueError, KeyError) as exc:
                raise ValueError(f"{path}: bad count line {line_number}") from exc
    return NgramModel(order=order, vocab=frozenset(header["vocab"]),
                      counts=counts, lambdas=tuple(header["lambdas"]),
                      add_k=header["add_k"])


class RemoteScorer:
    """Client for the HTTP scoring protocol: POST /score with a sentence
    batch, equal-length score list back.

    Transient transport failures (connection errors, timeouts) are retried
    with backoff; protocol violations are never retried.
    """

    def __init__(self, endpoint: str, timeout: float = 10.0, max_retries: int = 2,
                 backoff: float = 0.2, batch_size: int = 32,
                 max_concurrency: int = 1):
        if batch_size < 1 or max_concurrency < 1:
            raise ValueError("batch_size and max_concurrency must be >= 1")
        self.endpoint = endpoint.rstrip("/")
        self.timeout = timeout
        self.max_retries = max_retries
        self.backoff = backoff
        self.batch_size = batch_size
        self.max_concurrency = max_concurrency

    def _post_batch(self, sentences: list[str]) -> list[float]:
        url = self.endpoint + "/score"
        last_exc: Exception | None = None
        for attempt in range(self.max_retries + 1):
            if attempt:
                time.sleep(self.backoff * (2 ** (attempt - 1)))
            try:
                response = requests.post(url, json={"sentences": sentences},
                                         timeout=self.timeout)
            except (requests.ConnectionError, requests.Timeout) as exc:
                last_exc = exc
                continue
            return self._parse(response, len(sentences))
        raise TransportError(
            f"{url}: unreachable after {self.max_retries + 1} attempts: {last_exc}"
        ) from last_exc

    @staticmethod
    def _parse(response: requests.Response, expected: int) -> list[float]:
        if response.status_code != 200:
            try:
                detail = response.json().get("error", response.text)
            except ValueError:
                detail = response.text
            raise ProtocolError(f"HTTP {response.status_code}: {detail}")
        try:
            payload = response.json()
        except ValueError as exc:
            raise ProtocolError(f"response is not JSON: {exc}") from exc
        scores = payload.get("scores") if isinstance(payload, dict) else None
        if not isinstance(scores, list):
            raise ProtocolError("response lacks a 'scores' list")
        if len(scores) != expected:
            raise ProtocolError(
                f"score count mismatch: sent {expected} sentences, got {len(scores)}"
            )
        out = []
        for value in scores:
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise ProtocolError(f"non-finite or non-numeric score: {value!r}")
            out.append(float(value))
        return out

    def score_batch(self, sentences: Sequence[str]) -> list[float]:
        """Scores for a sequence of sentence strings, order-aligned."""
        sentences = list(sentences)
        batches = [sentences[i:i + self.batch_size]
                   for i in range(0, len(sentences), self.batch_size)]
        if not batches:
            return []
        if self.max_concurrency == 1 or len(batches) == 1:
            results = [self._post_batch(b) for b in batches]
        else:
            with ThreadPoolExecutor(max_workers=self.max_concurrency) as pool:
                results = list(pool.map(self._post_batch, batches))
        return [s for batch in results for s in batch]

    def score(self, tokens: Sequence[str]) -> float:
        return self.score_batch([" ".join(tokens)])[0]
