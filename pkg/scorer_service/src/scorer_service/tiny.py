"""A small transformer masked LM trained at startup on synthetic text.

The training corpus is generated from templates whose context determines
the correct indefinite pronoun (negated and interrogative contexts take
any- forms, affirmative declaratives some- forms), so the served model
genuinely prefers felicitous pronoun choices without needing downloaded
weights.  Training is seeded; scoring runs in eval mode with no dropout.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import torch
from torch import nn

from .tokenizer import tokenize

PAD, MASK, UNK = "[PAD]", "[MASK]", "[UNK]"

_SUBJECTS = ["they", "we", "you", "the kids", "my friends", "her parents",
             "the students"]
_NEG_AUX = ["did not", "didn't", "don't", "do not", "won't", "couldn't",
            "will not"]
_THING_VERBS = ["see", "hear", "find", "want", "have", "say", "need", "bring"]
_THING_PAST = ["saw", "heard", "found", "wanted", "had", "said", "needed",
               "brought"]
_PERSON_VERBS = ["meet", "know", "call", "invite", "trust"]
_PERSON_PAST = ["met", "knew", "called", "invited", "trusted"]
_TAILS = ["there", "today", "to say", "to offer", "right now", "at the party",
          "yesterday", "in the room"]
_Q_AUX = ["did", "will", "could", "should"]


def template_sentence(rng: random.Random) -> str:
    group = rng.choice(["negation", "question", "affirmative"])
    person = rng.random() < 0.5
    tail = rng.choice(_TAILS)
    if group == "negation":
        pron = "anyone" if person else "anything"
        verb = rng.choice(_PERSON_VERBS if person else _THING_VERBS)
        return f"{rng.choice(_SUBJECTS)} {rng.choice(_NEG_AUX)} {verb} {pron} {tail}."
    if group == "question":
        pron = "anyone" if person else "anything"
        verb = rng.choice(_PERSON_VERBS if person else _THING_VERBS)
        return f"{rng.choice(_Q_AUX)} {rng.choice(_SUBJECTS)} {verb} {pron} {tail}?"
    pron = "someone" if person else "something"
    verb = rng.choice(_PERSON_PAST if person else _THING_PAST)
    return f"{rng.choice(_SUBJECTS)} {verb} {pron} {tail}."


@dataclass(frozen=True)
class TinyConfig:
    seed: int = 0
    corpus_size: int = 1500
    d_model: int = 48
    n_heads: int = 4
    n_layers: int = 2
    ff_dim: int = 96
    dropout: float = 0.1
    epochs: int = 3
    batch_size: int = 256
    learning_rate: float = 3e-3
    max_positions: int = 32
    threads: int = 2


class _MaskedTransformer(nn.Module):
    def __init__(self, vocab_size: int, config: TinyConfig):
        super().__init__()
        self.embed = nn.Embedding(vocab_size, config.d_model)
        self.position = nn.Embedding(config.max_positions, config.d_model)
        layer = nn.TransformerEncoderLayer(
            config.d_model, config.n_heads, config.ff_dim,
            dropout=config.dropout, batch_first=True)
        self.encoder = nn.TransformerEncoder(layer, config.n_layers,
                                             enable_nested_tensor=False)
        self.output = nn.Linear(config.d_model, vocab_size)

    def forward(self, ids: torch.Tensor, pad_mask: torch.Tensor) -> torch.Tensor:
        positions = torch.arange(ids.shape[1], device=ids.device)
        hidden = self.embed(ids) + self.position(positions).unsqueeze(0)
        hidden = self.encoder(hidden, src_key_padding_mask=pad_mask)
        return self.output(hidden)


class TinyMaskedScorer:
    """Pseudo-log-likelihood scorer over the self-trained masked LM."""

    def __init__(self, model: _MaskedTransformer, vocab: list[str],
                 config: TinyConfig, batch_size: int = 64):
        self.model = model.eval()
        self.vocab = vocab
        self.index = {t: i for i, t in enumerate(vocab)}
        self.config = config
        self.batch_size = batch_size
        self.name = "tiny-masked-lm"

    @classmethod
    def train(cls, config: TinyConfig = TinyConfig()) -> "TinyMaskedScorer":
        torch.manual_seed(config.seed)
        torch.set_num_threads(config.threads)
        rng = random.Random(config.seed)
        sentences = [tokenize(template_sentence(rng))
                     for _ in range(config.corpus_size)]
        vocab = [PAD, MASK, UNK] + sorted({t for s in sentences for t in s})
        index = {t: i for i, t in enumerate(vocab)}

        # one training sample per (sentence, masked position)
        samples = []
        for sentence in sentences:
            ids = [index[t] for t in sentence]
            for pos in range(len(ids)):
                masked = list(ids)
                masked[pos] = index[MASK]
                samples.append((masked, pos, ids[pos]))

        model = _MaskedTransformer(len(vocab), config)
        optimizer = torch.optim.Adam(model.parameters(), lr=config.learning_rate)
        loss_fn = nn.CrossEntropyLoss()
        order = list(range(len(samples)))
        for epoch in range(config.epochs):
            random.Random(config.seed + epoch + 1).shuffle(order)
            for lo in range(0, len(order), config.batch_size):
                batch = [samples[i] for i in order[lo:lo + config.batch_size]]
                width = max(len(b[0]) for b in batch)
                ids = torch.full((len(batch), width), index[PAD], dtype=torch.long)
                pad_mask = torch.ones((len(batch), width), dtype=torch.bool)
                for row, (masked, _, _) in enumerate(batch):
                    ids[row, :len(masked)] = torch.tensor(masked)
                    pad_mask[row, :len(masked)] = False
                logits = model(ids, pad_mask)
                picked = logits[range(len(batch)), [b[1] for b in batch]]
                loss = loss_fn(picked, torch.tensor([b[2] for b in batch]))
                optimizer.zero_grad()
                loss.backward()
                optimizer.step()
        return cls(model, vocab, config)

    def n_tokens(self, sentence: str) -> int:
        return len(tokenize(sentence))

    @torch.no_grad()
    def score_sentence(self, sentence: str) -> float:
        """Sum of masked log-probabilities of the true tokens.

        Masked replicas of the sentence are batched across positions; an
        empty sentence scores 0.0.
        """
        tokens = tokenize(sentence)
        if not tokens:
            return 0.0
        unk = self.index[UNK]
        ids = [self.index.get(t, unk) for t in tokens]
        n = len(ids)
        base = torch.tensor(ids, dtype=torch.long)
        total = 0.0
        for lo in range(0, n, self.batch_size):
            positions = list(range(lo, min(lo + self.batch_size, n)))
            batch = base.unsqueeze(0).repeat(len(positions), 1)
            for row, pos in enumerate(positions):
                batch[row, pos] = self.index[MASK]
            pad_mask = torch.zeros(batch.shape, dtype=torch.bool)
            log_probs = torch.log_softmax(self.model(batch, pad_mask), dim=-1)
            for row, pos in enumerate(positions):
                total += float(log_probs[row, pos, ids[pos]])
        return total

    def score_sentences(self, sentences: list[str]) -> list[float]:
        return [self.score_sentence(s) for s in sentences]
