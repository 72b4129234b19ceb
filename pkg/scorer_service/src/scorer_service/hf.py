"""Optional backend serving a pretrained HuggingFace masked LM.

Requires the `hf` extra and downloadable (or locally cached) weights.
Scores are pseudo-log-likelihoods with positions batched per sentence,
matching the tiny backend's definition.
"""

from __future__ import annotations

import torch


class HfMaskedScorer:
    def __init__(self, model_name: str, device: str = "cpu", batch_size: int = 32):
        from transformers import AutoModelForMaskedLM, AutoTokenizer

        self.tokenizer = AutoTokenizer.from_pretrained(model_name)
        self.model = AutoModelForMaskedLM.from_pretrained(model_name)
        self.model.to(device).eval()
        self.device = device
        self.batch_size = batch_size
        self.name = model_name

    def n_tokens(self, sentence: str) -> int:
        return len(self.tokenizer(sentence)["input_ids"])

    @torch.no_grad()
    def score_sentence(self, sentence: str) -> float:
        encoded = self.tokenizer(sentence, return_tensors="pt")
        ids = encoded["input_ids"][0].to(self.device)
        mask_id = self.tokenizer.mask_token_id
        special = set(self.tokenizer.all_special_ids)
        positions = [i for i, t in enumerate(ids.tolist()) if t not in special]
        if not positions:
            return 0.0
        total = 0.0
        for lo in range(0, len(positions), self.batch_size):
            chunk = positions[lo:lo + self.batch_size]
            batch = ids.unsqueeze(0).repeat(len(chunk), 1)
            for row, pos in enumerate(chunk):
                batch[row, pos] = mask_id
            logits = self.model(input_ids=batch).logits
            log_probs = torch.log_softmax(logits, dim=-1)
            for row, pos in enumerate(chunk):
                total += float(log_probs[row, pos, ids[pos]])
        return total

    def score_sentences(self, sentences: list[str]) -> list[float]:
        return [self.score_sentence(s) for s in sentences]
