"""Service entry point: load or train a model, then serve the scoring API."""

from __future__ import annotations

import argparse
import os
import sys

import uvicorn

from .app import create_app
from .tiny import TinyConfig, TinyMaskedScorer

ENV_PREFIX = "SCORER_SERVICE_"


def _env(name: str, default: str) -> str:
    return os.environ.get(ENV_PREFIX + name, default)


def build_scorer(spec: str, device: str, batch_size: int, seed: int,
                 train_size: int, epochs: int):
    if spec == "tiny":
        config = TinyConfig(seed=seed, corpus_size=train_size, epochs=epochs)
        print(f"training tiny masked LM (seed {seed}, {train_size} sentences, "
              f"{epochs} epochs)...", file=sys.stderr)
        scorer = TinyMaskedScorer.train(config)
        scorer.batch_size = batch_size
        return scorer
    if spec.startswith("hf:"):
        from .hf import HfMaskedScorer

        return HfMaskedScorer(spec[3:], device=device, batch_size=batch_size)
    raise ValueError(f"unknown model spec {spec!r} (use 'tiny' or 'hf:NAME')")


def main() -> None:
    parser = argparse.ArgumentParser(
        prog="scorer-service",
        description="masked-LM pseudo-log-likelihood scoring service")
    parser.add_argument("--model", default=_env("MODEL", "tiny"),
                        help="'tiny' (self-trained) or 'hf:NAME' (default tiny)")
    parser.add_argument("--host", default=_env("HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(_env("PORT", "8400")))
    parser.add_argument("--device", default=_env("DEVICE", "cpu"))
    parser.add_argument("--batch-size", type=int,
                        default=int(_env("BATCH_SIZE", "64")),
                        help="positions scored per forward pass")
    parser.add_argument("--max-tokens", type=int,
                        default=int(_env("MAX_TOKENS", "64")),
                        help="longest accepted sentence, in tokens")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--train-size", type=int, default=1500,
                        help="tiny backend: training sentences")
    parser.add_argument("--epochs", type=int, default=3,
                        help="tiny backend: training epochs")
    args = parser.parse_args()

    try:
        scorer = build_scorer(args.model, args.device, args.batch_size,
                              args.seed, args.train_size, args.epochs)
    except Exception as exc:
        print(f"scorer-service: cannot load model {args.model!r}: {exc}",
              file=sys.stderr)
        sys.exit(1)

    app = create_app(scorer, max_tokens=args.max_tokens)
    print(f"serving {scorer.name} on {args.host}:{args.port}", file=sys.stderr)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")


if __name__ == "__main__":
    main()
