"""FastAPI application exposing the scoring wire protocol.

POST /score   {"sentences": ["...", ...]} -> {"scores": [float, ...]}
GET  /health  -> {"model": "<name>", "ready": true}

Every error response carries a JSON {"error": "..."} body.  Requests with
a sentence longer than the configured token limit are refused with 413.
"""

from __future__ import annotations

import math

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def create_app(scorer, max_tokens: int = 64) -> FastAPI:
    app = FastAPI(title="scorer-service", docs_url=None, redoc_url=None)

    @app.exception_handler(Exception)
    async def unhandled(request: Request, exc: Exception) -> JSONResponse:
        return _error(500, f"internal error: {exc}")

    @app.get("/health")
    async def health():
        return {"model": scorer.name, "ready": True}

    @app.post("/score")
    async def score(request: Request):
        try:
            body = await request.json()
        except Exception:
            return _error(400, "request body is not valid JSON")
        if not isinstance(body, dict) or "sentences" not in body:
            return _error(400, "expected a JSON object with a 'sentences' list")
        sentences = body["sentences"]
        if not isinstance(sentences, list) or any(
                not isinstance(s, str) for s in sentences):
            return _error(400, "'sentences' must be a list of strings")
        for i, sentence in enumerate(sentences):
            n = scorer.n_tokens(sentence)
            if n > max_tokens:
                return _error(
                    413, f"sentence {i} has {n} tokens, limit is {max_tokens}")
        scores = scorer.score_sentences(sentences)
        if any(not math.isfinite(s) for s in scores):
            return _error(500, "model produced a non-finite score")
        return {"scores": scores}

    return app
