"""FastAPI application implementing the scoring wire protocol.

Endpoints match the winoscore client exactly:

* ``POST /score``  {"id": str, "sequences": [[tok, ...], ...]} ->
  {"id": str, "logprobs": [[float, ...], ...]} with len(seq)-1 natural-log
  values per sequence;
* ``GET /health``  {"name": str, "direction": str, "vocab_size": int}.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .backends import Backend, BackendError

DEFAULT_MAX_BATCH = 256


class ScoreRequest(BaseModel):
    id: str
    sequences: list[list[str]]


class ScoreResponse(BaseModel):
    id: str
    logprobs: list[list[float]]


class HealthResponse(BaseModel):
    name: str
    direction: str
    vocab_size: int


def create_app(backend: Backend, max_batch: int = DEFAULT_MAX_BATCH) -> FastAPI:
    app = FastAPI(title="refscorer", version="0.1.0")

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(
            name=backend.name,
            direction=backend.direction,
            vocab_size=backend.vocab_size,
        )

    @app.post("/score", response_model=ScoreResponse)
    def score(request: ScoreRequest) -> ScoreResponse:
        if not request.sequences:
            raise HTTPException(status_code=400, detail="empty batch")
        if len(request.sequences) > max_batch:
            raise HTTPException(
                status_code=413,
                detail=f"batch of {len(request.sequences)} exceeds limit {max_batch}",
            )
        out = []
        for i, seq in enumerate(request.sequences):
            try:
                out.append(backend.logprobs(seq))
            except BackendError as exc:
                raise HTTPException(status_code=400, detail=f"sequence {i}: {exc}")
        return ScoreResponse(id=request.id, logprobs=out)

    return app
