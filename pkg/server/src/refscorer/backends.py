"""Scoring backends: uniform stub, local n-gram model files, and
(optionally) pretrained causal LMs from the transformers hub.

Every backend answers per-position natural-log conditionals for a
marker-wrapped token list, matching the client convention: backward
scorers are sent already-reversed sequences, so no backend reverses
anything itself.
"""

from __future__ import annotations

import math
from typing import Protocol, Sequence

from winoscore import ngram as winoscore_ngram
from winoscore.text import TokenSequence


class Backend(Protocol):
    name: str
    direction: str
    vocab_size: int

    def logprobs(self, tokens: Sequence[str]) -> list[float]: ...


class BackendError(ValueError):
    """Bad request payload for the configured backend."""


class UniformBackend:
    """Every position scores -ln(vocab_size); model-free and deterministic."""

    def __init__(self, vocab_size: int = 1000, direction: str = "forward"):
        if vocab_size < 1:
            raise ValueError("vocab_size must be >= 1")
        self.name = f"uniform-{vocab_size}"
        self.direction = direction
        self.vocab_size = vocab_size

    def logprobs(self, tokens: Sequence[str]) -> list[float]:
        if len(tokens) < 2:
            raise BackendError("sequence needs at least <s> and </s>")
        return [-math.log(self.vocab_size)] * (len(tokens) - 1)


class NgramBackend:
    """Wraps a winoscore model file (the primary's model-container format)."""

    def __init__(self, path: str, direction: str | None = None):
        self.model = winoscore_ngram.load(path)
        if direction is not None and direction != self.model.direction:
            raise ValueError(
                f"model file is {self.model.direction}, server configured {direction}"
            )
        self.name = self.model.name
        self.direction = self.model.direction
        self.vocab_size = self.model.vocab_size

    def logprobs(self, tokens: Sequence[str]) -> list[float]:
        try:
            seq = TokenSequence(tuple(tokens))
        except ValueError as exc:
            raise BackendError(str(exc)) from exc
        return self.model.cond_logprob(seq)


def sum_subtoken_logprobs(
    flat_logprobs: Sequence[float], spans: Sequence[tuple[int, int]]
) -> list[float]:
    """Word-position conditionals from subtoken ones: each word's value is
    the sum of its subtokens' log-probabilities (exact under the chain
    rule)."""
    out = []
    for start, end in spans:
        out.append(math.fsum(flat_logprobs[start:end]))
    return out


class HFBackend:
    """Wraps a pretrained causal LM (lazy transformers/torch import).

    Words are tokenized independently so each request position maps to a
    contiguous subtoken span; the per-word value is the span's logprob sum.
    The end marker scores the model's EOS token.
    """

    def __init__(self, model_id: str, direction: str = "forward", device: str = "cpu"):
        try:
            import torch  # noqa: F401
            from transformers import AutoModelForCausalLM, AutoTokenizer
        except ImportError as exc:
            raise RuntimeError(
                "hf backend needs the optional [hf] dependencies installed"
            ) from exc
        self._torch = __import__("torch")
        self.tokenizer = AutoTokenizer.from_pretrained(model_id)
        self.model = AutoModelForCausalLM.from_pretrained(model_id).to(device).eval()
        self.device = device
        self.name = f"hf:{model_id}"
        self.direction = direction
        self.vocab_size = int(self.tokenizer.vocab_size)
        self._bos = self.tokenizer.bos_token_id
        self._eos = self.tokenizer.eos_token_id
        if self._eos is None:
            raise RuntimeError(f"{model_id} has no EOS token; cannot score </s>")
        if self._bos is None:
            self._bos = self._eos  # GPT-2-style: EOS doubles as document boundary

    def logprobs(self, tokens: Sequence[str]) -> list[float]:
        if len(tokens) < 2:
            raise BackendError("sequence needs at least <s> and </s>")
        words = list(tokens[1:-1])
        ids: list[int] = [self._bos]
        spans: list[tuple[int, int]] = []
        for i, word in enumerate(words):
            text = (" " + word) if i > 0 else word
            piece = self.tokenizer.encode(text, add_special_tokens=False)
            if not piece:
                raise BackendError(f"token {word!r} maps to no subtokens")
            spans.append((len(ids), len(ids) + len(piece)))
            ids.extend(piece)
        spans.append((len(ids), len(ids) + 1))
        ids.append(self._eos)

        torch = self._torch
        with torch.no_grad():
            tensor = torch.tensor([ids], device=self.device)
            logits = self.model(tensor).logits[0]
            logprobs = torch.log_softmax(logits.float(), dim=-1)
            flat = [0.0] + [
                float(logprobs[pos - 1, ids[pos]]) for pos in range(1, len(ids))
            ]
        values = sum_subtoken_logprobs(flat, spans)
        return [min(v, 0.0) for v in values]


def build_backend(
    model: str | None,
    direction: str | None = None,
    stub_vocab_size: int = 1000,
    device: str = "cpu",
) -> Backend:
    """Backend from a ``--model`` spec: None (stub), ngram:PATH, or hf:ID.

    ``direction=None`` adopts the model file's direction (ngram) or
    defaults to forward (stub, hf).
    """
    if not model:
        return UniformBackend(stub_vocab_size, direction or "forward")
    kind, sep, locator = model.partition(":")
    if not sep:
        kind, locator = "ngram", model
    if kind == "ngram":
        return NgramBackend(locator, direction=direction)
    if kind == "hf":
        return HFBackend(locator, direction=direction or "forward", device=device)
    raise ValueError(f"unknown model spec {model!r} (use ngram:PATH or hf:ID)")
