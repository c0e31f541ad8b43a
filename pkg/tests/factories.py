"""Randomized toy builders shared by property-style tests."""

from __future__ import annotations

import random

from winoscore.dataset import SchemaQuestion, validate
from winoscore.ngram import JelinekMercer, Laplace, train_word_ngram
from winoscore.text import TokenSequence

WORDS = ["ash", "bay", "coal", "dew", "elm", "fog", "gull", "hay", "ice", "jet"]

JM_BY_ORDER = {1: (1.0,), 2: (0.3, 0.7), 3: (0.2, 0.3, 0.5)}


def random_corpus(rng: random.Random, n_sentences: int = 10) -> list[TokenSequence]:
    out = []
    for _ in range(n_sentences):
        k = rng.randint(3, 7)
        out.append(TokenSequence.from_interior(rng.choices(WORDS, k=k)))
    return out


def random_question(rng: random.Random, qid: str = "toy") -> SchemaQuestion:
    length = rng.randint(5, 10)
    interior = rng.choices(WORDS, k=length)
    # strictly interior span of 1-2 tokens with at least one token after it
    start = rng.randint(1, length - 2)
    end = min(start + rng.randint(1, 2), length - 1)
    n_cands = rng.randint(2, 3)
    candidates = tuple(
        tuple(rng.choices(WORDS, k=rng.randint(1, 2))) for _ in range(n_cands)
    )
    q = SchemaQuestion(
        id=qid,
        tokens=TokenSequence.from_interior(interior),
        pronoun_span=(start + 1, end + 1),  # shift for <s>
        candidates=candidates,
        gold_index=rng.randrange(n_cands),
    )
    assert validate(q) == []
    return q


def scorer_grid(corpus, orders=(1, 2, 3)):
    """One Laplace and one interpolated model per order."""
    out = []
    for order in orders:
        out.append(train_word_ngram(corpus, order=order, smoothing=Laplace(0.5)))
        out.append(
            train_word_ngram(corpus, order=order, smoothing=JelinekMercer(JM_BY_ORDER[order]))
        )
    return out
