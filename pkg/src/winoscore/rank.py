"""Question-similarity corpus ranking and contamination detection.

Documents are scored against a question set by clipped n-gram overlap:
per order n = 1..4 an F1 of multiset precision/recall, combined as
``sum(n * F1(n)) / 10``. The top fraction of a large document stream can
be selected with bounded memory and written out as a training corpus.
Contamination detection runs the same similarity against each question
individually to catch evaluation text embedded in training documents.
"""

from __future__ import annotations

import gzip
import heapq
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .dataset import QuestionSet
from .errors import EmptyCorpus, InvalidOrder
from .text import DEFAULT_POLICY, TokenizePolicy, Vocabulary, tokenize

MAX_ORDER = 4
WEIGHT_TOTAL = sum(range(1, MAX_ORDER + 1))  # 10


def _gram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


@dataclass(frozen=True)
class QueryProfile:
    """Aggregated n-gram multisets (orders 1..4) of a question set."""

    grams: tuple[Counter, ...]
    totals: tuple[int, ...]

    @classmethod
    def from_token_lists(cls, token_lists: Iterable[Sequence[str]]) -> "QueryProfile":
        grams = [Counter() for _ in range(MAX_ORDER)]
        for toks in token_lists:
            for n in range(1, MAX_ORDER + 1):
                grams[n - 1].update(_gram_counts(toks, n))
        return cls(tuple(grams), tuple(sum(g.values()) for g in grams))

    @classmethod
    def from_questions(cls, questions: QuestionSet) -> "QueryProfile":
        return cls.from_token_lists(q.tokens.interior for q in questions)

    @classmethod
    def from_text(cls, text: str, policy: TokenizePolicy = DEFAULT_POLICY) -> "QueryProfile":
        return cls.from_token_lists([tokenize(text, policy).interior])


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    offset: int = 0  # byte offset of the document in its source file


@dataclass(frozen=True)
class RankedDocument:
    id: str
    score: float
    f1: tuple[float, float, float, float]
    offset: int


def _f1(doc_grams: Counter, query_grams: Counter, query_total: int) -> float:
    doc_total = sum(doc_grams.values())
    if doc_total == 0 or query_total == 0:
        return 0.0
    smaller, larger = (
        (doc_grams, query_grams)
        if len(doc_grams) <= len(query_grams)
        else (query_grams, doc_grams)
    )
    overlap = sum(min(c, larger.get(g, 0)) for g, c in smaller.items())
    if overlap == 0:
        return 0.0
    precision = overlap / doc_total
    recall = overlap / query_total
    return 2 * precision * recall / (precision + recall)


def ngram_f1(doc_tokens: Sequence[str], query: QueryProfile, n: int) -> float:
    """Clipped multiset-overlap F1 of order ``n`` between a document and
    the query profile. Zero when either side has no n-grams of this order.

    Raises:
        InvalidOrder: n outside 1..4.
    """
    if not 1 <= n <= MAX_ORDER:
        raise InvalidOrder(f"ranking n-gram order must be 1..{MAX_ORDER}, got {n}")
    return _f1(_gram_counts(doc_tokens, n), query.grams[n - 1], query.totals[n - 1])


def _score_detail(
    doc_tokens: Sequence[str], query: QueryProfile
) -> tuple[float, tuple[float, float, float, float]]:
    f1s = tuple(
        _f1(_gram_counts(doc_tokens, n), query.grams[n - 1], query.totals[n - 1])
        for n in range(1, MAX_ORDER + 1)
    )
    score = sum(n * f1s[n - 1] for n in range(1, MAX_ORDER + 1)) / WEIGHT_TOTAL
    return score, f1s


def similarity_score(doc_tokens: Sequence[str], query: QueryProfile) -> float:
    """Weighted n-gram F1 similarity in [0, 1]: sum of n * F1(n) over
    n = 1..4, divided by 10. Exactly 1.0 only when the document's n-gram
    multisets coincide with the query's on every order the query covers."""
    return _score_detail(doc_tokens, query)[0]


class _PreferLowId:
    """Order wrapper so the bounded selector keeps the lower id on ties."""

    __slots__ = ("id",)

    def __init__(self, doc_id: str):
        self.id = doc_id

    def __lt__(self, other: "_PreferLowId") -> bool:
        return self.id > other.id

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _PreferLowId) and self.id == other.id


@dataclass
class RankResult:
    ranked: list[RankedDocument]
    n_documents: int
    n_dropped_oov: int = 0
    histogram: tuple[list[float], list[int]] = field(default_factory=lambda: ([], []))


def histogram_data(scores: Sequence[float], buckets: int = 100) -> tuple[list[float], list[int]]:
    """Equal-width bucket edges and counts over the observed score range."""
    if not scores:
        return [], []
    lo, hi = min(scores), max(scores)
    if hi == lo:
        return [lo, hi], [len(scores)]
    width = (hi - lo) / buckets
    counts = [0] * buckets
    for s in scores:
        idx = min(int((s - lo) / width), buckets - 1)
        counts[idx] += 1
    edges = [lo + i * width for i in range(buckets)] + [hi]
    return edges, counts


def rank_corpus(
    docs: Iterable[Document],
    query: QueryProfile,
    top_fraction: float = 0.001,
    policy: TokenizePolicy = DEFAULT_POLICY,
    vocab: Vocabulary | None = None,
    max_oov_fraction: float | None = None,
    histogram_buckets: int = 100,
) -> RankResult:
    """Score a document stream and keep the top ``ceil(fraction * N)``.

    One pass; only per-document scalar records are retained, plus a
    bounded heap once the stream's length is known. Kept documents come
    back sorted by descending score with ties broken by ascending id.
    Optionally drops documents whose out-of-vocabulary token fraction
    exceeds ``max_oov_fraction`` before scoring.

    Raises:
        InvalidOrder: fraction outside (0, 1].
        EmptyCorpus: no documents in the stream.
    """
    if not (0 < top_fraction <= 1):
        raise InvalidOrder(f"top_fraction must be in (0, 1], got {top_fraction}")

    scored: list[RankedDocument] = []
    n_docs = 0
    n_dropped = 0
    for doc in docs:
        n_docs += 1
        try:
            toks = tokenize(doc.text, policy).interior
        except Exception:
            toks = ()
        if vocab is not None and max_oov_fraction is not None and toks:
            oov = sum(1 for t in toks if t not in vocab)
            if oov / len(toks) > max_oov_fraction:
                n_dropped += 1
                continue
        score, f1s = _score_detail(toks, query)
        scored.append(RankedDocument(doc.id, score, f1s, doc.offset))
    if n_docs == 0:
        raise EmptyCorpus("no documents to rank")

    k = math.ceil(top_fraction * n_docs)
    top = heapq.nlargest(k, scored, key=lambda r: (r.score, _PreferLowId(r.id)))
    edges, counts = histogram_data([r.score for r in top], histogram_buckets)
    return RankResult(top, n_docs, n_dropped, (edges, counts))


@dataclass(frozen=True)
class ContaminationHit:
    doc_id: str
    question_id: str
    score: float


def contamination_report(
    docs: Iterable[Document],
    questions: QuestionSet,
    threshold: float = 0.5,
    policy: TokenizePolicy = DEFAULT_POLICY,
) -> list[ContaminationHit]:
    """Flag documents similar to any *single* question.

    A flagged document reports its best-matching question; an exact copy
    of a question's text scores 1.0.

    Raises:
        InvalidOrder: threshold outside (0, 1].
    """
    if not (0 < threshold <= 1):
        raise InvalidOrder(f"threshold must be in (0, 1], got {threshold}")
    profiles = [
        (q.id, QueryProfile.from_token_lists([q.tokens.interior])) for q in questions
    ]
    hits: list[ContaminationHit] = []
    for doc in docs:
        try:
            toks = tokenize(doc.text, policy).interior
        except Exception:
            continue
        best: ContaminationHit | None = None
        for qid, profile in profiles:
            score = similarity_score(toks, profile)
            if score >= threshold and (best is None or score > best.score):
                best = ContaminationHit(doc.id, qid, score)
        if best is not None:
            hits.append(best)
    return hits


def _open_binary(path: str | Path):
    if str(path).endswith(".gz"):
        return gzip.open(path, "rb")
    return open(path, "rb")


def iter_documents(path: str | Path, encoding: str = "utf-8") -> Iterator[Document]:
    """Yield one document per line with its byte offset; ids are 1-based
    line numbers. ``.gz`` files are decompressed on the fly (offsets then
    count decompressed bytes). Blank lines are skipped but keep their line
    number."""
    offset = 0
    with _open_binary(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.decode(encoding, errors="replace").rstrip("\n")
            if line.strip():
                yield Document(str(lineno), line, offset)
            offset += len(raw)


def extract_documents(
    source: str | Path, kept: Sequence[RankedDocument], dest: str | Path
) -> int:
    """Write the kept documents (by id/offset) to a new one-per-line corpus
    file, in rank order. Returns the number of lines written."""
    by_offset = sorted(kept, key=lambda r: r.offset)
    written = 0
    with _open_binary(source) as src, open(dest, "w", encoding="utf-8") as out:
        texts: dict[str, str] = {}
        for r in by_offset:
            src.seek(r.offset)
            texts[r.id] = src.readline().decode("utf-8", errors="replace").rstrip("\n")
        for r in kept:
            out.write(texts[r.id] + "\n")
            written += 1
    return written
