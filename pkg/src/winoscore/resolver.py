"""Candidate substitution, scoring strategies and the resolution decision.

Given a question, each candidate replaces the pronoun span and the
substituted sentence is scored three ways:

* full        -- log-probability of the whole sentence;
* partial     -- log-probability of the tokens after the candidate,
                 conditioned on the prefix that includes it;
* full_normalized -- full score minus the log unigram count of the
                 candidate, countering the penalty frequent models give
                 to rare-but-correct candidates.

An ensemble decision averages log-scores across scorers (geometric mean
of probabilities); the argmax wins, ties go to the first-listed candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .dataset import SchemaQuestion
from .errors import ConfigError, EmptySuffix, SchemaError
from .ngram import FORWARD, Scorer, WordNGramModel
from .text import TokenSequence

MODES = ("full", "partial", "full_normalized")
COMBINE_RULES = ("mean_logscore", "majority_vote")

# Pronoun surface forms that substitute as "<candidate> 's". "her" is
# ambiguous between possessive and object case and is left out by default.
POSSESSIVE_PRONOUNS = frozenset({"its", "his", "their", "theirs", "whose"})

TIE_EPS = 1e-12


@dataclass(frozen=True)
class SubstitutedSentence:
    """A question sentence with one candidate swapped into the pronoun slot."""

    tokens: TokenSequence
    candidate_span: tuple[int, int]
    candidate_tokens: tuple[str, ...]  # as listed, without any clitic

    @property
    def suffix_start(self) -> int:
        return self.candidate_span[1]


def substitute(
    q: SchemaQuestion,
    candidate_index: int,
    possessive_pronouns: frozenset[str] = POSSESSIVE_PRONOUNS,
) -> SubstitutedSentence:
    """Replace the pronoun span with candidate tokens.

    A possessive pronoun surface form gets a trailing ``'s`` clitic token
    so "its weight" becomes "the trophy 's weight".

    Raises:
        SchemaError: empty candidate token list.
    """
    cand = tuple(q.candidates[candidate_index])
    if not cand:
        raise SchemaError(f"question {q.id}: candidate {candidate_index} is empty")
    s, e = q.pronoun_span
    inserted = cand
    pron = q.pronoun_tokens
    if len(pron) == 1 and pron[0] in possessive_pronouns:
        inserted = cand + ("'s",)
    toks = q.tokens.tokens[:s] + inserted + q.tokens.tokens[e:]
    return SubstitutedSentence(
        TokenSequence(toks), (s, s + len(inserted)), cand
    )


def _require_forward(scorer: Scorer) -> None:
    if scorer.direction != FORWARD:
        raise ConfigError(
            f"scorer {scorer.name!r} is {scorer.direction}; scoring needs forward"
        )


def score_full(scorer: Scorer, sub: SubstitutedSentence) -> float:
    """log P(entire substituted sentence), end marker included."""
    _require_forward(scorer)
    return math.fsum(scorer.cond_logprob(sub.tokens))


def score_partial(scorer: Scorer, sub: SubstitutedSentence) -> float:
    """log P(suffix | prefix including candidate).

    Raises:
        EmptySuffix: the candidate sits at the sentence end, so no real
            token follows it.
    """
    _require_forward(scorer)
    if sub.suffix_start >= len(sub.tokens) - 1:
        raise EmptySuffix("no tokens follow the candidate")
    lps = scorer.cond_logprob(sub.tokens)
    return math.fsum(lps[sub.suffix_start - 1 :])


def candidate_count(
    counts: WordNGramModel | Mapping[str, int], tokens: Sequence[str]
) -> int:
    """Unigram count of a candidate: product over its tokens, zero counts
    bumped to one so the normalization never divides by zero."""
    total = 1
    for tok in tokens:
        if isinstance(counts, WordNGramModel):
            c = counts.unigram_count(tok)
        else:
            c = counts.get(tok, 0)
        total *= max(c, 1)
    return total


def score_full_normalized(
    scorer: Scorer,
    counts: WordNGramModel | Mapping[str, int],
    sub: SubstitutedSentence,
) -> float:
    """Full score minus log Count(candidate)."""
    return score_full(scorer, sub) - math.log(candidate_count(counts, sub.candidate_tokens))


@dataclass(frozen=True)
class CandidateScores:
    substitution: SubstitutedSentence
    full: float
    partial: float | None  # None when the suffix is empty
    full_normalized: float | None  # None without a count source
    positional_logprobs: tuple[float, ...]  # mean over scorers


@dataclass(frozen=True)
class ScoreReport:
    question_id: str
    mode: str
    candidates: tuple[CandidateScores, ...]
    decision: int
    tie: bool
    used_full_fallback: bool  # partial requested but suffix empty
    scorer_names: tuple[str, ...]

    def scores(self, mode: str | None = None) -> tuple[float, ...]:
        mode = mode or self.mode
        out = []
        for c in self.candidates:
            v = getattr(c, mode)
            if v is None:
                raise ConfigError(f"mode {mode!r} not computed for this report")
            out.append(v)
        return tuple(out)


def _argmax_first(values: Sequence[float]) -> tuple[int, bool]:
    best = max(values)
    idx = values.index(best)  # earliest on exact ties
    # v == best first: -inf - -inf is nan, which would miss the tie
    tie = sum(1 for v in values if v == best or abs(v - best) <= TIE_EPS) > 1
    return idx, tie


def redecide(report: ScoreReport, mode: str) -> tuple[int, bool, bool]:
    """Decision under another mode, reusing a report's scores.

    Returns (decision, tie, used_full_fallback). Only valid for reports
    built with the mean-logscore rule.
    """
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}")
    fallback = False
    if mode == "partial" and any(c.partial is None for c in report.candidates):
        mode = "full"
        fallback = True
    decision, tie = _argmax_first([float(v) for v in report.scores(mode)])
    return decision, tie, fallback


def resolve(
    scorers: Sequence[Scorer],
    q: SchemaQuestion,
    mode: str = "partial",
    counts: WordNGramModel | Mapping[str, int] | None = None,
    combine: str = "mean_logscore",
) -> ScoreReport:
    """Score every candidate with every scorer and pick the winner.

    ``counts`` supplies unigram frequencies for the normalized mode; when
    omitted, normalized scores are not computed (and requesting the mode
    raises). Partial mode falls back to full scoring for questions whose
    candidate reaches the sentence end.

    Raises:
        ConfigError: empty scorer list, non-forward scorer, unknown mode,
            or normalized mode without counts.
    """
    if mode not in MODES:
        raise ConfigError(f"unknown mode {mode!r}")
    if combine not in COMBINE_RULES:
        raise ConfigError(f"unknown combine rule {combine!r}")
    if not scorers:
        raise ConfigError("need at least one scorer")
    for s in scorers:
        _require_forward(s)
    if mode == "full_normalized" and counts is None:
        raise ConfigError("full_normalized mode needs a unigram count source")

    per_candidate: list[CandidateScores] = []
    per_scorer_full: list[list[float]] = []  # [scorer][candidate]
    per_scorer_partial: list[list[float | None]] = []
    any_empty_suffix = False

    for ci in range(len(q.candidates)):
        sub = substitute(q, ci)
        fulls, partials = [], []
        positions: list[list[float]] = []
        for s in scorers:
            lps = s.cond_logprob(sub.tokens)
            fulls.append(math.fsum(lps))
            if sub.suffix_start >= len(sub.tokens) - 1:
                partials.append(None)
            else:
                partials.append(math.fsum(lps[sub.suffix_start - 1 :]))
            positions.append(lps)
        if any(p is None for p in partials):
            any_empty_suffix = True
        mean_positions = tuple(
            math.fsum(col) / len(scorers) for col in zip(*positions)
        )
        full = math.fsum(fulls) / len(fulls)
        partial = (
            None
            if any(p is None for p in partials)
            else math.fsum(partials) / len(partials)
        )
        normalized = (
            full - math.log(candidate_count(counts, sub.candidate_tokens))
            if counts is not None
            else None
        )
        per_candidate.append(
            CandidateScores(sub, full, partial, normalized, mean_positions)
        )
        for si in range(len(scorers)):
            if ci == 0:
                per_scorer_full.append([])
                per_scorer_partial.append([])
            per_scorer_full[si].append(fulls[si])
            per_scorer_partial[si].append(partials[si])

    effective_mode = mode
    used_fallback = False
    if mode == "partial" and any_empty_suffix:
        effective_mode = "full"
        used_fallback = True

    def _candidate_values(values_by_candidate: Sequence[float]) -> tuple[int, bool]:
        return _argmax_first(values_by_candidate)

    if combine == "majority_vote" and len(scorers) > 1:
        votes = [0] * len(q.candidates)
        table = per_scorer_full if effective_mode != "partial" else per_scorer_partial
        for si in range(len(scorers)):
            vals = table[si]
            if effective_mode == "full_normalized":
                vals = [
                    v - math.log(candidate_count(counts, per_candidate[ci].substitution.candidate_tokens))
                    for ci, v in enumerate(vals)
                ]
            idx, _ = _argmax_first([float(v) for v in vals])
            votes[idx] += 1
        decision = max(range(len(votes)), key=lambda i: (votes[i], -i))
        tie = votes.count(votes[decision]) > 1
    else:
        values = [getattr(c, effective_mode) for c in per_candidate]
        decision, tie = _candidate_values([float(v) for v in values])

    return ScoreReport(
        question_id=q.id,
        mode=mode,
        candidates=tuple(per_candidate),
        decision=decision,
        tie=tie,
        used_full_fallback=used_fallback,
        scorer_names=tuple(s.name for s in scorers),
    )
