"""Per-position probability-ratio analysis.

For a (correct, incorrect) candidate pair, every scored position t gets the
ratio of conditionals under the two substitutions, kept in log space. The
ratios explain a resolution decision (their product recovers the score
difference) and localize the context word responsible for it: positions
with the largest ratios tend to be the schema's special word. Backward
profiles run the same machinery on word-reversed sentences with a
backward-trained scorer, exposing keywords that precede the pronoun.
"""

from __future__ import annotations

import html as _html
import math
from dataclasses import dataclass

from .dataset import SchemaQuestion
from .errors import ConfigError, EmptySuffix
from .ngram import BACKWARD, FORWARD, Scorer
from .resolver import SubstitutedSentence, substitute
from .text import reverse as reverse_sequence

TIE_EPS = 1e-12


@dataclass(frozen=True)
class PositionRatio:
    """Log-ratio of one scored position.

    ``position`` indexes the correct-candidate substitution's tokens;
    ``source_index`` is the matching index in the original question, or
    None inside the substituted span. A span aggregate carries the summed
    ratio of the whole candidate span in one entry.
    """

    position: int
    token: str
    log_ratio: float
    span_entry: bool = False
    source_index: int | None = None


@dataclass(frozen=True)
class RatioProfile:
    question_id: str
    mode: str
    direction: str
    pair: tuple[int, int]  # (correct candidate index, incorrect candidate index)
    entries: tuple[PositionRatio, ...]
    tokens: tuple[str, ...]  # correct-candidate substitution, for rendering

    @property
    def total_log_q(self) -> float:
        """Sum of log q_t over the mode's range; equals the score difference."""
        return math.fsum(e.log_ratio for e in self.entries)


def _source_index(p: int, span: tuple[int, int], orig_span: tuple[int, int]) -> int | None:
    if p < span[0]:
        return p
    if p >= span[1]:
        return p - span[1] + orig_span[1]
    return None


def _pair_entries(
    lp_c: list[float],
    lp_i: list[float],
    sub_c: SubstitutedSentence,
    sub_i: SubstitutedSentence,
    orig_span: tuple[int, int],
    mode: str,
) -> list[PositionRatio]:
    """Aligned per-position entries over the mode's scoring range.

    Position t of a substitution maps to logprob index t-1. Prefix
    positions align one-to-one, suffix positions align by offset from the
    span end, and the candidate spans align per-position when equal in
    length, otherwise as a single aggregate.
    """
    span_c, span_i = sub_c.candidate_span, sub_i.candidate_span
    n_c = len(sub_c.tokens)
    entries: list[PositionRatio] = []

    if mode == "full":
        for t in range(1, span_c[0]):
            entries.append(
                PositionRatio(
                    t,
                    sub_c.tokens[t],
                    lp_c[t - 1] - lp_i[t - 1],
                    source_index=_source_index(t, span_c, orig_span),
                )
            )
        len_c = span_c[1] - span_c[0]
        len_i = span_i[1] - span_i[0]
        if len_c == len_i:
            for off in range(len_c):
                tc, ti = span_c[0] + off, span_i[0] + off
                entries.append(
                    PositionRatio(
                        tc,
                        sub_c.tokens[tc],
                        lp_c[tc - 1] - lp_i[ti - 1],
                        span_entry=True,
                    )
                )
        else:
            agg = math.fsum(lp_c[span_c[0] - 1 : span_c[1] - 1]) - math.fsum(
                lp_i[span_i[0] - 1 : span_i[1] - 1]
            )
            entries.append(
                PositionRatio(
                    span_c[0],
                    " ".join(sub_c.tokens[span_c[0] : span_c[1]]),
                    agg,
                    span_entry=True,
                )
            )
    elif mode == "partial":
        if sub_c.suffix_start >= n_c - 1 or sub_i.suffix_start >= len(sub_i.tokens) - 1:
            raise EmptySuffix("no tokens follow the candidate; fall back to full mode")
    else:
        raise ConfigError(f"ratio profiles support full or partial, got {mode!r}")

    for off in range(n_c - span_c[1]):
        tc, ti = span_c[1] + off, span_i[1] + off
        entries.append(
            PositionRatio(
                tc,
                sub_c.tokens[tc],
                lp_c[tc - 1] - lp_i[ti - 1],
                source_index=_source_index(tc, span_c, orig_span),
            )
        )
    return entries


def position_ratios(
    scorer: Scorer,
    q: SchemaQuestion,
    pair: tuple[int, int],
    mode: str = "partial",
) -> RatioProfile:
    """Ratio profile under a forward scorer.

    ``pair`` names (correct, incorrect) candidate indices; positive log
    ratios favor the correct candidate.

    Raises:
        ConfigError: scorer is not forward.
        EmptySuffix: partial mode with nothing after the candidate.
    """
    if scorer.direction != FORWARD:
        raise ConfigError("position_ratios needs a forward scorer")
    sub_c, sub_i = substitute(q, pair[0]), substitute(q, pair[1])
    lp_c = scorer.cond_logprob(sub_c.tokens)
    lp_i = scorer.cond_logprob(sub_i.tokens)
    entries = _pair_entries(lp_c, lp_i, sub_c, sub_i, q.pronoun_span, mode)
    return RatioProfile(q.id, mode, FORWARD, pair, tuple(entries), sub_c.tokens.tokens)


def backward_ratios(
    scorer: Scorer,
    q: SchemaQuestion,
    pair: tuple[int, int],
    mode: str = "partial",
) -> RatioProfile:
    """Ratio profile on word-reversed sentences under a backward scorer.

    Partial mode then scores the tokens *before* the pronoun, where
    forward profiles are blind. Entry positions are mapped back to
    forward-substitution indices (the reversed end-marker position lands
    on the ``<s>`` slot).

    Raises:
        ConfigError: scorer is not backward.
        EmptySuffix: partial mode with an empty reversed suffix.
    """
    if scorer.direction != BACKWARD:
        raise ConfigError("backward_ratios needs a backward scorer")
    entries_fwd: list[PositionRatio] = []

    # Reverse the *substituted* sentences so possessive clitics stay glued
    # to their candidate, then analyze in reversed coordinates.
    sub_c, sub_i = substitute(q, pair[0]), substitute(q, pair[1])

    def _reversed_view(sub: SubstitutedSentence) -> SubstitutedSentence:
        n = len(sub.tokens)
        rev = reverse_sequence(sub.tokens)
        span = (n - sub.candidate_span[1], n - sub.candidate_span[0])
        return SubstitutedSentence(rev, span, sub.candidate_tokens)

    rev_c, rev_i = _reversed_view(sub_c), _reversed_view(sub_i)
    s, e = q.pronoun_span
    n_q = len(q.tokens)
    rev_orig_span = (n_q - e, n_q - s)

    lp_c = scorer.cond_logprob(rev_c.tokens)
    lp_i = scorer.cond_logprob(rev_i.tokens)
    rev_entries = _pair_entries(lp_c, lp_i, rev_c, rev_i, rev_orig_span, mode)

    n_c = len(sub_c.tokens)
    for entry in rev_entries:
        fwd_pos = n_c - 1 - entry.position
        src = entry.source_index
        entries_fwd.append(
            PositionRatio(
                fwd_pos,
                sub_c.tokens[fwd_pos],
                entry.log_ratio,
                span_entry=entry.span_entry,
                source_index=None if src is None else n_q - 1 - src,
            )
        )
    entries_fwd.sort(key=lambda en: en.position)
    return RatioProfile(
        q.id, mode, BACKWARD, pair, tuple(entries_fwd), sub_c.tokens.tokens
    )


@dataclass(frozen=True)
class QDecision:
    chosen_index: int
    tie: bool
    total_log_q: float


def decide_by_Q(profile: RatioProfile) -> QDecision:
    """Pick the correct-candidate iff the ratio product exceeds one.

    An exact tie goes to the lower candidate index, matching the
    resolver's rule, and is flagged.
    """
    total = profile.total_log_q
    correct, incorrect = profile.pair
    if total > 0:
        chosen = correct
    elif total < 0:
        chosen = incorrect
    else:
        chosen = min(correct, incorrect)
    return QDecision(chosen, abs(total) <= TIE_EPS, total)


@dataclass(frozen=True)
class KeywordReport:
    """Positions with the largest ratios, candidates for the special word."""

    top: tuple[PositionRatio, ...]
    k: int
    special_word_retrieved: bool | None  # None when unannotated
    truncated: bool  # fewer positions than requested
    tied: bool  # selection boundary is ambiguous


def detect_keywords(
    profile: RatioProfile,
    top_k: int = 2,
    special_word_index: int | None = None,
) -> KeywordReport:
    """Top-k positions by descending log-ratio, earlier position on ties."""
    if top_k < 1:
        raise ConfigError(f"top_k must be >= 1, got {top_k}")
    ranked = sorted(profile.entries, key=lambda e: (-e.log_ratio, e.position))
    top = tuple(ranked[:top_k])
    truncated = len(ranked) < top_k
    tied = (
        len(ranked) > top_k
        and abs(ranked[top_k].log_ratio - ranked[top_k - 1].log_ratio) <= TIE_EPS
    )
    retrieved = None
    if special_word_index is not None:
        retrieved = any(e.source_index == special_word_index for e in top)
    return KeywordReport(top, top_k, retrieved, truncated, tied)


@dataclass(frozen=True)
class HeatmapArtifact:
    ansi: str
    html: str


_GREEN_SHADES = (22, 28, 34, 40, 46)
_RED_SHADES = (52, 88, 124, 160, 196)


def render_heatmap(
    profile: RatioProfile, tokens: tuple[str, ...] | None = None
) -> HeatmapArtifact:
    """Terminal and HTML renderings of normalized ratio intensities.

    Intensity is |log q_t| scaled by the profile's maximum (all-zero
    profiles render uniformly plain); green marks ratios favoring the
    correct candidate, red the incorrect one.
    """
    toks = tokens if tokens is not None else profile.tokens
    by_pos = {e.position: e for e in profile.entries}
    peak = max((abs(e.log_ratio) for e in profile.entries), default=0.0)

    ansi_parts: list[str] = []
    html_parts: list[str] = []
    for p, tok in enumerate(toks):
        entry = by_pos.get(p)
        if entry is None or peak == 0.0 or entry.log_ratio == 0.0:
            ansi_parts.append(tok)
            html_parts.append(f"<span>{_html.escape(tok)}</span>")
            continue
        intensity = abs(entry.log_ratio) / peak
        positive = entry.log_ratio > 0
        shades = _GREEN_SHADES if positive else _RED_SHADES
        shade = shades[min(int(intensity * len(shades)), len(shades) - 1)]
        ansi_parts.append(f"\x1b[48;5;{shade}m{tok}\x1b[0m")
        color = "0,128,0" if positive else "200,0,0"
        title = f"log q = {entry.log_ratio:+.4f}"
        html_parts.append(
            f'<span style="background-color: rgba({color},{intensity:.3f})" '
            f'title="{title}">{_html.escape(tok)}</span>'
        )

    header = (
        f"{profile.question_id} [{profile.mode}, {profile.direction}] "
        f"log Q = {profile.total_log_q:+.4f}"
    )
    html_doc = (
        "<!DOCTYPE html><html><head><meta charset=\"utf-8\">"
        "<style>span{padding:1px 2px;margin:0 1px;font-family:monospace}</style>"
        f"</head><body><p>{_html.escape(header)}</p><p>"
        + " ".join(html_parts)
        + "</p></body></html>"
    )
    return HeatmapArtifact(header + "\n" + " ".join(ansi_parts), html_doc)
