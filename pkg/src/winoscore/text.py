"""Tokenization, vocabularies and n-gram extraction.

Every other module works on :class:`TokenSequence` objects: whitespace-level
word tokens wrapped in begin/end sentence markers. The tokenizer is
deliberately simple (lowercase, detach punctuation, keep contractions whole)
so that substitution and scoring stay aligned on the same token grid.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import EmptyCorpus, EmptyText, InvalidOrder

BOS = "<s>"
EOS = "</s>"
UNK = "<unk>"
RESERVED = (BOS, EOS, UNK)

# Characters split off as standalone tokens. Apostrophes survive when they
# sit between two alphanumeric characters (don't, o'clock).
_DETACH = set(".,;:!?\"'()‘’“”")
_APOSTROPHES = {"'", "’"}


@dataclass(frozen=True)
class TokenizePolicy:
    """Knobs for :func:`tokenize`. The defaults match the package-wide
    convention used by every bundled corpus and dataset."""

    lowercase: bool = True
    detach_punct: bool = True


DEFAULT_POLICY = TokenizePolicy()


@dataclass(frozen=True)
class TokenSequence:
    """Word tokens with ``<s>`` at position 0 and ``</s>`` at the end."""

    tokens: tuple[str, ...]

    def __post_init__(self):
        toks = self.tokens
        if len(toks) < 2 or toks[0] != BOS or toks[-1] != EOS:
            raise ValueError("sequence must be wrapped in <s> ... </s>")
        for t in toks[1:-1]:
            if not t:
                raise ValueError("empty token")
            if t in (BOS, EOS):
                raise ValueError("interior sentence marker")

    @property
    def interior(self) -> tuple[str, ...]:
        return self.tokens[1:-1]

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[str]:
        return iter(self.tokens)

    def __getitem__(self, i):
        return self.tokens[i]

    def text(self) -> str:
        """Space-joined interior tokens (the canonical surface form)."""
        return " ".join(self.interior)

    @classmethod
    def from_interior(cls, interior: Iterable[str]) -> "TokenSequence":
        return cls((BOS, *interior, EOS))


def _split_word(word: str) -> list[str]:
    out: list[str] = []
    buf: list[str] = []
    for i, ch in enumerate(word):
        if ch in _DETACH:
            internal = (
                ch in _APOSTROPHES
                and 0 < i < len(word) - 1
                and word[i - 1].isalnum()
                and word[i + 1].isalnum()
            )
            if internal:
                buf.append(ch)
            else:
                if buf:
                    out.append("".join(buf))
                    buf = []
                out.append(ch)
        else:
            buf.append(ch)
    if buf:
        out.append("".join(buf))
    return out


def tokenize(raw: str, policy: TokenizePolicy = DEFAULT_POLICY) -> TokenSequence:
    """Split ``raw`` into a marker-wrapped :class:`TokenSequence`.

    Raises:
        EmptyText: if ``raw`` contains no non-whitespace characters.
    """
    if not raw or not raw.strip():
        raise EmptyText("cannot tokenize empty text")
    if policy.lowercase:
        raw = raw.lower()
    words = raw.split()
    if policy.detach_punct:
        toks: list[str] = []
        for w in words:
            toks.extend(_split_word(w))
    else:
        toks = words
    return TokenSequence.from_interior(toks)


def reverse(seq: TokenSequence) -> TokenSequence:
    """Reverse the interior tokens; markers stay at the ends."""
    return TokenSequence.from_interior(reversed(seq.interior))


@dataclass(frozen=True)
class NGramMultiset:
    """Occurrence counts of all length-``n`` token windows."""

    n: int
    entries: Counter = field(default_factory=Counter)

    def total(self) -> int:
        return sum(self.entries.values())

    def merge(self, other: "NGramMultiset") -> "NGramMultiset":
        if other.n != self.n:
            raise InvalidOrder(f"cannot merge order {other.n} into order {self.n}")
        return NGramMultiset(self.n, self.entries + other.entries)


def extract_ngrams(
    seq: TokenSequence, n: int, include_markers: bool = False
) -> NGramMultiset:
    """Count overlapping n-grams of ``seq``.

    Markers are excluded by default (similarity ranking); pass
    ``include_markers=True`` for LM-style counting over the full sequence.

    Raises:
        InvalidOrder: if ``n`` < 1.
    """
    if n < 1:
        raise InvalidOrder(f"n-gram order must be >= 1, got {n}")
    toks = seq.tokens if include_markers else seq.interior
    grams = Counter(tuple(toks[i : i + n]) for i in range(len(toks) - n + 1))
    return NGramMultiset(n, grams)


class Vocabulary:
    """Closed token vocabulary with corpus counts.

    Ids are stable: reserved tokens first (``<s>``=0, ``</s>``=1,
    ``<unk>``=2), then remaining tokens by descending count with
    lexicographic tie-break. ``counts`` holds raw corpus frequencies;
    the ``<unk>`` count aggregates every token dropped during the build.
    """

    def __init__(self, counts: dict[str, int]):
        self._counts = dict(counts)
        for tok in RESERVED:
            self._counts.setdefault(tok, 0)
        ordered = sorted(
            (t for t in self._counts if t not in RESERVED),
            key=lambda t: (-self._counts[t], t),
        )
        self._id_to_token: list[str] = list(RESERVED) + ordered
        self._token_to_id = {t: i for i, t in enumerate(self._id_to_token)}

    def __len__(self) -> int:
        return len(self._id_to_token)

    def __contains__(self, token: str) -> bool:
        return token in self._token_to_id

    def __iter__(self) -> Iterator[str]:
        return iter(self._id_to_token)

    def id_of(self, token: str) -> int:
        """Exact lookup; KeyError for unknown tokens."""
        return self._token_to_id[token]

    def token_of(self, idx: int) -> str:
        return self._id_to_token[idx]

    def normalize(self, token: str) -> str:
        """Map out-of-vocabulary tokens to ``<unk>``."""
        return token if token in self._token_to_id else UNK

    def map_sequence(self, seq: TokenSequence) -> TokenSequence:
        return TokenSequence(tuple(self.normalize(t) for t in seq.tokens))

    def count(self, token: str) -> int:
        """Raw corpus frequency; OOV tokens report the aggregate unknown count."""
        return self._counts.get(self.normalize(token), 0)

    def counts(self) -> dict[str, int]:
        return dict(self._counts)


def build_vocab(
    corpus: Iterable[TokenSequence],
    max_size: int | None = None,
    min_count: int = 1,
) -> Vocabulary:
    """Build a vocabulary from a corpus stream.

    ``max_size`` caps the number of non-reserved entries; the most frequent
    tokens win, ties broken lexicographically. Tokens below ``min_count``
    (and beyond the cap) fold into the ``<unk>`` count.

    Raises:
        EmptyCorpus: if the stream yields nothing.
    """
    raw = Counter()
    n_seqs = 0
    for seq in corpus:
        n_seqs += 1
        raw.update(seq.tokens)
    if n_seqs == 0:
        raise EmptyCorpus("vocabulary build needs a non-empty corpus")

    eligible = sorted(
        (t for t in raw if t not in RESERVED and raw[t] >= min_count),
        key=lambda t: (-raw[t], t),
    )
    if max_size is not None:
        eligible = eligible[: max(0, max_size)]
    kept = set(eligible)

    counts = {t: raw[t] for t in kept}
    counts[BOS] = raw.get(BOS, 0)
    counts[EOS] = raw.get(EOS, 0)
    counts[UNK] = sum(c for t, c in raw.items() if t not in kept and t not in RESERVED)
    return Vocabulary(counts)
