"""Constructed toy questions with a purpose-built corpus.

The suite exists so the whole pipeline can be verified without large
models: a trigram LM trained on the bundled corpus resolves all twelve
forward questions under partial scoring. Three of them are rarity traps:
the correct entity is much rarer than the wrong one, so full scoring
fails on exactly those and both count-normalized and partial scoring
repair them. Four extra questions plant their deciding word *before* the
pronoun for the backward-scoring path. Every content word is unique to
its question, which keeps the per-question evidence independent.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .dataset import QuestionSet, SchemaQuestion, export_jsonl
from .ngram import FORWARD, JelinekMercer, WordNGramModel, train_word_ngram
from .text import TokenSequence, tokenize

# (entity_correct, entity_wrong, keyword, decoy)
_NORMAL = (
    ("ball", "crate", "big", "small"),
    ("sun", "lamp", "bright", "dull"),
    ("lion", "mouse", "fierce", "timid"),
    ("river", "pond", "wide", "narrow"),
    ("oak", "twig", "sturdy", "frail"),
    ("engine", "fan", "loud", "quiet"),
    ("mountain", "hill", "steep", "flat"),
    ("whale", "minnow", "huge", "tiny"),
    ("oven", "fridge", "hot", "cold"),
)
_TRAPS = (
    ("comet", "pebble", "fast", "slow"),
    ("castle", "hut", "grand", "plain"),
    ("anvil", "feather", "heavy", "light"),
)
# (entity_correct, entity_wrong, keyword, decoy, filler_entity)
_BACKWARD = (
    ("storm", "breeze", "wild", "mild", "sailor"),
    ("giant", "gnome", "tall", "short", "farmer"),
    ("wolf", "lamb", "bold", "shy", "hunter"),
    ("eagle", "sparrow", "swift", "meek", "ranger"),
)

_NORMAL_REPEATS = 3
_TRAP_RARE_REPEATS = 6
_TRAP_FREQUENT_REPEATS = 50  # per continuation; the wrong entity ends up ~50x more frequent
_BACKWARD_REPEATS = 3

DEFAULT_LAMBDAS = (0.1, 0.3, 0.6)


@dataclass(frozen=True)
class SyntheticSuite:
    questions: QuestionSet  # 12 forward questions, traps included
    backward_questions: QuestionSet  # keyword precedes the pronoun
    corpus_sentences: tuple[str, ...]
    trap_ids: frozenset[str]


def _forward_question(qid: str, a: str, b: str, k: str, a_first: bool) -> SchemaQuestion:
    toks = ["the", a, "and", "the", b, "stood", "together", "because", "it", "is", k, "."]
    cands = (("the", a), ("the", b)) if a_first else (("the", b), ("the", a))
    return SchemaQuestion(
        id=qid,
        tokens=TokenSequence.from_interior(toks),
        pronoun_span=(9, 10),
        candidates=cands,
        gold_index=0 if a_first else 1,
        special_word_index=11,
    )


def _backward_question(qid: str, a: str, b: str, k: str, a_first: bool) -> SchemaQuestion:
    toks = ["the", a, "is", k, "because", "it", "beat", "the", b, "."]
    cands = ((a,), (b,)) if a_first else ((b,), (a,))
    return SchemaQuestion(
        id=qid,
        tokens=TokenSequence.from_interior(toks),
        pronoun_span=(6, 7),
        candidates=cands,
        gold_index=0 if a_first else 1,
        special_word_index=4,
    )


def build_suite() -> SyntheticSuite:
    sentences: list[str] = []
    questions: list[SchemaQuestion] = []
    backward: list[SchemaQuestion] = []
    trap_ids: list[str] = []

    for i, (a, b, k, decoy) in enumerate(_NORMAL, start=1):
        sentences += [f"the {a} is {k} ."] * _NORMAL_REPEATS
        sentences += [f"the {b} is {decoy} ."] * _NORMAL_REPEATS
        questions.append(_forward_question(f"fwd-{i:02d}", a, b, k, a_first=i % 2 == 1))

    for i, (a, b, k, decoy) in enumerate(_TRAPS, start=10):
        sentences += [f"the {a} is {k} ."] * _TRAP_RARE_REPEATS
        sentences += [f"the {b} is {k} ."] * _TRAP_FREQUENT_REPEATS
        sentences += [f"the {b} is {decoy} ."] * _TRAP_FREQUENT_REPEATS
        qid = f"trap-{i}"
        trap_ids.append(qid)
        questions.append(_forward_question(qid, a, b, k, a_first=i % 2 == 1))

    for i, (a, b, k, decoy, filler) in enumerate(_BACKWARD, start=1):
        sentences += [f"the {filler} is {k} because {a} beat the {b} ."] * _BACKWARD_REPEATS
        sentences += [f"the {filler} is {decoy} because {b} beat the {a} ."] * _BACKWARD_REPEATS
        backward.append(_backward_question(f"bwd-{i:02d}", a, b, k, a_first=i % 2 == 1))

    return SyntheticSuite(
        questions=QuestionSet("synthetic-12", tuple(questions)),
        backward_questions=QuestionSet("synthetic-backward", tuple(backward)),
        corpus_sentences=tuple(sentences),
        trap_ids=frozenset(trap_ids),
    )


def corpus_sequences(suite: SyntheticSuite) -> list[TokenSequence]:
    return [tokenize(s) for s in suite.corpus_sentences]


def default_scorer(suite: SyntheticSuite, direction: str = FORWARD) -> WordNGramModel:
    """The suite's reference model: an interpolated trigram."""
    return train_word_ngram(
        corpus_sequences(suite),
        order=3,
        smoothing=JelinekMercer(DEFAULT_LAMBDAS),
        direction=direction,
        name=f"synthetic-trigram-{direction}",
    )


def write_files(suite: SyntheticSuite, directory: str | Path) -> dict[str, Path]:
    """Materialize corpus and question files for CLI-level runs."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = {
        "corpus": directory / "corpus.txt",
        "questions": directory / "questions.jsonl",
        "backward_questions": directory / "backward_questions.jsonl",
    }
    paths["corpus"].write_text(
        "".join(line + "\n" for line in suite.corpus_sentences), encoding="utf-8"
    )
    export_jsonl(suite.questions, paths["questions"])
    export_jsonl(suite.backward_questions, paths["backward_questions"])
    return paths
