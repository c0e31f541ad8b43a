"""Question representation and ingestion.

Two on-disk formats are supported: the public Winograd/PDP XML layout
(element names configurable through :class:`XmlLayout`) and an internal
JSON-lines format that roundtrips losslessly. JSONL ``text`` and
``candidates`` fields hold space-separated tokens, i.e. the output of the
package tokenizer; ``pronoun`` indices count positions in the full token
sequence, with ``<s>`` at index 0.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, replace
from pathlib import Path
from typing import IO, Iterable

from .errors import DuplicateId, ParseError, SchemaError
from .text import DEFAULT_POLICY, TokenSequence, TokenizePolicy, tokenize


@dataclass(frozen=True)
class SchemaQuestion:
    """One pronoun-disambiguation question.

    ``pronoun_span`` is a half-open ``[start, end)`` token-index range so
    multi-token pronouns ("each other") fit; ``candidates`` are token
    tuples in their listed order, which also breaks ties downstream.
    ``special_word_index`` optionally marks the context word that decides
    the answer.
    """

    id: str
    tokens: TokenSequence
    pronoun_span: tuple[int, int]
    candidates: tuple[tuple[str, ...], ...]
    gold_index: int | None = None
    special_word_index: int | None = None

    @property
    def pronoun_tokens(self) -> tuple[str, ...]:
        s, e = self.pronoun_span
        return self.tokens.tokens[s:e]


def validate(q: SchemaQuestion) -> list[str]:
    """Return a diagnostic per violated invariant (empty list = valid)."""
    problems: list[str] = []
    s, e = q.pronoun_span
    n = len(q.tokens)
    if not (0 < s < e < n - 1):
        problems.append(
            f"pronoun span [{s},{e}) must lie strictly inside the sentence "
            f"(length {n} incl. markers)"
        )
    if len(q.candidates) < 2:
        problems.append("needs >=2 candidates")
    for i, cand in enumerate(q.candidates):
        if len(cand) == 0:
            problems.append(f"candidate {i} is empty")
    if q.gold_index is not None and not (0 <= q.gold_index < len(q.candidates)):
        problems.append("gold_index out of range")
    if q.special_word_index is not None and not (0 < q.special_word_index < n - 1):
        problems.append("special_word_index out of range")
    return problems


@dataclass(frozen=True)
class QuestionSet:
    name: str
    questions: tuple[SchemaQuestion, ...]

    def __post_init__(self):
        if not self.questions:
            raise SchemaError(f"question set {self.name!r} is empty")
        seen: set[str] = set()
        for q in self.questions:
            if q.id in seen:
                raise DuplicateId(f"duplicate question id {q.id!r}")
            seen.add(q.id)

    def __len__(self) -> int:
        return len(self.questions)

    def __iter__(self):
        return iter(self.questions)

    def concat(self, other: "QuestionSet", name: str) -> "QuestionSet":
        """Concatenation, e.g. forming PDP-122 from PDP-60 + dev questions."""
        return QuestionSet(name, self.questions + other.questions)


@dataclass(frozen=True)
class XmlLayout:
    """Element names of the public schema-collection XML format."""

    schema: str = "schema"
    text: str = "text"
    before: str = "txt1"
    pronoun: str = "pron"
    after: str = "txt2"
    answers: str = "answers"
    answer: str = "answer"
    correct: str = "correctAnswer"
    id_attr: str = "id"


def _letter_to_index(letter: str) -> int:
    letter = letter.strip().rstrip(".").upper()
    if len(letter) != 1 or not "A" <= letter <= "Z":
        raise SchemaError(f"unrecognized answer letter {letter!r}")
    return ord(letter) - ord("A")


def import_xml(
    data: str | bytes,
    layout: XmlLayout = XmlLayout(),
    name: str = "xml",
    policy: TokenizePolicy = DEFAULT_POLICY,
) -> QuestionSet:
    """Parse a schema-collection XML document into a :class:`QuestionSet`.

    The three text fragments are tokenized separately and joined, which
    pins the pronoun span without any string searching.

    Raises:
        ParseError: malformed XML.
        SchemaError: a schema element misses a required field.
        DuplicateId: two elements carry the same id.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line = exc.position[0] if exc.position else None
        raise ParseError(f"malformed XML: {exc}", line=line) from exc

    questions: list[SchemaQuestion] = []
    for i, elem in enumerate(root.iter(layout.schema), start=1):
        qid = elem.get(layout.id_attr) or str(i)
        text_el = elem.find(layout.text)
        if text_el is None:
            raise SchemaError(f"schema {qid}: missing <{layout.text}> element")

        def _frag(parent, tag, qid=qid):
            node = parent.find(tag)
            if node is None:
                raise SchemaError(f"schema {qid}: missing <{tag}> element")
            return (node.text or "").strip()

        before = _frag(text_el, layout.before)
        pron = _frag(text_el, layout.pronoun)
        after = _frag(text_el, layout.after)
        if not pron:
            raise SchemaError(f"schema {qid}: empty pronoun")

        answers_el = elem.find(layout.answers)
        answers = [] if answers_el is None else answers_el.findall(layout.answer)
        if not answers:
            raise SchemaError(f"schema {qid}: empty answers list")
        candidates = tuple(
            tokenize((a.text or "").strip(), policy).interior for a in answers
        )

        correct_el = elem.find(layout.correct)
        gold = None
        if correct_el is not None and (correct_el.text or "").strip():
            gold = _letter_to_index(correct_el.text)

        pre = tokenize(before, policy).interior if before else ()
        mid = tokenize(pron, policy).interior
        post = tokenize(after, policy).interior if after else ()
        tokens = TokenSequence.from_interior(pre + mid + post)
        span = (1 + len(pre), 1 + len(pre) + len(mid))

        q = SchemaQuestion(qid, tokens, span, candidates, gold_index=gold)
        problems = validate(q)
        if problems:
            raise SchemaError(f"schema {qid}: " + "; ".join(problems))
        questions.append(q)

    if not questions:
        raise SchemaError("document contains no schema elements")
    return QuestionSet(name, tuple(questions))


def _question_to_obj(q: SchemaQuestion) -> dict:
    return {
        "id": q.id,
        "text": q.tokens.text(),
        "pronoun": [q.pronoun_span[0], q.pronoun_span[1]],
        "candidates": [" ".join(c) for c in q.candidates],
        "gold": q.gold_index,
        "special_word": q.special_word_index,
    }


def _question_from_obj(obj: dict, lineno: int) -> SchemaQuestion:
    try:
        tokens = TokenSequence.from_interior(str(obj["text"]).split())
        span = (int(obj["pronoun"][0]), int(obj["pronoun"][1]))
        candidates = tuple(tuple(str(c).split()) for c in obj["candidates"])
        gold = obj.get("gold")
        special = obj.get("special_word")
        q = SchemaQuestion(
            str(obj["id"]),
            tokens,
            span,
            candidates,
            gold_index=None if gold is None else int(gold),
            special_word_index=None if special is None else int(special),
        )
    except SchemaError:
        raise
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise ParseError(f"bad question object: {exc}", line=lineno) from exc
    problems = validate(q)
    if problems:
        raise SchemaError(f"line {lineno} ({q.id}): " + "; ".join(problems))
    return q


def import_jsonl(source: str | Path | IO[str], name: str | None = None) -> QuestionSet:
    """Read one question per JSON line.

    Raises:
        ParseError: invalid JSON or malformed object (reports line number).
        SchemaError: object parses but violates question invariants.
    """
    if isinstance(source, (str, Path)):
        path = Path(source)
        lines = path.read_text(encoding="utf-8").splitlines()
        set_name = name or path.stem
    else:
        lines = source.read().splitlines()
        set_name = name or "jsonl"

    questions = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", line=lineno) from exc
        questions.append(_question_from_obj(obj, lineno))
    if not questions:
        raise ParseError("no questions found")
    return QuestionSet(set_name, tuple(questions))


def export_jsonl(qs: QuestionSet | Iterable[SchemaQuestion], dest: str | Path | IO[str]) -> None:
    """Write questions as JSON lines (UTF-8, one object per question)."""
    payload = "".join(
        json.dumps(_question_to_obj(q), ensure_ascii=False) + "\n" for q in qs
    )
    if isinstance(dest, (str, Path)):
        Path(dest).write_text(payload, encoding="utf-8")
    else:
        dest.write(payload)


def relabel(qs: QuestionSet, name: str) -> QuestionSet:
    return replace(qs, name=name)
