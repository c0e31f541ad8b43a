"""Command-line surface.

Subcommands mirror the experiment pipeline: ``train`` n-gram models,
``import`` datasets, ``resolve`` and ``eval`` question sets, ``analyze``
ratio profiles and keywords, ``rank-corpus`` for similarity ranking, and
``serve-stub`` to expose a uniform (or wrapped local) scorer over the wire
protocol. Scorer specs are URIs: ``ngram:path/to/model.json`` or
``remote:http://host:port``; comma-separate them for ensembles.

A config file (INI style, one section per subcommand) can preset any long
flag; explicit flags win.
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import analysis, dataset, ngram, rank, remote, resolver, stubserver
from .errors import ConfigError, EmptyDataset, WinoscoreError
from .text import TokenizePolicy, tokenize

PROG = "winoscore"


# ---------------------------------------------------------------- scorers


def parse_scorer_spec(spec: str) -> ngram.Scorer:
    """One scorer from a ``kind:locator`` URI."""
    kind, sep, locator = spec.partition(":")
    if not sep or not locator:
        raise ConfigError(f"scorer spec {spec!r} is not kind:locator")
    if kind == "ngram":
        return ngram.load(locator)
    if kind == "remote":
        return remote.connect(locator)
    raise ConfigError(f"unknown scorer kind {kind!r} (use ngram: or remote:)")


def parse_scorer_list(specs: str) -> list[ngram.Scorer]:
    scorers = [parse_scorer_spec(s.strip()) for s in specs.split(",") if s.strip()]
    if not scorers:
        raise ConfigError("no scorers given")
    return scorers


def parse_smoothing(spec: str) -> ngram.Laplace | ngram.JelinekMercer:
    """``laplace:ALPHA`` or ``jm:L1,L2,...``."""
    kind, _, rest = spec.partition(":")
    if kind == "laplace":
        return ngram.Laplace(float(rest or "0.1"))
    if kind in ("jm", "jelinek-mercer"):
        lams = tuple(float(x) for x in rest.split(",") if x)
        return ngram.JelinekMercer(lams)
    raise ConfigError(f"unknown smoothing spec {spec!r}")


def load_questions(path: str, fmt: str | None, name: str | None, xml_layout: str | None):
    p = Path(path)
    fmt = fmt or ("xml" if p.suffix.lower() == ".xml" else "jsonl")
    if fmt == "xml":
        layout = dataset.XmlLayout(**_parse_kv(xml_layout)) if xml_layout else dataset.XmlLayout()
        return dataset.import_xml(p.read_bytes(), layout, name=name or p.stem)
    return dataset.import_jsonl(p, name=name)


def _parse_kv(spec: str) -> dict[str, str]:
    out = {}
    for item in spec.split(","):
        if not item.strip():
            continue
        key, sep, val = item.partition("=")
        if not sep:
            raise ConfigError(f"expected key=value, got {item!r}")
        out[key.strip()] = val.strip()
    return out


def _policy(args) -> TokenizePolicy:
    return TokenizePolicy(
        lowercase=not args.no_lowercase, detach_punct=not args.no_detach_punct
    )


# ---------------------------------------------------------------- eval


@dataclass
class QuestionRecord:
    id: str
    gold: int | None
    decision: dict[str, int]
    correct: dict[str, bool | None]
    tie: dict[str, bool]
    fallback: dict[str, bool]

    def corrected_by(self, mode: str) -> bool | None:
        """Wrong under full scoring but right under ``mode``."""
        if "full" not in self.correct or mode not in self.correct:
            return None
        if self.correct["full"] is None or self.correct[mode] is None:
            return None
        return (not self.correct["full"]) and bool(self.correct[mode])


@dataclass
class EvalReport:
    """Per-question decisions and per-mode accuracies for one run."""

    set_name: str
    modes: list[str]
    scorer_names: list[str]
    records: list[QuestionRecord]
    accuracy: dict[str, float | None]
    corrections: dict[str, int] | None = None  # full-vs-partial repair tally
    per_scorer_correct: dict[str, dict[str, int]] | None = None
    counts_source: str | None = None

    @property
    def n(self) -> int:
        return len(self.records)


def _decisions(report: resolver.ScoreReport, modes: Sequence[str]) -> dict[str, tuple]:
    return {m: resolver.redecide(report, m) for m in modes}


def build_eval_report(
    questions: dataset.QuestionSet,
    scorers: Sequence[ngram.Scorer],
    modes: Sequence[str],
    counts: ngram.WordNGramModel | None,
    per_scorer: bool = True,
) -> EvalReport:
    for m in modes:
        if m not in resolver.MODES:
            raise ConfigError(f"unknown mode {m!r}")
    if "full_normalized" in modes and counts is None:
        raise ConfigError("full_normalized mode needs --counts (a word n-gram model)")

    records = []
    per_scorer_correct: dict[str, dict[str, int]] = {}
    want_breakdown = per_scorer and len(scorers) > 1
    for q in sorted(questions, key=lambda q: q.id):
        rep = resolver.resolve(scorers, q, mode=modes[0], counts=counts)
        decided = _decisions(rep, modes)
        rec = QuestionRecord(
            id=q.id,
            gold=q.gold_index,
            decision={m: d[0] for m, d in decided.items()},
            correct={
                m: (None if q.gold_index is None else d[0] == q.gold_index)
                for m, d in decided.items()
            },
            tie={m: d[1] for m, d in decided.items()},
            fallback={m: d[2] for m, d in decided.items()},
        )
        records.append(rec)
        if want_breakdown:
            for s in scorers:
                solo = resolver.resolve([s], q, mode=modes[0], counts=counts)
                tally = per_scorer_correct.setdefault(s.name, {m: 0 for m in modes})
                for m in modes:
                    d, _, _ = resolver.redecide(solo, m)
                    if q.gold_index is not None and d == q.gold_index:
                        tally[m] += 1

    have_gold = [r for r in records if r.gold is not None]
    accuracy = {
        m: (sum(r.correct[m] for r in have_gold) / len(have_gold) if have_gold else None)
        for m in modes
    }

    corrections = None
    if "full" in modes and have_gold:
        corrections = {}
        wrong_full = [r for r in have_gold if not r.correct["full"]]
        corrections["wrong_full"] = len(wrong_full)
        for m in modes:
            if m == "full":
                continue
            corrections[f"corrected_by_{m}"] = sum(
                1 for r in wrong_full if r.corrected_by(m)
            )

    return EvalReport(
        set_name=questions.name,
        modes=list(modes),
        scorer_names=[s.name for s in scorers],
        records=records,
        accuracy=accuracy,
        corrections=corrections,
        per_scorer_correct=per_scorer_correct or None,
        counts_source=counts.name if counts is not None else None,
    )


def render_eval(report: EvalReport) -> str:
    lines = [
        f"question set: {report.set_name} ({report.n} questions)",
        f"scorers: {', '.join(report.scorer_names)}",
        "",
        f"{'mode':<18} {'accuracy':>9}  correct",
    ]
    n_gold = sum(1 for r in report.records if r.gold is not None)
    for m in report.modes:
        acc = report.accuracy[m]
        if acc is None:
            lines.append(f"{m:<18} {'-':>9}  (no gold labels)")
        else:
            n_corr = sum(bool(r.correct[m]) for r in report.records)
            lines.append(f"{m:<18} {acc:>9.4f}  {n_corr}/{n_gold}")
    if report.corrections:
        lines.append("")
        wrong = report.corrections["wrong_full"]
        lines.append(f"wrong under full scoring: {wrong}")
        for key, val in report.corrections.items():
            if key.startswith("corrected_by_"):
                mode = key[len("corrected_by_") :]
                pct = (100.0 * val / wrong) if wrong else 0.0
                lines.append(f"  corrected by {mode}: {val} ({pct:.4f}%)")
    if report.per_scorer_correct:
        lines.append("")
        lines.append(f"{'per-scorer correct':<30} " + " ".join(f"{m:>16}" for m in report.modes))
        for name, tally in report.per_scorer_correct.items():
            lines.append(f"{name:<30} " + " ".join(f"{tally[m]:>16}" for m in report.modes))
    return "\n".join(lines)


def eval_tsv(report: EvalReport) -> str:
    cols = ["id", "gold"]
    for m in report.modes:
        cols += [f"{m}_decision", f"{m}_correct", f"{m}_tie"]
    rows = ["\t".join(cols)]
    for r in report.records:
        row = [r.id, "" if r.gold is None else str(r.gold)]
        for m in report.modes:
            row.append(str(r.decision[m]))
            row.append("" if r.correct[m] is None else str(int(r.correct[m])))
            row.append(str(int(r.tie[m])))
        rows.append("\t".join(row))
    return "\n".join(rows) + "\n"


def eval_json(report: EvalReport) -> str:
    obj = {
        "set": report.set_name,
        "modes": report.modes,
        "scorers": report.scorer_names,
        "counts_source": report.counts_source,
        "accuracy": report.accuracy,
        "corrections": report.corrections,
        "per_scorer_correct": report.per_scorer_correct,
        "records": [
            {
                "id": r.id,
                "gold": r.gold,
                "decision": r.decision,
                "correct": r.correct,
                "tie": r.tie,
                "fallback": r.fallback,
                "corrected_by_partial": r.corrected_by("partial"),
            }
            for r in report.records
        ],
    }
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write_report(report: EvalReport, out: str | None) -> None:
    if not out:
        return
    path = Path(out)
    text = eval_json(report) if path.suffix.lower() == ".json" else eval_tsv(report)
    path.write_text(text, encoding="utf-8")


# ---------------------------------------------------------------- commands


def cmd_train(args) -> int:
    policy = _policy(args)
    with open(args.corpus, encoding="utf-8") as fh:
        seqs = [tokenize(line, policy) for line in fh if line.strip()]
    smoothing = parse_smoothing(args.smoothing)
    if args.level == "word":
        model = ngram.train_word_ngram(
            seqs,
            order=args.order,
            smoothing=smoothing,
            direction=args.direction,
            max_vocab=args.max_vocab,
            min_count=args.min_count,
            name=args.name,
        )
    else:
        if not isinstance(smoothing, ngram.Laplace):
            raise ConfigError("char models support laplace smoothing only")
        model = ngram.train_char_ngram(
            seqs,
            order=args.order,
            smoothing=smoothing,
            direction=args.direction,
            name=args.name,
        )
    ngram.save(model, args.out)
    print(
        f"trained {model.name}: order={model.order} direction={model.direction} "
        f"V={model.vocab_size} sequences={len(seqs)} -> {args.out}"
    )
    if args.dump_counts:
        Path(args.dump_counts).write_text(ngram.dump_counts(model), encoding="utf-8")
    return 0


def cmd_import(args) -> int:
    qs = load_questions(args.infile, args.format, args.name, args.xml_layout)
    dataset.export_jsonl(qs, args.out)
    print(f"imported {len(qs)} questions from {args.infile} -> {args.out}")
    return 0


def _load_counts(arg: str | None, scorers: Sequence[ngram.Scorer]):
    if arg:
        model = ngram.load(arg)
        if not isinstance(model, ngram.WordNGramModel):
            raise ConfigError("--counts must point to a word n-gram model")
        return model
    for s in scorers:
        if isinstance(s, ngram.WordNGramModel):
            return s
    return None


def cmd_resolve(args) -> int:
    qs = load_questions(args.questions, args.format, args.name, args.xml_layout)
    scorers = parse_scorer_list(args.scorers)
    counts = _load_counts(args.counts, scorers)
    n_correct = 0
    n_gold = 0
    for q in sorted(qs, key=lambda q: q.id):
        rep = resolver.resolve(scorers, q, mode=args.mode, counts=counts)
        chosen = " ".join(q.candidates[rep.decision])
        flags = []
        if rep.tie:
            flags.append("tie")
        if rep.used_full_fallback:
            flags.append("full-fallback")
        verdict = ""
        if q.gold_index is not None:
            n_gold += 1
            ok = rep.decision == q.gold_index
            n_correct += ok
            verdict = "correct" if ok else "WRONG"
        extra = f" [{','.join(flags)}]" if flags else ""
        print(f"{q.id}\t{rep.decision}\t{chosen}\t{verdict}{extra}")
    if n_gold:
        print(f"accuracy: {n_correct / n_gold:.4f} ({n_correct}/{n_gold})")
    return 0


def cmd_eval(args) -> int:
    qs = load_questions(args.questions, args.format, args.name, args.xml_layout)
    if len(qs) == 0:
        raise EmptyDataset("no questions to evaluate")
    scorers = parse_scorer_list(args.scorers)
    modes = (
        list(resolver.MODES)
        if args.modes.strip() == "all"
        else [m.strip() for m in args.modes.split(",") if m.strip()]
    )
    counts = _load_counts(args.counts, scorers)
    if "full_normalized" in modes and counts is None:
        modes = [m for m in modes if m != "full_normalized"]
        print("note: skipping full_normalized (no local word model for counts)")
    report = build_eval_report(qs, scorers, modes, counts, per_scorer=not args.no_per_scorer)
    print(render_eval(report))
    _write_report(report, args.out)
    return 0


def cmd_analyze(args) -> int:
    qs = load_questions(args.questions, args.format, args.name, args.xml_layout)
    scorer = parse_scorer_spec(args.scorer)
    want = ngram.BACKWARD if args.backward else ngram.FORWARD
    if scorer.direction != want:
        raise ConfigError(
            f"scorer {scorer.name!r} is {scorer.direction}; this analysis needs {want}"
        )
    out_dir = Path(args.out_dir) if args.out_dir else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)

    answered = 0
    retrieved = 0
    annotated = 0
    correct = 0
    total = 0
    for q in sorted(qs, key=lambda q: q.id):
        # unlabeled questions still get profiles, oriented by listed order
        if q.gold_index is None:
            pair = (0, 1)
        else:
            total += 1
            pair = (
                q.gold_index,
                next(i for i in range(len(q.candidates)) if i != q.gold_index),
            )
        ratios = analysis.backward_ratios if args.backward else analysis.position_ratios
        try:
            profile = ratios(scorer, q, pair, mode=args.mode)
        except WinoscoreError as exc:
            print(f"{q.id}\tskipped ({exc})")
            continue
        decision = analysis.decide_by_Q(profile)
        report = analysis.detect_keywords(
            profile, top_k=args.top_k, special_word_index=q.special_word_index
        )
        if q.gold_index is not None:
            ok = decision.chosen_index == q.gold_index
            correct += ok
            if q.special_word_index is not None:
                annotated += 1
                if ok:
                    answered += 1
                    retrieved += bool(report.special_word_retrieved)
        art = analysis.render_heatmap(profile)
        if not args.quiet:
            print(art.ansi)
            tops = ", ".join(f"{e.token}({e.log_ratio:+.3f})" for e in report.top)
            print(f"  top-{args.top_k}: {tops}")
        if out_dir:
            (out_dir / f"{q.id}.html").write_text(art.html, encoding="utf-8")

    direction = "backward" if args.backward else "forward"
    acc = correct / total if total else 0.0
    print()
    print(f"{'direction':<10} {'mode':<10} {'accuracy':>9} {'retrieved/answered':>20}")
    print(f"{direction:<10} {args.mode:<10} {acc:>9.4f} {f'{retrieved}/{answered}':>20}")
    if args.tally:
        Path(args.tally).write_text(
            "direction\tmode\taccuracy\tretrieved\tanswered\tannotated\n"
            f"{direction}\t{args.mode}\t{acc!r}\t{retrieved}\t{answered}\t{annotated}\n",
            encoding="utf-8",
        )
    return 0


def cmd_rank(args) -> int:
    qs = load_questions(args.questions, args.format, args.name, args.xml_layout)
    query = rank.QueryProfile.from_questions(qs)
    policy = _policy(args)
    docs = rank.iter_documents(args.docs)
    result = rank.rank_corpus(
        docs,
        query,
        top_fraction=args.fraction,
        policy=policy,
        histogram_buckets=args.histogram_buckets,
    )
    print(
        f"ranked {result.n_documents} documents, kept {len(result.ranked)} "
        f"(fraction {args.fraction})"
    )
    if result.ranked:
        best = result.ranked[0]
        print(f"highest score: {best.score:.6f} (doc {best.id})")
    lines = ["id\tscore\tf1_1\tf1_2\tf1_3\tf1_4\toffset"]
    for r in result.ranked:
        f1s = "\t".join(repr(v) for v in r.f1)
        lines.append(f"{r.id}\t{r.score!r}\t{f1s}\t{r.offset}")
    out_text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(out_text, encoding="utf-8")
    else:
        sys.stdout.write(out_text)

    if args.histogram:
        edges, counts = result.histogram
        rows = ["bucket_lo\tbucket_hi\tcount"]
        for i, c in enumerate(counts):
            rows.append(f"{edges[i]!r}\t{edges[i + 1]!r}\t{c}")
        Path(args.histogram).write_text("\n".join(rows) + "\n", encoding="utf-8")

    if args.extract:
        n = rank.extract_documents(args.docs, result.ranked, args.extract)
        print(f"extracted {n} documents -> {args.extract}")

    if args.contamination_threshold is not None:
        hits = rank.contamination_report(
            rank.iter_documents(args.docs), qs, args.contamination_threshold, policy
        )
        print(f"contamination: {len(hits)} document(s) over {args.contamination_threshold}")
        for h in hits:
            print(f"  doc {h.doc_id} ~ question {h.question_id} score {h.score:.4f}")
    return 0


def cmd_serve_stub(args) -> int:
    scorer = ngram.load(args.model) if args.model else None
    stubserver.serve_forever(
        port=args.port,
        vocab_size=args.vocab_size,
        direction=args.direction,
        name=args.stub_name,
        scorer=scorer,
    )
    return 0


# ---------------------------------------------------------------- parser


def _add_questions_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--questions", required=True, help="question file (.xml or .jsonl)")
    p.add_argument("--format", choices=["xml", "jsonl"], default=None)
    p.add_argument("--name", default=None, help="question set name override")
    p.add_argument(
        "--xml-layout",
        default=None,
        help="XML element overrides, e.g. schema=schema,pronoun=pron",
    )


def _add_policy_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-lowercase", action="store_true")
    p.add_argument("--no-detach-punct", action="store_true")


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog=PROG, description="pronoun disambiguation by LM scoring"
    )
    parser.add_argument("--config", default=None, help="INI config; flags win")
    subs = parser.add_subparsers(dest="command", required=True)
    index: dict[str, argparse.ArgumentParser] = {}

    p = index["train"] = subs.add_parser("train", help="train an n-gram model")
    p.add_argument("--corpus", required=True, help="one sentence per line, UTF-8")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--level", choices=["word", "char"], default="word")
    p.add_argument("--smoothing", default="laplace:0.1", help="laplace:A or jm:L1,L2,..")
    p.add_argument("--direction", choices=[ngram.FORWARD, ngram.BACKWARD], default=ngram.FORWARD)
    p.add_argument("--max-vocab", type=int, default=None)
    p.add_argument("--min-count", type=int, default=1)
    p.add_argument("--name", default=None)
    p.add_argument("--out", required=True, help="model file to write")
    p.add_argument("--dump-counts", default=None, help="also write an ARPA-style count dump")
    _add_policy_args(p)
    p.set_defaults(func=cmd_train)

    p = index["import"] = subs.add_parser("import", help="convert questions to JSONL")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--format", choices=["xml", "jsonl"], default=None)
    p.add_argument("--name", default=None)
    p.add_argument("--xml-layout", default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_import)

    p = index["resolve"] = subs.add_parser("resolve", help="answer questions")
    _add_questions_args(p)
    p.add_argument("--scorers", required=True, help="comma list of ngram:/remote: specs")
    p.add_argument("--mode", choices=list(resolver.MODES), default="partial")
    p.add_argument("--counts", default=None, help="word model for unigram counts")
    p.set_defaults(func=cmd_resolve)

    p = index["eval"] = subs.add_parser("eval", help="evaluate a question set")
    _add_questions_args(p)
    p.add_argument("--scorers", required=True)
    p.add_argument("--modes", default="partial", help="comma list or 'all'")
    p.add_argument("--counts", default=None)
    p.add_argument("--out", default=None, help=".tsv or .json machine report")
    p.add_argument("--no-per-scorer", action="store_true", help="skip per-scorer breakdown")
    p.set_defaults(func=cmd_eval)

    p = index["analyze"] = subs.add_parser("analyze", help="ratio profiles and keywords")
    _add_questions_args(p)
    p.add_argument("--scorer", required=True, help="single ngram:/remote: spec")
    p.add_argument("--mode", choices=["full", "partial"], default="partial")
    p.add_argument("--top-k", type=int, default=2)
    p.add_argument("--backward", action="store_true", help="use a backward scorer")
    p.add_argument("--out-dir", default=None, help="write per-question HTML heatmaps")
    p.add_argument("--tally", default=None, help="write the keyword tally TSV")
    p.add_argument("--quiet", action="store_true", help="suppress per-question output")
    p.set_defaults(func=cmd_analyze)

    p = index["rank-corpus"] = subs.add_parser("rank-corpus", help="similarity-rank documents")
    _add_questions_args(p)
    p.add_argument("--docs", required=True, help="one document per line")
    p.add_argument("--fraction", type=float, default=0.001)
    p.add_argument("--out", default=None, help="ranking TSV (stdout if omitted)")
    p.add_argument("--histogram", default=None, help="histogram CSV path")
    p.add_argument("--histogram-buckets", type=int, default=100)
    p.add_argument("--extract", default=None, help="write kept documents to a corpus file")
    p.add_argument("--contamination-threshold", type=float, default=None)
    _add_policy_args(p)
    p.set_defaults(func=cmd_rank)

    p = index["serve-stub"] = subs.add_parser(
        "serve-stub", help="serve the wire protocol (uniform or wrapped model)"
    )
    p.add_argument("--port", type=int, default=8840)
    p.add_argument("--vocab-size", type=int, default=1000)
    p.add_argument("--direction", choices=[ngram.FORWARD, ngram.BACKWARD], default=ngram.FORWARD)
    p.add_argument("--stub-name", default="stub")
    p.add_argument("--model", default=None, help="wrap this local model instead")
    p.set_defaults(func=cmd_serve_stub)

    return parser, index


def _apply_config(path: str, command: str, sub: argparse.ArgumentParser) -> None:
    cfg = configparser.ConfigParser()
    read = cfg.read(path)
    if not read:
        raise ConfigError(f"config file {path!r} not found")
    if command not in cfg:
        return
    section = cfg[command]
    overrides = {}
    for action in sub._actions:
        key = action.dest.replace("_", "-")
        raw = section.get(key, section.get(action.dest))
        if raw is None:
            continue
        if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            overrides[action.dest] = raw.strip().lower() in ("1", "true", "yes", "on")
        elif action.type is not None:
            overrides[action.dest] = action.type(raw)
        else:
            overrides[action.dest] = raw
        action.required = False  # satisfied from the config file
    sub.set_defaults(**overrides)


def _scan_argv(argv: list[str]) -> tuple[str | None, str | None]:
    """Find --config and the subcommand without a full argparse pass."""
    config_path = None
    command = None
    i = 0
    while i < len(argv):
        a = argv[i]
        if a == "--config" and i + 1 < len(argv):
            config_path = argv[i + 1]
            i += 2
            continue
        if a.startswith("--config="):
            config_path = a.split("=", 1)[1]
        elif not a.startswith("-") and command is None:
            command = a
        i += 1
    return config_path, command


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, index = build_parser()

    # Two-phase parse: config values become subcommand defaults, so
    # explicitly passed flags still win.
    config_path, command = _scan_argv(argv)
    try:
        if config_path and command in index:
            _apply_config(config_path, command, index[command])
        args = parser.parse_args(argv)
        return args.func(args)
    except WinoscoreError as exc:
        print(f"error\t{type(exc).__name__}\t{exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error\tFileNotFound\t{exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
