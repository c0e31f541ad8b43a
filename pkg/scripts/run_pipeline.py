#!/usr/bin/env python3
"""End-to-end walkthrough on the synthetic suite, driven through the CLI.

Generates data, trains forward/backward word trigrams and a char model,
evaluates all three scoring modes, runs keyword analysis in both
directions, and similarity-ranks the corpus against the questions.

Usage: python scripts/run_pipeline.py [WORKDIR]
"""

import sys
from pathlib import Path

from winoscore import cli
from winoscore.synthetic import build_suite, write_files


def run(argv: list[str]) -> None:
    print(f"\n$ winoscore {' '.join(argv)}")
    rc = cli.main(argv)
    if rc != 0:
        sys.exit(rc)


def main() -> int:
    work = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data/pipeline")
    work.mkdir(parents=True, exist_ok=True)
    paths = write_files(build_suite(), work)
    corpus = str(paths["corpus"])
    questions = str(paths["questions"])
    backward = str(paths["backward_questions"])

    fwd = str(work / "word3.fwd.json")
    bwd = str(work / "word3.bwd.json")
    char = str(work / "char4.fwd.json")
    run(["train", "--corpus", corpus, "--order", "3",
         "--smoothing", "jm:0.1,0.3,0.6", "--out", fwd])
    run(["train", "--corpus", corpus, "--order", "3",
         "--smoothing", "jm:0.1,0.3,0.6", "--direction", "backward", "--out", bwd])
    run(["train", "--corpus", corpus, "--order", "4", "--level", "char",
         "--smoothing", "laplace:0.1", "--out", char])

    run(["eval", "--questions", questions, "--scorers", f"ngram:{fwd}",
         "--modes", "all", "--out", str(work / "eval.tsv")])
    run(["eval", "--questions", questions, "--scorers", f"ngram:{fwd},ngram:{char}",
         "--modes", "partial"])

    run(["analyze", "--questions", questions, "--scorer", f"ngram:{fwd}",
         "--mode", "partial", "--top-k", "2", "--quiet",
         "--out-dir", str(work / "heatmaps"), "--tally", str(work / "tally_fwd.tsv")])
    run(["analyze", "--questions", backward, "--scorer", f"ngram:{bwd}",
         "--backward", "--mode", "partial", "--quiet",
         "--out-dir", str(work / "heatmaps"), "--tally", str(work / "tally_bwd.tsv")])

    run(["rank-corpus", "--questions", questions, "--docs", corpus,
         "--fraction", "0.01", "--out", str(work / "ranking.tsv"),
         "--histogram", str(work / "histogram.csv"),
         "--contamination-threshold", "0.9"])

    print(f"\nartifacts in {work}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
