#!/usr/bin/env python3
"""Write the bundled synthetic questions and training corpus to a directory.

Usage: python scripts/make_synthetic.py [OUTDIR]
"""

import sys
from pathlib import Path

from winoscore.synthetic import build_suite, write_files


def main() -> int:
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("data/synthetic")
    suite = build_suite()
    paths = write_files(suite, outdir)
    print(f"{len(suite.questions)} forward questions ({len(suite.trap_ids)} rarity traps)")
    print(f"{len(suite.backward_questions)} backward (keyword-before-pronoun) questions")
    print(f"{len(suite.corpus_sentences)} corpus sentences")
    for kind, path in paths.items():
        print(f"  {kind}: {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
