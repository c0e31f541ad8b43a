"""Pronoun disambiguation by substitution and language-model scoring."""

from .errors import WinoscoreError
from .text import (
    BOS,
    EOS,
    UNK,
    NGramMultiset,
    TokenSequence,
    TokenizePolicy,
    Vocabulary,
    build_vocab,
    extract_ngrams,
    reverse,
    tokenize,
)
from .dataset import (
    QuestionSet,
    SchemaQuestion,
    XmlLayout,
    export_jsonl,
    import_jsonl,
    import_xml,
    validate,
)
from .ngram import (
    BACKWARD,
    FORWARD,
    CharNGramModel,
    JelinekMercer,
    Laplace,
    Scorer,
    WordNGramModel,
    load,
    save,
    train_char_ngram,
    train_word_ngram,
)
from .resolver import (
    ScoreReport,
    SubstitutedSentence,
    resolve,
    score_full,
    score_full_normalized,
    score_partial,
    substitute,
)
from .analysis import (
    KeywordReport,
    RatioProfile,
    backward_ratios,
    decide_by_Q,
    detect_keywords,
    position_ratios,
    render_heatmap,
)
from .rank import (
    Document,
    QueryProfile,
    RankedDocument,
    contamination_report,
    ngram_f1,
    rank_corpus,
    similarity_score,
)
from .remote import RemoteScorer, ServerInfo

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
