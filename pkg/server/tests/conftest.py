import pytest

from winoscore.ngram import JelinekMercer, save, train_word_ngram
from winoscore.text import tokenize

CORPUS = [
    "the ball is big .",
    "the cup is small .",
    "the sun is bright .",
    "the lamp is dull .",
]


@pytest.fixture(scope="session")
def word_model():
    seqs = [tokenize(s) for s in CORPUS]
    return train_word_ngram(seqs, order=3, smoothing=JelinekMercer((0.1, 0.3, 0.6)))


@pytest.fixture(scope="session")
def word_model_path(word_model, tmp_path_factory):
    path = tmp_path_factory.mktemp("models") / "word3.json"
    save(word_model, path)
    return path
