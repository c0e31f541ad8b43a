import pytest

from winoscore.ngram import BACKWARD, Laplace, train_word_ngram
from winoscore.synthetic import build_suite, corpus_sequences, default_scorer
from winoscore.text import tokenize


@pytest.fixture(scope="session")
def toy_bigram_corpus():
    return [tokenize(s) for s in ("the cat sat .", "the dog sat .")]


@pytest.fixture(scope="session")
def ball_cup_corpus():
    return [tokenize(s) for s in ("the ball is big .", "the cup is small .")]


@pytest.fixture(scope="session")
def suite():
    return build_suite()


@pytest.fixture(scope="session")
def suite_sequences(suite):
    return corpus_sequences(suite)


@pytest.fixture(scope="session")
def fwd_model(suite):
    return default_scorer(suite)


@pytest.fixture(scope="session")
def bwd_model(suite):
    return default_scorer(suite, direction=BACKWARD)


@pytest.fixture(scope="session")
def laplace_trigram(ball_cup_corpus):
    return train_word_ngram(ball_cup_corpus, order=3, smoothing=Laplace(0.1))


@pytest.fixture(scope="session")
def mle_trigram(ball_cup_corpus):
    return train_word_ngram(ball_cup_corpus, order=3, smoothing=Laplace(0.0))
