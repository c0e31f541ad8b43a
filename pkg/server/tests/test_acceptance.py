"""Wire-protocol loopback acceptance: the reference server over a real
socket, scored through the primary package's client."""

import math
import threading
import time

import pytest
import uvicorn

from refscorer.app import create_app
from refscorer.backends import NgramBackend, UniformBackend
from winoscore.remote import RemoteScorer, connect
from winoscore.text import tokenize


class _LiveServer:
    """uvicorn on an ephemeral port in a background thread."""

    def __init__(self, app):
        self._server = uvicorn.Server(
            uvicorn.Config(app, host="127.0.0.1", port=0, log_level="warning")
        )
        self._thread = threading.Thread(target=self._server.run, daemon=True)

    def __enter__(self) -> str:
        self._thread.start()
        deadline = time.time() + 10
        while not self._server.started:
            if time.time() > deadline:
                raise RuntimeError("server did not start")
            time.sleep(0.01)
        port = self._server.servers[0].sockets[0].getsockname()[1]
        return f"http://127.0.0.1:{port}"

    def __exit__(self, *exc):
        self._server.should_exit = True
        self._thread.join(timeout=10)
        return False


def test_stub_mode_uniform_everywhere():
    app = create_app(UniformBackend(vocab_size=500))
    with _LiveServer(app) as url:
        client = RemoteScorer(url)
        info = client.health_check()
        assert info.vocab_size == 500
        for n in (1, 3, 7):
            seq = tokenize(" ".join(f"w{i}" for i in range(n)))
            values = client.cond_logprob(seq)
            assert len(values) == n + 1
            for v in values:
                assert v == pytest.approx(-math.log(500), abs=1e-12)
    print("[acceptance] reference server stub mode -> -ln V everywhere: PASS")


def test_ngram_loopback_matches_direct_scoring(word_model, word_model_path):
    app = create_app(NgramBackend(str(word_model_path)))
    sentences = [
        "the ball is big .",
        "the cup is small .",
        "words the model never saw .",
    ]
    with _LiveServer(app) as url:
        client = connect(url)
        assert client.direction == word_model.direction
        for sent in sentences:
            seq = tokenize(sent)
            got = client.cond_logprob(seq)
            want = word_model.cond_logprob(seq)
            assert got == pytest.approx(want, abs=1e-9)
    print("[acceptance] ngram loopback reproduces direct scoring to 1e-9: PASS")


def test_resolver_end_to_end_through_server(word_model, word_model_path):
    """The primary's resolver, fed only by the remote protocol, answers the
    toy question the same way as direct scoring."""
    from winoscore.dataset import SchemaQuestion
    from winoscore.resolver import resolve
    from winoscore.text import TokenSequence

    q = SchemaQuestion(
        id="toy",
        tokens=TokenSequence.from_interior(("the", "it", "is", "big", ".")),
        pronoun_span=(2, 3),
        candidates=(("ball",), ("cup",)),
        gold_index=0,
    )
    app = create_app(NgramBackend(str(word_model_path)))
    with _LiveServer(app) as url:
        remote_report = resolve([connect(url)], q, mode="partial")
    direct_report = resolve([word_model], q, mode="partial")
    assert remote_report.decision == direct_report.decision == 0
    assert remote_report.scores("partial") == pytest.approx(
        direct_report.scores("partial"), abs=1e-9
    )
    print("[acceptance] resolver through the wire matches direct decisions: PASS")
