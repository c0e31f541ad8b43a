"""Minimal in-process implementation of the scoring wire protocol.

By default it scores every position uniformly at -ln(vocab_size), which is
enough to exercise clients end to end with zero dependencies; it can also
wrap any local scorer to expose it over HTTP (loopback testing of the
protocol against direct scoring).
"""

from __future__ import annotations

import json
import math
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from .ngram import FORWARD, Scorer, _check_direction
from .text import TokenSequence


class StubState:
    def __init__(self, vocab_size: int, direction: str, name: str, scorer: Scorer | None):
        self.vocab_size = vocab_size
        self.direction = _check_direction(direction)
        self.name = name
        self.scorer = scorer

    def logprobs(self, tokens: list[str]) -> list[float]:
        if self.scorer is not None:
            return self.scorer.cond_logprob(TokenSequence(tuple(tokens)))
        return [-math.log(self.vocab_size)] * (len(tokens) - 1)


class _Handler(BaseHTTPRequestHandler):
    state: StubState

    def log_message(self, fmt, *args):  # keep test output quiet
        pass

    def _reply(self, code: int, obj: dict) -> None:
        body = json.dumps(obj).encode("utf-8")
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):
        if self.path != "/health":
            self._reply(404, {"error": "not found"})
            return
        self._reply(
            200,
            {
                "name": self.state.name,
                "direction": self.state.direction,
                "vocab_size": self.state.vocab_size,
            },
        )

    def do_POST(self):
        if self.path != "/score":
            self._reply(404, {"error": "not found"})
            return
        length = int(self.headers.get("Content-Length", "0"))
        try:
            payload = json.loads(self.rfile.read(length).decode("utf-8"))
            sequences = payload["sequences"]
            out = [self.state.logprobs([str(t) for t in seq]) for seq in sequences]
        except Exception as exc:
            self._reply(400, {"error": str(exc)})
            return
        self._reply(200, {"id": payload.get("id"), "logprobs": out})


def make_server(
    port: int = 0,
    vocab_size: int = 1000,
    direction: str = FORWARD,
    name: str = "stub",
    scorer: Scorer | None = None,
) -> ThreadingHTTPServer:
    """Build (but do not start) a protocol server; port 0 picks a free one."""
    if scorer is not None:
        direction = scorer.direction
        name = scorer.name
        vocab_size = getattr(scorer, "vocab_size", vocab_size)
    handler = type("Handler", (_Handler,), {"state": StubState(vocab_size, direction, name, scorer)})
    return ThreadingHTTPServer(("127.0.0.1", port), handler)


class running_server:
    """Context manager: serve on a background thread, yield the base URL."""

    def __init__(self, server: ThreadingHTTPServer):
        self.server = server

    def __enter__(self) -> str:
        self.thread = threading.Thread(target=self.server.serve_forever, daemon=True)
        self.thread.start()
        host, port = self.server.server_address[:2]
        return f"http://{host}:{port}"

    def __exit__(self, *exc):
        self.server.shutdown()
        self.server.server_close()
        self.thread.join(timeout=5)
        return False


def serve_forever(
    port: int,
    vocab_size: int = 1000,
    direction: str = FORWARD,
    name: str = "stub",
    scorer: Scorer | None = None,
) -> None:
    server = make_server(port, vocab_size, direction, name, scorer)
    host, bound_port = server.server_address[:2]
    print(f"serving {name} ({direction}, V={vocab_size}) on http://{host}:{bound_port}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
