"""HTTP client for external scoring services.

Any service that speaks the wire protocol becomes a scorer:

* ``POST /score`` with ``{"id": str, "sequences": [[tok, ...], ...]}``
  (tokens include the sentence markers) answers
  ``{"id": str, "logprobs": [[float, ...], ...]}`` where response i holds
  ``len(sequences[i]) - 1`` natural-log conditionals;
* ``GET /health`` answers ``{"name": str, "direction": "forward"|"backward",
  "vocab_size": int}``.

Scoring is read-only, so bounded retries are safe.
"""

from __future__ import annotations

import json
import uuid
from dataclasses import dataclass, field

import requests

from .errors import ConfigError, ProtocolError, Unavailable
from .ngram import BACKWARD, FORWARD, Scorer, _check_direction
from .text import TokenSequence

# Neural backends may emit conditionals a hair above 0 from rounding;
# anything beyond this is a broken server.
_POSITIVE_SLACK = 1e-6


@dataclass(frozen=True)
class ServerInfo:
    name: str
    direction: str
    vocab_size: int


@dataclass
class RemoteScorer(Scorer):
    """Scorer backed by a remote endpoint.

    ``endpoint`` is the service base URL; requests are batched at most
    ``batch_size`` sequences at a time and retried ``retries`` extra times
    on connection failures.
    """

    endpoint: str
    direction: str = FORWARD
    name: str = "remote"
    timeout: float = 10.0
    auth_token: str | None = None
    batch_size: int = 32
    retries: int = 2
    _session: requests.Session = field(default_factory=requests.Session, repr=False)

    def __post_init__(self):
        if not self.endpoint.startswith(("http://", "https://")):
            raise ConfigError(f"endpoint must be an http(s) URL: {self.endpoint!r}")
        if self.timeout <= 0:
            raise ConfigError("timeout must be positive")
        _check_direction(self.direction)
        object.__setattr__(self, "endpoint", self.endpoint.rstrip("/"))

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.auth_token:
            headers["Authorization"] = f"Bearer {self.auth_token}"
        return headers

    def _post_score(self, sequences: list[list[str]]) -> list[list[float]]:
        request_id = str(uuid.uuid4())
        body = json.dumps({"id": request_id, "sequences": sequences})
        last_exc: Exception | None = None
        for _ in range(self.retries + 1):
            try:
                resp = self._session.post(
                    self.endpoint + "/score",
                    data=body.encode("utf-8"),
                    headers=self._headers(),
                    timeout=self.timeout,
                )
                break
            except (requests.ConnectionError, requests.Timeout) as exc:
                last_exc = exc
        else:
            raise Unavailable(f"{self.endpoint}/score unreachable: {last_exc}")

        if resp.status_code != 200:
            raise ProtocolError(
                f"/score returned HTTP {resp.status_code}: {resp.text[:200]}"
            )
        try:
            payload = resp.json()
        except ValueError as exc:
            raise ProtocolError(
                f"/score returned invalid JSON: {resp.text[:200]}"
            ) from exc
        if not isinstance(payload, dict) or payload.get("id") != request_id:
            raise ProtocolError(f"response id mismatch: {str(payload)[:200]}")
        logprobs = payload.get("logprobs")
        if not isinstance(logprobs, list) or len(logprobs) != len(sequences):
            raise ProtocolError(f"bad logprobs payload: {str(payload)[:200]}")

        out: list[list[float]] = []
        for seq, lps in zip(sequences, logprobs):
            if not isinstance(lps, list) or len(lps) != len(seq) - 1:
                raise ProtocolError(
                    f"length mismatch: {len(seq)} tokens vs "
                    f"{len(lps) if isinstance(lps, list) else '?'} logprobs"
                )
            row = []
            for v in lps:
                v = float(v)
                if v > _POSITIVE_SLACK:
                    raise ProtocolError(f"positive log-probability {v!r}")
                row.append(min(v, 0.0))
            out.append(row)
        return out

    def score_batch(self, batch: list[TokenSequence]) -> list[list[float]]:
        """Score many sequences, preserving order.

        Raises:
            Unavailable: endpoint unreachable after retries.
            ProtocolError: malformed or contract-violating response.
        """
        if not batch:
            raise ConfigError("empty batch")
        out: list[list[float]] = []
        for i in range(0, len(batch), self.batch_size):
            chunk = [list(seq.tokens) for seq in batch[i : i + self.batch_size]]
            out.extend(self._post_score(chunk))
        return out

    def cond_logprob(self, seq: TokenSequence) -> list[float]:
        return self.score_batch([seq])[0]

    def fetch_info(self) -> ServerInfo:
        """Fetch the server descriptor without checking the direction.

        Raises:
            Unavailable: endpoint unreachable.
            ProtocolError: malformed descriptor.
        """
        try:
            resp = self._session.get(
                self.endpoint + "/health", headers=self._headers(), timeout=self.timeout
            )
        except (requests.ConnectionError, requests.Timeout) as exc:
            raise Unavailable(f"{self.endpoint}/health unreachable: {exc}") from exc
        if resp.status_code != 200:
            raise ProtocolError(f"/health returned HTTP {resp.status_code}")
        try:
            obj = resp.json()
            info = ServerInfo(
                str(obj["name"]), str(obj["direction"]), int(obj["vocab_size"])
            )
        except (ValueError, KeyError, TypeError) as exc:
            raise ProtocolError(f"bad health payload: {resp.text[:200]}") from exc
        if info.direction not in (FORWARD, BACKWARD):
            raise ProtocolError(f"unknown server direction {info.direction!r}")
        return info

    def health_check(self) -> ServerInfo:
        """Fetch the server descriptor and verify the direction matches.

        Raises:
            Unavailable: endpoint unreachable.
            ProtocolError: malformed descriptor.
            ConfigError: server direction differs from the configured one.
        """
        info = self.fetch_info()
        if info.direction != self.direction:
            raise ConfigError(
                f"server scores {info.direction}, client configured {self.direction}"
            )
        return info


def connect(endpoint: str, **kwargs) -> RemoteScorer:
    """Build a client matching the live server's advertised descriptor."""
    probe = RemoteScorer(endpoint, **kwargs)
    info = probe.fetch_info()
    return RemoteScorer(
        endpoint,
        direction=info.direction,
        name=f"{info.name}@{endpoint}",
        timeout=probe.timeout,
        auth_token=probe.auth_token,
        batch_size=probe.batch_size,
        retries=probe.retries,
    )
