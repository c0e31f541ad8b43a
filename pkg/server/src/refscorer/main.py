"""refscorer CLI: serve a scoring backend over the wire protocol."""

from __future__ import annotations

import argparse
import sys

import uvicorn

from .app import DEFAULT_MAX_BATCH, create_app
from .backends import build_backend


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="refscorer",
        description="reference scoring server (winoscore wire protocol)",
    )
    parser.add_argument(
        "--model",
        default=None,
        help="ngram:PATH or hf:MODEL_ID; omit for the uniform stub",
    )
    parser.add_argument("--port", type=int, default=8840)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument(
        "--direction",
        choices=["forward", "backward"],
        default=None,
        help="advertised direction (defaults to the model's, or forward)",
    )
    parser.add_argument("--stub-vocab-size", type=int, default=1000)
    parser.add_argument("--device", default="cpu", help="hf backend device")
    parser.add_argument("--max-batch", type=int, default=DEFAULT_MAX_BATCH)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        backend = build_backend(
            args.model,
            direction=args.direction,
            stub_vocab_size=args.stub_vocab_size,
            device=args.device,
        )
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error\tstartup\t{exc}", file=sys.stderr)
        return 1
    app = create_app(backend, max_batch=args.max_batch)
    print(
        f"serving {backend.name} ({backend.direction}, V={backend.vocab_size}) "
        f"on http://{args.host}:{args.port}"
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


if __name__ == "__main__":
    sys.exit(main())
