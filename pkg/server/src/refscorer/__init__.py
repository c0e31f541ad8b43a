"""Reference scoring server for the winoscore wire protocol."""

from .app import create_app
from .backends import (
    BackendError,
    HFBackend,
    NgramBackend,
    UniformBackend,
    build_backend,
    sum_subtoken_logprobs,
)

__version__ = "0.1.0"
