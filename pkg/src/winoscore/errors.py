"""Exception hierarchy shared by all winoscore modules."""


class WinoscoreError(Exception):
    """Base class for every error raised by this package."""


class EmptyText(WinoscoreError):
    """Tokenizer input was empty or whitespace-only."""


class InvalidOrder(WinoscoreError):
    """N-gram order outside the accepted range."""


class EmptyCorpus(WinoscoreError):
    """A corpus stream yielded no sequences/documents."""


class EmptyDataset(WinoscoreError):
    """A question set contains no questions."""


class ParseError(WinoscoreError):
    """Malformed input file (XML or JSON lines).

    Carries optional 1-based ``line`` for error reporting.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SchemaError(WinoscoreError):
    """A question violates the schema invariants."""


class DuplicateId(SchemaError):
    """Two questions in one set share an id."""


class FormatError(WinoscoreError):
    """Model file is not a readable winoscore container."""


class Unavailable(WinoscoreError):
    """Remote scoring endpoint unreachable or timed out."""


class ProtocolError(WinoscoreError):
    """Remote endpoint answered outside the wire contract."""


class ConfigError(WinoscoreError):
    """Inconsistent configuration (directions, empty ensembles, ...)."""


class EmptySuffix(WinoscoreError):
    """Partial scoring requested but nothing follows the candidate."""
