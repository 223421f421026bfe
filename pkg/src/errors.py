"""
Exception hierarchy shared by all modules.
Every error carries a machine-readable code and the process exit code the CLI uses for it.
"""

from typing import Optional


class LLSemError(Exception):
    """Base class of every error raised by the workbench."""

    code = "error"
    exit_code = 2

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_record(self) -> dict:
        return {"error": self.code, "message": self.message}


class ParseError(LLSemError):
    """Malformed s-expression, unknown symbol or arity mismatch."""

    code = "parse"

    def __init__(self, message: str, position: Optional[int] = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ProofCheckError(LLSemError):
    """A proof node does not instantiate its rule shape."""

    code = "proof-check"

    def __init__(self, rule: str, path: str, message: str):
        super().__init__(f"{rule} at {path}: {message}")
        self.rule = rule
        self.path = path


class WebError(LLSemError):
    """A point is outside the web it is checked against."""

    code = "web"


class CardinalityError(LLSemError):
    """A bag whose cardinality is not in K."""

    code = "cardinality"


class ConfigError(LLSemError):
    """An invalid combination of semantics selectors."""

    code = "config"


class TableError(LLSemError):
    """A malformed or non-total table space."""

    code = "table"


class BoundExhausted(LLSemError):
    """A search went past a cap or budget; no answer is given."""

    code = "bound"
    exit_code = 3
