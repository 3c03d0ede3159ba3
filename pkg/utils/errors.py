"""Exceptions raised by the counting library and the command-line tool.

Every error carries a machine-readable ``code`` and the process exit status
``main.py`` uses when the error reaches the top level.
"""


class CountingError(Exception):
    """Base class for all errors raised by this package."""

    code = "counting_error"
    exit_code = 1

    def to_dict(self):
        return {"error": self.code, "message": str(self)}


class DomainError(CountingError, ValueError):
    """Raised when a function receives an argument outside its domain."""

    code = "domain_error"
    exit_code = 1


class CorpusParseError(CountingError):
    """Malformed corpus syntax."""

    code = "parse_error"
    exit_code = 3

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        location = ""
        if path is not None:
            location = f"{path}"
        if line is not None:
            location = f"{location}:{line}" if location else f"line {line}"
        super().__init__(f"{location}: {message}" if location else message)

    def to_dict(self):
        result = super().to_dict()
        result.update({"line": self.line, "path": self.path})
        return result


class CorpusValidationError(CountingError):
    """A well-formed corpus breaks a corpus invariant."""

    code = "validation_error"
    exit_code = 4

    def __init__(self, message, publication_id=None, position=None):
        self.message = message
        self.publication_id = publication_id
        self.position = position
        where = []
        if publication_id is not None:
            where.append(f"publication {publication_id!r}")
        if position is not None:
            where.append(f"at {position}")
        prefix = " ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)

    def to_dict(self):
        result = super().to_dict()
        result.update({"publication_id": self.publication_id, "position": self.position})
        return result


class CorpusIOError(CountingError):
    """The corpus file could not be read or written."""

    code = "io_error"
    exit_code = 5
