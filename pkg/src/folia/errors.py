"""Exception types shared by the library and the command line."""


class FoliaError(Exception):
    """Base class for input and precondition errors."""


class ParseError(FoliaError, ValueError):
    def __init__(self, message, line=None, col=None, expected=()):
        self.line, self.col, self.expected = line, col, tuple(expected)
        where = f"line {line}, column {col}: " if line is not None else ""
        tail = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{where}{message}{tail}")


class SemanticError(FoliaError, ValueError):
    """Well-formed input that does not describe a valid object."""


class PreconditionError(FoliaError, ValueError):
    """An operation was called on data violating its stated hypothesis."""
