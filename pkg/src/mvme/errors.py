"""Exception hierarchy shared by every mvme module."""


class MvmeError(Exception):
    """Base class for all library errors."""


class SpecError(MvmeError):
    """A logic specification is malformed or a symbol does not resolve."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class LogicMismatchError(MvmeError, TypeError):
    """Truth values or artifacts from two different logics were mixed."""


class DomainError(MvmeError):
    """An input is outside the domain an operation is defined on."""


class ResourceLimitError(MvmeError):
    """An atom cap or search budget was exceeded."""


class ParseError(MvmeError):
    def __init__(self, message, span=None):
        self.message = message
        self.span = span
        if span is not None:
            message = f"line {span.line}, column {span.column}: {message}"
        super().__init__(message)
