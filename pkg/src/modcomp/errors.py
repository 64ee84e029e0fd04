"""Exception types shared across the package."""


class ModcompError(Exception):
    """Base class for all errors raised by modcomp."""


class FormulaSyntaxError(ModcompError):
    """Raised when formula text cannot be parsed.

    ``offset`` is the byte offset in the input where parsing failed.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class ModelFormatError(ModcompError):
    """Raised for malformed model files."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ResourceLimitError(ModcompError):
    """A configured cap was exceeded. This is not a logical verdict."""

    def __init__(self, module, message):
        super().__init__(f"[{module}] {message}")
        self.module = module


class PreconditionError(ModcompError):
    """An operation was called with arguments violating its precondition."""


class InternalError(ModcompError):
    """A self-check failed. Indicates a bug rather than a property of the input."""
