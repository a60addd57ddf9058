"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent user input."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotNilpotentError(InputError):
    """The descending central series does not reach zero."""


class CapabilityError(RuntimeError):
    """A request exceeds what the implementation supports (degree ceilings, missing presentations)."""


class InconsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug or an invalid decomposition."""
