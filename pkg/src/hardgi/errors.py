"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A computation would exceed its configured budget."""


class GenerationError(RuntimeError):
    """Random instance generation ran out of retries.

    ``condition`` names the check that failed on the last draw.
    """

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class SearchBudgetExceeded(ResourceLimitError):
    """The IR search hit its node budget before reaching a verdict."""


class FormatError(ValueError):
    """Malformed instance file; ``line`` is 1-based."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
