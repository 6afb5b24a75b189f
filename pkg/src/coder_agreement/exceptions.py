class AgreementError(ValueError):
    """Invalid annotation data or a statistic that is undefined on it."""


class InputFormatError(AgreementError):
    """Malformed input file; ``line`` is the 1-based offending line."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
