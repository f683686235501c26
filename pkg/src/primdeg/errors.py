"""Exception types shared across the package."""


class CapExceededError(ValueError):
    """An input exceeds a configured size cap (bitset width or dense cell budget)."""


class VerificationError(RuntimeError):
    """A construction failed its mandatory self-check.

    Raised when a family builder produces a tensor or matrix whose machine-verified
    degree disagrees with the degree it was built to realize. This is an internal
    inconsistency, not a bad input; the CLI maps it to exit code 2.
    """


class ParseError(ValueError):
    """A tensor document failed to parse; the message carries the line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
