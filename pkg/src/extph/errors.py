"""Exception types shared across the package."""

__all__ = ["GradedValidationError", "ConsistencyError", "InputFormatError"]


class GradedValidationError(ValueError):
    """Structural problem in chain/filtration input data."""


class ConsistencyError(RuntimeError):
    """An internal invariant failed (e.g. a barcode interval that never dies)."""


class InputFormatError(ValueError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
