"""
Error Types
Validation, size and numerical failures shared by every module; the CLI maps them to exit codes.
"""


class InvalidArgument(ValueError):
    """Raised when an input fails validation. `field` names the offending input."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


class SizeLimitError(InvalidArgument):
    """Raised when an exact method is asked for a system beyond its size cap."""


class NumericalFailure(RuntimeError):
    """Raised on divergence, non-convergence or an unreachable target."""

    def __init__(self, module: str, operation: str, message: str, trace: list | None = None):
        self.module = module
        self.operation = operation
        self.trace = trace or []
        super().__init__(f"{module}.{operation}: {message}")
