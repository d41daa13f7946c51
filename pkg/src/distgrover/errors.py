"""Exception types shared across the package.

Each error carries the process exit code the CLI maps it to:
1 usage, 2 parse, 3 capacity, 4 internal invariant.
"""


class DistGroverError(Exception):
    exit_code = 4


class UsageError(DistGroverError):
    """Bad arguments or parameters."""

    exit_code = 1


class ParseError(DistGroverError):
    """Malformed input file; carries a 1-based line number when known."""

    exit_code = 2

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class CapacityError(DistGroverError):
    """Requested simulation exceeds the supported qubit budget."""

    exit_code = 3


class InvariantError(DistGroverError):
    """An internal consistency check failed (simulator bug)."""

    exit_code = 4


class NotCompilableError(UsageError):
    """Formula has no compilable clause structure (constant true/false)."""
