"""Exception types shared across the package."""


class DomainError(ValueError):
    """An evaluation point lies outside the convergence/validity domain."""


class ConvergenceError(RuntimeError):
    """A truncated sum failed to reach its tail-bound tolerance at the cutoff."""


class TableCoverageError(LookupError):
    """A recurrence check needed a table entry that was never built."""
