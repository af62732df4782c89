class DomainError(ValueError):
    """Raised when an input violates a mathematical precondition."""


class PipelineMismatch(AssertionError):
    """Two independent routes to the same quantity disagreed (an internal bug)."""
