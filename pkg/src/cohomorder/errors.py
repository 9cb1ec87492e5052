class BudgetExhausted(RuntimeError):
    """A search ran out of its node budget before reaching an answer.

    Never interpret this as a negative result.
    """


class CapExceeded(ValueError):
    """A construction would exceed the configured size cap."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
