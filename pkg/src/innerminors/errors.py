"""Shared exception types.

Budget overruns are distinguished from ordinary errors so batch drivers
can tally them as skips instead of failures, and soundness alarms mark
situations that a proved statement rules out (hitting one means the
implementation, not the input, is wrong).
"""


class InputError(ValueError):
    """Malformed user input (parse errors, duplicate cells, bad coordinates)."""


class SizeGuardError(ValueError):
    """A desk-scale size guard was exceeded (matrix size, variable count, ...)."""


class BudgetExceeded(RuntimeError):
    """A computation ran past its configured resource budget.

    kind identifies which counter overflowed: "pairs", "terms", "vars",
    or "feasibility".
    """

    def __init__(self, kind: str, message: str = ""):
        self.kind = kind
        super().__init__(message or f"budget exceeded: {kind}")


class SoundnessAlarm(AssertionError):
    """A theorem-backed guarantee failed to hold; indicates a bug, not bad input."""
