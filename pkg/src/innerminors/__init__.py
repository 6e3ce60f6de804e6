"""Exact-arithmetic toolkit for binomial ideals of collections of grid cells."""

__version__ = "0.1.0"

from .errors import BudgetExceeded, InputError, SizeGuardError, SoundnessAlarm

__all__ = [
    "BudgetExceeded",
    "InputError",
    "SizeGuardError",
    "SoundnessAlarm",
    "__version__",
]
