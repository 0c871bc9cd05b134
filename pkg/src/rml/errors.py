"""Exception types shared across the package."""

from __future__ import annotations


class RmlError(Exception):
    """Base class for all library errors."""


class FieldMismatch(RmlError, ValueError):
    """Operands live in different fields or ambient spaces."""


class NotIrreducible(RmlError, ValueError):
    """An extension modulus has a nontrivial factor over the base field."""

    def __init__(self, modulus, factor):
        self.modulus = tuple(modulus)
        self.factor = tuple(factor)
        super().__init__(
            f"modulus {list(self.modulus)} is reducible: "
            f"divisible by {list(self.factor)} (ascending coefficients)"
        )


class BudgetExceeded(RmlError, RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, what: str, count: int, budget: int):
        self.what = what
        self.count = count
        self.budget = budget
        super().__init__(f"{what}: {count} items exceeds budget {budget}")


class InapplicableDefinition(RmlError, ValueError):
    """A definition was requested outside the parameters where it is defined."""


class InvalidDistribution(RmlError, ValueError):
    """A weight distribution is inconsistent, or a transform produced a non-integer."""


DEFAULT_BUDGET = 10**7
