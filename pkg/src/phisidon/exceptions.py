"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes, so keep the split between user-facing
precondition failures, budget refusals and internal errors intact.
"""


class SidonError(Exception):
    """Base class for all errors raised by phisidon."""


class PreconditionError(SidonError, ValueError):
    """Input violates an operation's documented precondition."""


class NotSidonError(PreconditionError):
    """A set that must be phi-Sidon is not."""


class BudgetExceeded(SidonError):
    """An exhaustive enumeration would exceed its configured budget."""

    def __init__(self, what, needed, budget):
        self.what = what
        self.needed = needed
        self.budget = budget
        super().__init__(
            f"{what} needs {needed} evaluations, budget is {budget}"
        )


class ConstructionError(SidonError, RuntimeError):
    """A construction broke a guarantee it relies on.

    This is never caused by user input; it signals a bug.
    """
