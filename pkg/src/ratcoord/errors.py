"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """A configurable resource cap was hit before the computation finished.

    Raised instead of silently truncating a result; the caller chose the
    budget and must decide whether to raise it.
    """


class DecompositionError(RuntimeError):
    """No certified disjoint-unambiguous decomposition was found."""
