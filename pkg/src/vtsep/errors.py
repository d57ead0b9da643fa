"""Exception types shared across the toolkit."""


class VtsepError(ValueError):
    """Base class for input and contract violations."""


class GraphError(VtsepError):
    pass


class SymmetryError(VtsepError):
    pass


class CertificateError(VtsepError):
    """A claimed certificate (tube, ring, decomposition, ...) does not hold."""


class BudgetExhausted(VtsepError):
    """A bounded search ran out of budget before reaching a verdict."""
