"""Exception types shared across the library."""


class NDistalError(Exception):
    """Base class for all library errors."""


class ParameterError(NDistalError):
    """A numeric or structural parameter is outside its allowed range."""


class InvalidPointError(NDistalError):
    """A point representation does not belong to the system's space."""


class ConjugacyError(NDistalError):
    """The supplied maps fail the mutual-inverse check on the sample."""


class HomomorphismError(NDistalError):
    """The supplied projection fails the semiconjugacy check."""


class MeasureError(NDistalError):
    """Weights are negative or do not sum to one."""


class RefinementError(NDistalError):
    """A mapped point cannot be snapped back onto the cloud."""


class ConstructionError(NDistalError):
    """A nested-ball mass condition cannot be met on the given measure."""


class BudgetExceededError(NDistalError):
    """Exact enumeration would exceed the subset budget; use the bounded solver."""
