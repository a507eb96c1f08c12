"""Exception hierarchy. The CLI maps these onto exit codes."""


class FankitError(Exception):
    """Base class for all library errors."""


class OutOfRangeError(FankitError):
    """A restriction index ran past the end of a finite word."""


class BudgetExceededError(FankitError):
    """An enumeration or scan would exceed the configured word budget."""


class PreconditionError(FankitError):
    """A required flag, stabilization depth, or witness is missing or violated."""


class CertificateError(FankitError):
    """An oracle answer, witness claim, or emitted value failed its re-check."""


class InconsistencyError(FankitError):
    """Caller-asserted structure (infinity, uniqueness) was contradicted by a scan."""

    def __init__(self, node, message: str = ""):
        self.node = tuple(node)
        detail = f" at node {''.join(str(b) for b in self.node) or 'e'}"
        super().__init__((message or "assertion contradicted") + detail)


class FuelError(FankitError):
    """A lazy construction ran past its fuel bound."""


class WitnessError(FankitError):
    """A witness function found no value within its scan cap."""
