"""Exception types shared across the package."""


class DomainError(ValueError):
    """A precondition on the mathematical inputs is violated."""


class SupportError(DomainError):
    """A coefficient sequence has mass outside its required support."""


class ResourceLimitError(RuntimeError):
    """A sieving or enumeration request exceeds the configured budget."""
