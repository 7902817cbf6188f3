"""Exception types shared across the package."""


class SizeError(ValueError):
    """Dimension, qubit-count or vector-length mismatch."""


class ContractError(ValueError):
    """An input violates an operation's precondition (non-unitary, non-Hermitian, ...)."""


class DomainError(ValueError):
    """A numeric argument lies outside the function's domain."""


class ConfigError(ValueError):
    """Invalid experiment or optimizer configuration."""
