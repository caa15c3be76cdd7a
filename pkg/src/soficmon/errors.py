"""Exception hierarchy shared by every module."""


class SoficError(Exception):
    """Base class for all library errors."""


class DomainError(SoficError, ValueError):
    """Operands do not live in the same space (size mismatch, foreign handle...)."""


class ValidationError(SoficError, ValueError):
    """A table, rule set or input document failed validation."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class BudgetError(SoficError):
    """A computation would exceed its configured size budget."""


class NonTerminationError(SoficError):
    """Rewriting exceeded its step budget."""


class ContractError(SoficError):
    """A verified pre- or post-condition does not hold."""


class PreconditionError(ContractError):
    pass


class StructuralError(SoficError):
    """A graph violates a structural assumption (e.g. determinism)."""
