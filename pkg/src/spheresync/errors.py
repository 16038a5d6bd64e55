"""Exception types shared across the package."""


class SphereSyncError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(SphereSyncError):
    """Operands live in different ambient dimensions."""


class NotStronglyConnected(SphereSyncError):
    """The coupling digraph is not strongly connected; certificates are void."""


class NumericalFailure(SphereSyncError):
    """A numerical routine produced a result violating a required hypothesis."""


class CharacterizationMismatch(SphereSyncError):
    """The two subspace characterizations disagree beyond tolerance."""


class StepTooLarge(SphereSyncError):
    """Integrator step produced a norm correction above the safety bound."""


class ParseError(SphereSyncError):
    """Run configuration file is missing or not parseable."""


class ValidationError(SphereSyncError):
    """Run configuration parsed but failed a consistency check."""
