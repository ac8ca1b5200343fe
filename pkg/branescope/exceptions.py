"""
Exceptions raised by branescope.

Every exception carries the process exit code the CLI reports for it.
"""


class BranescopeError(Exception):
    """Base class for all branescope errors."""

    exit_code = 2


class UsageError(BranescopeError):
    exit_code = 1


# Domain errors
class DegeneratePolytope(BranescopeError):
    pass


class UnsupportedDimension(BranescopeError):
    pass


class NonReflexive(BranescopeError):
    pass


class NonSimplicialFan(BranescopeError):
    pass


class NotCartier(BranescopeError):
    pass


class NotInTorus(BranescopeError):
    pass


class NotASubcomplex(BranescopeError):
    pass


class DocumentError(BranescopeError):
    """Input document could not be parsed or failed validation."""

    pass


# Certification failures
class GenericityFailure(BranescopeError):
    """Ranks over GF(p) disagreed across seeds after all retries."""

    exit_code = 3


class NumericalInstability(BranescopeError):
    exit_code = 3


class ScanExhausted(BranescopeError):
    """No stable ghost number found within the scan depth."""

    exit_code = 3
