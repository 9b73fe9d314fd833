"""Exception hierarchy shared by the library and the CLI."""


class GZError(Exception):
    """Base class for all errors raised by gzsys."""


class DomainError(GZError, ValueError):
    """Input lies outside the domain of an operation (bad index, c not in Omega, ...)."""


class NumericalError(GZError, ArithmeticError):
    """A numerical routine failed or hit a degeneracy it cannot resolve reliably."""
