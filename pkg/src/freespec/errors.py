"""Exceptions shared across the package.

The CLI maps these onto exit codes: bad input data exits with 2, a numerical
routine giving up exits with 3.
"""


class FreespecError(Exception):
    """Base class for package errors."""


class InputError(FreespecError, ValueError):
    """Malformed or inconsistent input data (shapes, JSON schema, hermiticity)."""


class NumericalError(FreespecError, RuntimeError):
    """A numerical routine failed to produce a trustworthy result."""
