"""Exception types shared across the package."""


class HkboseError(Exception):
    """Base class for all package errors."""


class NonConvergence(HkboseError):
    """Adaptive quadrature (or a Monte-Carlo estimate) exhausted its budget
    before reaching the requested accuracy.

    Usually a signal that ``working_digits`` or ``max_subdivisions`` is too
    low for the given (n, tau).
    """

    def __init__(self, message, value=None, error_estimate=None, subdivisions=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate
        self.subdivisions = subdivisions


class DegenerateInput(HkboseError):
    """An operation was asked for a parameter value at which it is undefined
    (e.g. saddle-point data at tau_tilde = 0)."""


class UnwrapFailure(HkboseError):
    """Adjacent phase samples differ by >= pi even after grid refinement."""


class InsufficientData(HkboseError):
    """A fit or estimate was requested on a window with too few samples."""
