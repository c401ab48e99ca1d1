"""Exception types raised by intertrace."""


class IntertraceError(Exception):
    """Base class for all library errors."""


class DimensionError(IntertraceError, ValueError):
    """Matrix or layout dimensions are incompatible, or exceed the cap."""


class NotHermitianError(IntertraceError, ValueError):
    pass


class ConvergenceError(IntertraceError, RuntimeError):
    pass


class LayoutError(IntertraceError, ValueError):
    """Unknown, duplicate or otherwise invalid subsystem labels."""


class ScenarioError(IntertraceError, ValueError):
    """A scenario is malformed or cannot be run with the requested policy."""

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
