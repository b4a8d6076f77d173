"""Shared exception hierarchy.

Every error the library raises on bad input derives from FdiaError so
callers (and the CLI) can distinguish input problems from genuine bugs.
"""


class FdiaError(Exception):
    """Base class for all input/data errors raised by this package."""
