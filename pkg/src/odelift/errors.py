"""Shared exception base for all mathematical failures.

Every error raised by the algebra layers derives from MathError so that the
command line front end can map any mathematical failure to a single exit
code, distinct from parse and usage errors.
"""


class MathError(Exception):
    """Base class for every exact-arithmetic failure in this package."""
