"""Exception hierarchy shared across the package.

The CLI maps InvalidInput to exit code 1 (malformed data) and
PreconditionError to exit code 2 (well-formed data fed to an operation
whose preconditions it does not meet).
"""


class PosetCohError(Exception):
    pass


class InvalidInput(PosetCohError):
    """Malformed input: cycles, redundant covers, bad schemas, bad PD codes,
    presheaves that fail functoriality, complexes whose differential does
    not square to zero."""


class PreconditionError(PosetCohError):
    """Structurally valid input outside an operation's domain."""


class UngradedPosetError(PreconditionError):
    """A grading-dependent operation was handed an ungraded poset."""
