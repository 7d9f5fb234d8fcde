"""Error types raised by the computation engine.

Every user-facing error is a ``ValueError`` so the management commands can
turn it into an exit status of 2 without knowing which module raised it.
"""


class BranchqError(ValueError):
    """Base class for invalid input to the engine."""


class InvalidGroupError(BranchqError):
    pass


class InvalidFamilyError(BranchqError):
    pass


class InvalidLeviError(BranchqError):
    pass


class InvalidHighestWeightError(BranchqError):
    pass


class InvalidCompositionError(BranchqError):
    pass


class InvalidGeneratorSetError(BranchqError):
    pass


class OracleOutOfRangeError(BranchqError):
    pass


class ParityError(AssertionError):
    """Doubled arithmetic produced an odd entry. This is a bug, not bad input."""
