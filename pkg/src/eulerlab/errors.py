"""Exception and warning types.

Every error carries an ``exit_code``: 1 for bad input, 2 when a
mathematical check fails or a numerical certificate cannot be produced.
"""


class EulerlabError(Exception):
    exit_code = 1


class InputError(EulerlabError):
    exit_code = 1


class CheckFailure(EulerlabError):
    exit_code = 2


class SchemaError(InputError):
    def __init__(self, message, location=()):
        self.location = tuple(location)
        where = "/".join(str(p) for p in self.location)
        super().__init__(f"{where}: {message}" if where else message)


class NonMonotonePL(InputError):
    pass


class SingularMatrix(InputError):
    pass


class BadIndex(InputError):
    pass


class RankMismatch(InputError):
    pass


class BadDeterminant(InputError):
    pass


class NotARepresentation(InputError):
    pass


class NotASection(InputError):
    pass


class BallTooLarge(InputError):
    pass


class NotAnInteger(CheckFailure):
    pass


class IterationLimit(CheckFailure):
    pass


class NotACocycle(CheckFailure):
    def __init__(self, message, triple=None):
        self.triple = triple
        super().__init__(message)


class AssociativityFailure(CheckFailure):
    def __init__(self, message, triple=None):
        self.triple = triple
        super().__init__(message)


class Degenerate(CheckFailure):
    pass


class FixedPointHazard(UserWarning):
    """The first representation may have a global fixed point."""


class FingerprintMismatch(UserWarning):
    """Two representations have visibly different fingerprints."""
