"""Exception hierarchy.

Errors fall into three families that the command line maps to exit codes:
input problems (2), engine failures (3) and failed hypotheses (4).
"""


class RimcalcError(Exception):
    """Base class for every error raised by this package."""


class InputError(RimcalcError, ValueError):
    """The caller supplied something malformed."""


class EngineError(RimcalcError, ArithmeticError):
    """An invariant computation could not be completed consistently."""


class HypothesisFailure(RimcalcError):
    """A theorem-level hypothesis does not hold for the supplied data."""


# laurent
class DivisionNotExact(EngineError):
    pass


class RankMismatch(InputError):
    pass


class NotUnitNormalizable(EngineError):
    pass


class NonSymmetrizable(EngineError):
    pass


# knot
class PresentationSyntaxError(InputError):
    pass


class NotAKnot(InputError):
    pass


class InvalidLabels(InputError):
    pass


class NotCoprime(InputError):
    pass


# alexander
class EngineNotApplicable(InputError):
    pass


class EngineDisagreement(EngineError):
    def __init__(self, message, results=None):
        super().__init__(message)
        self.results = results or {}


# swtheory
class BadCharacteristics(InputError):
    pass


class SignatureUnknown(InputError):
    pass


class NotNormalized(InputError):
    pass


class InconsistentInputs(InputError):
    pass


class NotAnSWPair(HypothesisFailure):
    pass


class NotSymplectic(HypothesisFailure):
    pass
