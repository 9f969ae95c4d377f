"""Exception hierarchy shared by every module of the package."""


class SemiPrimalError(Exception):
    """Base class for all errors raised by this package."""


class SignatureMismatch(SemiPrimalError):
    pass


class SizeCapExceeded(SemiPrimalError):
    pass


class InvalidAlgebra(SemiPrimalError):
    """Raised when tables or JSON input do not describe a finite algebra."""


class NoLatticeReduct(SemiPrimalError):
    pass


class NotResiduated(SemiPrimalError):
    pass


class NotFLew(SemiPrimalError):
    pass


class RouteDisagreement(SemiPrimalError):
    """The three semi-primality tests returned different answers.

    The characterizations are theorems, so this always indicates a bug.
    """


class NotInVariety(SemiPrimalError):
    pass


class BijectionFailure(SemiPrimalError):
    pass


class RoundTripFailure(SemiPrimalError):
    pass


class ConstructionAmbiguous(SemiPrimalError):
    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


class EmptySample(SemiPrimalError):
    pass


class AmbiguousLatticeWarning(UserWarning):
    """More than one pair of binary operations forms a bounded lattice."""


class NotSurjectiveWarning(UserWarning):
    """A canonical form landed strictly inside the product of its factors."""
