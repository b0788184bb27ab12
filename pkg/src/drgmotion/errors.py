"""Exception hierarchy shared by every module of the package."""


class DRGError(Exception):
    """Base class for all package errors."""


class InvalidArray(DRGError, ValueError):
    """An intersection array violates a structural invariant."""


class DomainError(DRGError, ValueError):
    """A parameter lies outside the range an operation accepts."""


class NonIntegralDistanceDegree(DRGError):
    pass


class NegativeA(DRGError):
    pass


class NonIntegralP(DRGError):
    pass


class NonIntegral(DRGError):
    """A derived (halved/folded) array would need non-integral entries."""


class MultiplicityNotIntegral(DRGError):
    pass


class DegenerateSpectrum(DRGError):
    pass


class Inapplicable(DRGError):
    """The premises of a lemma do not hold for the given input."""


class PremiseViolated(DRGError):
    """Caller passed input that does not meet an operation's premises."""


class ShapeViolation(DRGError):
    """An array contradicts a known structural fact, so it is infeasible."""


class NotBipartite(DRGError):
    pass


class NotAntipodal(DRGError):
    pass


class DiameterTwo(DRGError):
    pass


class NoFeasibleEps(DRGError):
    pass


class TheoremViolation(DRGError):
    """A proven statement failed on concrete data.

    On a genuine distance-regular array this indicates a bug (or a
    counterexample), never a user error.
    """


class NotDistanceRegular(DRGError):
    pass


class Disconnected(DRGError):
    pass


class SizeLimitExceeded(DRGError):
    pass
