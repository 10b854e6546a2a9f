"""Exception hierarchy shared by every gcm module."""


class GcmError(Exception):
    """Base class for all errors raised by gcm."""


class ParseError(GcmError):
    pass


class NotAGroup(GcmError):
    pass


class TooLarge(GcmError):
    pass


class NotAbelian(GcmError):
    pass


class BadParameters(GcmError):
    pass


class IdentityVertex(GcmError):
    pass


class IdentityElement(GcmError):
    pass


class DimensionMismatch(GcmError):
    pass


class UnknownRow(GcmError):
    pass


class NoConvergence(GcmError):
    pass


class NotAClique(GcmError):
    pass


class NotAnAutomorphism(GcmError):
    pass


class NotAnIsomorphism(GcmError):
    pass


class IndexOutOfRange(GcmError):
    pass


class ExceptionalCase(GcmError):
    """The parameters fall outside the generic automorphism theorems."""


class PreconditionFailed(GcmError):
    pass
