"""Exception hierarchy shared by every pmnstools module."""


class PmnsError(ValueError):
    """Base class for all pmnstools errors."""


class NotPrime(PmnsError):
    """Modulus (or class parameter) failed the primality check."""


class NotInvertible(PmnsError):
    pass


class ZeroInput(PmnsError):
    pass


class NotMonic(PmnsError):
    pass


class DimensionMismatch(PmnsError):
    pass


class CtxMismatch(PmnsError):
    """Polynomials over different moduli were combined."""


class BadExponents(PmnsError):
    pass


class BadConstant(PmnsError):
    pass


class ZeroA1(PmnsError):
    pass


class ZeroConstant(PmnsError):
    pass


class BadGamma(PmnsError):
    """Radix outside 0 < gamma < p."""


class RankDeficient(PmnsError):
    pass


class ZeroVector(PmnsError):
    pass


class NoUsableRow(PmnsError):
    pass


class NotARoot(PmnsError):
    """E(gamma) is not 0 mod p."""


class OutOfRange(PmnsError):
    pass


class BasisMismatch(PmnsError):
    pass


class TooLarge(PmnsError):
    pass


class RhoBound(PmnsError):
    """rho does not exceed half of the basis 1-norm, or (2 rho - 1)^n < p."""


class UnknownExample(PmnsError):
    pass


class RecordError(PmnsError):
    """Malformed record or command-line input."""


class RecordMismatch(PmnsError):
    """A stored record field disagrees with its recomputed value."""


class LatticeMembership(PmnsError):
    """A basis row does not vanish at gamma mod p."""


class HomomorphismFailure(PmnsError):
    """PMNS arithmetic disagreed with the integer oracle."""
