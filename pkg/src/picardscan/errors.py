"""Exception types. Numerical failures carry a ``tag`` used in scan output."""


class PicardScanError(Exception):
    tag = "error"


class UnknownFamily(PicardScanError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class DomainError(PicardScanError, ValueError):
    pass


class MissingMetadata(PicardScanError, ValueError):
    pass


class NumericalError(PicardScanError, ArithmeticError):
    """Base for failures that are recorded per point instead of aborting a scan."""


class IntegrandBlowUp(NumericalError):
    tag = "contour_zero"


class NonConvergence(NumericalError):
    tag = "non_convergence"


class ZeroNearContour(NumericalError):
    tag = "contour_zero"


class OriginIsZero(NumericalError):
    tag = "origin_zero"


class NoZeroFreeDisk(NumericalError):
    tag = "origin_zero"


class UnresolvedCluster(NumericalError):
    tag = "cluster"


ERROR_TAGS = ("contour_zero", "non_convergence", "origin_zero", "cluster")
