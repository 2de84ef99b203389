"""Exception hierarchy shared by all modules."""


class SpecsetError(Exception):
    """Base class for every error raised by the package."""


class DimensionError(SpecsetError, ValueError):
    pass


class SingularMatrixError(SpecsetError, ArithmeticError):
    pass


class NotHermitianError(SpecsetError, ValueError):
    pass


class OverlapError(SpecsetError, ValueError):
    """Domain components whose closures touch or intersect."""


class OutsideDomainError(SpecsetError, ValueError):
    pass


class InvalidFunctionError(SpecsetError, ValueError):
    pass


class UnsupportedOperationError(SpecsetError, NotImplementedError):
    pass


class TooCloseToBoundaryError(SpecsetError, ValueError):
    pass


class NodeOnSpectrumError(SingularMatrixError):
    """A quadrature node coincides (numerically) with an eigenvalue."""


class UncalibratedError(SpecsetError, RuntimeError):
    """The contour calculus failed its self-calibration gate."""


class WrongDomainError(SpecsetError, ValueError):
    pass


class ContainmentError(SpecsetError, ValueError):
    pass


class MalformedSampleError(SpecsetError, ValueError):
    pass


class ContainmentWarning(UserWarning):
    pass
