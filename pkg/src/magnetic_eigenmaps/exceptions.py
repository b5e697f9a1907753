"""Exception hierarchy shared by all modules."""


class MagneticEigenmapsError(Exception):
    """Base class for every error raised by this package."""


class GraphError(MagneticEigenmapsError, ValueError):
    pass


class NotConnectedError(GraphError):
    pass


class SelfLoopError(GraphError):
    def __init__(self, message, line=None):
        super().__init__(message)
        self.line = line


class ZeroDegreeError(GraphError):
    def __init__(self, nodes):
        self.nodes = list(nodes)
        super().__init__(f"nodes with zero degree: {self.nodes[:10]}")


class ChargeOutOfRangeError(MagneticEigenmapsError, ValueError):
    pass


class ParamOutOfRangeError(MagneticEigenmapsError, ValueError):
    pass


class DenseLimitExceededError(MagneticEigenmapsError, MemoryError):
    pass


class NoConvergenceError(MagneticEigenmapsError, RuntimeError):
    """Raised by the power method when fewer than ``k`` pairs converged."""

    def __init__(self, k_achieved, residuals):
        self.k_achieved = k_achieved
        self.residuals = list(residuals)
        super().__init__(
            f"power iteration converged for {k_achieved} eigenpairs only; "
            f"residuals={['%.3g' % r for r in self.residuals]}"
        )


class NoPotentialError(MagneticEigenmapsError):
    """The edge flow is not the gradient of any node potential."""

    def __init__(self, edge, mismatch):
        self.edge = edge
        self.mismatch = mismatch
        super().__init__(f"edge {edge} violates a_ij = h_j - h_i (mismatch {mismatch})")


class ParseError(MagneticEigenmapsError, ValueError):
    def __init__(self, message, line=None, offset=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.line = line
        self.offset = offset


class MissingFieldError(ParseError):
    pass


class EmptySideError(MagneticEigenmapsError, ValueError):
    pass


class SubsetOutOfRangeError(MagneticEigenmapsError, IndexError):
    pass


class IndexOutOfRangeError(MagneticEigenmapsError, IndexError):
    pass


class LabelMismatchError(MagneticEigenmapsError, ValueError):
    pass


class MissingSpectralGapError(MagneticEigenmapsError, ValueError):
    pass


class ConnectivityRetryExceededError(MagneticEigenmapsError, RuntimeError):
    pass


class ZeroVectorError(MagneticEigenmapsError, ValueError):
    pass
