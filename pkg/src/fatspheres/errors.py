"""Exception hierarchy for the toolkit."""


class FatSpheresError(Exception):
    """Base class for every error raised by this package."""


# poset core
class InconsistentGluing(FatSpheresError):
    pass


class UnknownSimplex(FatSpheresError, KeyError):
    pass


class UnsupportedDimension(FatSpheresError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


# weighted
class DimensionMismatch(FatSpheresError):
    pass


class ColoringNotFound(FatSpheresError):
    pass


# surgery
class NotAdmissible(FatSpheresError):
    pass


class LinkMismatch(FatSpheresError):
    pass


class WeightMismatch(FatSpheresError):
    pass


class NotATree(FatSpheresError):
    pass


class AdjacentFoldVertices(FatSpheresError):
    pass


class NotACycle(FatSpheresError):
    pass


class NotMutuallyOrdered(FatSpheresError):
    pass


class ConeNotSphere(FatSpheresError):
    pass


class BudgetExceeded(FatSpheresError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


# metric
class NotADisc(FatSpheresError):
    pass


class PreconditionError(FatSpheresError, ValueError):
    pass


class InvalidParams(FatSpheresError, ValueError):
    pass


class DegenerateTriangle(FatSpheresError):
    pass


# delzant
class Unbounded(FatSpheresError):
    pass


class NotSimple(FatSpheresError):
    pass


class Degenerate(FatSpheresError):
    pass


class FacetMismatch(FatSpheresError):
    pass


# template
class NotCooriented(FatSpheresError):
    pass


class InconsistentNormals(FatSpheresError):
    pass


class EmptyIntersection(FatSpheresError):
    pass


class InvalidTemplate(FatSpheresError):
    pass


# certify
class ThresholdNotMet(FatSpheresError):
    def __init__(self, message, q_min):
        super().__init__(message)
        self.q_min = q_min


class ColoringUsesTooManyValues(FatSpheresError):
    pass
