"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`PacioliError`,
so callers (and the CLI) can separate modeling problems from programming bugs.
"""


class PacioliError(Exception):
    pass


# scalar kernel

class DivisionByZero(PacioliError, ZeroDivisionError):
    pass


class SqrtOfNegative(PacioliError, ValueError):
    pass


class DivisorStraddlesZero(PacioliError, ArithmeticError):
    pass


# mesh

class NonManifoldEdge(PacioliError, ValueError):
    pass


class OrientationMismatch(PacioliError, ValueError):
    pass


class DegenerateFace(PacioliError, ValueError):
    pass


class NegativeHeight(PacioliError, ValueError):
    pass


class EquilateralInfeasible(PacioliError, ValueError):
    """No apex makes every lateral edge equal to the base edge.

    Raised for faces with six or more sides, whose circumradius is at least the
    edge length.
    """

    def __init__(self, arity):
        self.arity = arity
        super().__init__(
            f"equilateral elevation infeasible for {arity}-gon faces "
            f"(circumradius >= edge length)")


# predicates

class CollinearBase(PacioliError, ValueError):
    pass


class NotAPentagon(PacioliError, ValueError):
    pass


class SymmetryUnavailable(PacioliError, RuntimeError):
    pass


class ZeroDirection(PacioliError, ValueError):
    pass


class ToleranceUnreachable(PacioliError, ArithmeticError):
    pass


# file formats

class MalformedHeader(PacioliError, ValueError):
    pass


class CountMismatch(PacioliError, ValueError):
    pass


class IndexOutOfRange(PacioliError, IndexError):
    pass
