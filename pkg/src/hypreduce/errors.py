"""Exception hierarchy.

Every domain failure derives from :class:`HypReduceError`, so the command line
can map the whole family to exit code 1.  Validation errors carry the failing
vertex index and the signed margin by which the condition was missed.
"""

from __future__ import annotations


class HypReduceError(Exception):
    """Base class for all domain errors raised by this package."""


class DegenerateInput(HypReduceError):
    """Points coincide (or lie on one geodesic) where distinct ones are needed."""


class Unrealizable(HypReduceError):
    """Requested right-triangle data cannot be realized in the hyperbolic plane."""


class CollinearError(DegenerateInput):
    """Three points have no finite circumcircle (collinear, or on a hypercycle/horocycle)."""


class DomainError(HypReduceError, ValueError):
    """Argument outside the domain of a closed-form function."""


class NonPositiveWidth(DomainError):
    pass


class NotConvex(HypReduceError):
    def __init__(self, index: int, margin: float):
        self.index = index
        self.margin = margin
        super().__init__(f"NotConvex: vertex {index} violates convexity by {margin:.3e}")


class BracketFailure(HypReduceError):
    pass


class TheoremViolation(HypReduceError):
    """A proven statement failed numerically; signals a bug, never expected."""


# -- ordinary reduced polygon validation --------------------------------------------


class ValidationError(HypReduceError):
    condition = "ordinary reduced polygon condition"

    def __init__(self, message: str, index: int | None = None, margin: float | None = None):
        self.index = index
        self.margin = margin
        super().__init__(f"{type(self).__name__}: {message}")


class EvenVertexCount(ValidationError):
    def __init__(self, n: int):
        super().__init__(
            f"ordinary reduced polygons have an odd number of vertices, got n={n}"
        )


class WidthMismatch(ValidationError):
    def __init__(self, index: int | None, residual: float):
        where = "minimal width" if index is None else f"vertex {index}"
        super().__init__(
            f"{where}: distance to the opposite side must equal the width "
            f"(residual {residual:.3e})",
            index,
            residual,
        )


class FootNotInterior(ValidationError):
    def __init__(self, index: int, margin: float):
        super().__init__(
            f"vertex {index}: perpendicular foot must lie in the relative interior "
            f"of the opposite side (margin {margin:.3e})",
            index,
            margin,
        )


class AngleSumExceeded(ValidationError):
    def __init__(self, margin: float):
        super().__init__(
            f"sum of butterfly vertical angles exceeds pi by {-margin:.3e}", None, margin
        )


class AngleOrderViolation(ValidationError):
    def __init__(self, index: int, margin: float):
        super().__init__(
            f"butterfly {index}: angle order beta <= gamma <= alpha fails by {-margin:.3e}",
            index,
            margin,
        )


class IdentityMismatch(ValidationError):
    def __init__(self, index: int, name: str, residual: float):
        self.name = name
        super().__init__(
            f"butterfly {index}: identity '{name}' off by {residual:.3e}", index, residual
        )


class CrossingNotFound(ValidationError):
    def __init__(self, index: int):
        super().__init__(f"butterfly {index}: chords do not cross inside both segments", index)


# -- explorer ---------------------------------------------------------------------


class SolverError(HypReduceError):
    pass


class InvalidSolveSpec(SolverError, ValueError):
    pass


class NoConvergence(SolverError):
    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"NoConvergence: residual {residual:.3e} after {iterations} iterations"
        )


class FeetLeftInterior(SolverError):
    def __init__(self, index: int, margin: float):
        self.index = index
        self.margin = margin
        super().__init__(
            f"FeetLeftInterior: foot {index} left its side (margin {margin:.3e}); "
            "shrink the perturbation"
        )


class ValidationFailed(SolverError):
    def __init__(self, cause: HypReduceError):
        self.cause = cause
        super().__init__(f"ValidationFailed: {cause}")
