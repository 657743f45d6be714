"""Exception hierarchy shared by all g2braid modules."""

from __future__ import annotations


class G2BraidError(Exception):
    """Base class for every error raised deliberately by this package."""


class DivisionByZero(G2BraidError, ZeroDivisionError):
    """A denominator evaluated to zero at the requested point."""


class NotDivisible(G2BraidError, ArithmeticError):
    """Exact division of Laurent polynomials left a nonzero remainder."""


class IncompatibleValues(G2BraidError, TypeError):
    """Arithmetic between values living in different coefficient rings."""


class NotInAlcove(G2BraidError, ValueError):
    """A weight lies outside the alcove of the active level rule."""


class NotExpressible(G2BraidError):
    """The generator recursion could not reduce a fusion vector."""


class InadmissibleQ(G2BraidError, ValueError):
    """The chosen value of q is excluded for the requested rule."""


class ConditionsViolated(G2BraidError):
    """A block fails one of the nondegeneracy predicates of the closed forms.

    Attributes
    ----------
    failed : list of str
        Names of the predicates that failed.
    """

    def __init__(self, message: str, failed: list[str] | None = None):
        super().__init__(message)
        self.failed = list(failed or [])


class SolverFailed(G2BraidError):
    """A numerical solve did not converge; ``residual`` holds the best value seen."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class GaugeSolverFailed(SolverFailed):
    """No consistent global gauge was found during assembly."""


class TLViolation(G2BraidError):
    """A Temperley-Lieb relation failed; ``relation`` names it."""

    def __init__(self, message: str, relation: str = ""):
        super().__init__(message)
        self.relation = relation


class UnknownFormat(G2BraidError, ValueError):
    """Requested an export format that is not supported."""


class AmbiguousCase(G2BraidError):
    """Two composition-series cases hold simultaneously."""


class Mismatch(G2BraidError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
