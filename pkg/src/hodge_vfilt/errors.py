"""Exceptions raised by hodge_vfilt.

Library code raises these; only the CLI turns them into exit codes.
"""

from __future__ import annotations


class HodgeVfiltError(Exception):
    """Base class for every error raised by the package."""


class BudgetExceeded(HodgeVfiltError):
    """Raised when a Gröbner computation exceeds its pair-count budget."""

    def __init__(self, message: str, pairs: int | None = None) -> None:
        super().__init__(message)
        self.pairs = pairs


class ParseError(HodgeVfiltError):
    """Raised when an input expression does not match the grammar."""

    def __init__(self, message: str, position: int, source: str = "") -> None:
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.position = position
        self.source = source


class UnknownVariable(ParseError):
    """Raised when an expression uses a name that was not declared."""


class ReservedVariable(HodgeVfiltError):
    """Raised when a declared variable collides with an internal name."""


class ConstantF(HodgeVfiltError):
    """Raised when f is constant, so D = div(f) is empty or everything."""


class AlgebraMismatch(HodgeVfiltError):
    """Raised when Weyl elements from different algebras are combined."""


class CoefficientFieldMismatch(HodgeVfiltError):
    """Raised when polynomials over different rings are combined."""


class DenominatorVanishes(HodgeVfiltError):
    """Raised when specializing a parametric ideal at a pole of a coefficient."""

    def __init__(self, point: object) -> None:
        super().__init__(f"a generator denominator vanishes at beta = {point}")
        self.point = point


class NonRationalRoots(HodgeVfiltError):
    """Raised when a b-function keeps a non-linear factor over Q."""


class ZeroElement(HodgeVfiltError):
    """Raised when an element b-function is requested for m = 0."""


class NotInHodgePiece(HodgeVfiltError):
    """Raised when a graph element does not lie in F_{k+1} of the pushforward."""


class UnsupportedParameterSplit(HodgeVfiltError):
    """Raised when a parametric case split meets a non-linear condition."""


class GluingFailure(HodgeVfiltError):
    """Raised when the two charts of a P^1 family disagree away from 0 and oo."""


class FlatnessCertificateFailed(HodgeVfiltError):
    """Raised when a fiber does not match the generic fiber of its family."""


class WindowIncomplete(HodgeVfiltError):
    """Raised when a windowed computation fails its own consistency check."""
