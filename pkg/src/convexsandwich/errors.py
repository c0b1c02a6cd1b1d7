"""Exception types shared across the toolkit.

Everything derives from InputError (a ValueError), so callers can catch
one class at an API boundary. Checker outcomes (a failed inequality, an
infeasible sandwich) are ordinary return values, never exceptions; these
classes flag inputs that violate a precondition.
"""

from __future__ import annotations


class InputError(ValueError):
    """Invalid input to a constructor, checker, or parser."""


class OrderViolation(InputError):
    """Endpoints out of order, e.g. lo > hi or a >= b."""


class RangeViolation(InputError):
    """A scalar parameter is outside its admissible range."""


class GridViolation(InputError):
    """Breakpoints are not strictly increasing."""


class LengthMismatch(InputError):
    """Paired sequences have different lengths."""


class NonFinite(InputError):
    """NaN or infinity where a finite float is required."""


class DomainViolation(InputError):
    """An evaluation or query point lies outside the function's domain."""


class DomainMismatch(InputError):
    """Two functions do not share the same domain."""


class KindMismatch(InputError):
    """Endpoint data inconsistent with the declared interval kind."""


class KindIncompatible(InputError):
    """Interval kinds for which the requested relation can never hold."""


class CrossingEndpoints(InputError):
    """Lower endpoint exceeds upper endpoint somewhere on the grid."""


class NotConvex(InputError):
    """A checker hypothesis requires a convex function and it is not."""


class NotConvexIVF(InputError):
    """An interval-valued function fails the convexity shape conditions."""


class WeightViolation(InputError):
    """Weights are negative or do not sum to one within tolerance."""


class BarycenterViolation(InputError):
    """A required barycenter identity fails beyond tolerance."""


class ParseError(InputError):
    """Formula text rejected by the parser.

    Carries the byte offset of the failure and the set of token
    descriptions that would have been accepted there.
    """

    def __init__(self, offset: int, expected: set[str], found: str = ""):
        self.offset = int(offset)
        self.expected = frozenset(expected)
        self.found = found
        what = ", ".join(sorted(self.expected))
        tail = f", found {found}" if found else ""
        super().__init__(f"syntax error at offset {self.offset}: expected {what}{tail}")


class EvalError(InputError):
    """Formula evaluation failed at a point (domain error, overflow)."""

    def __init__(self, kind: str, x: float):
        self.kind = kind
        self.x = float(x)
        super().__init__(f"evaluation error ({kind}) at x = {self.x!r}")
