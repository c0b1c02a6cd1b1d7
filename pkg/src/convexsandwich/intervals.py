"""Extended intervals and their Minkowski algebra.

An ExtInterval is one of the four kinds of non-empty closed convex
subset of the real line:

    bounded      [lo, hi]
    upper_half   [lo, +inf)
    lower_half   (-inf, hi]
    all_reals    the whole line

Unboundedness lives in the kind tag; lo and hi are always finite
floats, so the empty set is unrepresentable by construction. Values
are immutable and every operation is pure.

Endpoint comparisons in is_subset are exact float comparisons; the
tolerant variant is_subset_within is a separate operation so algebraic
law tests stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from math import fsum

from .errors import KindMismatch, NonFinite, OrderViolation, RangeViolation


class Kind(Enum):
    BOUNDED = "bounded"
    UPPER_HALF = "upper_half"
    LOWER_HALF = "lower_half"
    ALL_REALS = "all_reals"


def _finite(v: float, what: str) -> float:
    v = float(v)
    if not math.isfinite(v):
        raise NonFinite(f"{what} must be finite, got {v!r}")
    return v


@dataclass(frozen=True)
class ExtInterval:
    """One closed convex subset of the line. Use the make_* constructors."""

    kind: Kind
    lo: float | None = None
    hi: float | None = None

    def __post_init__(self):
        want_lo = self.kind in (Kind.BOUNDED, Kind.UPPER_HALF)
        want_hi = self.kind in (Kind.BOUNDED, Kind.LOWER_HALF)
        if (self.lo is not None) != want_lo or (self.hi is not None) != want_hi:
            raise KindMismatch(f"endpoint data inconsistent with kind {self.kind.value}")
        if self.lo is not None:
            object.__setattr__(self, "lo", _finite(self.lo, "lo"))
        if self.hi is not None:
            object.__setattr__(self, "hi", _finite(self.hi, "hi"))
        if self.kind is Kind.BOUNDED and self.lo > self.hi:
            raise OrderViolation(f"lo {self.lo!r} > hi {self.hi!r}")

    def __str__(self) -> str:
        if self.kind is Kind.BOUNDED:
            return f"[{self.lo}, {self.hi}]"
        if self.kind is Kind.UPPER_HALF:
            return f"[{self.lo}, inf)"
        if self.kind is Kind.LOWER_HALF:
            return f"(-inf, {self.hi}]"
        return "(-inf, inf)"

    def to_json(self) -> dict:
        d: dict = {"kind": self.kind.value}
        if self.lo is not None:
            d["lo"] = self.lo
        if self.hi is not None:
            d["hi"] = self.hi
        return d

    @staticmethod
    def from_json(d: dict) -> "ExtInterval":
        kind = Kind(d["kind"])
        if kind is Kind.BOUNDED:
            return make_bounded(d["lo"], d["hi"])
        if kind is Kind.UPPER_HALF:
            return make_upper_half(d["lo"])
        if kind is Kind.LOWER_HALF:
            return make_lower_half(d["hi"])
        return make_all_reals()


def make_bounded(lo: float, hi: float) -> ExtInterval:
    """[lo, hi]; raises OrderViolation if lo > hi."""
    return ExtInterval(Kind.BOUNDED, lo=lo, hi=hi)


def make_upper_half(lo: float) -> ExtInterval:
    """[lo, +inf)."""
    return ExtInterval(Kind.UPPER_HALF, lo=lo)


def make_lower_half(hi: float) -> ExtInterval:
    """(-inf, hi]."""
    return ExtInterval(Kind.LOWER_HALF, hi=hi)


def make_all_reals() -> ExtInterval:
    return ExtInterval(Kind.ALL_REALS)


def _sum_kind(kinds: list[Kind]) -> Kind:
    # Element-wise sums: any full line absorbs; opposite half-lines fill the line;
    # otherwise a half-line absorbs bounded summands.
    if Kind.ALL_REALS in kinds:
        return Kind.ALL_REALS
    has_up = Kind.UPPER_HALF in kinds
    has_lo = Kind.LOWER_HALF in kinds
    if has_up and has_lo:
        return Kind.ALL_REALS
    if has_up:
        return Kind.UPPER_HALF
    if has_lo:
        return Kind.LOWER_HALF
    return Kind.BOUNDED


def minkowski_sum(*items: ExtInterval) -> ExtInterval:
    """Element-wise sum of any number of intervals.

    Endpoints are combined with math.fsum, so the result is exactly
    invariant under permutation of the arguments.
    """
    if not items:
        raise RangeViolation("minkowski_sum needs at least one interval")
    kind = _sum_kind([a.kind for a in items])
    if kind is Kind.ALL_REALS:
        return make_all_reals()
    if kind is Kind.UPPER_HALF:
        return make_upper_half(fsum(a.lo for a in items))
    if kind is Kind.LOWER_HALF:
        return make_lower_half(fsum(a.hi for a in items))
    return make_bounded(fsum(a.lo for a in items), fsum(a.hi for a in items))


def minkowski_add(a: ExtInterval, b: ExtInterval) -> ExtInterval:
    """Element-wise sum {p + q : p in a, q in b}."""
    kind = _sum_kind([a.kind, b.kind])
    if kind is Kind.ALL_REALS:
        return make_all_reals()
    if kind is Kind.UPPER_HALF:
        return make_upper_half(a.lo + b.lo)
    if kind is Kind.LOWER_HALF:
        return make_lower_half(a.hi + b.hi)
    return make_bounded(a.lo + b.lo, a.hi + b.hi)


def scale(t: float, a: ExtInterval) -> ExtInterval:
    """Element-wise scaling {t * p : p in a}; scale(0, a) is the singleton {0}."""
    t = _finite(t, "t")
    if t == 0.0:
        return make_bounded(0.0, 0.0)
    if t > 0.0:
        if a.kind is Kind.BOUNDED:
            return make_bounded(t * a.lo, t * a.hi)
        if a.kind is Kind.UPPER_HALF:
            return make_upper_half(t * a.lo)
        if a.kind is Kind.LOWER_HALF:
            return make_lower_half(t * a.hi)
        return make_all_reals()
    # t < 0 reflects the set
    if a.kind is Kind.BOUNDED:
        return make_bounded(t * a.hi, t * a.lo)
    if a.kind is Kind.UPPER_HALF:
        return make_lower_half(t * a.lo)
    if a.kind is Kind.LOWER_HALF:
        return make_upper_half(t * a.hi)
    return make_all_reals()


def convex_combination(t: float, a: ExtInterval, b: ExtInterval) -> ExtInterval:
    """t*a + (1-t)*b for t in [0, 1]."""
    t = _finite(t, "t")
    if not 0.0 <= t <= 1.0:
        raise RangeViolation(f"t must lie in [0, 1], got {t!r}")
    return minkowski_add(scale(t, a), scale(1.0 - t, b))


def is_subset(a: ExtInterval, b: ExtInterval) -> bool:
    """Exact containment a subseteq b."""
    return is_subset_within(a, b, 0.0)


def is_subset_within(a: ExtInterval, b: ExtInterval, eps: float) -> bool:
    """Containment with endpoint comparisons relaxed by eps.

    Kind logic is unaffected by eps: an unbounded side of a can never
    fit inside a bounded side of b.
    """
    if eps < 0.0:
        raise RangeViolation(f"eps must be >= 0, got {eps!r}")
    if b.kind is Kind.ALL_REALS:
        return True
    if b.kind is Kind.UPPER_HALF:
        if a.kind in (Kind.ALL_REALS, Kind.LOWER_HALF):
            return False
        return a.lo >= b.lo - eps
    if b.kind is Kind.LOWER_HALF:
        if a.kind in (Kind.ALL_REALS, Kind.UPPER_HALF):
            return False
        return a.hi <= b.hi + eps
    if a.kind is not Kind.BOUNDED:
        return False
    return a.lo >= b.lo - eps and a.hi <= b.hi + eps


def equal_within(a: ExtInterval, b: ExtInterval, eps: float) -> bool:
    """Set equality up to eps on each present endpoint (kinds must match)."""
    if a.kind is not b.kind:
        return False
    if a.lo is not None and abs(a.lo - b.lo) > eps:
        return False
    if a.hi is not None and abs(a.hi - b.hi) > eps:
        return False
    return True


def inclusion_slack(inner: ExtInterval, outer: ExtInterval) -> float:
    """Signed margin of inner subseteq outer.

    The minimum over outer's finite endpoint constraints of how much
    room is left; >= 0 means the exact inclusion holds, -inf when the
    kinds alone rule it out, +inf when outer imposes no constraint.
    """
    margins: list[float] = []
    if outer.lo is not None:
        margins.append(inner.lo - outer.lo if inner.lo is not None else -math.inf)
    if outer.hi is not None:
        margins.append(outer.hi - inner.hi if inner.hi is not None else -math.inf)
    return min(margins) if margins else math.inf
