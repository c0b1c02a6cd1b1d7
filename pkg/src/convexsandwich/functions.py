"""Piecewise-linear functions on a closed interval, real and interval-valued.

A SampledFunction is a strictly increasing breakpoint grid xs with
values ys; between breakpoints the function IS the linear interpolant.
That makes every predicate here exactly decidable at breakpoints, and
convexity is equivalent to non-decreasing chord slopes.

Slope comparisons (is_convex, the hull) are decided exactly over the
rationals: floats convert to Fraction losslessly, so the predicates
never depend on rounding of intermediate quotients. The convex
envelope additionally post-conditions its own output, rounding interior
values down and re-hulling until the float data is literally its own
lower hull; the envelope laws (minorant, idempotence, convexity at
eps = 0, fixed point on convex input) therefore hold bit-exactly.

Interval-valued functions pair a lower and an upper endpoint function
under a kind tag, mirroring the four ExtInterval kinds. The convex
shape conditions are: lower endpoint convex, upper endpoint concave.

Everything is immutable and pure.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    CrossingEndpoints,
    DomainMismatch,
    DomainViolation,
    GridViolation,
    KindMismatch,
    LengthMismatch,
    NonFinite,
    OrderViolation,
)
from .intervals import ExtInterval, Kind, make_all_reals, make_bounded, make_lower_half, make_upper_half

# Points within this relative distance of a domain edge are clamped to it;
# it absorbs the one-ulp drift of midpoints and means computed by callers.
_EDGE_SLACK = 1e-12


@dataclass(frozen=True)
class SampledFunction:
    """A piecewise-linear function given by its breakpoints."""

    xs: tuple[float, ...]
    ys: tuple[float, ...]

    @property
    def domain(self) -> tuple[float, float]:
        return (self.xs[0], self.xs[-1])

    def eval(self, x: float) -> float:
        """Interpolated value; exact at breakpoints.

        Raises DomainViolation outside the closed domain (beyond a
        1e-12 relative hair, which is clamped).
        """
        x = float(x)
        if not math.isfinite(x):
            raise NonFinite(f"evaluation point must be finite, got {x!r}")
        xs, ys = self.xs, self.ys
        a, b = xs[0], xs[-1]
        if x < a:
            if a - x > _EDGE_SLACK * max(1.0, abs(a)):
                raise DomainViolation(f"x = {x!r} below domain [{a!r}, {b!r}]")
            x = a
        elif x > b:
            if x - b > _EDGE_SLACK * max(1.0, abs(b)):
                raise DomainViolation(f"x = {x!r} above domain [{a!r}, {b!r}]")
            x = b
        i = bisect_right(xs, x) - 1
        if i > len(xs) - 2:
            i = len(xs) - 2
        if x == xs[i]:
            return ys[i]
        if x == xs[i + 1]:
            return ys[i + 1]
        x0, x1 = xs[i], xs[i + 1]
        return ys[i] + (ys[i + 1] - ys[i]) * ((x - x0) / (x1 - x0))

    __call__ = eval

    def to_json(self) -> dict:
        return {"type": "sampled", "xs": list(self.xs), "ys": list(self.ys)}


def make_sampled(xs, ys) -> SampledFunction:
    """Validated constructor: finite data, equal lengths, xs strictly increasing."""
    xs = tuple(float(v) for v in xs)
    ys = tuple(float(v) for v in ys)
    if len(xs) != len(ys):
        raise LengthMismatch(f"len(xs) = {len(xs)} != len(ys) = {len(ys)}")
    if len(xs) < 2:
        raise GridViolation("need at least two breakpoints")
    for v in xs:
        if not math.isfinite(v):
            raise NonFinite(f"breakpoint {v!r} is not finite")
    for v in ys:
        if not math.isfinite(v):
            raise NonFinite(f"value {v!r} is not finite")
    for i in range(len(xs) - 1):
        if not xs[i] < xs[i + 1]:
            raise GridViolation(f"xs not strictly increasing at index {i}: {xs[i]!r} >= {xs[i + 1]!r}")
    return SampledFunction(xs, ys)


def sampled_from_json(d: dict) -> SampledFunction:
    return make_sampled(d["xs"], d["ys"])


def eval_many(f: SampledFunction, points) -> np.ndarray:
    """Vectorized eval; identical arithmetic to SampledFunction.eval."""
    x = np.asarray(points, dtype=float)
    if x.size and not np.isfinite(x).all():
        raise NonFinite("evaluation points must be finite")
    xs = np.asarray(f.xs)
    ys = np.asarray(f.ys)
    a, b = f.xs[0], f.xs[-1]
    if x.size:
        lo, hi = x.min(), x.max()
        if lo < a and a - lo > _EDGE_SLACK * max(1.0, abs(a)):
            raise DomainViolation(f"x = {lo!r} below domain [{a!r}, {b!r}]")
        if hi > b and hi - b > _EDGE_SLACK * max(1.0, abs(b)):
            raise DomainViolation(f"x = {hi!r} above domain [{a!r}, {b!r}]")
    x = np.clip(x, a, b)
    idx = np.searchsorted(xs, x, side="right") - 1
    np.clip(idx, 0, len(f.xs) - 2, out=idx)
    x0 = xs[idx]
    x1 = xs[idx + 1]
    y0 = ys[idx]
    y1 = ys[idx + 1]
    out = y0 + (y1 - y0) * ((x - x0) / (x1 - x0))
    out = np.where(x == x0, y0, out)
    out = np.where(x == x1, y1, out)
    return out


def chord_slopes(f: SampledFunction) -> tuple[float, ...]:
    """Float slopes of consecutive segments (reporting; predicates use exact arithmetic)."""
    return tuple(
        (f.ys[i + 1] - f.ys[i]) / (f.xs[i + 1] - f.xs[i]) for i in range(len(f.xs) - 1)
    )


def _exact_slopes(xs, ys) -> list[Fraction]:
    return [
        (Fraction(ys[i + 1]) - Fraction(ys[i])) / (Fraction(xs[i + 1]) - Fraction(xs[i]))
        for i in range(len(xs) - 1)
    ]


def is_convex(f: SampledFunction, eps: float = 1e-9) -> bool:
    """True iff consecutive chord slopes are non-decreasing up to eps.

    The comparison slope(i) <= slope(i+1) + eps is decided exactly over
    the rationals, so the answer is a property of the stored data, not
    of intermediate rounding.
    """
    s = _exact_slopes(f.xs, f.ys)
    feps = Fraction(float(eps))
    return all(s[i] <= s[i + 1] + feps for i in range(len(s) - 1))


def is_concave(f: SampledFunction, eps: float = 1e-9) -> bool:
    return is_convex(negate(f), eps)


def is_increasing(f: SampledFunction, eps: float = 1e-9) -> bool:
    """Non-decreasing values up to eps: ys[i+1] >= ys[i] - eps."""
    return all(f.ys[i + 1] >= f.ys[i] - eps for i in range(len(f.ys) - 1))


def is_decreasing(f: SampledFunction, eps: float = 1e-9) -> bool:
    return is_increasing(negate(f), eps)


def negate(f: SampledFunction) -> SampledFunction:
    return SampledFunction(f.xs, tuple(-v for v in f.ys))


def resample(f: SampledFunction, xs) -> SampledFunction:
    """f on a new grid; exact wherever the new grid hits old breakpoints."""
    return make_sampled(xs, [f.eval(x) for x in xs])


def align(f: SampledFunction, g: SampledFunction) -> tuple[SampledFunction, SampledFunction]:
    """Resample both onto the sorted union of their breakpoints.

    Exact for piecewise-linear data. Raises DomainMismatch unless the
    two domains have identical endpoints.
    """
    if f.xs == g.xs:
        return f, g
    if f.xs[0] != g.xs[0] or f.xs[-1] != g.xs[-1]:
        raise DomainMismatch(f"domains differ: {f.domain} vs {g.domain}")
    xs = tuple(sorted(set(f.xs) | set(g.xs)))
    return resample(f, xs), resample(g, xs)


def difference(f: SampledFunction, g: SampledFunction) -> SampledFunction:
    """f - g pointwise on the merged grid."""
    fa, ga = align(f, g)
    return SampledFunction(fa.xs, tuple(fa.ys[i] - ga.ys[i] for i in range(len(fa.xs))))


def restrict(f: SampledFunction, a: float, b: float) -> SampledFunction:
    """f on [a, b], which must sit inside f's domain."""
    a, b = float(a), float(b)
    if not a < b:
        raise OrderViolation(f"need a < b, got a = {a!r}, b = {b!r}")
    lo, hi = f.domain
    if a < lo or b > hi:
        raise DomainViolation(f"[{a!r}, {b!r}] not inside domain [{lo!r}, {hi!r}]")
    inner = [x for x in f.xs if a < x < b]
    xs = [a] + inner + [b]
    return resample(f, xs)


def lower_hull_vertex_indices(f: SampledFunction) -> tuple[int, ...]:
    """Indices of the breakpoints on the lower convex hull of the graph.

    Monotone-chain over the already-sorted breakpoints; a point is
    popped only when the slope strictly decreases through it (decided
    exactly), so collinear points stay vertices and convex data is
    returned whole.
    """
    return tuple(_hull_indices(f.xs, f.ys))


def _hull_indices(xs, ys) -> list[int]:
    idx: list[int] = []
    for i in range(len(xs)):
        while len(idx) >= 2:
            a, b = idx[-2], idx[-1]
            sab = (Fraction(ys[b]) - Fraction(ys[a])) / (Fraction(xs[b]) - Fraction(xs[a]))
            sbi = (Fraction(ys[i]) - Fraction(ys[b])) / (Fraction(xs[i]) - Fraction(xs[b]))
            if sab > sbi:
                idx.pop()
            else:
                break
        idx.append(i)
    return idx


def _round_down(q: Fraction) -> float:
    v = float(q)
    if Fraction(v) > q:
        v = math.nextafter(v, -math.inf)
    return v


def lower_convex_envelope(f: SampledFunction) -> SampledFunction:
    """Greatest convex piecewise-linear minorant, on f's own grid.

    Hull vertices keep their exact values; interior grid points take
    the chord value, interpolated in exact rational arithmetic and
    rounded toward -inf. Rounding can leave the float data a hair
    non-convex, so the result is re-hulled until it is literally its
    own lower hull; values only move down, each pass by at least one
    ulp somewhere, so the loop terminates. Consequences, all exact:
    result <= f pointwise, result is convex at eps = 0, the map is
    idempotent, and convex input comes back unchanged.
    """
    xs = f.xs
    ys = list(f.ys)
    while True:
        hull = _hull_indices(xs, ys)
        if len(hull) == len(xs):
            break
        changed = False
        new_ys = ys[:]
        for a, b in zip(hull, hull[1:]):
            if b - a <= 1:
                continue
            xa, ya = Fraction(xs[a]), Fraction(ys[a])
            xb, yb = Fraction(xs[b]), Fraction(ys[b])
            s = (yb - ya) / (xb - xa)
            for k in range(a + 1, b):
                v = _round_down(ya + s * (Fraction(xs[k]) - xa))
                if v != new_ys[k]:
                    new_ys[k] = v
                    changed = True
        if not changed:
            break
        ys = new_ys
    return SampledFunction(xs, tuple(ys))


def upper_concave_envelope(f: SampledFunction) -> SampledFunction:
    """Least concave piecewise-linear majorant: exactly -lce(-f)."""
    return negate(lower_convex_envelope(negate(f)))


# ---------------------------------------------------------------------------
# Interval-valued functions


@dataclass(frozen=True)
class IntervalFunction:
    """x -> ExtInterval of a fixed kind, with piecewise-linear endpoints.

    bounded      [lower(x), upper(x)]   lower.ys <= upper.ys on the grid
    upper_half   [lower(x), +inf)
    lower_half   (-inf, upper(x)]
    all_reals    the whole line at every x (no endpoint data)
    """

    kind: Kind
    lower: SampledFunction | None = None
    upper: SampledFunction | None = None

    def __post_init__(self):
        want_lower = self.kind in (Kind.BOUNDED, Kind.UPPER_HALF)
        want_upper = self.kind in (Kind.BOUNDED, Kind.LOWER_HALF)
        if (self.lower is not None) != want_lower or (self.upper is not None) != want_upper:
            raise KindMismatch(f"endpoint functions inconsistent with kind {self.kind.value}")
        if self.kind is Kind.BOUNDED:
            if self.lower.xs != self.upper.xs:
                raise GridViolation("lower and upper endpoints must share breakpoints")
            for i, (lo, hi) in enumerate(zip(self.lower.ys, self.upper.ys)):
                if lo > hi:
                    raise CrossingEndpoints(f"lower {lo!r} > upper {hi!r} at index {i}")

    @property
    def domain(self) -> tuple[float, float] | None:
        g = self.lower if self.lower is not None else self.upper
        return None if g is None else g.domain

    def to_json(self) -> dict:
        d: dict = {"type": "interval", "kind": self.kind.value}
        g = self.lower if self.lower is not None else self.upper
        if g is not None:
            d["xs"] = list(g.xs)
        if self.lower is not None:
            d["lower"] = list(self.lower.ys)
        if self.upper is not None:
            d["upper"] = list(self.upper.ys)
        return d


def make_interval_function(kind, xs=None, lower_ys=None, upper_ys=None) -> IntervalFunction:
    """Validated constructor; kind may be a Kind or its string value."""
    kind = Kind(kind) if not isinstance(kind, Kind) else kind
    lower = make_sampled(xs, lower_ys) if lower_ys is not None else None
    upper = make_sampled(xs, upper_ys) if upper_ys is not None else None
    return IntervalFunction(kind, lower=lower, upper=upper)


def interval_from_json(d: dict) -> IntervalFunction:
    return make_interval_function(
        d["kind"], xs=d.get("xs"), lower_ys=d.get("lower"), upper_ys=d.get("upper")
    )


def function_from_json(d: dict):
    """Dispatch {"type": "sampled" | "interval"} payloads."""
    t = d.get("type")
    if t == "sampled":
        return sampled_from_json(d)
    if t == "interval":
        return interval_from_json(d)
    raise KindMismatch(f"unsupported function type {t!r}")


def eval_ivf(F: IntervalFunction, x: float) -> ExtInterval:
    """Value set at x. all_reals needs no domain; others raise DomainViolation outside."""
    if F.kind is Kind.ALL_REALS:
        return make_all_reals()
    if F.kind is Kind.UPPER_HALF:
        return make_upper_half(F.lower.eval(x))
    if F.kind is Kind.LOWER_HALF:
        return make_lower_half(F.upper.eval(x))
    lo = F.lower.eval(x)
    hi = F.upper.eval(x)
    if lo > hi:
        # interpolation can cross by an ulp where the endpoints touch
        lo, hi = hi, lo
    return make_bounded(lo, hi)


def is_convex_ivf(F: IntervalFunction, eps: float = 1e-9) -> bool:
    """Shape conditions for a convex interval-valued function.

    Lower endpoint convex and upper endpoint concave (whichever are
    present); the all-reals constant is convex.
    """
    if F.kind is Kind.BOUNDED:
        return is_convex(F.lower, eps) and is_concave(F.upper, eps)
    if F.kind is Kind.UPPER_HALF:
        return is_convex(F.lower, eps)
    if F.kind is Kind.LOWER_HALF:
        return is_concave(F.upper, eps)
    return True


# ---------------------------------------------------------------------------
# Affine maps (sandwich outputs)


@dataclass(frozen=True)
class AffineMap:
    """h(x) = m*x + c."""

    m: float
    c: float

    def eval(self, x: float) -> float:
        return self.m * x + self.c

    __call__ = eval

    def to_json(self) -> dict:
        return {"m": self.m, "c": self.c}


@dataclass(frozen=True)
class AffineIntervalMap:
    """x -> ExtInterval with affine endpoints, same kind conventions as IntervalFunction."""

    kind: Kind
    lower: AffineMap | None = None
    upper: AffineMap | None = None

    def __post_init__(self):
        want_lower = self.kind in (Kind.BOUNDED, Kind.UPPER_HALF)
        want_upper = self.kind in (Kind.BOUNDED, Kind.LOWER_HALF)
        if (self.lower is not None) != want_lower or (self.upper is not None) != want_upper:
            raise KindMismatch(f"affine endpoints inconsistent with kind {self.kind.value}")

    def eval(self, x: float) -> ExtInterval:
        if self.kind is Kind.ALL_REALS:
            return make_all_reals()
        if self.kind is Kind.UPPER_HALF:
            return make_upper_half(self.lower.eval(x))
        if self.kind is Kind.LOWER_HALF:
            return make_lower_half(self.upper.eval(x))
        lo = self.lower.eval(x)
        hi = self.upper.eval(x)
        if lo > hi:
            lo, hi = hi, lo
        return make_bounded(lo, hi)

    __call__ = eval

    def to_json(self) -> dict:
        d: dict = {"kind": self.kind.value}
        d["lower"] = self.lower.to_json() if self.lower is not None else None
        d["upper"] = self.upper.to_json() if self.upper is not None else None
        return d
