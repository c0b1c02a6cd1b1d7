"""Affine separators between piecewise-linear bounds, with certificates.

Everything here answers one question two ways and insists the answers
agree. For real-valued bounds f <= g on a shared interval, an affine
h with f <= h <= g exists exactly when both chord conditions hold:

    f(t*x + (1-t)*y) <= t*g(x) + (1-t)*g(y)      ("f_le_combination")
    t*f(x) + (1-t)*f(y) <= g(t*x + (1-t)*y)      ("combination_le_g")

for all x, y in the interval and t in [0, 1]. The first says f stays
under every chord of g (equivalently f <= the convex envelope of g and
a convex separator exists); the second is its mirror (the concave
envelope of f stays under g). For piecewise-linear data both are
decidable: extremes sit on breakpoints, so envelope comparison on the
merged grid is complete, and so is chord enumeration over breakpoint
pairs with the crossing values of t added to a uniform grid.

Routes, kept deliberately independent:
  * check_condition_iii          envelope comparison on the merged grid
  * check_condition_iii_sampled  direct chord enumeration
  * find_affine_separator        incremental feasibility over the
                                 constraints f_i - eps <= m*x_i + c <= g_i + eps,
                                 which yields the separator, or a 2-3
                                 constraint infeasibility core that
                                 converts into the same witness shape

A Violation is a self-contained certificate: plugging (x, y, t) into
the named clause reproduces lhs > rhs with fresh arithmetic.

Interval-valued bounds reduce to two real problems. For an affine
band H with G(x) <= H(x) <= F(x) (containment order: G inside, F
outside), the lower endpoints need F_lo <= h_lo <= G_lo and the upper
endpoints need G_hi <= h_hi <= F_hi; sides the outer bound leaves
unconstrained get flat endpoints hugging the inner bound.

All of it is deterministic: no randomness, no iteration-order surprises.
"""

from __future__ import annotations

import sys
from bisect import bisect_right
from dataclasses import dataclass

import numpy as np

from .errors import KindIncompatible, RangeViolation
from .functions import (
    AffineIntervalMap,
    AffineMap,
    IntervalFunction,
    SampledFunction,
    align,
    eval_many,
    lower_convex_envelope,
    lower_hull_vertex_indices,
    negate,
    upper_concave_envelope,
)
from .intervals import Kind

F_LE_COMBINATION = "f_le_combination"
COMBINATION_LE_G = "combination_le_g"

# kinds that carry a lower / an upper endpoint function
_HAS_LOWER = (Kind.BOUNDED, Kind.UPPER_HALF)
_HAS_UPPER = (Kind.BOUNDED, Kind.LOWER_HALF)


@dataclass(frozen=True)
class Violation:
    """Certificate that one chord condition fails at (x, y, t)."""

    x: float
    y: float
    t: float
    lhs: float
    rhs: float
    clause: str
    core: tuple[float, ...] = ()

    def to_json(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "t": self.t,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "clause": self.clause,
            "core": list(self.core),
        }


@dataclass(frozen=True)
class SetValuedViolation:
    """A real-endpoint violation tagged with the side it came from."""

    side: str  # "lower" | "upper"
    violation: Violation

    def to_json(self) -> dict:
        d = self.violation.to_json()
        d["side"] = self.side
        return d


@dataclass(frozen=True)
class SandwichOutcome:
    separator: AffineMap | None
    violation: Violation | None

    @property
    def status(self) -> str:
        return "separator" if self.separator is not None else "infeasible"


@dataclass(frozen=True)
class IntervalSandwichOutcome:
    separator: AffineIntervalMap | None
    violation: SetValuedViolation | None

    @property
    def status(self) -> str:
        return "separator" if self.separator is not None else "infeasible"


def outcome_to_json(outcome: SandwichOutcome) -> dict:
    if outcome.separator is not None:
        return {"status": "separator", "m": outcome.separator.m, "c": outcome.separator.c}
    return {"status": "infeasible", "witness": outcome.violation.to_json()}


def interval_outcome_to_json(outcome: IntervalSandwichOutcome) -> dict:
    if outcome.separator is not None:
        h = outcome.separator
        return {
            "status": "separator",
            "kind": h.kind.value,
            "lower": h.lower.to_json() if h.lower is not None else None,
            "upper": h.upper.to_json() if h.upper is not None else None,
        }
    v = outcome.violation
    return {"status": "infeasible", "side": v.side, "witness": v.violation.to_json()}


def verify_violation(f: SampledFunction, g: SampledFunction, v: Violation) -> bool:
    """Re-derive lhs > rhs from (x, y, t) with fresh arithmetic."""
    p = v.t * v.x + (1.0 - v.t) * v.y
    if v.clause == F_LE_COMBINATION:
        lhs = f.eval(p)
        rhs = v.t * g.eval(v.x) + (1.0 - v.t) * g.eval(v.y)
    else:
        lhs = v.t * f.eval(v.x) + (1.0 - v.t) * f.eval(v.y)
        rhs = g.eval(p)
    return lhs > rhs


def _check_eps(eps: float):
    if eps < 0.0:
        raise RangeViolation(f"eps must be nonnegative, got {eps!r}")


def _bracket_witness(xs, k, hull) -> tuple[float, float, float]:
    """(x, y, t) with t*x + (1-t)*y = xs[k], from the hull segment over k."""
    pos = bisect_right(hull, k)
    a, b = hull[pos - 1], hull[pos]
    x, y, z = xs[a], xs[b], xs[k]
    return x, y, (y - z) / (y - x)


def check_condition_iii(f: SampledFunction, g: SampledFunction, eps: float = 1e-9) -> Violation | None:
    """First chord-condition violation, or None if both hold up to eps.

    Complete for piecewise-linear data: f is compared against the
    convex envelope of g and the concave envelope of f against g, on
    the merged breakpoint grid.
    """
    _check_eps(eps)
    fa, ga = align(f, g)
    xs = fa.xs
    n = len(xs)

    env = lower_convex_envelope(ga)
    hull = list(lower_hull_vertex_indices(ga))
    vertices = set(hull)
    for k in range(n):
        if fa.ys[k] > env.ys[k] + eps:
            z = xs[k]
            if k in vertices:
                return Violation(z, z, 0.0, fa.ys[k], ga.ys[k], F_LE_COMBINATION, (z,))
            x, y, t = _bracket_witness(xs, k, hull)
            p = t * x + (1.0 - t) * y
            lhs = fa.eval(p)
            rhs = t * ga.eval(x) + (1.0 - t) * ga.eval(y)
            return Violation(x, y, t, lhs, rhs, F_LE_COMBINATION, tuple(sorted((x, z, y))))

    cap = upper_concave_envelope(fa)
    hull = list(lower_hull_vertex_indices(negate(fa)))
    vertices = set(hull)
    for k in range(n):
        if cap.ys[k] > ga.ys[k] + eps:
            z = xs[k]
            if k in vertices:
                return Violation(z, z, 0.0, fa.ys[k], ga.ys[k], COMBINATION_LE_G, (z,))
            x, y, t = _bracket_witness(xs, k, hull)
            p = t * x + (1.0 - t) * y
            lhs = t * fa.eval(x) + (1.0 - t) * fa.eval(y)
            rhs = ga.eval(p)
            return Violation(x, y, t, lhs, rhs, COMBINATION_LE_G, tuple(sorted((x, z, y))))
    return None


def check_condition_iii_sampled(
    f: SampledFunction, g: SampledFunction, eps: float = 1e-9, t_grid_size: int = 9
) -> Violation | None:
    """Chord enumeration over breakpoint pairs; independent of the envelope route.

    For each pair x < y of merged-grid breakpoints, t runs over a
    uniform grid joined with every value at which t*x + (1-t)*y lands
    on an interior breakpoint — the chord-versus-function gap is
    piecewise-linear in t, so those t exhaust its extremes and the
    enumeration is as complete as the envelope comparison.
    """
    _check_eps(eps)
    fa, ga = align(f, g)
    xs = np.asarray(fa.xs)
    fy = np.asarray(fa.ys)
    gy = np.asarray(ga.ys)
    n = len(xs)
    if t_grid_size < 2:
        raise RangeViolation(f"need at least two weight samples, got {t_grid_size}")
    base = np.linspace(0.0, 1.0, int(t_grid_size))
    for i in range(n - 1):
        for j in range(i + 1, n):
            cross = (xs[j] - xs[i + 1 : j]) / (xs[j] - xs[i])
            ts = np.unique(np.concatenate((base, cross)))
            p = ts * xs[i] + (1.0 - ts) * xs[j]
            fp = eval_many(fa, p)
            gp = eval_many(ga, p)
            lhs1 = fp
            rhs1 = ts * gy[i] + (1.0 - ts) * gy[j]
            lhs2 = ts * fy[i] + (1.0 - ts) * fy[j]
            rhs2 = gp
            bad = (lhs1 > rhs1 + eps) | (lhs2 > rhs2 + eps)
            if bad.any():
                k = int(np.argmax(bad))
                first = lhs1[k] > rhs1[k] + eps
                clause = F_LE_COMBINATION if first else COMBINATION_LE_G
                lhs = lhs1[k] if first else lhs2[k]
                rhs = rhs1[k] if first else rhs2[k]
                core = tuple(sorted(set((float(xs[i]), float(p[k]), float(xs[j])))))
                return Violation(
                    float(xs[i]), float(xs[j]), float(ts[k]), float(lhs), float(rhs), clause, core
                )
    return None


def _core_violation(fa: SampledFunction, ga: SampledFunction, core) -> Violation:
    """Convert an infeasible constraint core into a chord-condition witness.

    Cores are 2-3 constraints: either a lower and an upper bound at the
    same point (f above g there), or two bounds of one type straddling
    one of the other; the straddled point is where the chord crosses.
    """
    lowers = sorted(x for x, _, is_lower in core if is_lower)
    uppers = sorted(x for x, _, is_lower in core if not is_lower)
    if len(core) == 2:
        x = core[0][0]
        return Violation(x, x, 0.0, fa.eval(x), ga.eval(x), F_LE_COMBINATION, (x,))
    if len(lowers) == 2:
        xa, xb = lowers
        xm = uppers[0]
        t = (xb - xm) / (xb - xa)
        p = t * xa + (1.0 - t) * xb
        lhs = t * fa.eval(xa) + (1.0 - t) * fa.eval(xb)
        return Violation(xa, xb, t, lhs, ga.eval(p), COMBINATION_LE_G, tuple(sorted((xa, xm, xb))))
    xa, xb = uppers
    xm = lowers[0]
    t = (xb - xm) / (xb - xa)
    p = t * xa + (1.0 - t) * xb
    rhs = t * ga.eval(xa) + (1.0 - t) * ga.eval(xb)
    return Violation(xa, xb, t, fa.eval(p), rhs, F_LE_COMBINATION, tuple(sorted((xa, xm, xb))))


def find_affine_separator(f: SampledFunction, g: SampledFunction, eps: float = 1e-9) -> SandwichOutcome:
    """Affine h with f - eps <= h <= g + eps on the merged grid, or a witness.

    Incremental feasibility in (m, c): constraints arrive in grid order,
    lower bound before upper bound at each point, and the current point
    is kept. A violated constraint restricts the search to its boundary
    line c = bound - m*x, where every earlier constraint becomes a
    one-sided bound on m; an empty bound interval certifies that the
    violated constraint plus the two tightest earlier ones (three in
    all, two when they share a point) are jointly infeasible, which is
    exactly a chord-condition violation.
    """
    _check_eps(eps)
    fa, ga = align(f, g)
    cons: list[tuple[float, float, bool]] = []  # (x, bound, is_lower)
    m, c = 0.0, 0.0
    for k in range(len(fa.xs)):
        x = fa.xs[k]
        for is_lower in (True, False):
            bound = fa.ys[k] - eps if is_lower else ga.ys[k] + eps
            value = m * x + c
            if (value >= bound) if is_lower else (value <= bound):
                cons.append((x, bound, is_lower))
                continue
            lo = -float("inf")
            hi = float("inf")
            lo_prov = hi_prov = None
            failed = None
            for prev in cons:
                xj, bj, lj = prev
                d = xj - x
                if d == 0.0:
                    if (bound >= bj) if lj else (bound <= bj):
                        continue
                    failed = ((x, bound, is_lower), prev)
                    break
                r = (bj - bound) / d
                if lj == (d > 0.0):  # bounds m from below
                    if r > lo:
                        lo, lo_prov = r, prev
                elif r < hi:
                    hi, hi_prov = r, prev
            if failed is not None:
                return SandwichOutcome(None, _core_violation(fa, ga, failed))
            if lo > hi:
                core = ((x, bound, is_lower), lo_prov, hi_prov)
                return SandwichOutcome(None, _core_violation(fa, ga, core))
            if lo_prov is not None and hi_prov is not None:
                m = 0.5 * (lo + hi)
            elif lo_prov is not None:
                m = lo
            elif hi_prov is not None:
                m = hi
            else:
                m = 0.0
            c = bound - m * x
            cons.append((x, bound, is_lower))
    return SandwichOutcome(AffineMap(m, c), None)


def verify_separator(f: SampledFunction, g: SampledFunction, h: AffineMap, eps: float = 1e-9) -> bool:
    """f - eps <= h <= g + eps on the merged grid, with re-evaluation grace.

    The grace term (a few ulps at the data's scale) covers the rounding
    difference between the construction's arithmetic and this fresh pass.
    """
    fa, ga = align(f, g)
    for x, fv, gv in zip(fa.xs, fa.ys, ga.ys):
        hv = h.eval(x)
        grace = 64.0 * sys.float_info.epsilon * max(1.0, abs(fv), abs(gv), abs(hv))
        if hv < fv - eps - grace or hv > gv + eps + grace:
            return False
    return True


def convex_concave_separators(
    f: SampledFunction, g: SampledFunction, eps: float = 1e-9
) -> tuple[SampledFunction | None, SampledFunction | None]:
    """(convex separator, concave separator), each None when none exists.

    The convex candidate is the convex envelope of g — the largest
    convex function under g, so a convex separator exists iff f fits
    under it. Dually the concave candidate is the concave envelope of
    f. An affine separator exists exactly when both slots are filled.
    """
    _check_eps(eps)
    fa, ga = align(f, g)
    env = lower_convex_envelope(ga)
    cap = upper_concave_envelope(fa)
    convex = env if all(fa.ys[k] <= env.ys[k] + eps for k in range(len(fa.xs))) else None
    concave = cap if all(cap.ys[k] <= ga.ys[k] + eps for k in range(len(ga.xs))) else None
    return convex, concave


# ---------------------------------------------------------------------------
# Interval-valued bounds: G(x) inside H(x) inside F(x)


def _require_kinds(outer: IntervalFunction, inner: IntervalFunction):
    allowed = {
        Kind.BOUNDED: (Kind.BOUNDED, Kind.UPPER_HALF, Kind.LOWER_HALF, Kind.ALL_REALS),
        Kind.UPPER_HALF: (Kind.UPPER_HALF, Kind.ALL_REALS),
        Kind.LOWER_HALF: (Kind.LOWER_HALF, Kind.ALL_REALS),
        Kind.ALL_REALS: (Kind.ALL_REALS,),
    }[inner.kind]
    if outer.kind not in allowed:
        raise KindIncompatible(
            f"inner kind {inner.kind.value} cannot sit inside outer kind {outer.kind.value}"
        )


def check_condition_iii_setvalued(
    outer: IntervalFunction, inner: IntervalFunction, eps: float = 1e-9
) -> SetValuedViolation | None:
    """Chord conditions for an affine band between inner and outer values.

    Splits into the two endpoint problems: outer.lower <= h <= inner.lower
    and inner.upper <= h <= outer.upper. A side the outer bound leaves
    unconstrained always admits a flat endpoint and is skipped.
    """
    _require_kinds(outer, inner)
    if inner.kind in _HAS_LOWER and outer.kind in _HAS_LOWER:
        v = check_condition_iii(outer.lower, inner.lower, eps)
        if v is not None:
            return SetValuedViolation("lower", v)
    if inner.kind in _HAS_UPPER and outer.kind in _HAS_UPPER:
        v = check_condition_iii(inner.upper, outer.upper, eps)
        if v is not None:
            return SetValuedViolation("upper", v)
    return None


def find_affine_interval_separator(
    outer: IntervalFunction, inner: IntervalFunction, eps: float = 1e-9
) -> IntervalSandwichOutcome:
    """Affine band H with inner(x) <= H(x) <= outer(x) in containment order.

    H takes the inner bound's kind (bounded stays bounded). Each
    endpoint is an affine sandwich problem; when the outer bound has no
    endpoint on a side, the flat map through the inner bound's extreme
    value on that side serves.
    """
    _require_kinds(outer, inner)
    hkind = inner.kind
    lower = upper = None
    if hkind in _HAS_LOWER:
        if outer.kind in _HAS_LOWER:
            out = find_affine_separator(outer.lower, inner.lower, eps)
            if out.violation is not None:
                return IntervalSandwichOutcome(None, SetValuedViolation("lower", out.violation))
            lower = out.separator
        else:
            lower = AffineMap(0.0, min(inner.lower.ys))
    if hkind in _HAS_UPPER:
        if outer.kind in _HAS_UPPER:
            out = find_affine_separator(inner.upper, outer.upper, eps)
            if out.violation is not None:
                return IntervalSandwichOutcome(None, SetValuedViolation("upper", out.violation))
            upper = out.separator
        else:
            upper = AffineMap(0.0, max(inner.upper.ys))
    return IntervalSandwichOutcome(AffineIntervalMap(hkind, lower=lower, upper=upper), None)


def verify_interval_separator(
    outer: IntervalFunction, inner: IntervalFunction, h: AffineIntervalMap, eps: float = 1e-9
) -> bool:
    """Endpoint-wise containment check with the same grace as verify_separator."""
    if h.lower is not None:
        if outer.kind in _HAS_LOWER:
            if not verify_separator(outer.lower, inner.lower, h.lower, eps):
                return False
        else:
            for x, gv in zip(inner.lower.xs, inner.lower.ys):
                hv = h.lower.eval(x)
                grace = 64.0 * sys.float_info.epsilon * max(1.0, abs(gv), abs(hv))
                if hv > gv + eps + grace:
                    return False
    if h.upper is not None:
        if outer.kind in _HAS_UPPER:
            if not verify_separator(inner.upper, outer.upper, h.upper, eps):
                return False
        else:
            for x, gv in zip(inner.upper.xs, inner.upper.ys):
                hv = h.upper.eval(x)
                grace = 64.0 * sys.float_info.epsilon * max(1.0, abs(gv), abs(hv))
                if hv < gv - eps - grace:
                    return False
    return True
