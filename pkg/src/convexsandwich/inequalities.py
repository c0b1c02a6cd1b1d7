"""Checkers and falsifiers for three-point and weighted convexity inequalities.

Every checker returns a CheckReport with a signed slack oriented so
that the tested relation holds exactly when slack >= -eps. Scans walk
a deterministic refinement of the breakpoint grid in lexicographic
order and return the first violating tuple they can reproduce with the
corresponding pointwise checker; a scan that comes back clean is
evidence, not proof, since only grid-derived points are visited.

Hypothesis failures (a non-convex function handed to a checker that
assumes convexity, bad weights, a barycenter mismatch) raise; they are
never folded into a False report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BarycenterViolation,
    DomainMismatch,
    DomainViolation,
    KindIncompatible,
    LengthMismatch,
    NotConvex,
    NotConvexIVF,
    OrderViolation,
    RangeViolation,
    WeightViolation,
)
from .functions import (
    IntervalFunction,
    SampledFunction,
    align,
    difference,
    eval_ivf,
    eval_many,
    is_concave,
    is_convex,
    is_convex_ivf,
    is_decreasing,
    is_increasing,
    negate,
    restrict,
)
from .intervals import (
    ExtInterval,
    Kind,
    inclusion_slack,
    is_subset_within,
    minkowski_add,
    minkowski_sum,
    scale,
)

INCREASING = "increasing"
DECREASING = "decreasing"

# collapse tolerance for refined scan grids, matching the evaluation edge slack
_COLLAPSE = 1e-12


def _json_value(v):
    if isinstance(v, ExtInterval):
        return v.to_json()
    if isinstance(v, tuple):
        return list(v)
    return v


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one inequality or inclusion check.

    slack is oriented so holds == (slack >= -eps); equality means the
    two sides agree to within eps. witness is populated exactly when
    the check fails and carries enough coordinates to reproduce the
    failure with the pointwise checker that produced this report.
    """

    holds: bool
    lhs: object
    rhs: object
    slack: float
    equality: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "lhs": _json_value(self.lhs),
            "rhs": _json_value(self.rhs),
            "slack": self.slack,
            "equality": self.equality,
            "witness": (
                {k: _json_value(v) for k, v in self.witness.items()}
                if self.witness is not None
                else None
            ),
        }


def _report(lhs, rhs, slack: float, eps: float, witness: dict | None) -> CheckReport:
    holds = slack >= -eps
    return CheckReport(
        holds=holds,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        equality=abs(slack) <= eps,
        witness=None if holds else witness,
    )


def _check_eps(eps: float):
    if not (eps >= 0.0):
        raise RangeViolation(f"tolerance must be nonnegative, got {eps!r}")


# ---------------------------------------------------------------------------
# three-point inequality for real-valued functions


def popoviciu_check(
    f: SampledFunction, x: float, y: float, z: float, eps: float = 1e-9
) -> CheckReport:
    """Three-point inequality at one triple.

    lhs = (f(x)+f(y)+f(z))/3 + f((x+y+z)/3)
    rhs = (2/3) * (f((x+y)/2) + f((y+z)/2) + f((x+z)/2))

    holds iff lhs >= rhs - eps. Exact sums keep the report invariant
    under permutations of (x, y, z). Points outside the domain raise
    DomainViolation.
    """
    _check_eps(eps)
    x, y, z = float(x), float(y), float(z)
    mean = math.fsum((x, y, z)) / 3.0
    lhs = math.fsum((f.eval(x), f.eval(y), f.eval(z))) / 3.0 + f.eval(mean)
    rhs = (2.0 / 3.0) * math.fsum(
        (f.eval((x + y) / 2.0), f.eval((y + z) / 2.0), f.eval((x + z) / 2.0))
    )
    return _report(lhs, rhs, lhs - rhs, eps, {"x": x, "y": y, "z": z})


def _refined_grid(xs) -> np.ndarray:
    """Breakpoints plus all pairwise midpoints, sorted, near-duplicates collapsed."""
    arr = np.asarray(xs, dtype=float)
    iu, ju = np.triu_indices(len(arr))
    pts = np.unique(np.concatenate((arr, (arr[iu] + arr[ju]) / 2.0)))
    tol = _COLLAPSE * np.maximum(1.0, np.abs(pts[1:]))
    keep = np.concatenate(([True], np.diff(pts) > tol))
    return pts[keep]


def popoviciu_scan(f: SampledFunction, eps: float = 1e-9) -> CheckReport:
    """Search the midpoint-refined grid for a three-point violation.

    Triples (x <= y <= z) are visited in lexicographic order and the
    first violation confirmed by popoviciu_check is returned. A clean
    scan reports the smallest slack seen and where it occurred; for a
    non-convex function a clean scan means the grid missed the defect,
    not that the inequality holds everywhere.
    """
    _check_eps(eps)
    grid = _refined_grid(f.xs)
    vals = eval_many(f, grid)
    m = len(grid)
    third = 1.0 / 3.0
    best = math.inf
    best_ijk = (0, 0, 0)
    midrows: dict[int, np.ndarray] = {}

    def midrow(i: int) -> np.ndarray:
        row = midrows.get(i)
        if row is None:
            row = eval_many(f, (grid[i] + grid) / 2.0)
            midrows[i] = row
        return row

    for i in range(m):
        row_i = midrow(i)
        for j in range(i, m):
            row_j = midrow(j)
            tail = grid[j:]
            means = (grid[i] + grid[j] + tail) * third
            lhsv = (vals[i] + vals[j] + vals[j:]) * third + eval_many(f, means)
            rhsv = (2.0 / 3.0) * (row_i[j] + row_i[j:] + row_j[j:])
            slackv = lhsv - rhsv
            bad = slackv < -eps
            if bad.any():
                k = j + int(np.argmax(bad))
                confirmed = popoviciu_check(f, grid[i], grid[j], grid[k], eps)
                if not confirmed.holds:
                    return confirmed
            k = int(np.argmin(slackv))
            if slackv[k] < best:
                best = float(slackv[k])
                best_ijk = (i, j, j + k)
    i, j, k = best_ijk
    at_best = popoviciu_check(f, grid[i], grid[j], grid[k], eps)
    return CheckReport(
        holds=True,
        lhs=at_best.lhs,
        rhs=at_best.rhs,
        slack=at_best.slack,
        equality=at_best.equality,
        witness=None,
    )


# ---------------------------------------------------------------------------
# three-point inclusion for interval-valued functions


def _mean_set(F: IntervalFunction, x: float, y: float, z: float) -> tuple:
    mean = math.fsum((x, y, z)) / 3.0
    lhs = minkowski_add(
        scale(1.0 / 3.0, minkowski_sum(eval_ivf(F, x), eval_ivf(F, y), eval_ivf(F, z))),
        eval_ivf(F, mean),
    )
    rhs = scale(
        2.0 / 3.0,
        minkowski_sum(
            eval_ivf(F, (x + y) / 2.0),
            eval_ivf(F, (y + z) / 2.0),
            eval_ivf(F, (x + z) / 2.0),
        ),
    )
    return lhs, rhs


def _require_scannable(F: IntervalFunction):
    if F.kind is Kind.ALL_REALS:
        raise KindIncompatible(
            "the whole-line interval function carries no endpoint data to compare"
        )


def popoviciu_inclusion_check(
    F: IntervalFunction, x: float, y: float, z: float, eps: float = 1e-9
) -> CheckReport:
    """Set-valued three-point inclusion at one triple.

    Builds (F(x)+F(y)+F(z))/3 + F(mean) and (2/3)(F(m1)+F(m2)+F(m3))
    with set addition and scaling; holds iff the first is contained in
    the second within eps. Works on bounded and half-line kinds.
    """
    _check_eps(eps)
    _require_scannable(F)
    x, y, z = float(x), float(y), float(z)
    lhs, rhs = _mean_set(F, x, y, z)
    slack = inclusion_slack(lhs, rhs)
    return _report(lhs, rhs, slack, eps, {"x": x, "y": y, "z": z})


def popoviciu_inclusion_scan(F: IntervalFunction, eps: float = 1e-9) -> CheckReport:
    """Search refined-grid triples for a failure of the three-point inclusion."""
    _check_eps(eps)
    _require_scannable(F)
    lower = F.lower
    upper = F.upper
    grid = _refined_grid(lower.xs if lower is not None else upper.xs)
    m = len(grid)
    third = 1.0 / 3.0
    two_thirds = 2.0 / 3.0
    sides = []
    for fn, sign in ((lower, 1.0), (upper, -1.0)):
        if fn is None:
            continue
        # sign +1: inner lower endpoint must sit at or above the outer one;
        # sign -1: inner upper endpoint must sit at or below the outer one.
        sides.append((fn, sign, eval_many(fn, grid), {}))

    def midrow(fn, cache, i):
        row = cache.get(i)
        if row is None:
            row = eval_many(fn, (grid[i] + grid) / 2.0)
            cache[i] = row
        return row

    best = math.inf
    best_ijk = (0, 0, 0)
    for i in range(m):
        for j in range(i, m):
            tail = grid[j:]
            means = (grid[i] + grid[j] + tail) * third
            slackv = None
            for fn, sign, vals, cache in sides:
                row_i = midrow(fn, cache, i)
                row_j = midrow(fn, cache, j)
                inner = (vals[i] + vals[j] + vals[j:]) * third + eval_many(fn, means)
                outer = two_thirds * (row_i[j] + row_i[j:] + row_j[j:])
                margin = sign * (inner - outer)
                slackv = margin if slackv is None else np.minimum(slackv, margin)
            bad = slackv < -eps
            if bad.any():
                k = j + int(np.argmax(bad))
                confirmed = popoviciu_inclusion_check(F, grid[i], grid[j], grid[k], eps)
                if not confirmed.holds:
                    return confirmed
            k = int(np.argmin(slackv))
            if slackv[k] < best:
                best = float(slackv[k])
                best_ijk = (i, j, j + k)
    i, j, k = best_ijk
    at_best = popoviciu_inclusion_check(F, grid[i], grid[j], grid[k], eps)
    return CheckReport(
        holds=True,
        lhs=at_best.lhs,
        rhs=at_best.rhs,
        slack=at_best.slack,
        equality=at_best.equality,
        witness=None,
    )


# ---------------------------------------------------------------------------
# two-function weighted endpoint inequality


def _check_direction(direction: str):
    if direction not in (INCREASING, DECREASING):
        raise RangeViolation(
            f"direction must be {INCREASING!r} or {DECREASING!r}, got {direction!r}"
        )


def _same_domain(f: SampledFunction, g: SampledFunction):
    if f.domain != g.domain:
        raise DomainMismatch(f"domains differ: {f.domain} vs {g.domain}")


def prop3_check(
    phi: SampledFunction,
    psi: SampledFunction,
    x: float,
    y: float,
    t: float,
    eps: float = 1e-9,
    direction: str = INCREASING,
) -> CheckReport:
    """Mixed two-function endpoint inequality at one (x, y, t).

    With z = (1-t)x + ty, compares

        lhs = (1-t) phi(x) + t psi(y)   against
        rhs = (1-t) phi(z) + t psi(z)

    holds iff lhs >= rhs - eps in the increasing direction; the
    decreasing direction flips the inequality. Requires x <= y and
    t strictly inside (0, 1); both functions must share a domain.
    """
    _check_eps(eps)
    _check_direction(direction)
    _same_domain(phi, psi)
    x, y, t = float(x), float(y), float(t)
    if x > y:
        raise RangeViolation(f"need x <= y, got x = {x!r}, y = {y!r}")
    if not (0.0 < t < 1.0):
        raise RangeViolation(f"need 0 < t < 1, got t = {t!r}")
    z = (1.0 - t) * x + t * y
    lhs = (1.0 - t) * phi.eval(x) + t * psi.eval(y)
    rhs = (1.0 - t) * phi.eval(z) + t * psi.eval(z)
    slack = lhs - rhs if direction == INCREASING else rhs - lhs
    return _report(lhs, rhs, slack, eps, {"x": x, "y": y, "t": t})


@dataclass(frozen=True)
class Prop3ScanReport:
    """Hypothesis verdicts plus the scan outcome for the endpoint inequality.

    difference_monotone: is psi - phi monotone the right way on the grid;
    shape_ok: is psi convex (increasing direction) or concave (decreasing).
    When both hypotheses hold a clean scan is the expected outcome; a
    violation under true hypotheses would be an internal inconsistency.
    """

    direction: str
    difference_monotone: bool
    shape_ok: bool
    hypotheses_hold: bool
    holds: bool
    equality_everywhere: bool
    checked: int
    witness: CheckReport | None

    def to_json(self) -> dict:
        return {
            "direction": self.direction,
            "difference_monotone": self.difference_monotone,
            "shape_ok": self.shape_ok,
            "hypotheses_hold": self.hypotheses_hold,
            "holds": self.holds,
            "equality_everywhere": self.equality_everywhere,
            "checked": self.checked,
            "witness": self.witness.to_json() if self.witness is not None else None,
        }


def prop3_scan(
    phi: SampledFunction,
    psi: SampledFunction,
    direction: str = INCREASING,
    eps: float = 1e-9,
    t_count: int = 33,
) -> Prop3ScanReport:
    """Scan all merged-grid pairs x <= y against interior weights.

    Weights are t_count uniformly spaced points strictly inside (0, 1).
    Reports the hypothesis verdicts alongside the scan result; the scan
    itself never assumes them. equality_everywhere is true when every
    examined combination landed within eps of equality.
    """
    _check_eps(eps)
    _check_direction(direction)
    if t_count < 1:
        raise RangeViolation(f"need at least one interior weight, got {t_count}")
    phi_a, psi_a = align(phi, psi)
    gap = difference(psi_a, phi_a)
    if direction == INCREASING:
        difference_monotone = is_increasing(gap, eps)
        shape_ok = is_convex(psi_a, eps)
    else:
        difference_monotone = is_decreasing(gap, eps)
        shape_ok = is_concave(psi_a, eps)

    xs = np.asarray(phi_a.xs)
    phiv = np.asarray(phi_a.ys)
    psiv = np.asarray(psi_a.ys)
    ts = np.linspace(0.0, 1.0, t_count + 2)[1:-1]
    omt = 1.0 - ts
    n = len(xs)
    checked = 0
    all_equal = True
    witness = None
    for i in range(n):
        yj = xs[i:][:, None]
        zz = omt[None, :] * xs[i] + ts[None, :] * yj
        flat = zz.ravel()
        lhs = omt[None, :] * phiv[i] + ts[None, :] * psiv[i:][:, None]
        rhs = (
            omt[None, :] * eval_many(phi_a, flat).reshape(zz.shape)
            + ts[None, :] * eval_many(psi_a, flat).reshape(zz.shape)
        )
        diff = lhs - rhs
        slackv = diff if direction == INCREASING else -diff
        checked += slackv.size
        if all_equal and not (np.abs(diff) <= eps).all():
            all_equal = False
        bad = slackv < -eps
        if bad.any():
            j_off, t_idx = np.unravel_index(int(np.argmax(bad)), bad.shape)
            cand = prop3_check(
                phi_a,
                psi_a,
                float(xs[i]),
                float(xs[i + j_off]),
                float(ts[t_idx]),
                eps,
                direction,
            )
            if not cand.holds:
                witness = cand
                break
    hypotheses_hold = difference_monotone and shape_ok
    return Prop3ScanReport(
        direction=direction,
        difference_monotone=difference_monotone,
        shape_ok=shape_ok,
        hypotheses_hold=hypotheses_hold,
        holds=witness is None,
        equality_everywhere=all_equal and witness is None,
        checked=checked,
        witness=witness,
    )


def prop3_setvalued_scan(
    Phi: IntervalFunction,
    Psi: IntervalFunction,
    eps: float = 1e-9,
    t_count: int = 9,
) -> dict:
    """Observational sweep of the set-valued endpoint combination.

    For pairs x <= y and interior weights t it forms the weighted set
    combination (1-t)Phi(x) + tPsi(y) and the pointwise set
    (1-t)Phi(z) + tPsi(z) at z = (1-t)x + ty, then counts how often
    each contains the other. No inequality is asserted in either
    direction; the tallies are returned for inspection only.
    """
    _check_eps(eps)
    if t_count < 1:
        raise RangeViolation(f"need at least one interior weight, got {t_count}")
    grids = []
    for side in (Phi, Psi):
        fn = side.lower if side.lower is not None else side.upper
        if fn is not None:
            grids.append(fn.xs)
    if not grids:
        raise KindIncompatible("neither side carries a breakpoint grid to scan")
    dom_phi = Phi.domain
    dom_psi = Psi.domain
    if dom_phi is not None and dom_psi is not None and dom_phi != dom_psi:
        raise DomainMismatch(f"domains differ: {dom_phi} vs {dom_psi}")
    xs = sorted({float(v) for g in grids for v in g})
    ts = [k / (t_count + 1) for k in range(1, t_count + 1)]
    checked = 0
    combo_missing_point = 0
    point_missing_combo = 0
    for a_idx, xv in enumerate(xs):
        for yv in xs[a_idx:]:
            px = eval_ivf(Phi, xv)
            for t in ts:
                z = (1.0 - t) * xv + t * yv
                combo = minkowski_add(scale(1.0 - t, px), scale(t, eval_ivf(Psi, yv)))
                at_z = minkowski_add(
                    scale(1.0 - t, eval_ivf(Phi, z)), scale(t, eval_ivf(Psi, z))
                )
                checked += 1
                if not is_subset_within(at_z, combo, eps):
                    combo_missing_point += 1
                if not is_subset_within(combo, at_z, eps):
                    point_missing_combo += 1
    return {
        "experimental": True,
        "checked": checked,
        "combination_lacks_pointwise_set": combo_missing_point,
        "pointwise_set_lacks_combination": point_missing_combo,
        "note": "observational tallies only; no containment is asserted",
    }


# ---------------------------------------------------------------------------
# weighted endpoint bound for convex functions


@dataclass(frozen=True)
class Lemma5Input:
    """Weighted points in [a, b] for the endpoint bound.

    weights must be nonnegative and sum to one; the barycenter then
    determines the endpoint weights: lam2 = (sum(w*x) - a)/(b - a),
    lam1 = 1 - lam2.
    """

    points: tuple
    weights: tuple
    a: float
    b: float


def make_lemma5_input(points, a: float, b: float, weights=None) -> Lemma5Input:
    pts = tuple(float(p) for p in points)
    if not pts:
        raise LengthMismatch("need at least one point")
    if weights is None:
        w = (1.0 / len(pts),) * len(pts)
    else:
        w = tuple(float(v) for v in weights)
    return Lemma5Input(points=pts, weights=w, a=float(a), b=float(b))


def _lemma5_lambdas(inp: Lemma5Input, eps: float) -> tuple:
    if len(inp.points) != len(inp.weights):
        raise LengthMismatch(
            f"{len(inp.points)} points but {len(inp.weights)} weights"
        )
    if not inp.points:
        raise LengthMismatch("need at least one point")
    if not inp.a < inp.b:
        raise OrderViolation(f"need a < b, got a = {inp.a!r}, b = {inp.b!r}")
    for w in inp.weights:
        if not w >= 0.0:
            raise WeightViolation(f"weights must be nonnegative, got {w!r}")
    total = math.fsum(inp.weights)
    if abs(total - 1.0) > eps:
        raise WeightViolation(f"weights must sum to one, got {total!r}")
    for p in inp.points:
        if not (inp.a <= p <= inp.b):
            raise DomainViolation(f"point {p!r} outside [{inp.a!r}, {inp.b!r}]")
    bary = math.fsum(w * p for w, p in zip(inp.weights, inp.points))
    lam2 = (bary - inp.a) / (inp.b - inp.a)
    return 1.0 - lam2, lam2


def _convex_on(f: SampledFunction, a: float, b: float, eps: float) -> None:
    seg = f if f.domain == (a, b) else restrict(f, a, b)
    if not is_convex(seg, eps):
        raise NotConvex(f"function is not convex on [{a!r}, {b!r}] within {eps!r}")


def lemma5_check(
    f: SampledFunction,
    inp: Lemma5Input,
    eps: float = 1e-9,
    lambdas: tuple | None = None,
) -> CheckReport:
    """Weighted values of a convex function against the endpoint bound.

    lhs = sum(w_i f(x_i)), rhs = lam1 f(a) + lam2 f(b); holds iff
    lhs <= rhs + eps. The endpoint weights are derived from the
    barycenter unless passed explicitly, in which case they must
    reproduce it (BarycenterViolation otherwise). Raises NotConvex when
    f fails the convexity test on [a, b].
    """
    _check_eps(eps)
    lam1, lam2 = _lemma5_lambdas(inp, eps)
    if lambdas is not None:
        g1, g2 = float(lambdas[0]), float(lambdas[1])
        if g1 < -eps or g2 < -eps or abs((g1 + g2) - 1.0) > eps:
            raise WeightViolation(
                f"endpoint weights must be nonnegative and sum to one, got {lambdas!r}"
            )
        bary = math.fsum(w * p for w, p in zip(inp.weights, inp.points))
        if abs(math.fsum((g1 * inp.a, g2 * inp.b)) - bary) > eps:
            raise BarycenterViolation(
                f"endpoint weights {lambdas!r} do not reproduce the barycenter {bary!r}"
            )
        lam1, lam2 = g1, g2
    _convex_on(f, inp.a, inp.b, eps)
    lhs = math.fsum(w * f.eval(p) for w, p in zip(inp.weights, inp.points))
    rhs = math.fsum((lam1 * f.eval(inp.a), lam2 * f.eval(inp.b)))
    return _report(
        lhs,
        rhs,
        rhs - lhs,
        eps,
        {
            "points": inp.points,
            "weights": inp.weights,
            "lambda1": lam1,
            "lambda2": lam2,
        },
    )


def prop6_check(
    f: SampledFunction,
    x: float,
    y: float,
    z: float,
    a: float,
    b: float,
    eps: float = 1e-9,
) -> CheckReport:
    """Endpoint-sum chain for a convex function at a centered triple.

    Checks f(a) + f(b) >= (f(x)+f(y)+f(z))/3 + f(mean) >= the midpoint
    side of the three-point inequality. The report's lhs and rhs are
    the first link's sides, and slack is the smaller of the two link
    slacks, so both are recoverable: first link = lhs - rhs, second
    via popoviciu_check. Requires the triple mean to sit at (a+b)/2
    within eps and f to be convex on [a, b].
    """
    _check_eps(eps)
    x, y, z, a, b = float(x), float(y), float(z), float(a), float(b)
    if not a < b:
        raise OrderViolation(f"need a < b, got a = {a!r}, b = {b!r}")
    _convex_on(f, a, b, eps)
    for p in (x, y, z):
        if not (a <= p <= b):
            raise DomainViolation(f"point {p!r} outside [{a!r}, {b!r}]")
    mean = math.fsum((x, y, z)) / 3.0
    if abs(mean - (a + b) / 2.0) > eps:
        raise BarycenterViolation(
            f"triple mean {mean!r} is not the midpoint of [{a!r}, {b!r}]"
        )
    top = f.eval(a) + f.eval(b)
    mid = math.fsum((f.eval(x), f.eval(y), f.eval(z))) / 3.0 + f.eval(mean)
    bot = (2.0 / 3.0) * math.fsum(
        (f.eval((x + y) / 2.0), f.eval((y + z) / 2.0), f.eval((x + z) / 2.0))
    )
    slack1 = top - mid
    slack2 = mid - bot
    clause = "endpoints_vs_mean_term" if slack1 < slack2 else "mean_term_vs_midpoints"
    return _report(
        top,
        mid,
        min(slack1, slack2),
        eps,
        {"x": x, "y": y, "z": z, "a": a, "b": b, "clause": clause},
    )


def prop7_check(
    F: IntervalFunction, inp: Lemma5Input, eps: float = 1e-9
) -> CheckReport:
    """Weighted set combination of a convex interval function against its endpoint bound.

    holds iff sum(w_i F(x_i)) contains lam1 F(a) + lam2 F(b) within
    eps. The containment is evaluated twice: directly with set
    arithmetic, and through the endpoint decomposition (the convex
    lower endpoint via lemma5_check, the concave upper endpoint via
    the mirrored call); the two routes share their arithmetic and must
    agree exactly. Raises NotConvexIVF when F is not convex-valued.
    """
    _check_eps(eps)
    if not is_convex_ivf(F, eps):
        raise NotConvexIVF("interval function is not convex-valued within tolerance")
    lam1, lam2 = _lemma5_lambdas(inp, eps)
    lhs = minkowski_sum(
        *(scale(w, eval_ivf(F, p)) for w, p in zip(inp.weights, inp.points))
    )
    rhs = minkowski_add(
        scale(lam1, eval_ivf(F, inp.a)), scale(lam2, eval_ivf(F, inp.b))
    )
    slack = inclusion_slack(rhs, lhs)
    holds = slack >= -eps

    dec_slacks = []
    if F.lower is not None:
        dec_slacks.append(lemma5_check(F.lower, inp, eps, lambdas=(lam1, lam2)).slack)
    if F.upper is not None:
        dec_slacks.append(
            lemma5_check(negate(F.upper), inp, eps, lambdas=(lam1, lam2)).slack
        )
    if dec_slacks:
        dec_slack = min(dec_slacks)
        if (dec_slack >= -eps) != holds or dec_slack != slack:
            raise RuntimeError(
                "internal inconsistency: endpoint decomposition disagrees "
                f"with direct set arithmetic ({dec_slack!r} vs {slack!r})"
            )
    return _report(
        lhs,
        rhs,
        slack,
        eps,
        {"points": inp.points, "lambda1": lam1, "lambda2": lam2},
    )


def convexity_cross_check(f: SampledFunction, eps: float = 1e-9) -> CheckReport:
    """Compare the slope-based convexity test against the three-point scan.

    lhs is 1.0 when the slope test says convex, rhs is 1.0 when the
    scan finds no violation. A convex verdict with a confirmed scan
    violation contradicts the supporting theorem and is reported as a
    failure with the violating triple as witness. The opposite mismatch
    (not convex, clean scan) only means the scan's grid missed the
    defect and still counts as agreement.
    """
    _check_eps(eps)
    convex_verdict = is_convex(f, eps)
    scan = popoviciu_scan(f, eps)
    lhs = 1.0 if convex_verdict else 0.0
    rhs = 1.0 if scan.holds else 0.0
    contradiction = convex_verdict and not scan.holds
    return CheckReport(
        holds=not contradiction,
        lhs=lhs,
        rhs=rhs,
        slack=-1.0 if contradiction else 0.0,
        equality=not contradiction,
        witness=dict(scan.witness) if contradiction and scan.witness else None,
    )
