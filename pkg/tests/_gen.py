"""Seeded generators and reusable law trials for the test suite.

Everything draws from a caller-supplied random.Random so each test
controls its own seed. Numeric data is dyadic (small numerators over a
power-of-two denominator) wherever a law is asserted exactly: products
and sums of such values round-trip through doubles without error, so
"equals" below means bit-equality, not tolerance.
"""

import math
import random

from convexsandwich import (
    ExtInterval,
    IntervalFunction,
    Kind,
    SampledFunction,
    check_condition_iii,
    check_condition_iii_sampled,
    find_affine_separator,
    inclusion_slack,
    is_concave,
    is_convex,
    is_subset,
    is_subset_within,
    lower_convex_envelope,
    make_all_reals,
    make_bounded,
    make_interval_function,
    make_lower_half,
    make_sampled,
    make_upper_half,
    minkowski_add,
    minkowski_sum,
    negate,
    scale,
    upper_concave_envelope,
)
from convexsandwich.expr import Bin, Call, Num, Var, Neg


def dyadic(rnd: random.Random, span: int = 8, pow2: int = 4) -> float:
    scale_ = 1 << pow2
    return rnd.randrange(-span * scale_, span * scale_ + 1) / scale_


def dyadic_pos(rnd: random.Random, span: int = 4, pow2: int = 4) -> float:
    scale_ = 1 << pow2
    return rnd.randrange(0, span * scale_ + 1) / scale_


def dyadic_grid(rnd: random.Random, n: int, span: int = 8, pow2: int = 4) -> list:
    scale_ = 1 << pow2
    ticks = rnd.sample(range(-span * scale_, span * scale_ + 1), n)
    return sorted(t / scale_ for t in ticks)


def random_pl(rnd: random.Random, n_min: int = 2, n_max: int = 20) -> SampledFunction:
    n = rnd.randint(n_min, n_max)
    return make_sampled(dyadic_grid(rnd, n), [dyadic(rnd) for _ in range(n)])


def random_convex_pl(rnd: random.Random, n_min: int = 2, n_max: int = 20) -> SampledFunction:
    n = rnd.randint(n_min, n_max)
    xs = dyadic_grid(rnd, n)
    slopes = sorted(dyadic(rnd, span=4) for _ in range(n - 1))
    ys = [dyadic(rnd)]
    for i in range(n - 1):
        ys.append(ys[-1] + slopes[i] * (xs[i + 1] - xs[i]))
    return make_sampled(xs, ys)


def random_concave_pl(rnd: random.Random, n_min: int = 2, n_max: int = 20) -> SampledFunction:
    return negate(random_convex_pl(rnd, n_min, n_max))


def random_convex_ivf(rnd: random.Random, kinds=("bounded", "upper_half", "lower_half")):
    """Convex-valued interval function: convex lower, concave upper, never crossing."""
    kind = rnd.choice(kinds)
    lower = random_convex_pl(rnd, n_min=2, n_max=12)
    xs = lower.xs
    if kind == "upper_half":
        return make_interval_function("upper_half", xs, lower_ys=lower.ys)
    # concave cap on the same grid, lifted clear of the lower endpoint
    slopes = sorted((dyadic(rnd, span=4) for _ in range(len(xs) - 1)), reverse=True)
    cap_vals = [dyadic(rnd)]
    for i in range(len(xs) - 1):
        cap_vals.append(cap_vals[-1] + slopes[i] * (xs[i + 1] - xs[i]))
    lift = max(lo - cv for lo, cv in zip(lower.ys, cap_vals)) + 1.0
    upper_ys = [cv + lift for cv in cap_vals]
    if kind == "lower_half":
        return make_interval_function("lower_half", xs, upper_ys=upper_ys)
    return make_interval_function("bounded", xs, lower_ys=lower.ys, upper_ys=upper_ys)


# ---------------------------------------------------------------------------
# sandwich instance constructors with known feasibility


def feasible_pair(rnd: random.Random):
    """(f, g) guaranteed separable: both built around a hidden affine map."""
    m = dyadic(rnd, span=4)
    c = dyadic(rnd, span=4)
    a, b = sorted(rnd.sample(range(-64, 65), 2))
    a, b = a / 8.0, b / 8.0

    def grid():
        inner = rnd.randint(0, 16)
        pts = {a, b}
        scale_ = 16
        lo_t, hi_t = int(a * scale_), int(b * scale_)
        for _ in range(inner):
            pts.add(rnd.randrange(lo_t, hi_t + 1) / scale_)
        return sorted(pts)

    fx = grid()
    gx = grid()
    f = make_sampled(fx, [m * x + c - dyadic_pos(rnd) for x in fx])
    g = make_sampled(gx, [m * x + c + dyadic_pos(rnd) for x in gx])
    return f, g


def infeasible_pair(rnd: random.Random):
    """(f, g) with f forced above a chord of g: no separator can exist."""
    n = rnd.randint(3, 20)
    xs = dyadic_grid(rnd, n)
    gy = [dyadic(rnd) for _ in range(n)]
    i = rnd.randrange(0, n - 2)
    j = rnd.randrange(i + 2, n)
    k = rnd.randrange(i + 1, j)
    t = (xs[j] - xs[k]) / (xs[j] - xs[i])
    chord = t * gy[i] + (1.0 - t) * gy[j]
    fy = [dyadic(rnd) for _ in range(n)]
    fy[k] = chord + 1.0 + dyadic_pos(rnd)
    return make_sampled(xs, fy), make_sampled(xs, gy)


def three_way_outcomes(f, g, eps: float = 1e-9, t_grid_size: int = 33):
    affine = find_affine_separator(f, g, eps).separator is not None
    envelope = check_condition_iii(f, g, eps) is None
    chords = check_condition_iii_sampled(f, g, eps, t_grid_size) is None
    return affine, envelope, chords


# ---------------------------------------------------------------------------
# extended intervals


def random_interval(rnd: random.Random) -> ExtInterval:
    roll = rnd.random()
    if roll < 0.55:
        lo, hi = sorted((dyadic(rnd), dyadic(rnd)))
        return make_bounded(lo, hi)
    if roll < 0.75:
        return make_upper_half(dyadic(rnd))
    if roll < 0.95:
        return make_lower_half(dyadic(rnd))
    return make_all_reals()


_KIND_TABLE = {
    (Kind.BOUNDED, Kind.BOUNDED): Kind.BOUNDED,
    (Kind.BOUNDED, Kind.UPPER_HALF): Kind.UPPER_HALF,
    (Kind.BOUNDED, Kind.LOWER_HALF): Kind.LOWER_HALF,
    (Kind.BOUNDED, Kind.ALL_REALS): Kind.ALL_REALS,
    (Kind.UPPER_HALF, Kind.UPPER_HALF): Kind.UPPER_HALF,
    (Kind.UPPER_HALF, Kind.LOWER_HALF): Kind.ALL_REALS,
    (Kind.UPPER_HALF, Kind.ALL_REALS): Kind.ALL_REALS,
    (Kind.LOWER_HALF, Kind.LOWER_HALF): Kind.LOWER_HALF,
    (Kind.LOWER_HALF, Kind.ALL_REALS): Kind.ALL_REALS,
    (Kind.ALL_REALS, Kind.ALL_REALS): Kind.ALL_REALS,
}


def expected_sum_kind(a: Kind, b: Kind) -> Kind:
    return _KIND_TABLE.get((a, b)) or _KIND_TABLE[(b, a)]


def check_interval_laws(rnd: random.Random):
    """One randomized trial over the set-arithmetic laws; all exact."""
    A = random_interval(rnd)
    B = random_interval(rnd)
    C = random_interval(rnd)

    assert minkowski_add(A, B) == minkowski_add(B, A)
    assert minkowski_add(A, B).kind is expected_sum_kind(A.kind, B.kind)

    order = [A, B, C]
    rnd.shuffle(order)
    assert minkowski_sum(A, B, C) == minkowski_sum(*order)

    zero = make_bounded(0.0, 0.0)
    assert minkowski_add(A, zero) == A
    assert scale(1.0, A) == A
    assert scale(0.0, A) == zero
    assert scale(-1.0, scale(-1.0, A)) == A
    t = dyadic(rnd, span=2, pow2=2)
    s = dyadic(rnd, span=2, pow2=2)
    assert scale(t, scale(s, A)) == scale(t * s, A)
    if A.kind is Kind.UPPER_HALF:
        assert scale(-1.0, A).kind is Kind.LOWER_HALF
    if A.kind is Kind.LOWER_HALF:
        assert scale(-1.0, A).kind is Kind.UPPER_HALF

    slack = inclusion_slack(A, B)
    assert is_subset(A, B) == (slack >= 0.0)
    eps = dyadic_pos(rnd, span=1, pow2=6)
    assert is_subset_within(A, B, eps) == (slack >= -eps)
    assert is_subset(A, A)
    assert inclusion_slack(A, make_all_reals()) == math.inf

    u = dyadic_pos(rnd, span=1, pow2=4)
    if u <= 1.0:
        from convexsandwich import convex_combination

        assert convex_combination(u, A, A) == A

    assert ExtInterval.from_json(A.to_json()) == A


# ---------------------------------------------------------------------------
# envelope laws


def check_envelope_laws(rnd: random.Random):
    """One randomized trial of the envelope calculus; all comparisons exact."""
    f = random_pl(rnd)
    env = lower_convex_envelope(f)
    assert env.xs == f.xs
    assert all(e <= v for e, v in zip(env.ys, f.ys))
    assert is_convex(env, 0.0)
    assert lower_convex_envelope(env) == env

    cap = upper_concave_envelope(f)
    assert all(c >= v for c, v in zip(cap.ys, f.ys))
    assert is_concave(cap, 0.0)
    assert upper_concave_envelope(cap) == cap

    c = random_convex_pl(rnd)
    assert lower_convex_envelope(c) == c
    assert upper_concave_envelope(negate(c)) == negate(c)


# ---------------------------------------------------------------------------
# expression trees


def random_expr_tree(rnd: random.Random, depth: int = 0):
    if depth >= 4 or rnd.random() < 0.3:
        if rnd.random() < 0.5:
            return Var()
        return Num(abs(dyadic(rnd, span=4, pow2=2)))
    roll = rnd.random()
    if roll < 0.12:
        return Neg(random_expr_tree(rnd, depth + 1))
    if roll < 0.64:
        op = rnd.choice("+-*/")
        return Bin(op, random_expr_tree(rnd, depth + 1), random_expr_tree(rnd, depth + 1))
    if roll < 0.76:
        exponent = rnd.choice([Num(0.0), Num(1.0), Num(2.0), Num(3.0), Num(0.5), Num(1.5)])
        if rnd.random() < 0.1:
            exponent = random_expr_tree(rnd, depth + 2)
        return Bin("^", random_expr_tree(rnd, depth + 1), exponent)
    if roll < 0.88:
        name = rnd.choice(("abs", "exp", "log"))
        return Call(name, (random_expr_tree(rnd, depth + 1),))
    name = rnd.choice(("min", "max"))
    return Call(name, (random_expr_tree(rnd, depth + 1), random_expr_tree(rnd, depth + 1)))


class _IndependentError(ArithmeticError):
    pass


def independent_eval(node, x: float) -> float:
    """Separate evaluator used to cross-check eval_expr; raises _IndependentError."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -independent_eval(node.arg, x)
    if isinstance(node, Bin):
        a = independent_eval(node.left, x)
        b = independent_eval(node.right, x)
        try:
            if node.op == "+":
                r = a + b
            elif node.op == "-":
                r = a - b
            elif node.op == "*":
                r = a * b
            elif node.op == "/":
                r = a / b
            elif b == math.floor(b) and b >= 0.0:
                r = math.pow(a, b)
            elif a > 0.0:
                r = math.exp(b * math.log(a))
            else:
                raise _IndependentError("bad power base")
        except (ZeroDivisionError, OverflowError, ValueError) as ex:
            raise _IndependentError(str(ex)) from None
        if not math.isfinite(r):
            raise _IndependentError("non-finite")
        return r
    if isinstance(node, Call):
        vals = [independent_eval(a, x) for a in node.args]
        if node.name == "abs":
            return abs(vals[0])
        if node.name == "exp":
            try:
                r = math.exp(vals[0])
            except OverflowError:
                raise _IndependentError("overflow") from None
            if not math.isfinite(r):
                raise _IndependentError("non-finite")
            return r
        if node.name == "log":
            if vals[0] <= 0.0:
                raise _IndependentError("log domain")
            return math.log(vals[0])
        if node.name == "min":
            return min(vals)
        return max(vals)
    raise TypeError(node)


INDEPENDENT_ERROR = _IndependentError
