"""Set-valued interval arithmetic, piecewise-linear function analysis,
separator construction between function pairs, and checkers for
three-point and weighted convexity inequalities."""

from .errors import (
    BarycenterViolation,
    CrossingEndpoints,
    DomainMismatch,
    DomainViolation,
    EvalError,
    GridViolation,
    InputError,
    KindIncompatible,
    KindMismatch,
    LengthMismatch,
    NonFinite,
    NotConvex,
    NotConvexIVF,
    OrderViolation,
    ParseError,
    RangeViolation,
    WeightViolation,
)
from .expr import eval_expr, parse, sample_expr, unparse
from .functions import (
    AffineIntervalMap,
    AffineMap,
    IntervalFunction,
    SampledFunction,
    align,
    chord_slopes,
    difference,
    eval_ivf,
    eval_many,
    function_from_json,
    interval_from_json,
    is_concave,
    is_convex,
    is_convex_ivf,
    is_decreasing,
    is_increasing,
    lower_convex_envelope,
    lower_hull_vertex_indices,
    make_interval_function,
    make_sampled,
    negate,
    resample,
    restrict,
    sampled_from_json,
    upper_concave_envelope,
)
from .inequalities import (
    DECREASING,
    INCREASING,
    CheckReport,
    Lemma5Input,
    Prop3ScanReport,
    convexity_cross_check,
    lemma5_check,
    make_lemma5_input,
    popoviciu_check,
    popoviciu_inclusion_check,
    popoviciu_inclusion_scan,
    popoviciu_scan,
    prop3_check,
    prop3_scan,
    prop3_setvalued_scan,
    prop6_check,
    prop7_check,
)
from .intervals import (
    ExtInterval,
    Kind,
    convex_combination,
    equal_within,
    inclusion_slack,
    is_subset,
    is_subset_within,
    make_all_reals,
    make_bounded,
    make_lower_half,
    make_upper_half,
    minkowski_add,
    minkowski_sum,
    scale,
)
from .sandwich import (
    COMBINATION_LE_G,
    F_LE_COMBINATION,
    IntervalSandwichOutcome,
    SandwichOutcome,
    SetValuedViolation,
    Violation,
    check_condition_iii,
    check_condition_iii_sampled,
    check_condition_iii_setvalued,
    convex_concave_separators,
    find_affine_interval_separator,
    find_affine_separator,
    interval_outcome_to_json,
    outcome_to_json,
    verify_interval_separator,
    verify_separator,
    verify_violation,
)

__version__ = "0.1.0"
