"""Command-line front end.

Exit codes: 0 when the queried relation holds or a separator exists,
1 when a violation or infeasibility certificate was produced (it is
part of the printed report), 2 for usage and input errors (message on
stderr). Reports are JSON on stdout unless --out redirects them;
reruns with identical inputs produce identical bytes.

Functions are given either as a path to a JSON file (formats: sampled
breakpoints, interval-valued endpoints, or a formula with domain and
sample count) or inline as expr:<formula>@[a,b]:n.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .errors import InputError, KindMismatch
from .expr import sample_expr
from .functions import (
    IntervalFunction,
    SampledFunction,
    function_from_json,
    is_concave,
    is_convex,
    is_increasing,
    lower_convex_envelope,
    upper_concave_envelope,
)
from .inequalities import (
    DECREASING,
    INCREASING,
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
from .sandwich import (
    check_condition_iii,
    check_condition_iii_setvalued,
    convex_concave_separators,
    find_affine_interval_separator,
    find_affine_separator,
    interval_outcome_to_json,
    outcome_to_json,
)

_INLINE = re.compile(
    r"^expr:(?P<formula>.+)@\[(?P<a>[^,\]]+),(?P<b>[^,\]]+)\]:(?P<n>\d+)$",
    re.DOTALL,
)


def _load_json(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _function_from_file(path: str):
    data = _load_json(path)
    if isinstance(data, dict) and data.get("type") == "expr":
        dom = data["domain"]
        return sample_expr(data["formula"], dom[0], dom[1], data["samples"])
    return function_from_json(data)


def _load_sampled(source: str) -> SampledFunction:
    m = _INLINE.match(source)
    if m:
        return sample_expr(
            m.group("formula"), float(m.group("a")), float(m.group("b")), int(m.group("n"))
        )
    fn = _function_from_file(source)
    if not isinstance(fn, SampledFunction):
        raise KindMismatch(f"{source}: expected a real-valued sampled function")
    return fn


def _load_interval(source: str) -> IntervalFunction:
    fn = _function_from_file(source)
    if not isinstance(fn, IntervalFunction):
        raise KindMismatch(f"{source}: expected an interval-valued function")
    return fn


def _floats(text: str) -> list[float]:
    items = [p for p in text.split(",") if p.strip()]
    if not items:
        raise InputError(f"expected a comma-separated list of numbers, got {text!r}")
    return [float(p) for p in items]


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, ns) -> None:
    _emit(json.dumps(payload, indent=2) + "\n", ns.out)


def _need(ns, *names):
    missing = [f"--{n}" for n in names if getattr(ns, n, None) is None]
    if missing:
        raise InputError(f"{ns.command}: missing {', '.join(missing)}")


def _triple_or_scan(ns):
    if ns.scan:
        return None
    if ns.x is None or ns.y is None or ns.z is None:
        raise InputError(f"{ns.command}: give --x --y --z or --scan")
    return ns.x, ns.y, ns.z


# ---------------------------------------------------------------------------
# subcommands


def _cmd_sandwich(ns) -> int:
    if ns.set_valued:
        _need(ns, "F", "G")
        outer = _load_interval(ns.F)
        inner = _load_interval(ns.G)
        viol = check_condition_iii_setvalued(outer, inner, ns.eps)
        cond = (
            {"status": "ok"}
            if viol is None
            else {"status": "violation", "witness": viol.to_json()}
        )
        outcome = find_affine_interval_separator(outer, inner, ns.eps)
        envelopes = {}
        for side, lo_fn, hi_fn in (
            ("lower", outer.lower, inner.lower),
            ("upper", inner.upper, outer.upper),
        ):
            if lo_fn is None or hi_fn is None:
                envelopes[side] = None
                continue
            cvx, ccv = convex_concave_separators(lo_fn, hi_fn, ns.eps)
            envelopes[side] = {
                "status": "separator" if (cvx or ccv) else "infeasible",
                "convex": cvx.to_json() if cvx else None,
                "concave": ccv.to_json() if ccv else None,
            }
        payload = {
            "condition_iii": cond,
            "affine": interval_outcome_to_json(outcome),
            "envelopes": envelopes,
        }
        _emit_json(payload, ns)
        return 0 if outcome.separator is not None else 1
    _need(ns, "f", "g")
    f = _load_sampled(ns.f)
    g = _load_sampled(ns.g)
    viol = check_condition_iii(f, g, ns.eps)
    cond = (
        {"status": "ok"}
        if viol is None
        else {"status": "violation", "witness": viol.to_json()}
    )
    outcome = find_affine_separator(f, g, ns.eps)
    cvx, ccv = convex_concave_separators(f, g, ns.eps)
    payload = {
        "condition_iii": cond,
        "affine": outcome_to_json(outcome),
        "envelopes": {
            "status": "separator" if (cvx or ccv) else "infeasible",
            "convex": cvx.to_json() if cvx else None,
            "concave": ccv.to_json() if ccv else None,
        },
    }
    _emit_json(payload, ns)
    return 0 if outcome.separator is not None else 1


def _cmd_check(ns) -> int:
    _need(ns, "f")
    f = _load_sampled(ns.f)
    verdict = {
        "convex": is_convex,
        "concave": is_concave,
        "increasing": is_increasing,
    }[ns.predicate](f, ns.eps)
    _emit_json({"predicate": ns.predicate, "holds": verdict}, ns)
    return 0 if verdict else 1


def _cmd_envelope(ns) -> int:
    _need(ns, "f")
    f = _load_sampled(ns.f)
    env = lower_convex_envelope(f) if ns.kind == "lower-convex" else upper_concave_envelope(f)
    _emit_json(env.to_json(), ns)
    return 0


def _cmd_popoviciu(ns) -> int:
    _need(ns, "f")
    f = _load_sampled(ns.f)
    triple = _triple_or_scan(ns)
    report = (
        popoviciu_scan(f, ns.eps)
        if triple is None
        else popoviciu_check(f, *triple, eps=ns.eps)
    )
    _emit_json(report.to_json(), ns)
    return 0 if report.holds else 1


def _cmd_popoviciu_setvalued(ns) -> int:
    _need(ns, "F")
    F = _load_interval(ns.F)
    triple = _triple_or_scan(ns)
    report = (
        popoviciu_inclusion_scan(F, ns.eps)
        if triple is None
        else popoviciu_inclusion_check(F, *triple, eps=ns.eps)
    )
    _emit_json(report.to_json(), ns)
    return 0 if report.holds else 1


def _cmd_prop3(ns) -> int:
    if ns.set_valued:
        _need(ns, "F", "G")
        tallies = prop3_setvalued_scan(_load_interval(ns.F), _load_interval(ns.G), ns.eps)
        _emit_json(tallies, ns)
        return 0
    _need(ns, "phi", "psi")
    phi = _load_sampled(ns.phi)
    psi = _load_sampled(ns.psi)
    if ns.scan:
        report = prop3_scan(phi, psi, ns.kind, ns.eps)
        _emit_json(report.to_json(), ns)
        return 0 if report.holds else 1
    if ns.x is None or ns.y is None or ns.t is None:
        raise InputError("prop3: give --x --y --t or --scan")
    report = prop3_check(phi, psi, ns.x, ns.y, ns.t, ns.eps, ns.kind)
    _emit_json(report.to_json(), ns)
    return 0 if report.holds else 1


def _cmd_lemma5(ns) -> int:
    _need(ns, "f", "points", "a", "b")
    f = _load_sampled(ns.f)
    weights = _floats(ns.weights) if ns.weights else None
    inp = make_lemma5_input(_floats(ns.points), ns.a, ns.b, weights)
    report = lemma5_check(f, inp, ns.eps)
    _emit_json(report.to_json(), ns)
    return 0 if report.holds else 1


def _cmd_prop6(ns) -> int:
    _need(ns, "f", "x", "y", "z", "a", "b")
    f = _load_sampled(ns.f)
    report = prop6_check(f, ns.x, ns.y, ns.z, ns.a, ns.b, ns.eps)
    _emit_json(report.to_json(), ns)
    return 0 if report.holds else 1


def _cmd_prop7(ns) -> int:
    _need(ns, "F", "points", "a", "b")
    F = _load_interval(ns.F)
    weights = _floats(ns.weights) if ns.weights else None
    inp = make_lemma5_input(_floats(ns.points), ns.a, ns.b, weights)
    report = prop7_check(F, inp, ns.eps)
    _emit_json(report.to_json(), ns)
    return 0 if report.holds else 1


def _cmd_plot(ns) -> int:
    _need(ns, "f")
    columns = [("f", _load_sampled(ns.f))]
    if ns.g:
        columns.append(("g", _load_sampled(ns.g)))
    xs = sorted({x for _, fn in columns for x in fn.xs})
    lines = ["x," + ",".join(name for name, _ in columns)]
    for x in xs:
        row = [repr(x)] + [repr(fn.eval(x)) for _, fn in columns]
        lines.append(",".join(row))
    text = "\n".join(lines) + "\n"
    if ns.format == "json":
        payload = {"x": xs}
        for name, fn in columns:
            payload[name] = [fn.eval(x) for x in xs]
        _emit_json(payload, ns)
    else:
        _emit(text, ns.out)
    return 0


_HANDLERS = {
    "sandwich": _cmd_sandwich,
    "check": _cmd_check,
    "envelope": _cmd_envelope,
    "popoviciu": _cmd_popoviciu,
    "popoviciu-setvalued": _cmd_popoviciu_setvalued,
    "prop3": _cmd_prop3,
    "lemma5": _cmd_lemma5,
    "prop6": _cmd_prop6,
    "prop7": _cmd_prop7,
    "plot": _cmd_plot,
}


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--eps", type=float, default=1e-9, help="comparison tolerance")
    p.add_argument("--out", help="write the report to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="convexsandwich",
        description="separators between functions and convexity inequality checks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sandwich", help="look for a separating function between f and g")
    p.add_argument("--f", help="lower function (file or expr:...)")
    p.add_argument("--g", help="upper function")
    p.add_argument("--set-valued", action="store_true", dest="set_valued")
    p.add_argument("--F", help="outer interval function (with --set-valued)")
    p.add_argument("--G", help="inner interval function (with --set-valued)")
    _add_common(p)

    p = sub.add_parser("check", help="test a pointwise shape predicate on the grid")
    p.add_argument("predicate", choices=("convex", "concave", "increasing"))
    p.add_argument("--f", help="function to test")
    _add_common(p)

    p = sub.add_parser("envelope", help="tightest convex minorant / concave majorant")
    p.add_argument("--f", help="function to envelope")
    p.add_argument(
        "--kind",
        choices=("lower-convex", "upper-concave"),
        default="lower-convex",
    )
    _add_common(p)

    p = sub.add_parser("popoviciu", help="three-point inequality at a triple or over a scan")
    p.add_argument("--f", help="function to test")
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float)
    p.add_argument("--z", type=float)
    p.add_argument("--scan", action="store_true")
    _add_common(p)

    p = sub.add_parser(
        "popoviciu-setvalued",
        help="three-point inclusion for an interval-valued function",
    )
    p.add_argument("--F", help="interval function to test")
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float)
    p.add_argument("--z", type=float)
    p.add_argument("--scan", action="store_true")
    _add_common(p)

    p = sub.add_parser("prop3", help="mixed endpoint inequality for an ordered pair")
    p.add_argument("--phi", help="left function")
    p.add_argument("--psi", help="right function")
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--scan", action="store_true")
    p.add_argument("--kind", choices=(INCREASING, DECREASING), default=INCREASING)
    p.add_argument("--set-valued", action="store_true", dest="set_valued")
    p.add_argument("--F", help="left interval function (with --set-valued)")
    p.add_argument("--G", help="right interval function (with --set-valued)")
    _add_common(p)

    p = sub.add_parser("lemma5", help="weighted endpoint bound for a convex function")
    p.add_argument("--f", help="convex function")
    p.add_argument("--points", help="comma-separated points in [a, b]")
    p.add_argument("--weights", help="comma-separated weights (default: equal)")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    _add_common(p)

    p = sub.add_parser("prop6", help="endpoint-sum chain at a centered triple")
    p.add_argument("--f", help="convex function")
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float)
    p.add_argument("--z", type=float)
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    _add_common(p)

    p = sub.add_parser(
        "prop7", help="weighted endpoint containment for a convex interval function"
    )
    p.add_argument("--F", help="convex interval function")
    p.add_argument("--points", help="comma-separated points in [a, b]")
    p.add_argument("--weights", help="comma-separated weights (default: equal)")
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    _add_common(p)

    p = sub.add_parser("plot", help="dump breakpoints as CSV (or JSON columns)")
    p.add_argument("--f", help="first function")
    p.add_argument("--g", help="optional second function")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_common(p)

    return parser


def run(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as ex:
        code = ex.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        return _HANDLERS[ns.command](ns)
    except (ValueError, OSError, json.JSONDecodeError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
