"""Dual-oracle verification of identity instances.

The left-hand side is computed by Mellin-moment summation and, independently, by
quadrature of the explicit integrand (or by the radial-angular composition for the
complex-plane families); both are compared with the closed-form right-hand side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .. import core_special as cs
from ..errors import (
    ConfluentParameters,
    CsintError,
    OutOfSupport,
    PoleAtNonpositiveInteger,
    UnsupportedParameters,
    UnsupportedWeight,
)
from ..hypergeom import coefficient_ratio, pfq, pfq_array, structural_constant
from ..meijer_weight import classify_weight, gamma_prefactor, mellin_moment, regularized_moment, weight_eval
from ..quadrature import integrate_weighted
from ..structures import ParameterSet
from .instances import KP_FAMILIES, Family, IdentityInstance, VerificationReport
from .moments import moment_series, needs_regularization
from .representations import get_representation, representation_integral

MOMENT_TOL = 1e-10
QUADRATURE_TOL = 1e-6
QUAD_TARGET = 1e-11
ANGULAR_NODES = 256
FUND_QUAD_MOMENTS = 8

# reasons that make a route inapplicable rather than wrong
_UNAVAILABLE = (ConfluentParameters, UnsupportedParameters, UnsupportedWeight, PoleAtNonpositiveInteger)


def rel_diff(lhs, rhs) -> float:
    """|lhs - rhs| / |rhs|, or |lhs| when rhs vanishes."""
    if lhs is None or rhs is None:
        return math.inf
    if rhs == 0:
        return abs(lhs)
    return abs(lhs - rhs) / abs(rhs)


def _real_if_close(v):
    if isinstance(v, complex) and abs(v.imag) <= 1e-14 * max(abs(v.real), 1e-300):
        return v.real
    return v


@dataclass
class _Plan:
    """Everything a route needs: weight, inner series, closed form."""

    weight: ParameterSet
    rhs: complex | float
    scale: float = 1.0
    x: complex | float = 1.0
    ratio: Callable[[int], float] | None = None
    coefficients: Sequence[float] | None = None
    pointwise: Callable[[float], complex | float] | None = None
    alternatives: dict[str, complex | float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    regularized: bool = False
    oracle: float | None = None
    outer: complex | float | None = None


def _prefactor(params: ParameterSet, regularized: bool) -> float:
    return regularized_moment(params, 0).value if regularized else gamma_prefactor(params)


def _joined(*lists: Sequence[float]) -> tuple[float, ...]:
    return tuple(v for seq in lists for v in seq)


def _i0_form(ab: complex | float) -> Callable[[float], complex | float]:
    """u -> 0F1(; 1; AB u), through Bessel I0 or J0 when AB is real."""
    if isinstance(ab, complex):
        return lambda u: complex(pfq(ParameterSet((), (1.0,)), ab * u).value)
    if ab >= 0:
        return lambda u: float(cs.bessel(cs.BesselKind.I, 0.0, 2.0 * math.sqrt(ab * u)).value)
    return lambda u: float(cs.bessel(cs.BesselKind.J, 0.0, 2.0 * math.sqrt(-ab * u)).value)


def _series_form(params: ParameterSet, x: complex | float) -> Callable[[float], complex | float]:
    return lambda u: pfq(params, x * u).value


def _plan(inst: IdentityInstance) -> _Plan:
    fam, pr, s = inst.family, inst.weight_params, inst.scalars
    if inst.target is not None:
        return _plan_representation(inst)
    wp = pr.swapped() if fam in KP_FAMILIES else pr
    reg = needs_regularization(wp)
    pref = _prefactor(wp, reg)
    if fam in (Family.FUND_A, Family.FUND_B):
        n = inst.moment_index
        if fam is Family.FUND_A:
            rhs = pref * structural_constant(pr, n)
        else:
            rhs = pref * math.factorial(n) ** 2 / structural_constant(pr, n)
        return _Plan(wp, rhs, regularized=reg)
    if fam in (Family.REAL_A, Family.COMPLEX_A):
        ab = s["A"] * s["B"]
        inner = ParameterSet(pr.a + pr.a, (1.0,) + pr.b + pr.b)
        return _Plan(wp, pref * pfq(pr, ab).value, x=ab, ratio=lambda k: coefficient_ratio(inner, k),
                     pointwise=_series_form(inner, ab), regularized=reg)
    if fam in (Family.REAL_B, Family.COMPLEX_B):
        ab = s["A"] * s["B"]
        inner = ParameterSet((), (1.0,))
        return _Plan(wp, pref * pfq(pr, ab).value, x=ab, ratio=lambda k: coefficient_ratio(inner, k),
                     pointwise=_i0_form(ab), regularized=reg)
    if fam in (Family.GXF_A, Family.GXF_B):
        a_in, ip = s["A"], inst.inner_params
        if fam is Family.GXF_A:
            rhs_params = ParameterSet(_joined(pr.b, ip.a, (1.0,)), _joined(pr.a, ip.b))
        else:
            rhs_params = ParameterSet(_joined(pr.a, ip.a, (1.0,)), _joined(pr.b, ip.b))
        return _Plan(wp, pref * pfq(rhs_params, a_in).value, x=a_in,
                     ratio=lambda k: coefficient_ratio(ip, k), pointwise=_series_form(ip, a_in), regularized=reg)
    if fam is Family.GXF_C:
        a_in, c = s["A"], s["C"]
        inner = ParameterSet(pr.a + pr.a, (1.0,) + pr.b + pr.b)
        plan = _Plan(wp, c * pref * pfq(pr, a_in * c).value, scale=c, x=a_in,
                     ratio=lambda k: coefficient_ratio(inner, k), pointwise=_series_form(inner, a_in), regularized=reg)
        try:
            plan.alternatives["printed_without_scale"] = pref * pfq(pr, a_in).value
        except CsintError as exc:
            plan.notes.append(f"printed form not evaluable: {exc}")
        return plan
    if fam is Family.POWER_SERIES_WEIGHT:
        x, coef = s["x"], inst.coefficients
        total = 0.0
        for k, ck in enumerate(coef):
            term = ck * math.factorial(k) * x ** k
            for b in pr.b:
                term *= cs.pochhammer(b, k)
            for a in pr.a:
                term /= cs.pochhammer(a, k)
            total += term
        return _Plan(wp, pref * total, x=x, coefficients=coef,
                     pointwise=lambda u: float(np.polynomial.polynomial.polyval(x * u, coef)), regularized=reg)
    if fam is Family.BINOMIAL_WEIGHT:
        return _plan_binomial(inst, wp, pref, reg)
    raise UnsupportedWeight(f"{fam.value} has no weighted left-hand side")


def _plan_binomial(inst: IdentityInstance, wp: ParameterSet, pref: float, reg: bool) -> _Plan:
    pr, x, m = inst.weight_params, inst.scalars["x"], inst.scalars["m"]
    series = ParameterSet((-m,), ())
    plan = _Plan(wp, pref * pfq(ParameterSet(_joined((-m,), pr.b, (1.0,)), pr.a), x).value, x=x,
                 ratio=lambda k: coefficient_ratio(series, k), regularized=reg,
                 pointwise=lambda u: (1.0 - x * u) ** m)
    printed = ParameterSet(_joined((-m,), pr.b), pr.a)
    for name, arg in (("printed_final", x), ("printed_middle", -x)):
        try:
            plan.alternatives[name] = pref * pfq(printed, arg).value
        except CsintError as exc:
            plan.notes.append(f"{name} not evaluable: {exc}")
    if pr.a == (1.0,) and pr.q == 1:
        plan.alternatives["printed_laplace"] = cs.gamma(pr.b[0]) * pfq(
            ParameterSet((-m, pr.b[0]), (1.0,)), x).value
    if pr.a == pr.b:
        plan.alternatives["printed_exponential"] = (1.0 - x) ** m
    return plan


def _plan_representation(inst: IdentityInstance) -> _Plan:
    rep = get_representation(inst.target)
    s = dict(inst.scalars)
    pr = rep.params(s)
    if pr != inst.weight_params:
        raise UnsupportedParameters(f"{inst.target} expects weight parameters {pr}, got {inst.weight_params}")
    wp = rep.moment_params(s)
    reg = needs_regularization(wp)
    ab = rep.argument(s)
    inner = rep.inner_params(s)
    pointwise = _i0_form(ab) if rep.family is Family.REAL_B else _series_form(inner, ab)
    plan = _Plan(wp, rep.rhs_regularized(s), x=ab, ratio=lambda k: coefficient_ratio(inner, k),
                 pointwise=pointwise, regularized=reg, oracle=rep.oracle(s), outer=rep.outer(s))
    if rep.note:
        plan.notes.append(rep.note)
    return plan


# --------------------------------------------------------------------------
# routes


def _lhs_moment(inst: IdentityInstance, plan: _Plan, max_terms: int | None):
    if inst.family in (Family.FUND_A, Family.FUND_B):
        return mellin_moment(plan.weight, inst.moment_index), []
    sv = moment_series(plan.weight, plan.ratio, plan.x, scale=plan.scale, coefficients=plan.coefficients,
                       regularized=plan.regularized, max_terms=max_terms)
    notes = [f"moment sum: {sv.terms_used} terms, {'terminated' if sv.terminated else 'truncated'}, "
             f"error estimate {sv.abs_error_estimate:.2e}"]
    return sv.value, notes + list(sv.notes)


@lru_cache(maxsize=256)
def _fund_quadrature(weight: ParameterSet, count: int) -> tuple[np.ndarray, tuple[str, ...]]:
    form = classify_weight(weight)
    ks = np.arange(count + 1)
    res = integrate_weighted(lambda u: u ** ks * weight_eval(form, u).value,
                             upper=form.support_upper, tol=QUAD_TARGET)
    return res.value, tuple(res.diagnostics)


def _lhs_quadrature(inst: IdentityInstance, plan: _Plan):
    if plan.regularized:
        raise PoleAtNonpositiveInteger("weight has nonpositive-integer parameters; the bare integral "
                                       "carries Gamma(-n) and only the regularized moment route applies")
    if inst.family in (Family.FUND_A, Family.FUND_B):
        n = inst.moment_index
        vals, diag = _fund_quadrature(plan.weight, max(n, FUND_QUAD_MOMENTS))
        return float(vals[n]), list(diag)
    form = classify_weight(plan.weight)
    c = plan.scale
    inner = plan.pointwise

    def f(u):
        w = weight_eval(form, u / c).value
        # the inner factor may have no finite value where the weight has underflowed
        return 0.0 if w == 0.0 else w * inner(u)

    res = integrate_weighted(f, upper=form.support_upper * c, tol=QUAD_TARGET)
    return _real_if_close(complex(res.value[0])), list(res.diagnostics)


def _angular_average(fa: Callable[[np.ndarray], np.ndarray], fb: Callable[[np.ndarray], np.ndarray],
                     r: float, nodes: int) -> complex:
    phi = 2.0 * math.pi * np.arange(nodes) / nodes
    z = r * np.exp(1j * phi)
    return complex(np.mean(fa(z) * fb(np.conj(z))))


def _angular_factors(inst: IdentityInstance):
    a, b = inst.scalars["A"], inst.scalars["B"]
    if inst.family in (Family.ANGULAR_A, Family.COMPLEX_A):
        pr = inst.weight_params
        return (lambda z: pfq_array(pr, a * z)), (lambda z: pfq_array(pr, b * z))
    return (lambda z: np.exp(a * z)), (lambda z: np.exp(b * z))


def _lhs_angular(inst: IdentityInstance, nodes: int = ANGULAR_NODES):
    fa, fb = _angular_factors(inst)
    r = inst.scalars["z_abs"]
    v = _angular_average(fa, fb, r, nodes)
    half = _angular_average(fa, fb, r, nodes // 2)
    return _real_if_close(v), [f"trapezoid over {nodes} nodes; change from {nodes // 2} nodes {abs(v - half):.1e}"]


def _angular_rhs(inst: IdentityInstance) -> float:
    ab = inst.scalars["A"] * inst.scalars["B"]
    r = inst.scalars["z_abs"]
    if inst.family is Family.ANGULAR_A:
        pr = inst.weight_params
        return pfq(ParameterSet(pr.a + pr.a, (1.0,) + pr.b + pr.b), ab * r * r).value
    if ab >= 0:
        return float(cs.bessel(cs.BesselKind.I, 0.0, 2.0 * r * math.sqrt(ab)).value)
    return float(cs.bessel(cs.BesselKind.J, 0.0, 2.0 * r * math.sqrt(-ab)).value)


def _lhs_complex(inst: IdentityInstance, plan: _Plan):
    """Radial quadrature of the weight against the angular average at |z| = sqrt(u)."""
    form = classify_weight(plan.weight)
    fa, fb = _angular_factors(inst)

    def f(u):
        w = weight_eval(form, u).value
        return 0.0 if w == 0.0 else w * _angular_average(fa, fb, math.sqrt(u), ANGULAR_NODES).real

    res = integrate_weighted(f, upper=form.support_upper, tol=QUAD_TARGET)
    return float(res.value[0]), ["radial-angular composition"] + list(res.diagnostics)


# --------------------------------------------------------------------------
# drivers


_ROUTES_BY_FAMILY = {
    Family.ANGULAR_A: ("angular",),
    Family.ANGULAR_B: ("angular",),
    Family.COMPLEX_A: ("moment", "complex"),
    Family.COMPLEX_B: ("moment", "complex"),
}
_QUADRATURE_BACKED = {"quadrature", "complex"}


def default_tolerance(methods: Sequence[str]) -> float:
    return QUADRATURE_TOL if _QUADRATURE_BACKED.intersection(methods) else MOMENT_TOL


def applicable_methods(inst: IdentityInstance) -> tuple[str, ...]:
    if inst.target is not None:
        return ("moment", "representation", "quadrature")
    return _ROUTES_BY_FAMILY.get(inst.family, ("moment", "quadrature"))


def _run(inst: IdentityInstance, methods: Sequence[str], tol: float | None,
         max_terms: int | None) -> VerificationReport:
    report = VerificationReport(inst)
    allowed = applicable_methods(inst)
    for m in methods:
        if m not in allowed:
            raise UnsupportedWeight(f"method {m!r} does not apply to {inst.family.value}")
    if "angular" in methods:
        report.rhs_closed_form = _angular_rhs(inst)
        try:
            lhs, notes = _lhs_angular(inst)
            report.lhs_quadrature = lhs
            report.diagnostics += notes
            report.methods_run.append("angular")
            report.rel_diff_per_method["angular"] = rel_diff(lhs, report.rhs_closed_form)
        except CsintError as exc:
            report.diagnostics.append(f"angular route failed: {type(exc).__name__}: {exc}")
            report.methods_run.append("angular")
            report.rel_diff_per_method["angular"] = math.inf
        return report.finalize(tol if tol is not None else MOMENT_TOL)

    plan = _plan(inst)
    report.rhs_closed_form = _real_if_close(plan.rhs)
    report.diagnostics += plan.notes
    moment_value = None
    for m in methods:
        try:
            if m == "moment":
                lhs, notes = _lhs_moment(inst, plan, max_terms)
                moment_value = lhs
                report.lhs_moment = _real_if_close(lhs)
            elif m == "quadrature":
                lhs, notes = _lhs_quadrature(inst, plan)
                report.lhs_quadrature = lhs
            elif m == "complex":
                lhs, notes = _lhs_complex(inst, plan)
                report.lhs_quadrature = lhs
            elif m == "representation":
                if moment_value is None:
                    moment_value, _ = _lhs_moment(inst, plan, max_terms)
                value = plan.outer * moment_value
                value = value.real if isinstance(value, complex) else value
                report.rhs_alternatives["representation_value"] = value
                report.rhs_alternatives["oracle"] = plan.oracle
                report.methods_run.append(m)
                report.rel_diff_per_method[m] = rel_diff(value, plan.oracle)
                continue
            else:
                raise UnsupportedWeight(f"unknown method {m!r}")
        except _UNAVAILABLE as exc:
            report.diagnostics.append(f"{m} route skipped: {type(exc).__name__}: {exc}")
            continue
        except (CsintError, OutOfSupport) as exc:
            report.diagnostics.append(f"{m} route failed: {type(exc).__name__}: {exc}")
            report.methods_run.append(m)
            report.rel_diff_per_method[m] = math.inf
            continue
        report.diagnostics += notes
        report.methods_run.append(m)
        report.rel_diff_per_method[m] = rel_diff(lhs, plan.rhs)
        if plan.rhs == 0:
            report.diagnostics.append(f"{m}: right-hand side is zero, absolute difference used")

    if inst.reference is not None and "reference" not in methods:
        # an independently tabulated value checks the closed form itself
        report.methods_run.append("reference")
        report.rel_diff_per_method["reference"] = rel_diff(plan.rhs, inst.reference)
    if report.lhs_moment is not None and report.lhs_quadrature is not None:
        report.diagnostics.append(f"moment vs quadrature {dual_difference(report):.2e}")
    _flag_alternatives(report, plan)
    return report.finalize(tol if tol is not None else default_tolerance(report.methods_run))


def dual_difference(report: VerificationReport) -> float:
    """Relative gap between the two left-hand sides, absolute when the closed form is zero."""
    lm, lq = report.lhs_moment, report.lhs_quadrature
    if lm is None or lq is None:
        return math.inf
    if report.rhs_closed_form == 0:
        return abs(lm - lq)
    return rel_diff(lq, lm)


def _flag_alternatives(report: VerificationReport, plan: _Plan) -> None:
    lhs = report.lhs_moment if report.lhs_moment is not None else report.lhs_quadrature
    for name, value in plan.alternatives.items():
        value = _real_if_close(value)
        report.rhs_alternatives[name] = value
        if lhs is None:
            continue
        d = rel_diff(lhs, value)
        verdict = "matches" if d <= 1e-8 else "does not match"
        report.diagnostics.append(f"{name} {verdict} the computed left-hand side (rel diff {d:.2e})")


def verify_moment(inst: IdentityInstance, tol: float | None = None, max_terms: int | None = None) -> VerificationReport:
    return _run(inst, ("moment",), tol, max_terms)


def verify_quadrature(inst: IdentityInstance, tol: float | None = None) -> VerificationReport:
    return _run(inst, ("quadrature",), tol, None)


def verify_angular(inst: IdentityInstance, tol: float | None = None) -> VerificationReport:
    if inst.family not in (Family.ANGULAR_A, Family.ANGULAR_B):
        raise UnsupportedWeight("verify_angular needs an Angular_A or Angular_B instance")
    return _run(inst, ("angular",), tol, None)


def verify_complex(inst: IdentityInstance, tol: float | None = None) -> VerificationReport:
    if inst.family not in (Family.COMPLEX_A, Family.COMPLEX_B):
        raise UnsupportedWeight("verify_complex needs a Complex_A or Complex_B instance")
    return _run(inst, ("complex",), tol, None)


def verify(inst: IdentityInstance, tol: float | None = None, max_terms: int | None = None) -> VerificationReport:
    """Run every applicable route; pass needs each route within tolerance of the closed form."""
    try:
        return _run(inst, applicable_methods(inst), tol, max_terms)
    except CsintError as exc:
        report = VerificationReport(inst)
        report.diagnostics.append(f"instance not verifiable: {type(exc).__name__}: {exc}")
        if not isinstance(exc, _UNAVAILABLE):
            report.methods_run.append("setup")
            report.rel_diff_per_method["setup"] = math.inf
        return report.finalize(tol if tol is not None else MOMENT_TOL)


def identity_lhs(inst: IdentityInstance, max_terms: int | None = None) -> complex | float:
    """Left-hand side by the moment route (regularized when the weight has poles)."""
    plan = _plan(inst)
    return _lhs_moment(inst, plan, max_terms)[0]


def representation_value(inst: IdentityInstance, max_terms: int | None = None) -> float:
    rep = get_representation(inst.target)
    s = dict(inst.scalars)
    v = rep.outer(s) * representation_integral(rep, s, max_terms).value
    return v.real if isinstance(v, complex) else v
