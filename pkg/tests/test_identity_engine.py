import math
from functools import lru_cache

import pytest

from csint.errors import IncompleteInstance, OutsideConvergenceDisc, UnknownCase, UnknownSuite, UnsupportedWeight
from csint.identity_engine import (MOMENT_TOL, REPRESENTATIONS, SUITES, Family, IdentityInstance, builtin_suite,
                                   dump_instances, dual_difference, load_instances, rep_eval,
                                   representation_instance, verify, verify_angular, verify_complex,
                                   verify_moment, verify_quadrature)
from csint.structures import ParameterSet as P

F = Family
I = IdentityInstance


@lru_cache(maxsize=None)
def _suite_reports(name):
    return tuple((inst, verify(inst)) for inst in builtin_suite(name))


def test_fund_a_gamma_moment():
    r = verify_moment(I(F.FUND_A, P(), moment_index=3))
    assert r.lhs_moment == pytest.approx(6.0, rel=1e-15)
    assert r.rhs_closed_form == pytest.approx(6.0, rel=1e-15)
    assert r.passed and r.methods_run == ["moment"]


def test_real_a_sine():
    r = verify(I(F.REAL_A, P((), (1.5,)), scalars=dict(A=-0.25, B=1.0)))
    ref = math.gamma(1.5) * math.sin(1.0)
    assert r.rhs_closed_form == pytest.approx(ref, rel=1e-13)
    assert r.lhs_moment == pytest.approx(ref, rel=1e-13)
    assert r.passed


def test_gxf_a_terminating_laguerre():
    r = verify_moment(I(F.GXF_A, P(), P((-2.0,), (1.0,)), scalars=dict(A=1.0)))
    assert r.rhs_closed_form == 0.0
    assert abs(r.lhs_moment) <= 1e-12
    assert r.passed


def test_complex_b_gaussian_shift():
    # the shifted Gaussian exp[-(z - B)(z* - A)] integrates to 1
    a, b = 1.0, -1.0
    r = verify_complex(I(F.COMPLEX_B, P(), scalars=dict(A=a, B=b)))
    assert r.lhs_quadrature * math.exp(-a * b) == pytest.approx(1.0, abs=1e-8)
    assert r.passed


def test_complex_a_binomial_pair():
    r = verify(I(F.COMPLEX_A, P((2.0,), ()), scalars=dict(A=0.5, B=0.5)))
    assert r.rhs_closed_form == pytest.approx(1.0 / 0.75 ** 2, rel=1e-14)
    assert r.passed


def test_complex_b_zero_coupling_is_zeroth_moment():
    r = verify(I(F.COMPLEX_B, P((2.5,), (1.5,)), scalars=dict(A=0.0, B=0.3)))
    assert r.rhs_closed_form == pytest.approx(math.gamma(2.5) / math.gamma(1.5), rel=1e-13)
    assert r.passed


def test_real_b_tricomi_weight():
    r = verify_quadrature(I(F.REAL_B, P((2.0,), (1.0,)), scalars=dict(A=0.5, B=0.5)))
    assert r.rhs_closed_form == pytest.approx(1.25 * math.exp(0.25), rel=1e-14)
    assert r.lhs_quadrature == pytest.approx(r.rhs_closed_form, rel=1e-8)


def test_laplace_transform_of_l2():
    r = verify_quadrature(I(F.GXF_A, P((1.0,), (1.0,)), P((-2.0,), (1.0,)), scalars=dict(A=1.0)))
    assert abs(r.lhs_quadrature) <= 1e-8


@pytest.mark.parametrize("z_abs,ref", [(0.7, 1.5533950997312165), (0.0, 1.0)])
def test_angular_b(z_abs, ref):
    r = verify_angular(I(F.ANGULAR_B, P(), scalars=dict(A=1.0, B=1.0, z_abs=z_abs)))
    assert r.lhs_quadrature == pytest.approx(ref, rel=1e-12)
    assert r.passed


def test_angular_a_reduces_to_angular_b():
    a = verify_angular(I(F.ANGULAR_A, P(), scalars=dict(A=1.0, B=1.0, z_abs=0.7)))
    b = verify_angular(I(F.ANGULAR_B, P(), scalars=dict(A=1.0, B=1.0, z_abs=0.7)))
    assert a.lhs_quadrature == pytest.approx(b.lhs_quadrature, rel=1e-14)


def test_angular_consistency_complex_vs_real():
    wp, ab = P((2.0,), (1.0,)), dict(A=0.5, B=0.5)
    c = verify_complex(I(F.COMPLEX_B, wp, scalars=ab))
    r = verify_quadrature(I(F.REAL_B, wp, scalars=ab))
    assert abs(c.lhs_quadrature - r.lhs_quadrature) <= 1e-8 * abs(r.lhs_quadrature)


def test_route_guards():
    with pytest.raises(UnsupportedWeight):
        verify_angular(I(F.FUND_A, P(), moment_index=1))
    with pytest.raises(UnsupportedWeight):
        verify_complex(I(F.REAL_B, P(), scalars=dict(A=0.1, B=0.1)))


@pytest.mark.parametrize("kwargs", [
    dict(family=F.FUND_A, weight_params=P()),
    dict(family=F.COMPLEX_B, weight_params=P(), scalars=dict(A=1.0)),
    dict(family=F.ANGULAR_B, weight_params=P(), scalars=dict(A=1.0, B=1.0)),
    dict(family=F.GXF_A, weight_params=P(), scalars=dict(A=1.0)),
    dict(family=F.GXF_C, weight_params=P(), scalars=dict(A=1.0, C=-1.0)),
    dict(family=F.POWER_SERIES_WEIGHT, weight_params=P(), scalars=dict(x=0.5)),
    dict(family=F.BINOMIAL_WEIGHT, weight_params=P(), scalars=dict(x=0.5)),
    dict(family=F.REAL_A, weight_params=P(), scalars=dict(A=math.nan, B=1.0)),
])
def test_incomplete_instances_rejected(kwargs):
    with pytest.raises(IncompleteInstance):
        I(**kwargs)


def test_angular_disc_rejected():
    with pytest.raises(OutsideConvergenceDisc):
        I(F.ANGULAR_A, P((2.0,), ()), scalars=dict(A=1.0, B=1.0, z_abs=1.5))


def test_unknown_target_rejected():
    with pytest.raises(IncompleteInstance):
        I(F.REAL_A, P(), scalars=dict(n=1, x=0.5), target="airy")


def test_json_roundtrip():
    insts = builtin_suite("gxf") + builtin_suite("gr-crosschecks")[:5]
    back = load_instances("# comment\n" + dump_instances(insts))
    assert back == insts
    assert len({hash(i) for i in back}) == len(set(insts))


def test_report_to_dict():
    d = verify(I(F.FUND_A, P(), moment_index=2)).to_dict()
    assert d["status"] == "pass" and d["pass"] is True
    assert d["rel_diff_per_method"]["moment"] <= MOMENT_TOL


@pytest.mark.parametrize("target,n,x,ref", [
    ("legendre", 2, 0.5, -0.125),
    ("chebyshev_t", 3, 0.5, -1.0),
    ("bessel_k_half", 1, 1.0, 0.9221370088957891),
])
def test_rep_eval_examples(target, n, x, ref):
    assert rep_eval(target, n=n, x=x).value == pytest.approx(ref, rel=1e-10, abs=1e-12)


def test_rep_eval_unknown():
    with pytest.raises(UnknownCase):
        rep_eval("airy", n=1, x=0.5)


def test_representation_instance_quadrature_skipped_with_reason():
    r = verify(representation_instance("hermite", n=3, x=0.45))
    assert r.passed
    assert "quadrature" not in r.methods_run
    assert any("quadrature route skipped" in d for d in r.diagnostics)


def test_builtin_suite_sizes():
    fund = builtin_suite("fundamental")
    assert len(fund) >= 24
    pq = {(i.weight_params.p, i.weight_params.q) for i in fund if i.family is F.FUND_A}
    assert {(0, 0), (1, 0), (0, 1), (1, 1)} <= pq
    assert len(builtin_suite("all")) == sum(len(fn()) for fn in SUITES.values())


def test_representation_suite_covers_every_target():
    targets = {i.target for i in builtin_suite("representations")}
    assert targets == set(REPRESENTATIONS)


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        builtin_suite("unknown")


@pytest.mark.parametrize("name", ["fundamental", "complex", "real", "gxf"])
def test_suite_passes(name):
    failed = [(i.label, r.rel_diff_per_method) for i, r in _suite_reports(name) if r.status != "pass"]
    assert not failed


@pytest.mark.parametrize("name", ["fundamental", "real", "gxf"])
def test_dual_oracle_agreement(name):
    for inst, r in _suite_reports(name):
        if r.lhs_moment is not None and r.lhs_quadrature is not None:
            assert dual_difference(r) <= 10 * r.tolerance, inst.label


def test_duality_fund_a_implies_fund_b():
    reports = _suite_reports("fundamental")
    a_ok = {(i.weight_params, i.moment_index) for i, r in reports if i.family is F.FUND_A and r.passed}
    b_ok = {(i.weight_params.swapped(), i.moment_index) for i, r in reports if i.family is F.FUND_B and r.passed}
    assert a_ok and a_ok <= b_ok


def test_terminating_exactness():
    for inst, r in _suite_reports("gxf"):
        c = inst.inner_params
        if c is None or not any(v <= 0 and v == int(v) for v in c.a):
            continue
        assert r.rel_diff_per_method["moment"] <= 1e-12, inst.label


@pytest.mark.parametrize("wp", [P((), (2.0,)), P((2.0,), ())])
def test_gxf_c_scale_covariance(wp):
    diffs = {}
    for c in (0.5, 1.0, 2.0):
        r = verify(I(F.GXF_C, wp, scalars=dict(A=0.3, C=c)))
        assert "quadrature" in r.methods_run
        diffs[c] = r.rel_diff_per_method["quadrature"]
    assert abs(diffs[0.5] - diffs[1.0]) <= 1e-10
    assert abs(diffs[2.0] - diffs[1.0]) <= 1e-10


def test_gxf_c_printed_form_flagged():
    r = verify(I(F.GXF_C, P((), (2.0,)), scalars=dict(A=0.3, C=2.0)))
    assert "printed_without_scale" in r.rhs_alternatives
    assert any(d.startswith("printed_without_scale does not match") for d in r.diagnostics)


def test_binomial_alternative_forms_flagged():
    r = verify(I(F.BINOMIAL_WEIGHT, P(), scalars=dict(x=0.3, m=2.0)))
    assert r.passed
    assert r.rhs_closed_form == pytest.approx(1 - 2 * 0.3 + 2 * 0.09, rel=1e-14)
    assert r.rhs_alternatives["printed_final"] == pytest.approx(0.49)
    assert any(d.startswith("printed_final does not match") for d in r.diagnostics)
    assert dual_difference(r) <= 1e-8


def test_reference_method_catches_wrong_table_value():
    good = verify(I(F.FUND_A, P(), moment_index=3, reference=6.0))
    bad = verify(I(F.FUND_A, P(), moment_index=3, reference=6.5))
    assert "reference" in good.methods_run and good.passed
    assert not bad.passed


def test_tolerance_override():
    inst = I(F.REAL_B, P((2.0,), (1.0,)), scalars=dict(A=0.5, B=0.5))
    assert verify(inst).tolerance == 1e-6
    assert verify(inst, tol=1e-3).tolerance == 1e-3
