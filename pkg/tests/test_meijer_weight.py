import math

import numpy as np
import pytest

from csint import hypergeom as hg
from csint import meijer_weight as mw
from csint.errors import ConfluentParameters, OutOfSupport, UnsupportedParameters
from csint.quadrature import integrate_weighted
from csint.structures import ParameterSet

# reference values computed with mpmath meijerg at 30 digits
WEIGHT_REFERENCE = [
    ((), (4 / 3, 5 / 3), 0.7, 0.2528039269136896),
    ((), (4 / 3, 5 / 3), 3.0, 0.04792213422836317),
    ((3.0, 4.5), (1.5,), 0.3, 0.02537186601099666),
    ((3.0, 4.5), (1.5,), 0.85, 2.4348320150123966e-05),
    ((2.5,), (1.5,), 1.3, 0.11314004397045642),
    ((1.0,), (1.5, 2.5), 0.8, 0.2966462979728519),
    ((), (2.0,), 0.5, 0.44434252363223603),
    ((2.0,), (), 0.4, 1.0),
    ((3.0,), (1.5, 2.25), 2.0, 0.0486344105266),
]

CLOSED_PRESETS = [
    ((), ()),
    ((2.0,), ()),
    ((3.0,), ()),
    ((), (2.0,)),
    ((), (1.5,)),
    ((), (1.0,)),
    ((2.0,), (1.0,)),
    ((2.5,), (1.5,)),
    ((1.5,), (3.0,)),
]

SLATER_PRESETS = [
    ((), (4 / 3, 5 / 3)),
    ((3.0, 4.5), (1.5,)),
]


def _weight(a, b):
    return mw.classify_weight(ParameterSet(a, b))


def test_mellin_moment_examples():
    assert mw.mellin_moment(ParameterSet(), 3) == pytest.approx(6.0, rel=1e-14)
    assert mw.mellin_moment(ParameterSet([], [1.5]), 1) == pytest.approx(1.3293404, rel=1e-7)
    ps = ParameterSet([2.5, 3.1], [0.7])
    ref = math.gamma(0.7) / (math.gamma(2.5) * math.gamma(3.1))
    assert mw.mellin_moment(ps, 0) == pytest.approx(ref, rel=1e-13)
    assert mw.gamma_prefactor(ps) == pytest.approx(ref, rel=1e-13)


def test_mellin_moment_rejects_negative_index():
    with pytest.raises(ValueError):
        mw.mellin_moment(ParameterSet(), -1)


@pytest.mark.parametrize("a,b,tag", [
    ((), (), mw.WeightTag.EXPONENTIAL),
    ((3.0,), (), mw.WeightTag.POWER_LAW_COMPACT),
    ((), (1.0,), mw.WeightTag.BESSEL_K),
    ((2.0,), (1.0,), mw.WeightTag.TRICOMI_U),
    ((), (1.5, 2.0), mw.WeightTag.SLATER_SERIES),
    ((1.0, 2.0), (3.0,), mw.WeightTag.SLATER_SERIES),
])
def test_classify_weight(a, b, tag):
    assert _weight(a, b).tag is tag


def test_classify_weight_support():
    assert _weight((), ()).support_upper == math.inf
    assert _weight((3.0,), ()).support_upper == 1.0


def test_classify_weight_rejects_nonintegrable():
    with pytest.raises(UnsupportedParameters):
        mw.classify_weight(ParameterSet([0.8]))
    with pytest.raises(UnsupportedParameters):
        mw.classify_weight(ParameterSet([1.0, 2.0]))


def test_weight_eval_examples():
    assert mw.weight_eval(_weight((), ()), 1.0).value == pytest.approx(0.3678794412, rel=1e-10)
    assert mw.weight_eval(_weight((3.0,), ()), 0.5).value == pytest.approx(0.5, rel=1e-14)
    assert mw.weight_eval(_weight((2.0,), (1.0,)), 1.0).value == pytest.approx(0.2193839, rel=1e-6)
    assert mw.weight_eval(_weight((), (1.0,)), 1.0).value == pytest.approx(0.2277877, rel=1e-6)


@pytest.mark.parametrize("a,b,x,ref", WEIGHT_REFERENCE)
def test_weight_eval_reference(a, b, x, ref):
    assert mw.weight_eval(_weight(a, b), x).value == pytest.approx(ref, rel=1e-9)


def test_weight_eval_out_of_support():
    with pytest.raises(OutOfSupport):
        mw.weight_eval(_weight((3.0,), ()), 1.5)
    with pytest.raises(OutOfSupport):
        mw.weight_eval(_weight((), ()), 0.0)


def _moment_check(a, b, rtol):
    form = _weight(a, b)
    n = np.arange(9)
    quad = integrate_weighted(lambda u: u ** n * mw.weight_eval(form, u).value,
                              upper=form.support_upper, tol=1e-11)
    ref = np.array([mw.mellin_moment(form.params, int(k)) for k in n])
    np.testing.assert_allclose(quad.value, ref, rtol=rtol)


@pytest.mark.parametrize("a,b", CLOSED_PRESETS)
def test_moment_consistency_closed_forms(a, b):
    _moment_check(a, b, 1e-8)


@pytest.mark.parametrize("a,b", SLATER_PRESETS)
def test_moment_consistency_slater(a, b):
    _moment_check(a, b, 1e-6)


@pytest.mark.parametrize("a,b", [((), (1.5, 2.0)), ((0.5,), (2.0, 1.25))])
def test_moment_consistency_confluent(a, b):
    _moment_check(a, b, 1e-6)


@pytest.mark.parametrize("a,b", [((1.0,), (1.5, 2.5)), ((3.0,), (1.5, 2.25))])
def test_moment_consistency_reduced_forms(a, b):
    _moment_check(a, b, 1e-8)


def test_slater_expand_reproduces_bessel_k():
    ps = ParameterSet([], [1.5])
    exp = mw.slater_expand(ps)
    for x in (0.5, 1.0, 2.0):
        ref = 2.0 * x ** 0.25 * math.sqrt(math.pi / (4.0 * math.sqrt(x))) * math.exp(-2.0 * math.sqrt(x))
        assert exp.evaluate(x).value == pytest.approx(ref, rel=1e-6)


def test_slater_expand_exponential_single_term():
    exp = mw.slater_expand(ParameterSet())
    assert len(exp.terms) == 1
    assert exp.evaluate(1.3).value == pytest.approx(math.exp(-1.3), rel=1e-13)


def test_slater_expand_self_check_recorded():
    exp = mw.slater_expand(ParameterSet([], [4 / 3, 5 / 3]))
    assert len(exp.check) == mw.SLATER_CHECK_MOMENTS
    assert max(exp.check) <= mw.SLATER_CHECK_TOL


def test_slater_expand_confluent():
    with pytest.raises(ConfluentParameters):
        mw.slater_expand(ParameterSet([], [1.0, 1.5]))


def test_reduced_exponents_cancel_pairs():
    assert mw.reduced_exponents(ParameterSet([2.0], [2.0, 1.5])) == ((), (0.0, 0.5))


@pytest.mark.parametrize("a,b", [((), ()), ((2.0,), ()), ((), (1.5,)), ((2.5,), (1.5,)), ((1.2, 0.4), (2.0, 1.7))])
def test_duality_moments(a, b):
    ps = ParameterSet(a, b)
    pref = math.prod(math.gamma(v) for v in a) / math.prod(math.gamma(v) for v in b)
    for n in range(7):
        ref = pref * math.factorial(n) ** 2 / hg.structural_constant(ps, n)
        assert mw.mellin_moment(ps.swapped(), n) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("a,b", CLOSED_PRESETS + SLATER_PRESETS)
def test_positivity(a, b):
    form = _weight(a, b)
    rng = np.random.default_rng(7)
    upper = form.support_upper
    xs = rng.uniform(0.0, 1.0, 1000) if upper < math.inf else rng.exponential(3.0, 1000)
    xs = xs[xs > 0]
    vals = [mw.weight_eval(form, x).value for x in xs]
    assert min(vals) >= -1e-12


def test_regularized_moment_pochhammer():
    ps = ParameterSet([-2.0], [1.5])
    rm = mw.regularized_moment(ps, 1)
    assert rm.poles_denominator == 1
    assert rm.value == pytest.approx(math.gamma(2.5) / -2.0, rel=1e-14)
