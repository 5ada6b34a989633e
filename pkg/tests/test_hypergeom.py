import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csint import hypergeom as hg
from csint.errors import (DivergentSeries, DivisionByZero, LowerParameterPole, NotConverged,
                          PoleAtNonpositiveInteger, UnknownCase)
from csint.structures import ParameterSet

# reference values computed with mpmath at 40 digits
PFQ_REFERENCE = [
    ((0.5, 1.5), (2.5,), 0.9, 1.6673034691845803),
    ((1.0, 2.0, 3.0), (4.0, 5.0), 0.7, 1.3012371868365795),
    ((-3.5,), (1.2,), 10.0, -17.169179796857524),
    ((), (1.5,), -0.25, 0.8414709848078965),
    ((1.5,), (2.5, 0.7), -3.3, -0.3880186496317376),
]


def test_0f0_is_exp():
    assert hg.pfq(ParameterSet(), 1.0).value == pytest.approx(math.e, rel=1e-14)


def test_1f0_binomial():
    assert hg.pfq(ParameterSet([2.0]), 0.5).value == pytest.approx(4.0, rel=1e-13)


def test_terminating_1f1_equals_laguerre():
    r = hg.pfq(ParameterSet([-2.0], [1.0]), 1.0)
    assert r.value == pytest.approx(-0.5, rel=1e-15)
    assert r.terminated and r.converged
    assert r.terms_used <= 3


@pytest.mark.parametrize("a,b,z,ref", PFQ_REFERENCE)
def test_pfq_reference(a, b, z, ref):
    r = hg.pfq(ParameterSet(a, b), z)
    assert r.value.real == pytest.approx(ref, rel=1e-12)
    assert r.converged


def test_pfq_complex_argument():
    r = hg.pfq(ParameterSet([0.5], [1.5]), 1 + 2j)
    assert r.value == pytest.approx(0.7820336700689334 + 0.8878700867415467j, rel=1e-13)


def test_pfq_array_matches_scalar():
    ps = ParameterSet([0.3], [1.7, 2.2])
    zs = np.linspace(-4.0, 4.0, 9)
    arr = hg.pfq_array(ps, zs)
    for z, v in zip(zs, arr):
        assert v == pytest.approx(hg.pfq(ps, z).value, rel=1e-13)


def test_cancelled_parameters_reduce_to_exp():
    for z in (-2.0, 0.4, 3.0):
        v = hg.pfq(ParameterSet([1.3, 2.7], [2.7, 1.3]), z).value
        assert v == pytest.approx(math.exp(z), rel=1e-12)


@pytest.mark.parametrize("m", [0, 1, 4, 9])
def test_terminating_series_exact(m):
    a, b, z = (-float(m), 1.5), (0.75,), -1.3
    explicit = 0.0
    for k in range(m + 1):
        num = math.prod(math.prod(ai + j for j in range(k)) for ai in a)
        den = math.prod(math.prod(bj + j for j in range(k)) for bj in b)
        explicit += num / den * z ** k / math.factorial(k)
    r = hg.pfq(ParameterSet(a, b), z)
    assert r.terminated
    assert abs(r.value - explicit) <= 1e-14 * max(1.0, abs(explicit))


@pytest.mark.parametrize("z", [0.3, 1.0, 2.0])
def test_0f0_derivative(z):
    h = 1e-5
    f = lambda t: hg.pfq(ParameterSet(), t).value.real
    deriv = (f(z + h) - f(z - h)) / (2 * h)
    assert deriv == pytest.approx(f(z), rel=1e-6)


def test_divergent_series_errors():
    with pytest.raises(DivergentSeries):
        hg.pfq(ParameterSet([1.0, 1.0]), 0.1)
    with pytest.raises(DivergentSeries):
        hg.pfq(ParameterSet([0.5, 1.0], [2.0]), 1.2)


def test_lower_parameter_pole():
    with pytest.raises(LowerParameterPole):
        hg.pfq(ParameterSet([1.0], [-2.0]), 0.5)
    # termination before the pole is fine
    assert hg.pfq(ParameterSet([-1.0], [-2.0]), 0.5).value == pytest.approx(1.25)


def test_slow_series_hits_budget():
    with pytest.raises(NotConverged):
        hg.pfq(ParameterSet([1.0, 1.0], [2.0]), 0.999)


def test_structural_constant_examples():
    assert hg.structural_constant(ParameterSet(), 4) == pytest.approx(24.0, rel=1e-15)
    assert hg.structural_constant(ParameterSet([], [2.0]), 2) == pytest.approx(12.0, rel=1e-15)
    assert hg.structural_constant(ParameterSet([3.3], [0.4, 1.9]), 0) == 1.0


def test_structural_constant_large_n_log_space():
    ps = ParameterSet([], [2.0])
    ref = math.lgamma(201) + math.lgamma(202) - math.lgamma(2)
    log_rho, sign = hg.log_abs_structural_constant(ps, 200)
    assert log_rho == pytest.approx(ref, rel=1e-13)
    assert sign == 1.0


def test_structural_constant_pole():
    with pytest.raises(PoleAtNonpositiveInteger):
        hg.structural_constant(ParameterSet([-2.0]), 4)


@given(st.lists(st.floats(0.1, 5.0), max_size=3), st.lists(st.floats(0.1, 5.0), max_size=3),
       st.integers(0, 30))
def test_structural_constant_duality(a, b, n):
    ps = ParameterSet(a, b)
    prod = hg.structural_constant(ps, n) * hg.structural_constant(ps.swapped(), n)
    assert prod == pytest.approx(math.factorial(n) ** 2, rel=1e-11)


@given(st.lists(st.floats(0.1, 5.0), max_size=2), st.lists(st.floats(0.1, 5.0), max_size=2),
       st.integers(1, 25))
def test_structural_constant_is_energy_product(a, b, n):
    ps = ParameterSet(a, b)
    prod = math.prod(hg.energy(ps, k) for k in range(1, n + 1))
    assert hg.structural_constant(ps, n) == pytest.approx(prod, rel=1e-12)


def test_energy_examples():
    assert hg.energy(ParameterSet(), 3) == pytest.approx(3.0)
    assert hg.energy(ParameterSet([], [2.0]), 2) == pytest.approx(6.0)
    assert hg.energy(ParameterSet([2.0]), 2) == pytest.approx(2.0 / 3.0)


def test_energy_errors():
    with pytest.raises(DivisionByZero):
        hg.energy(ParameterSet([-1.0]), 2)
    with pytest.raises(ValueError):
        hg.energy(ParameterSet(), 0)


def test_radius_of_convergence():
    assert hg.radius_of_convergence(ParameterSet()) == math.inf
    assert hg.radius_of_convergence(ParameterSet([2.0])) == 1.0
    assert hg.radius_of_convergence(ParameterSet([1.0, 2.0])) == 0.0


@pytest.mark.parametrize("a,b", [((2.0,), ()), ((0.5, 3.0), (1.5,)), ((1.2, 2.0, 0.7), (3.0, 0.9))])
def test_radius_ratio_estimate(a, b):
    ps = ParameterSet(a, b)
    assert hg.radius_ratio_estimate(ps) == pytest.approx(hg.radius_of_convergence(ps), rel=0.01)


def test_special_case_examples():
    assert hg.special_case_eval("sin", 0, 1.0) == pytest.approx(0.8414709848, rel=1e-10)
    assert hg.special_case_hyp("sin", 0, 1.0) == pytest.approx(math.sin(1.0), rel=1e-14)
    assert hg.special_case_hyp("hermite", 3, 1.0) == pytest.approx(-4.0, rel=1e-14)
    assert hg.special_case_eval("hermite", 3, 1.0) == pytest.approx(-4.0, rel=1e-14)
    assert hg.special_case_eval("cosh", 0, 0.0) == 1.0


def test_unknown_case():
    with pytest.raises(UnknownCase):
        hg.special_case_eval("airy", 0, 1.0)


CASE_GRID = {
    "exp": [(0, x) for x in (-1.5, 0.2, 3.0)],
    "binomial": [(a, x) for a in (0.5, 2.0) for x in (-0.6, 0.3, 0.8)],
    "bessel_j": [(nu, x) for nu in (0.0, 0.5, 2.3) for x in (0.4, 3.0)],
    "bessel_i": [(nu, x) for nu in (0.0, 0.5, 2.3) for x in (0.4, 3.0)],
    "sin": [(0, x) for x in (0.1, 1.0, 4.0)],
    "sinh": [(0, x) for x in (0.1, 1.0, 4.0)],
    "cos": [(0, x) for x in (0.1, 1.0, 4.0)],
    "cosh": [(0, x) for x in (0.1, 1.0, 4.0)],
    "laguerre": [(n, x) for n in (0, 3, 6) for x in (0.3, 2.5)],
    "laguerre_2f0": [(n, x) for n in (1, 3, 6) for x in (0.3, 2.5)],
    "bessel_k": [(n, x) for n in (0, 1, 3) for x in (0.5, 2.0)],
    "hermite": [(n, x) for n in (1, 4, 7) for x in (-0.8, 0.5, 1.7)],
    "legendre": [(n, x) for n in (0, 2, 5) for x in (-0.7, 0.3, 0.9)],
    "legendre_2": [(n, x) for n in (0, 2, 5) for x in (-0.7, 0.3, 0.9)],
    "legendre_3": [(n, x) for n in (0, 2, 5) for x in (-0.7, 0.3, 0.9)],
    "chebyshev_t": [(n, x) for n in (0, 2, 5) for x in (-0.7, 0.3, 0.9)],
    "chebyshev_u": [(n, x) for n in (0, 2, 5) for x in (-0.7, 0.3, 0.9)],
    "bessel_j_1f1": [(nu, x) for nu in (0.0, 0.5, 1.7) for x in (0.4, 3.0)],
    "bessel_i_1f1": [(nu, x) for nu in (0.0, 0.5, 1.7) for x in (0.4, 3.0)],
}


def test_case_grid_covers_dictionary():
    assert set(CASE_GRID) == set(hg.SPECIAL_CASES)


@pytest.mark.parametrize("case_id", sorted(CASE_GRID))
def test_special_case_sides_agree(case_id):
    lam = 0.6
    for n, x in CASE_GRID[case_id]:
        closed = hg.special_case_eval(case_id, n, x, lam)
        hyp = hg.special_case_hyp(case_id, n, x, lam)
        assert hyp == pytest.approx(closed, rel=1e-9, abs=1e-12)


@given(st.floats(0.1, 3.0), st.floats(0.2, 3.0), st.floats(-5.0, 5.0))
@settings(max_examples=50, deadline=None)
def test_kummer_transformation(a, b, z):
    lhs = hg.pfq(ParameterSet([a], [b]), z).value
    rhs = math.exp(z) * hg.pfq(ParameterSet([b - a], [b]), -z).value
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-12)
