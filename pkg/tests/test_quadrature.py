import math

import numpy as np
import pytest

from csint.errors import NotConverged
from csint.quadrature import integrate_weighted


def test_half_line_vector_moments():
    n = np.arange(6)
    res = integrate_weighted(lambda u: u ** n * math.exp(-u), tol=1e-11)
    np.testing.assert_allclose(res.value, [math.factorial(k) for k in n], rtol=1e-10)
    assert any("window" in d for d in res.diagnostics)


def test_compact_support_endpoint_singularity():
    # int_0^1 u^{-1/2} (1-u)^{1/2} du = pi/2
    res = integrate_weighted(lambda u: math.sqrt((1.0 - u) / u), upper=1.0, tol=1e-11)
    assert res.value[0] == pytest.approx(math.pi / 2, rel=1e-10)


def test_complex_integrand():
    res = integrate_weighted(lambda u: np.exp(-u * (1.0 - 1.0j)), tol=1e-11)
    assert res.value[0] == pytest.approx(1.0 / (1.0 - 1.0j), rel=1e-10)


def test_vanishing_integrand():
    res = integrate_weighted(lambda u: 0.0)
    assert res.value[0] == 0.0


def test_heavy_tail_is_rejected():
    with pytest.raises(NotConverged):
        integrate_weighted(lambda u: 1.0 / (1.0 + u), tol=1e-10)


def test_slowly_decaying_tail_resolved():
    # int_0^inf 1/(1+u)^3 du = 1/2
    res = integrate_weighted(lambda u: (1.0 + u) ** -3, tol=1e-10)
    assert res.value[0] == pytest.approx(0.5, rel=1e-9)
